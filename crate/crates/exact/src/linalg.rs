//! Dense exact linear algebra over a [`Field`].

use crate::field::Field;

/// Row-major dense matrix.
pub type Matrix<E> = Vec<Vec<E>>;

/// Reduce `m` in place to reduced row echelon form and return the pivot
/// columns. Zero rows are removed.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !f.is_zero(y) {
                    *x = f.sub_mul(x, &factor, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = f.one();
    for c in 0..n {
        assert_eq!(a[c].len(), n, "determinant of a non-square matrix");
        let Some(p) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            d = f.neg(&d);
        }
        d = f.mul(&d, &a[c][c]);
        let inv = f.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            if f.is_zero(&a[i][c]) {
                continue;
            }
            let factor = f.mul(&a[i][c], &inv);
            for j in c..n {
                let v = f.sub_mul(&a[i][j], &factor, &a[c][j]);
                a[i][j] = v;
            }
        }
    }
    d
}

/// Basis of the right null space `{v : m v = 0}`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>, cols: usize) -> Matrix<F::Elem> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &pc) in a.iter().zip(pivots.iter()) {
            v[pc] = f.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| (0..inner).fold(f.zero(), |acc, t| f.add(&acc, &f.mul(&row[t], &b[t][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose<E: Clone>(a: &Matrix<E>) -> Matrix<E> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}
