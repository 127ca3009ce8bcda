//! Wronskians and determinants of polynomial matrices.

use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::univariate::UniPoly;

/// Determinant of a square matrix with polynomial entries, by expansion
/// along rows with memoized column subsets.
pub fn poly_det<F: Field>(field: &F, m: &[Vec<UniPoly<F>>]) -> UniPoly<F> {
    let n = m.len();
    assert!(n < 32, "matrix too large");
    let mut memo: FxHashMap<u32, UniPoly<F>> = FxHashMap::default();
    memo.insert(0, UniPoly::one(field.clone()));
    // minor of the last `popcount(cols)` rows on the given columns
    fn go<F: Field>(m: &[Vec<UniPoly<F>>], cols: u32, memo: &mut FxHashMap<u32, UniPoly<F>>) -> UniPoly<F> {
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let n = m.len();
        let size = cols.count_ones() as usize;
        let row = n - size;
        let mut acc = UniPoly::zero(m[0][0].field().clone());
        let mut sign_pos = 0;
        for c in 0..n {
            if cols & (1 << c) == 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let sub = go(m, cols & !(1 << c), memo);
                let term = m[row][c].mul(&sub);
                acc = if sign_pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            sign_pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    if n == 0 {
        return UniPoly::one(field.clone());
    }
    go(m, (1u32 << n) - 1, &mut memo)
}

/// `det(f_j^{(i)})` for `i, j = 0..k-1`.
pub fn wronskian<F: Field>(fs: &[UniPoly<F>]) -> UniPoly<F> {
    assert!(!fs.is_empty(), "wronskian of an empty list");
    let field = fs[0].field().clone();
    let k = fs.len();
    let mut rows: Vec<Vec<UniPoly<F>>> = vec![fs.to_vec()];
    for i in 1..k {
        let next = rows[i - 1].iter().map(|p| p.derivative()).collect();
        rows.push(next);
    }
    poly_det(&field, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RationalField;

    fn q(c: &[i64]) -> UniPoly<RationalField> {
        UniPoly::from_i64s(RationalField, c)
    }

    #[test]
    fn small_wronskians() {
        assert_eq!(wronskian(&[q(&[1]), q(&[0, 1])]), q(&[1]));
        assert_eq!(wronskian(&[q(&[0, 1]), q(&[0, 0, 1])]), q(&[0, 0, 1]));
        assert_eq!(wronskian(&[q(&[3, 1, 4])]), q(&[3, 1, 4]));
        // 1, t, t^2 -> 2
        assert_eq!(wronskian(&[q(&[1]), q(&[0, 1]), q(&[0, 0, 1])]), q(&[2]));
    }

    #[test]
    fn determinant_sign() {
        let m = vec![vec![q(&[0]), q(&[1])], vec![q(&[1]), q(&[0])]];
        assert_eq!(poly_det(&RationalField, &m), q(&[-1]));
    }
}
