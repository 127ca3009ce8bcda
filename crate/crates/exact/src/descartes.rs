//! Real root counting by Descartes' rule of signs with bisection
//! (Vincent–Collins–Akritas) on integer polynomials.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::field::{PrimeField, RationalField};
use crate::primes::large_primes;
use crate::sturm::{self, to_primitive_integer, IntPoly};
use crate::univariate::UniPoly;

fn variations(p: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for c in p {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// `p(x + 1)` in place.
fn taylor_shift_one(p: &mut [BigInt]) {
    let n = p.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = p[j + 1].clone();
            p[j] += t;
        }
    }
}

/// Sign variations of `(x+1)^d p(1/(x+1))`, an upper bound on the roots of
/// `p` in `(0, 1)` with the same parity.
fn variations_01(p: &IntPoly) -> usize {
    let mut q: Vec<BigInt> = p.iter().rev().cloned().collect();
    taylor_shift_one(&mut q);
    variations(&q)
}

/// `2^d p(x/2)`.
fn halve(p: &IntPoly) -> IntPoly {
    let d = p.len() - 1;
    p.iter().enumerate().map(|(i, c)| c << (d - i)).collect()
}

fn roots_01(p: IntPoly) -> usize {
    match variations_01(&p) {
        0 => return 0,
        1 => return 1,
        _ => {}
    }
    let left = halve(&p);
    // p(1/2) = 0 exactly when the constant term of the right half vanishes
    let mut right = left.clone();
    taylor_shift_one(&mut right);
    let mut mid = 0;
    if right[0].is_zero() {
        mid = 1;
        right.remove(0);
    }
    roots_01(left) + mid + roots_01(right)
}

/// `p(2^e x)` with `2^e` above every positive root.
fn scale_into_unit(p: &IntPoly) -> IntPoly {
    let d = p.len() - 1;
    let lead = p[d].bits() as i64;
    let mut e: i64 = 1;
    for i in 1..=d {
        let c = &p[d - i];
        if c.is_zero() {
            continue;
        }
        let ratio_bits = c.bits() as i64 - lead + 1;
        e = e.max(1 + ratio_bits.div_euclid(i as i64) + 1);
    }
    let e = e as usize;
    p.iter().enumerate().map(|(i, c)| c << (e * i)).collect()
}

fn positive_roots(p: &IntPoly) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    roots_01(scale_into_unit(p))
}

/// Distinct real roots of a squarefree integer polynomial.
pub fn count_real_roots_squarefree(p: &IntPoly) -> usize {
    let mut p = p.clone();
    let mut zero = 0;
    if p.first().is_some_and(|c| c.is_zero()) {
        zero = 1;
        p.remove(0);
    }
    let neg: IntPoly = p.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    zero + positive_roots(&p) + positive_roots(&neg)
}

/// Squarefree test: a squarefree image modulo a prime not dividing the
/// leading coefficient settles it; otherwise the exact chain decides.
pub fn is_squarefree_rational(f: &UniPoly<RationalField>) -> bool {
    if f.is_zero() {
        return false;
    }
    let p = to_primitive_integer(f);
    if p.len() <= 1 {
        return true;
    }
    for prime in large_primes().take(3) {
        let field = PrimeField::new(prime);
        let img = UniPoly::new(field, p.iter().map(|c| field.reduce_bigint(c)).collect());
        if img.degree() == Some(p.len() - 1) && img.is_squarefree() {
            return true;
        }
    }
    sturm::sturm_chain(&p).last().is_some_and(|g| g.len() == 1)
}

/// Shape-Lemma gate and real root count: `Some(count)` when `f` is
/// squarefree of degree `expected`.
pub fn gated_real_count(f: &UniPoly<RationalField>, expected: usize) -> Option<usize> {
    if f.degree() != Some(expected) || !is_squarefree_rational(f) {
        return None;
    }
    Some(count_real_roots_squarefree(&to_primitive_integer(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::sturm::sturm_count;

    fn from_roots(roots: &[i64]) -> UniPoly<RationalField> {
        roots.iter().fold(UniPoly::one(RationalField), |acc, &r| acc.mul(&UniPoly::linear_root(RationalField, &rat(r, 1))))
    }

    #[test]
    fn known_roots() {
        let f = from_roots(&[-5, -1, 0, 2, 3, 100]);
        assert_eq!(gated_real_count(&f, 6), Some(6));
        let g = f.mul(&UniPoly::from_i64s(RationalField, &[1, 0, 1]));
        assert_eq!(gated_real_count(&g, 8), Some(6));
        assert_eq!(gated_real_count(&g, 7), None);
        let h = f.mul(&from_roots(&[2]));
        assert_eq!(gated_real_count(&h, 7), None);
    }

    #[test]
    fn close_roots_agree_with_sturm() {
        let f = UniPoly::new(RationalField, vec![rat(-1, 1000003), rat(0, 1), rat(1, 1)])
            .mul(&UniPoly::linear_root(RationalField, &rat(1, 1000)))
            .mul(&UniPoly::linear_root(RationalField, &rat(1001, 1000000)));
        assert_eq!(gated_real_count(&f, 4), Some(sturm_count(&f).unwrap()));
        assert_eq!(sturm_count(&f).unwrap(), 4);
    }
}
