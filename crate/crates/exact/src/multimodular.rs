//! Rational eliminants from eliminants modulo many primes, combined by the
//! Chinese remainder theorem and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::eliminate::{groebner_eliminate, ElimError, ElimOptions, Eliminant, Retained};
use crate::field::{Field, PrimeField, RationalField};
use crate::multivariate::PolySystem;
use crate::primes::large_primes;
use crate::univariate::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiModError {
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error("rational reconstruction did not stabilize within {0} primes")]
    NoConvergence(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct MultiModOptions {
    pub elim: ElimOptions,
    pub max_primes: usize,
}

impl Default for MultiModOptions {
    fn default() -> Self {
        MultiModOptions { elim: ElimOptions::default(), max_primes: 2000 }
    }
}

/// Report of a multi-modular run.
#[derive(Clone, Debug)]
pub struct MultiModResult {
    pub eliminant: Eliminant<RationalField>,
    /// Primes whose images were combined.
    pub primes_used: usize,
    /// Primes discarded as unlucky (bad reduction or lower degree).
    pub primes_discarded: usize,
}

/// `n/d ≡ a (mod m)` with `|n|, d ≤ sqrt(m/2)`, if it exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn crt_step(x: &mut BigInt, modulus: &BigInt, r: u64, field: PrimeField) {
    let xm = field.reduce_bigint(x);
    let mm = field.reduce_bigint(modulus);
    let t = field.mul(&field.sub(&r, &xm), &field.inv(&mm).unwrap());
    *x += modulus * BigInt::from(t);
}

/// Eliminant of a rational system computed modulo a descending sequence of
/// 62-bit primes. Stops once the reconstructed polynomial survives one more
/// prime unchanged.
pub fn multimodular_eliminate(
    sys: &PolySystem<RationalField>,
    retained: &Retained<BigRational>,
    opts: MultiModOptions,
) -> Result<MultiModResult, MultiModError> {
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut best: Option<(usize, usize)> = None; // (degree, quotient dimension)
    let mut candidate: Option<Vec<BigRational>> = None;
    let mut used = 0;
    let mut discarded = 0;
    let mut empty_votes = 0;
    let mut first_error: Option<ElimError> = None;

    for p in large_primes().take(opts.max_primes) {
        let field = PrimeField::new(p);
        let Some(sys_p) = sys.try_map(field, |c| field.from_rational(c)) else {
            discarded += 1;
            continue;
        };
        let ret_p = match retained {
            Retained::Var(i) => Some(Retained::Var(*i)),
            Retained::Linear(c) => c
                .iter()
                .map(|x| field.from_rational(x))
                .collect::<Option<Vec<_>>>()
                .map(Retained::Linear),
        };
        let Some(ret_p) = ret_p else {
            discarded += 1;
            continue;
        };
        let e = match groebner_eliminate(&sys_p, &ret_p, opts.elim) {
            Ok(e) => e,
            Err(err) => {
                discarded += 1;
                if used == 0 && discarded >= 3 {
                    return Err(first_error.unwrap_or(err).into());
                }
                first_error.get_or_insert(err);
                continue;
            }
        };
        if e.empty {
            empty_votes += 1;
            if used == 0 && empty_votes >= 2 {
                return Ok(MultiModResult {
                    eliminant: Eliminant { poly: UniPoly::one(RationalField), empty: true, multiplicity_count: 0 },
                    primes_used: empty_votes,
                    primes_discarded: discarded,
                });
            }
            continue;
        }
        let key = (e.poly.degree().unwrap(), e.multiplicity_count);
        match best {
            Some(b) if key < b => {
                discarded += 1;
                continue;
            }
            Some(b) if key == b => {}
            _ => {
                discarded += used;
                best = Some(key);
                residues = vec![BigInt::zero(); key.0 + 1];
                modulus = BigInt::one();
                candidate = None;
                used = 0;
            }
        }
        for (x, &r) in residues.iter_mut().zip(e.poly.coeffs().iter()) {
            crt_step(x, &modulus, r, field);
        }
        modulus *= BigInt::from(p);
        used += 1;

        // a previous candidate that matches this prime is accepted
        if let Some(cand) = &candidate {
            let agrees = cand
                .iter()
                .zip(e.poly.coeffs().iter())
                .all(|(q, &r)| field.from_rational(q) == Some(r));
            if agrees {
                let poly = UniPoly::new(RationalField, cand.clone());
                return Ok(MultiModResult {
                    eliminant: Eliminant { poly, empty: false, multiplicity_count: key.1 },
                    primes_used: used,
                    primes_discarded: discarded,
                });
            }
        }
        candidate = residues
            .iter()
            .map(|x| rational_reconstruction(x, &modulus))
            .collect::<Option<Vec<_>>>();
    }
    Err(MultiModError::NoConvergence(opts.max_primes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::monomial::Monomial;
    use crate::multivariate::MultiPoly;

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(1_000_000_007i64) * BigInt::from(998_244_353i64);
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (12345, 678)] {
            let q = rat(n, d);
            let dm = BigInt::from(d).modinv(&m).unwrap();
            let a = (BigInt::from(n) * dm).mod_floor(&m);
            assert_eq!(rational_reconstruction(&a, &m), Some(q));
        }
    }

    #[test]
    fn matches_direct_rational_run() {
        let q = RationalField;
        let t = |e: &[u32], n: i64, d: i64| (Monomial::from_exps(e), rat(n, d));
        let mut sys = PolySystem::new(q, vec!["x".into(), "y".into()]);
        sys.push(MultiPoly::from_terms(q, 2, [t(&[2, 0], 3, 7), t(&[0, 1], 1, 1), t(&[0, 0], -5, 11)]));
        sys.push(MultiPoly::from_terms(q, 2, [t(&[0, 2], 1, 1), t(&[1, 1], 2, 3), t(&[1, 0], -1, 13)]));
        let form = Retained::Linear(vec![rat(17, 1), rat(-4, 1)]);
        let direct = groebner_eliminate(&sys, &form, ElimOptions::default()).unwrap();
        let mm = multimodular_eliminate(&sys, &form, MultiModOptions::default()).unwrap();
        assert_eq!(mm.eliminant.poly, direct.poly);
        assert_eq!(mm.eliminant.multiplicity_count, direct.multiplicity_count);
    }
}
