//! Seeded draws of osculation configurations and linear forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sclab_exact::field::Gaussian;

use crate::combinat::{Partition, SchubertProblem};
use crate::error::{Error, Result};
use crate::schubert::{OscPoint, OsculationConfig, Param};

/// Generator for instance `index` of a run: the ChaCha8 key is the run seed
/// and the stream is the index, so instances never share draws.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Numerator in `[-999, 999]`, denominator in `[1, 50]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let n: i64 = rng.random_range(-999..=999);
    let d: i64 = rng.random_range(1..=50);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    loop {
        let q = random_rational(rng);
        if q != BigRational::from_integer(BigInt::from(0)) {
            return q;
        }
    }
}

/// Nonzero integers in `[-99, 99]`.
pub fn random_linear_form<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<i64> {
    (0..n)
        .map(|_| loop {
            let c: i64 = rng.random_range(-99..=99);
            if c != 0 {
                break c;
            }
        })
        .collect()
}

/// Strictly increasing list of `count` distinct random rationals.
pub fn random_sorted_points<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<BigRational> {
    let mut pts: Vec<BigRational> = Vec::with_capacity(count);
    while pts.len() < count {
        let q = random_rational(rng);
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    pts.sort();
    pts
}

/// Real points per distinct partition, in first-appearance order.
pub type OscType = Vec<(Partition, usize)>;

/// Render as `{"1": 4, ...}`-style pairs for display.
pub fn type_label(t: &OscType) -> String {
    let parts: Vec<String> = t.iter().map(|(p, r)| format!("{p}:{r}")).collect();
    parts.join(" ")
}

/// Check that a type can be realized on `p` given pinned real conditions.
pub fn check_type(p: &SchubertProblem, t: &OscType, pinned: &[(usize, Param<BigRational>)]) -> Result<()> {
    let mults = p.multiplicities();
    for (lam, rho) in t {
        let Some((_, m)) = mults.iter().find(|(q, _)| q == lam) else {
            return Err(Error::Config(format!("type refers to {lam}, which is not a condition")));
        };
        let fixed = pinned.iter().filter(|(i, _)| p.conditions[*i] == *lam).count();
        if rho > m || (m - rho) % 2 != 0 || *rho < fixed {
            return Err(Error::Config(format!("infeasible type: {rho} real points for {m} copies of {lam}")));
        }
    }
    for (lam, _) in &mults {
        if !t.iter().any(|(q, _)| q == lam) {
            return Err(Error::Config(format!("type has no entry for {lam}")));
        }
    }
    Ok(())
}

/// Draw an osculation configuration of the given type. Pinned conditions get
/// the given real parameters and count as real points.
pub fn draw_config<R: Rng + ?Sized>(
    rng: &mut R,
    p: &SchubertProblem,
    t: &OscType,
    pinned: &[(usize, Param<BigRational>)],
) -> Result<OsculationConfig> {
    check_type(p, t, pinned)?;
    let r = p.conditions.len();
    let mut points: Vec<Option<OscPoint>> = vec![None; r];
    let mut used: Vec<Gaussian> = Vec::new();
    for (i, param) in pinned {
        if let Param::Finite(v) = param {
            used.push(Gaussian::real(v.clone()));
        }
        points[*i] = Some(OscPoint::Real(param.clone()));
    }
    let fresh = |rng: &mut R, pair: bool, used: &mut Vec<Gaussian>| loop {
        let re = random_rational(rng);
        let g = if pair { Gaussian::new(re, random_nonzero_rational(rng)) } else { Gaussian::real(re) };
        if !used.contains(&g) && !used.contains(&g.conj()) {
            used.push(g.clone());
            if pair {
                used.push(g.conj());
            }
            break g;
        }
    };
    for (lam, rho) in t {
        let fixed = pinned.iter().filter(|(i, _)| p.conditions[*i] == *lam).count();
        let free: Vec<usize> = (0..r).filter(|&i| p.conditions[i] == *lam && points[i].is_none()).collect();
        let reals = rho - fixed;
        for &i in &free[..reals] {
            let g = fresh(rng, false, &mut used);
            points[i] = Some(OscPoint::Real(Param::Finite(g.re)));
        }
        for pair in free[reals..].chunks(2) {
            let g = fresh(rng, true, &mut used);
            points[pair[0]] = Some(OscPoint::Pair { value: g.clone(), partner: pair[1] });
            points[pair[1]] = Some(OscPoint::Pair { value: g.conj(), partner: pair[0] });
        }
    }
    let cfg = OsculationConfig { points: points.into_iter().map(|x| x.unwrap()).collect() };
    cfg.validate(p)?;
    Ok(cfg)
}

/// All-real type for a problem.
pub fn all_real_type(p: &SchubertProblem) -> OscType {
    p.multiplicities()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_differ_and_repeat() {
        let a: u64 = instance_rng(7, 0).random();
        let b: u64 = instance_rng(7, 1).random();
        let c: u64 = instance_rng(7, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn config_has_requested_type() {
        let p = SchubertProblem::new(2, 4, vec![Partition::box_one(); 4]).unwrap();
        let mut rng = instance_rng(1, 0);
        let t = vec![(Partition::box_one(), 2)];
        let cfg = draw_config(&mut rng, &p, &t, &[]).unwrap();
        assert_eq!(cfg.osculation_type(&p), t);
        assert!(draw_config(&mut rng, &p, &vec![(Partition::box_one(), 3)], &[]).is_err());
    }
}
