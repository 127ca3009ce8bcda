//! The box family `(⊞_{k,n}, ⊡^{n-1})`: solutions correspond to factorizations
//! `f' = g·h` of the derivative of `f(t) = Π (t - tᵢ)`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use sclab_exact::field::{binomial, factorial, Field, RationalField};
use sclab_exact::linalg::{self, Matrix};
use sclab_exact::{gated_real_count, UniPoly};

use crate::combinat::{Partition, SchubertProblem};
use crate::error::{Error, Result};
use crate::realcount::{count_config, CountOptions};
use crate::sampling::{draw_config, instance_rng, random_linear_form};
use crate::schubert::{osculating_flag, OscPoint, OsculationConfig, Param};

/// `(n-k-1)^(k-1)`.
pub fn box_partition(k: usize, n: usize) -> Result<Partition> {
    if k < 2 || n < k + 2 {
        return Err(Error::BadGrassmannian { k, n });
    }
    Ok(Partition::of(&vec![n - k - 1; k - 1]))
}

/// `(⊞, ⊡^{n-1})` with the box condition first.
pub fn box_problem(k: usize, n: usize) -> Result<SchubertProblem> {
    let mut conds = vec![box_partition(k, n)?];
    conds.extend(std::iter::repeat_n(Partition::box_one(), n - 1));
    SchubertProblem::new(k, n, conds)
}

/// Coefficient of `x^{n-k-1} y^{k-1}` in `(x+y)^ρ (x²+y²)^c`, `c = (n-2-ρ)/2`.
pub fn nu(k: usize, n: usize, rho: usize) -> Result<BigUint> {
    if k < 1 || n < k + 1 || rho + 2 > n || (n - 2 - rho) % 2 != 0 {
        return Err(Error::Invalid(format!("no factorization type with rho = {rho} for Gr({k},{n})")));
    }
    let c = (n - 2 - rho) / 2;
    let a = n - k - 1;
    let mut total = BigUint::zero();
    for j in 0..=c {
        if 2 * j <= a && a - 2 * j <= rho {
            total += binomial(c as u64, j as u64) * binomial(rho as u64, (a - 2 * j) as u64);
        }
    }
    Ok(total)
}

/// Real roots of `f'` that a real `f` of degree `n - 1` can have.
pub fn admissible_rho(n: usize) -> Vec<usize> {
    let lo = (n - 2) % 2;
    (lo..=n - 2).step_by(2).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBounds {
    pub lower: BigUint,
    pub attainable: BTreeSet<BigUint>,
}

/// Possible real solution counts for configurations with `rho_box` real
/// points: `ν(k,n,ρ)` over `ρ_⊡ - 1 ≤ ρ ≤ n - 2` of the right parity.
pub fn family_bounds(k: usize, n: usize, rho_box: usize) -> Result<FamilyBounds> {
    box_partition(k, n)?;
    if rho_box > n - 1 || (n - 1 - rho_box) % 2 != 0 {
        return Err(Error::Invalid(format!("{rho_box} real points impossible for {} conditions", n - 1)));
    }
    let attainable = admissible_rho(n)
        .into_iter()
        .filter(|&r| r + 1 >= rho_box)
        .map(|r| nu(k, n, r))
        .collect::<Result<BTreeSet<_>>>()?;
    let lower = attainable.iter().next().cloned().unwrap_or_default();
    Ok(FamilyBounds { lower, attainable })
}

/// `f = Π (t - tᵢ)` for the ⊡ conditions, its derivative and the number of
/// real roots of the derivative.
#[derive(Clone, Debug)]
pub struct FactorizationInstance {
    pub k: usize,
    pub n: usize,
    pub points: Vec<OscPoint>,
    pub f: UniPoly<RationalField>,
    pub fprime: UniPoly<RationalField>,
    /// `None` when `f'` is not squarefree.
    pub rho: Option<usize>,
}

impl FactorizationInstance {
    /// From the finite ⊡ points; pairs contribute real quadratics.
    pub fn new(k: usize, n: usize, points: Vec<OscPoint>) -> Result<Self> {
        box_partition(k, n)?;
        if points.len() != n - 1 {
            return Err(Error::Config(format!("{} points for {} conditions", points.len(), n - 1)));
        }
        let q = RationalField;
        let mut f = UniPoly::one(q);
        for (i, p) in points.iter().enumerate() {
            match p {
                OscPoint::Real(Param::Finite(t)) => f = f.mul(&UniPoly::linear_root(q, t)),
                OscPoint::Real(Param::Infinity) => {
                    return Err(Error::Config("point conditions must be finite".into()));
                }
                OscPoint::Pair { value, partner } => {
                    if *partner > i {
                        let norm = &value.re * &value.re + &value.im * &value.im;
                        let two = BigRational::from_integer(BigInt::from(2));
                        let quad = UniPoly::new(q, vec![norm, -(two * &value.re), q.one()]);
                        f = f.mul(&quad);
                    }
                }
            }
        }
        let fprime = f.derivative();
        let rho = gated_real_count(&fprime, n - 2);
        Ok(FactorizationInstance { k, n, points, f, fprime, rho })
    }

    /// The ⊡ points of a configuration for the box problem, box at index 0.
    pub fn from_config(k: usize, n: usize, cfg: &OsculationConfig) -> Result<Self> {
        if cfg.points.first() != Some(&OscPoint::Real(Param::Infinity)) {
            return Err(Error::Config("the box condition must sit at infinity".into()));
        }
        let pts = cfg.points[1..]
            .iter()
            .map(|p| match p {
                OscPoint::Pair { value, partner } => OscPoint::Pair { value: value.clone(), partner: partner - 1 },
                other => other.clone(),
            })
            .collect();
        Self::new(k, n, pts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationCount {
    pub real_count: usize,
    pub complex_count: usize,
}

/// Real factorizations `f' = g·h`, `deg g = n-k-1`, `deg h = k-1`, up to
/// scalars. The count only depends on how many real roots `f'` has.
pub fn factorization_solve(inst: &FactorizationInstance) -> Result<FactorizationCount> {
    let rho = inst.rho.ok_or_else(|| Error::Degenerate("f' is not squarefree".into()))?;
    let real = nu(inst.k, inst.n, rho)?;
    let complex = binomial((inst.n - 2) as u64, (inst.k - 1) as u64);
    Ok(FactorizationCount {
        real_count: real.to_usize().expect("count fits"),
        complex_count: complex.to_usize().expect("count fits"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub factorization: Option<usize>,
    pub pipeline: Option<usize>,
}

impl CrossCheck {
    /// Both sides produced a count and the counts agree.
    pub fn agrees(&self) -> bool {
        self.factorization.is_some() && self.factorization == self.pipeline
    }

    pub fn conclusive(&self) -> bool {
        self.factorization.is_some() && self.pipeline.is_some()
    }
}

/// Count real solutions of the same configuration by factorizations and by
/// elimination.
pub fn family_cross_check(
    k: usize,
    n: usize,
    cfg: &OsculationConfig,
    form: &[i64],
    opts: &CountOptions,
) -> Result<CrossCheck> {
    let p = box_problem(k, n)?;
    let inst = FactorizationInstance::from_config(k, n, cfg)?;
    let factorization = factorization_solve(&inst).ok().map(|c| c.real_count);
    let pipeline = count_config(&p, cfg, form, opts)?.real_count;
    Ok(CrossCheck { factorization, pipeline })
}

/// Real ⊡ points of cross-check instance `i`: cycles through every
/// realizable count so a run mixes all osculation types.
pub fn cross_check_real_points(n: usize, index: u64) -> usize {
    let m = n - 1;
    m - 2 * (index as usize % (m / 2 + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckRecord {
    pub k: usize,
    pub n: usize,
    pub instance: u64,
    pub real_points: usize,
    pub factorization: Option<usize>,
    pub pipeline: Option<usize>,
    pub agrees: bool,
    pub attempts: usize,
}

/// Instance `index` of a seeded cross-check run: the box at ∞ and the ⊡
/// conditions with `cross_check_real_points` real parameters. Inconclusive
/// draws are redrawn from the same stream.
pub fn cross_check_instance(k: usize, n: usize, seed: u64, index: u64, opts: &CountOptions) -> Result<CrossCheckRecord> {
    let p = box_problem(k, n)?;
    let real_points = cross_check_real_points(n, index);
    let ty = vec![(p.conditions[0].clone(), 1), (p.conditions[1].clone(), real_points)];
    let mut rng = instance_rng(seed, index);
    let mut last = None;
    for attempt in 1..=opts.retries + 1 {
        let cfg = draw_config(&mut rng, &p, &ty, &[(0, Param::Infinity)])?;
        let form = random_linear_form(&mut rng, p.dim());
        let c = family_cross_check(k, n, &cfg, &form, opts)?;
        let done = c.conclusive();
        last = Some((c, attempt));
        if done {
            break;
        }
    }
    let (c, attempts) = last.expect("at least one attempt");
    Ok(CrossCheckRecord {
        k,
        n,
        instance: index,
        real_points,
        factorization: c.factorization,
        pipeline: c.pipeline,
        agrees: c.agrees(),
        attempts,
    })
}

/// `cᵢ = (-1)^{n-k-i+1} (n-k-i)!` for `i = 1..=n-k`.
pub fn gadget_constants<F: Field>(f: &F, k: usize, n: usize) -> Vec<F::Elem> {
    (1..=n - k)
        .map(|i| {
            let m = factorial((n - k - i) as u64);
            let v = f.from_rational(&BigRational::from_integer(BigInt::from(m))).expect("factorial is invertible");
            if (n - k - i + 1) % 2 == 1 {
                f.neg(&v)
            } else {
                v
            }
        })
        .collect()
}

/// The matrix `H(f,g,h)` of the box cell, with `g` of length `n-k` and `h`
/// of length `k`, both constant term first and with leading coefficient 1.
pub fn box_cell_matrix<F: Field>(
    f: &F,
    k: usize,
    n: usize,
    f0: &F::Elem,
    g: &[F::Elem],
    h: &[F::Elem],
) -> Result<Matrix<F::Elem>> {
    if g.len() != n - k || h.len() != k || !f.is_one(&g[n - k - 1]) || !f.is_one(&h[k - 1]) {
        return Err(Error::Invalid("g and h must be monic of degrees n-k-1 and k-1".into()));
    }
    let c = gadget_constants(f, k, n);
    let mut m = vec![vec![f.zero(); n]; k];
    for i in 1..=n - k {
        m[0][i - 1] = f.mul(&c[i - 1], &g[n - k - i]);
    }
    let inv = |x: &F::Elem| f.inv(x).ok_or_else(|| Error::Degenerate("h has a zero coefficient".into()));
    m[0][n - k] = f.mul(f0, &inv(&h[0])?);
    for r in 1..k {
        m[r][n - k + r - 1] = f.neg(&f.from_u64(r as u64));
        m[r][n - k + r] = f.mul(&h[r - 1], &inv(&h[r])?);
    }
    Ok(m)
}

/// `det [H ; F_{n-k}(t)]` and the right side `(-1)^{k(n-k)} (∫g·h + f₀)(t)`.
pub fn big_det_sides<F: Field>(
    f: &F,
    k: usize,
    n: usize,
    f0: &F::Elem,
    g: &[F::Elem],
    h: &[F::Elem],
    t: &F::Elem,
) -> Result<(F::Elem, F::Elem)> {
    let mut m = box_cell_matrix(f, k, n, f0, g, h)?;
    let flag = osculating_flag(f, &Param::Finite(t.clone()), n)?;
    m.extend(flag[..n - k].iter().cloned());
    let lhs = linalg::det(f, &m);
    let mut rhs = f0.clone();
    for (i, gi) in g.iter().enumerate() {
        for (j, hj) in h.iter().enumerate() {
            let e = (i + j + 1) as u64;
            let term = f.mul(&f.mul(gi, hj), &f.pow(t, e));
            rhs = f.add(&rhs, &f.div(&term, &f.from_u64(e)).expect("i+j+1 is invertible"));
        }
    }
    if (k * (n - k)) % 2 == 1 {
        rhs = f.neg(&rhs);
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert::q;

    #[test]
    fn box_shapes() {
        assert_eq!(box_partition(2, 8).unwrap(), Partition::of(&[5]));
        assert_eq!(box_partition(3, 7).unwrap(), Partition::of(&[3, 3]));
        assert_eq!(box_partition(4, 8).unwrap(), Partition::of(&[3, 3, 3]));
        assert!(box_partition(1, 5).is_err());
    }

    #[test]
    fn nu_values() {
        let vals: Vec<u64> = admissible_rho(13).iter().map(|&r| nu(5, 13, r).unwrap().to_u64().unwrap()).collect();
        assert_eq!(vals, vec![10, 18, 38, 78, 162, 330]);
        assert_eq!(nu(2, 4, 0).unwrap(), BigUint::zero());
        assert!(nu(2, 5, 2).is_err());
    }

    #[test]
    fn bounds_examples() {
        let b = family_bounds(2, 8, 7).unwrap();
        assert_eq!(b.lower, BigUint::from(6u32));
        assert_eq!(b.attainable.len(), 1);
        let b = family_bounds(4, 8, 7).unwrap();
        assert!(!b.attainable.contains(&BigUint::from(12u32)) && !b.attainable.contains(&BigUint::from(16u32)));
        assert_eq!(family_bounds(5, 13, 0).unwrap().lower, BigUint::from(10u32));
        assert_eq!(family_bounds(5, 13, 2).unwrap().lower, BigUint::from(10u32));
        assert!(family_bounds(5, 13, 1).is_err());
    }

    #[test]
    fn solve_all_real() {
        let pts = [0, 1, 2, 3].iter().map(|&t| OscPoint::Real(Param::Finite(q(t, 1)))).collect();
        let inst = FactorizationInstance::new(2, 5, pts).unwrap();
        let c = factorization_solve(&inst).unwrap();
        assert_eq!((c.real_count, c.complex_count), (3, 3));
    }

    #[test]
    fn big_det_identity() {
        let f = RationalField;
        for (k, n) in [(2, 4), (2, 5), (3, 6), (3, 7), (4, 8)] {
            let g: Vec<BigRational> = (0..n - k).map(|i| if i == n - k - 1 { q(1, 1) } else { q(i as i64 * 3 - 2, 5) }).collect();
            let h: Vec<BigRational> = (0..k).map(|i| if i == k - 1 { q(1, 1) } else { q(7 - i as i64, 3) }).collect();
            for t in [q(0, 1), q(2, 3), q(-5, 2)] {
                let (l, r) = big_det_sides(&f, k, n, &q(11, 7), &g, &h, &t).unwrap();
                assert_eq!(l, r, "k={k} n={n} t={t}");
            }
        }
    }
}
