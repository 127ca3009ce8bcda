//! Complete factorization of univariate polynomials over `Z/pZ`.
//!
//! Squarefree decomposition, then distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::field::PrimeField;
use crate::univariate::UniPoly;

pub type FpPoly = UniPoly<PrimeField>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Leading coefficient of the input.
    pub unit: u64,
    /// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(FpPoly, usize)>,
}

impl Factorization {
    /// Degrees of the irreducible factors, repeated by multiplicity, largest first.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat_n(g.degree().unwrap(), *m))
            .collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        degs
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Multiply everything back together.
    pub fn expand(&self, field: PrimeField) -> FpPoly {
        let mut acc = UniPoly::constant(field, self.unit);
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m as u64));
        }
        acc
    }
}

fn x_poly(field: PrimeField) -> FpPoly {
    UniPoly::monomial(field, 1, 1)
}

/// `g` with `g(x)^p = f(x)`; requires every exponent of `f` divisible by `p`.
fn pth_root(f: &FpPoly) -> FpPoly {
    let field = *f.field();
    let p = field.modulus() as usize;
    let c: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
    UniPoly::new(field, c)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = Π g_i^i` and each `g_i` squarefree.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = *f.field();
    let p = field.modulus() as usize;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_constant() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_constant() {
        for (g, m) in squarefree_decomposition(&pth_root(&c.monic())) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = *f.field();
    let p = field.modulus();
    let x = x_poly(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest.monic(), deg));
        }
    }
    out
}

fn pow_mod_big(base: &FpPoly, e: &BigUint, modulus: &FpPoly) -> FpPoly {
    let mut acc = UniPoly::one(*base.field()).rem(modulus);
    let b = base.rem(modulus);
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(modulus);
        if e.bit(i) {
            acc = acc.mul(&b).rem(modulus);
        }
    }
    acc
}

fn random_below<R: Rng + ?Sized>(field: PrimeField, deg: usize, rng: &mut R) -> FpPoly {
    let p = field.modulus();
    let c = (0..deg).map(|_| rng.random_range(0..p)).collect();
    UniPoly::new(field, c)
}

/// Split a monic squarefree product of irreducibles of equal degree `d`.
pub fn equal_degree<R: Rng + ?Sized>(g: &FpPoly, d: usize, rng: &mut R) -> Vec<FpPoly> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let field = *g.field();
    let exp = (BigUint::from(field.modulus()).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a = random_below(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let direct = a.gcd(g);
        let u = if !direct.is_constant() {
            direct
        } else {
            let b = pow_mod_big(&a, &exp, g).sub(&UniPoly::one(field));
            b.gcd(g)
        };
        let du = u.degree().unwrap_or(0);
        if du > 0 && du < n {
            let v = g.div_rem(&u).0.monic();
            let mut out = equal_degree(&u, d, rng);
            out.extend(equal_degree(&v, d, rng));
            return out;
        }
    }
}

/// Full factorization over `Z/pZ`. Panics on the zero polynomial.
pub fn factor_mod_p<R: Rng + ?Sized>(f: &FpPoly, rng: &mut R) -> Factorization {
    let unit = *f.leading_coeff().expect("cannot factor the zero polynomial");
    let monic = f.monic();
    let mut factors = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&sqf) {
            for g in equal_degree(&block, d, rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())).then(ma.cmp(mb))
    });
    let total: usize = factors.iter().map(|(g, m)| g.degree().unwrap() * m).sum();
    debug_assert_eq!(Some(total), f.degree());
    Factorization { unit, factors }
}
