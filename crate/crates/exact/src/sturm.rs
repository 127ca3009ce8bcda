//! Real root counting with Sturm sequences over the rationals.
//!
//! The chain is built on primitive integer polynomials: each remainder is a
//! sign-corrected pseudo-remainder divided by its content, so coefficients
//! stay as small as the subresultant structure allows.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::RationalField;
use crate::univariate::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SturmError {
    #[error("cannot count roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree (gcd with derivative has degree {0})")]
    NotSquarefree(usize),
}

/// Integer polynomial, constant term first, no trailing zeros.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &IntPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide by the positive content.
fn primitive(mut p: IntPoly) -> IntPoly {
    let g = content(&p);
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &g;
        }
    }
    p
}

/// Clear denominators of a rational polynomial and make it primitive.
pub fn to_primitive_integer(f: &UniPoly<RationalField>) -> IntPoly {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let p: IntPoly = f.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(p)
}

fn derivative(p: &IntPoly) -> IntPoly {
    let mut d: IntPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut d);
    d
}

/// Positive multiple of `a mod b`: `|lc(b)|^(δ+1) a = q b + r`.
fn signed_prem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() <= db {
        return r;
    }
    let lc = b[db].clone();
    let mut used = 0usize;
    while r.len() > db {
        let top = r.len() - 1;
        let lead = r[top].clone();
        let shift = top - db;
        for c in r.iter_mut() {
            *c *= &lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lead * bj;
        }
        trim(&mut r);
        used += 1;
    }
    if lc.is_negative() && used % 2 == 1 {
        for c in r.iter_mut() {
            *c = -&*c;
        }
    }
    r
}

/// The Sturm chain of a primitive integer polynomial, each element primitive.
pub fn sturm_chain(f: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![f.clone()];
    let d = primitive(derivative(f));
    if d.is_empty() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = signed_prem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        let next: IntPoly = primitive(r).into_iter().map(|c| -c).collect();
        chain.push(next);
    }
    chain
}

fn sign_variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for s in signs {
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_pos_inf(p: &IntPoly) -> Sign {
    p.last().map_or(Sign::NoSign, |c| c.sign())
}

fn sign_at_neg_inf(p: &IntPoly) -> Sign {
    let s = sign_at_pos_inf(p);
    if (p.len() - 1) % 2 == 1 {
        -s
    } else {
        s
    }
}

fn eval_sign(p: &IntPoly, x: &BigRational) -> Sign {
    // sign of d^deg · p(n/d) = sum c_i n^i d^(deg-i), with d > 0
    let (n, d) = (x.numer(), x.denom());
    let deg = p.len() - 1;
    let mut dpows = Vec::with_capacity(p.len());
    let mut dp = BigInt::one();
    for _ in 0..=deg {
        dpows.push(dp.clone());
        dp *= d;
    }
    let mut total = BigInt::zero();
    let mut npow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        total += c * &npow * &dpows[deg - i];
        npow *= n;
    }
    total.sign()
}

/// Number of distinct real roots of a squarefree rational polynomial.
pub fn sturm_count(f: &UniPoly<RationalField>) -> Result<usize, SturmError> {
    if f.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    let p = to_primitive_integer(f);
    let chain = sturm_chain(&p);
    let last = chain.last().unwrap();
    if p.len() > 1 && last.len() > 1 {
        return Err(SturmError::NotSquarefree(last.len() - 1));
    }
    let neg = sign_variations(chain.iter().map(sign_at_neg_inf));
    let pos = sign_variations(chain.iter().map(sign_at_pos_inf));
    Ok(neg - pos)
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn sturm_count_between(
    f: &UniPoly<RationalField>,
    a: &BigRational,
    b: &BigRational,
) -> Result<usize, SturmError> {
    if f.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    let p = to_primitive_integer(f);
    let chain = sturm_chain(&p);
    let last = chain.last().unwrap();
    if p.len() > 1 && last.len() > 1 {
        return Err(SturmError::NotSquarefree(last.len() - 1));
    }
    let va = sign_variations(chain.iter().map(|q| eval_sign(q, a)));
    let vb = sign_variations(chain.iter().map(|q| eval_sign(q, b)));
    Ok(va.saturating_sub(vb))
}
