//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use crate::field::Field;

/// Dense polynomial, coefficients stored from the constant term upward.
/// The coefficient list never ends in a zero.
#[derive(Clone)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for UniPoly<F> {}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        UniPoly { field, coeffs: vec![one] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c · x^d`
    pub fn monomial(field: F, c: F::Elem, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        Self::new(field, coeffs)
    }

    /// `x - a`
    pub fn linear_root(field: F, a: &F::Elem) -> Self {
        let na = field.neg(a);
        let one = field.one();
        Self::new(field, vec![na, one])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.field.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.field.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let c = self.coeffs.iter().map(|a| self.field.mul(a, s)).collect();
        Self::new(self.field.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), c)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = f.inv(divisor.leading_coeff().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f.clone()), self.clone());
        }
        let mut quo = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = f.mul(&rem[i], &lc_inv);
            if f.is_zero(&q) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub_mul(&rem[i - dd + j], &q, d);
            }
            quo[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(f.clone(), quo), Self::new(f.clone(), rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic scalar multiple; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let fld = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(fld.clone()), Self::zero(fld.clone()));
        let (mut t0, mut t1) = (Self::zero(fld.clone()), Self::one(fld.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        match r0.leading_coeff().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = fld.inv(&lc).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_u64(i as u64)))
            .collect();
        Self::new(f.clone(), c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(self.field.clone()), |acc, c| {
            acc.mul(other).add(&Self::constant(self.field.clone(), c.clone()))
        })
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.field.clone()).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Whether `gcd(f, f')` is constant. Zero is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    pub fn map<G: Field>(&self, target: G, mut phi: impl FnMut(&F::Elem) -> G::Elem) -> UniPoly<G> {
        let c = self.coeffs.iter().map(&mut phi).collect();
        UniPoly::new(target, c)
    }
}

/// Shape-Lemma validity test: squarefree and of the expected degree.
pub fn squarefree_and_degree<F: Field>(f: &UniPoly<F>, expected: usize) -> bool {
    f.degree() == Some(expected) && f.is_squarefree()
}

impl<F: Field> fmt::Display for UniPoly<F>
where
    F::Elem: fmt::Display,
{
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match i {
                0 => write!(out, "{c}")?,
                1 => write!(out, "({c})*t")?,
                _ => write!(out, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}
