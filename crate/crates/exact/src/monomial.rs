//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Upper bound on the number of variables in any polynomial ring.
pub const MAX_VARS: usize = 24;

/// Exponent vector with cached total degree and support mask.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
    mask: u32,
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "x{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0, mask: 0 }
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u8) -> Self {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        let mut m = Self::one();
        m.exps[i] = e;
        m.deg = e as u16;
        m.mask = if e > 0 { 1 << i } else { 0 };
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            let e = u8::try_from(e).expect("exponent overflow");
            m.exps[i] = e;
            m.deg += e as u16;
            if e > 0 {
                m.mask |= 1 << i;
            }
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Index of the largest variable with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        (self.mask != 0).then(|| 31 - self.mask.leading_zeros() as usize)
    }

    /// Whether only variable `i` (or none) occurs.
    pub fn is_pure_power_of(&self, i: usize) -> bool {
        self.mask & !(1 << i) == 0
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        Monomial { exps, deg: self.deg + other.deg, mask: self.mask | other.mask }
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0u8; MAX_VARS];
        let mut mask = 0;
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
            if exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        Some(Monomial { exps, deg: other.deg - self.deg, mask })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u16;
        }
        Monomial { exps, deg, mask: self.mask | other.mask }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.mask & other.mask == 0
    }
}

/// A total order on monomials compatible with multiplication.
pub trait MonomialOrder: Copy + Default + fmt::Debug + Send + Sync + 'static {
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering;
}

/// Pure lexicographic order, `x0 > x1 > ...`.
#[derive(Clone, Copy, Default, Debug)]
pub struct Lex;

/// Graded reverse lexicographic order, `x0 > x1 > ...`.
#[derive(Clone, Copy, Default, Debug)]
pub struct GrevLex;

impl MonomialOrder for Lex {
    #[inline]
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        a.exps.cmp(&b.exps)
    }
}

impl MonomialOrder for GrevLex {
    #[inline]
    fn cmp(a: &Monomial, b: &Monomial) -> Ordering {
        match a.deg.cmp(&b.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if a.exps[i] != b.exps[i] {
                return b.exps[i].cmp(&a.exps[i]);
            }
        }
        Ordering::Equal
    }
}
