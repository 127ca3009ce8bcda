//! Coefficient domains.
//!
//! A [`Field`] is a small context object that knows how to combine its
//! elements. Keeping the context separate from the elements lets prime
//! fields carry a runtime modulus while elements stay plain `u64`s.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator is not invertible.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - b * c`, the inner step of every elimination loop.
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_u64(&self, n: u64) -> Self::Elem {
        match i64::try_from(n) {
            Ok(v) => self.from_i64(v),
            Err(_) => self.from_rational(&BigRational::from_integer(BigInt::from(n))).unwrap(),
        }
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// `Z/pZ` for an odd prime `p < 2^63`. Elements are reduced into `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is an odd prime below `2^63`.
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 63), "modulus {p} out of range");
        assert!(crate::primes::is_prime(p), "modulus {p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().unwrap()
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Square root by Tonelli–Shanks, if `a` is a square.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(&a, (p - 1) / 2) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.pow(&z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(&a, q);
        let mut r = self.pow(&a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let b = self.pow(&c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let bc = self.mul(b, c);
        self.sub(a, &bc)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(s0.rem_euclid(self.p as i128) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.reduce_bigint(q.denom());
        let num = self.reduce_bigint(q.numer());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// A Gaussian rational `re + im·i` with `re, im ∈ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gaussian { re, im: BigRational::zero() }
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// The field `Q[i]` of Gaussian rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GaussianField;

impl Field for GaussianField {
    type Elem = Gaussian;

    fn zero(&self) -> Gaussian {
        Gaussian::real(BigRational::zero())
    }
    fn one(&self) -> Gaussian {
        Gaussian::real(BigRational::one())
    }
    fn is_zero(&self, a: &Gaussian) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }
    fn add(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian::new(&a.re + &b.re, &a.im + &b.im)
    }
    fn sub(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian::new(&a.re - &b.re, &a.im - &b.im)
    }
    fn neg(&self, a: &Gaussian) -> Gaussian {
        Gaussian::new(-&a.re, -&a.im)
    }
    fn mul(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
    }
    fn inv(&self, a: &Gaussian) -> Option<Gaussian> {
        let norm = &a.re * &a.re + &a.im * &a.im;
        if norm.is_zero() {
            return None;
        }
        Some(Gaussian::new(&a.re / &norm, -&a.im / &norm))
    }
    fn from_i64(&self, n: i64) -> Gaussian {
        Gaussian::real(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_rational(&self, q: &BigRational) -> Option<Gaussian> {
        Some(Gaussian::real(q.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Exact factorial as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
