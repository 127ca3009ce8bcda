//! Sparse multivariate polynomials and polynomial systems.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::field::{Field, Gaussian, GaussianField, RationalField};
use crate::monomial::{Lex, Monomial, MonomialOrder, MAX_VARS};

/// Sparse polynomial in `nvars` variables. Terms are kept sorted by
/// descending lex order with no zero coefficients.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl<F: Field> MultiPoly<F> {
    /// Build from arbitrary terms: like monomials are combined and zeros dropped.
    pub fn from_terms(field: F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        assert!(nvars <= MAX_VARS);
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert!(m.max_var().is_none_or(|v| v < nvars));
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| Lex::cmp(&b.0, &a.0));
        MultiPoly { field, nvars, terms }
    }

    pub fn zero(field: F, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(), c)])
    }

    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let one = field.one();
        Self::from_terms(field, nvars, [(Monomial::var(i), one)])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => Lex::cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, if negate { f.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate { f.sub(a, b) } else { f.add(a, b) };
                    if !f.is_zero(&c) {
                        out.push((*m, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        if self.field.is_zero(s) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, self.field.mul(c, s))).collect();
        MultiPoly { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let f = &self.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                terms.push((ma.mul(mb), f.mul(a, b)));
            }
        }
        Self::from_terms(f.clone(), self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.field.clone(), self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars);
        let f = &self.field;
        let mut total = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            total = f.add(&total, &t);
        }
        total
    }

    pub fn map<G: Field>(&self, target: G, mut phi: impl FnMut(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        let terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, phi(c))).collect();
        MultiPoly::from_terms(target, self.nvars, terms)
    }

    /// Like [`map`](Self::map) but fails if any coefficient has no image.
    pub fn try_map<G: Field>(&self, target: G, mut phi: impl FnMut(&F::Elem) -> Option<G::Elem>) -> Option<MultiPoly<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, phi(c)?));
        }
        Some(MultiPoly::from_terms(target, self.nvars, terms))
    }

    /// Reinterpret in a ring with more variables.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        MultiPoly { field: self.field.clone(), nvars, terms: self.terms.clone() }
    }

    /// Substitute polynomials for every variable.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let f = &self.field;
        let mut total = MultiPoly::zero(f.clone(), nv);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(f.clone(), nv, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            total = total.add(&t);
        }
        total
    }
}

/// The polynomial `Re(f) + Im(f)` with rational coefficients.
pub fn realize_gaussian(f: &MultiPoly<GaussianField>) -> MultiPoly<RationalField> {
    f.map(RationalField, |c: &Gaussian| &c.re + &c.im)
}

/// Embed a rational polynomial into the Gaussian rationals.
pub fn to_gaussian(f: &MultiPoly<RationalField>) -> MultiPoly<GaussianField> {
    f.map(GaussianField, |c| Gaussian::real(c.clone()))
}

/// Named variables together with a list of polynomials in them.
#[derive(Clone, Debug)]
pub struct PolySystem<F: Field> {
    pub field: F,
    pub vars: Vec<String>,
    pub polys: Vec<MultiPoly<F>>,
}

impl<F: Field> PolySystem<F> {
    pub fn new(field: F, vars: Vec<String>) -> Self {
        assert!(vars.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        PolySystem { field, vars, polys: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn push(&mut self, p: MultiPoly<F>) {
        assert_eq!(p.nvars(), self.vars.len());
        if !p.is_zero() {
            self.polys.push(p);
        }
    }

    pub fn extend(&mut self, other: PolySystem<F>) {
        for p in other.polys {
            self.push(p);
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Whether every polynomial vanishes at `point`.
    pub fn satisfied_by(&self, point: &[F::Elem]) -> bool {
        self.polys.iter().all(|p| self.field.is_zero(&p.eval(point)))
    }

    pub fn map<G: Field>(&self, target: G, mut phi: impl FnMut(&F::Elem) -> G::Elem) -> PolySystem<G> {
        let polys = self.polys.iter().map(|p| p.map(target.clone(), &mut phi)).filter(|p| !p.is_zero()).collect();
        PolySystem { field: target, vars: self.vars.clone(), polys }
    }

    pub fn try_map<G: Field>(&self, target: G, mut phi: impl FnMut(&F::Elem) -> Option<G::Elem>) -> Option<PolySystem<G>> {
        let mut polys = Vec::with_capacity(self.polys.len());
        for p in &self.polys {
            let q = p.try_map(target.clone(), &mut phi)?;
            if !q.is_zero() {
                polys.push(q);
            }
        }
        Some(PolySystem { field: target, vars: self.vars.clone(), polys })
    }
}

impl<F: Field> MultiPoly<F>
where
    F::Elem: fmt::Display,
{
    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        DisplayPoly { p: self, vars }
    }
}

struct DisplayPoly<'a, F: Field> {
    p: &'a MultiPoly<F>,
    vars: &'a [String],
}

impl<F: Field> fmt::Display for DisplayPoly<'_, F>
where
    F::Elem: fmt::Display,
{
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(out, "0");
        }
        for (idx, (m, c)) in self.p.terms.iter().enumerate() {
            if idx > 0 {
                write!(out, " + ")?;
            }
            write!(out, "({c})")?;
            for i in 0..self.p.nvars {
                match m.exp(i) {
                    0 => {}
                    1 => write!(out, "*{}", self.vars[i])?,
                    e => write!(out, "*{}^{e}", self.vars[i])?,
                }
            }
        }
        Ok(())
    }
}
