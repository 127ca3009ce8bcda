//! Eliminants of zero-dimensional systems.
//!
//! The default route computes a grevlex basis, builds the multiplication
//! matrix of the retained coordinate on the quotient ring, and takes its
//! minimal polynomial. Back-substitution reads the shape-position lex basis
//! off the same quotient ring; Buchberger's algorithm under lex is kept as
//! a cross-check for small systems, where it stays fast.

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::field::Field;
use crate::linalg;
use crate::groebner::{GbError, GbOptions, GroebnerBasis, Terms};
use crate::monomial::{GrevLex, Lex, Monomial, MonomialOrder, MAX_VARS};
use crate::multivariate::{MultiPoly, PolySystem};
use crate::univariate::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElimError {
    #[error("ideal is not zero-dimensional (no pure power of variable {0} among leading terms)")]
    PositiveDimensional(usize),
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error("quotient ring has dimension above the limit {0}")]
    TooManySolutions(usize),
    #[error("too many variables for the lex route")]
    TooManyVariables,
}

/// Which univariate coordinate to eliminate down to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Retained<E> {
    /// An existing coordinate.
    Var(usize),
    /// A fresh coordinate `y = Σ cᵢ xᵢ`.
    Linear(Vec<E>),
}

impl<E: Clone> Retained<E> {
    fn coefficients<F: Field<Elem = E>>(&self, f: &F, nvars: usize) -> Vec<E> {
        match self {
            Retained::Var(i) => (0..nvars).map(|j| if j == *i { f.one() } else { f.zero() }).collect(),
            Retained::Linear(c) => {
                assert_eq!(c.len(), nvars, "linear form has the wrong length");
                c.clone()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Eliminant<F: Field> {
    /// Monic generator of the elimination ideal; `1` when `empty`.
    pub poly: UniPoly<F>,
    /// The system has no solutions.
    pub empty: bool,
    /// Dimension of the quotient ring: solutions counted with multiplicity.
    pub multiplicity_count: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct ElimOptions {
    pub gb: GbOptions,
    /// Reject quotient rings of larger dimension.
    pub max_quotient_dim: usize,
}

impl Default for ElimOptions {
    fn default() -> Self {
        ElimOptions { gb: GbOptions::default(), max_quotient_dim: 5000 }
    }
}

/// Monomials outside the initial ideal, in ascending order of discovery.
pub fn standard_monomials<F: Field, O: MonomialOrder>(
    gb: &GroebnerBasis<F, O>,
    limit: usize,
) -> Result<Vec<Monomial>, ElimError> {
    let n = gb.nvars();
    let lms = gb.leading_monomials();
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    for i in 0..n {
        if !lms.iter().any(|m| m.is_pure_power_of(i) && !m.is_one()) {
            return Err(ElimError::PositiveDimensional(i));
        }
    }
    let mut seen: FxHashMap<Monomial, ()> = FxHashMap::default();
    let mut out = vec![Monomial::one()];
    seen.insert(Monomial::one(), ());
    let mut idx = 0;
    while idx < out.len() {
        let m = out[idx];
        idx += 1;
        for i in 0..n {
            let next = m.mul(&Monomial::var(i));
            if seen.contains_key(&next) || lms.iter().any(|l| l.divides(&next)) {
                continue;
            }
            seen.insert(next, ());
            out.push(next);
            if out.len() > limit {
                return Err(ElimError::TooManySolutions(limit));
            }
        }
    }
    Ok(out)
}

/// Minimal polynomial of the matrix `m` (acting on column vectors) applied to
/// the first basis vector, by Krylov iteration.
fn krylov_minpoly<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> UniPoly<F> {
    let dim = m.len();
    // stored reduced vectors: (vector, combination, pivot)
    let mut stored: Vec<(Vec<F::Elem>, Vec<F::Elem>, usize)> = Vec::new();
    let mut v = vec![f.zero(); dim];
    v[0] = f.one();
    for j in 0..=dim {
        let mut w = v.clone();
        let mut comb = vec![f.zero(); dim + 1];
        comb[j] = f.one();
        for (sv, sc, piv) in &stored {
            if f.is_zero(&w[*piv]) {
                continue;
            }
            let factor = w[*piv].clone();
            for (a, b) in w.iter_mut().zip(sv.iter()) {
                *a = f.sub_mul(a, &factor, b);
            }
            for (a, b) in comb.iter_mut().zip(sc.iter()) {
                *a = f.sub_mul(a, &factor, b);
            }
        }
        match w.iter().position(|x| !f.is_zero(x)) {
            None => {
                comb.truncate(j + 1);
                return UniPoly::new(f.clone(), comb).monic();
            }
            Some(piv) => {
                let inv = f.inv(&w[piv]).unwrap();
                for a in w.iter_mut() {
                    *a = f.mul(a, &inv);
                }
                for a in comb.iter_mut() {
                    *a = f.mul(a, &inv);
                }
                stored.push((w, comb, piv));
            }
        }
        // v <- M v
        v = (0..dim)
            .map(|r| {
                m[r].iter()
                    .zip(v.iter())
                    .fold(f.zero(), |acc, (a, b)| if f.is_zero(b) { acc } else { f.add(&acc, &f.mul(a, b)) })
            })
            .collect();
    }
    unreachable!("Krylov sequence must become dependent within dim + 1 steps")
}

type QuotientData<E> = (Vec<Monomial>, FxHashMap<Monomial, usize>, Vec<Vec<E>>);

/// Standard monomials, their positions, and the matrix of multiplication by
/// `y = Σ cᵢ xᵢ` on the quotient ring (column `b` holds `NF(y·b)`).
fn quotient_data<F: Field, O: MonomialOrder>(
    gb: &GroebnerBasis<F, O>,
    c: &[F::Elem],
    max_dim: usize,
) -> Result<QuotientData<F::Elem>, ElimError> {
    let f = gb.field().clone();
    let std = standard_monomials(gb, max_dim)?;
    let dim = std.len();
    let index: FxHashMap<Monomial, usize> = std.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut m = vec![vec![f.zero(); dim]; dim];
    let mut cache: FxHashMap<Monomial, Terms<F::Elem>> = FxHashMap::default();
    for (col, b) in std.iter().enumerate() {
        for (i, ci) in c.iter().enumerate() {
            if f.is_zero(ci) {
                continue;
            }
            let xb = b.mul(&Monomial::var(i));
            let nf = match index.get(&xb) {
                Some(&r) => vec![(std[r], f.one())],
                None => cache
                    .entry(xb)
                    .or_insert_with(|| gb.normal_form_terms(vec![(xb, f.one())]))
                    .clone(),
            };
            for (mon, a) in nf {
                let r = index[&mon];
                m[r][col] = f.add(&m[r][col], &f.mul(ci, &a));
            }
        }
    }
    Ok((std, index, m))
}

fn mat_vec<F: Field>(f: &F, m: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| if f.is_zero(b) { acc } else { f.add(&acc, &f.mul(a, b)) })
        })
        .collect()
}

/// Eliminant through the quotient ring of a grevlex basis.
pub fn eliminant_from_basis<F: Field, O: MonomialOrder>(
    gb: &GroebnerBasis<F, O>,
    retained: &Retained<F::Elem>,
    max_dim: usize,
) -> Result<Eliminant<F>, ElimError> {
    let f = gb.field().clone();
    if gb.is_unit() {
        return Ok(Eliminant { poly: UniPoly::one(f), empty: true, multiplicity_count: 0 });
    }
    let c = retained.coefficients(&f, gb.nvars());
    let (std, _, m) = quotient_data(gb, &c, max_dim)?;
    let poly = krylov_minpoly(&f, &m);
    Ok(Eliminant { poly, empty: false, multiplicity_count: std.len() })
}

/// Lex basis in shape position: the eliminant `m(y)` and `xᵢ = hᵢ(y)`
/// with `deg hᵢ < deg m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeBasis<F: Field> {
    pub eliminant: UniPoly<F>,
    pub coords: Vec<UniPoly<F>>,
}

impl<F: Field> ShapeBasis<F> {
    /// The solution over a root of the eliminant.
    pub fn point(&self, root: &F::Elem) -> Vec<F::Elem> {
        self.coords.iter().map(|h| h.eval(root)).collect()
    }
}

/// The shape-position lex basis read off from any basis of a
/// zero-dimensional ideal, by solving `NF(xᵢ) = Σ aⱼ NF(yʲ)` in the quotient
/// ring. `None` when `y` does not separate the solutions, that is when the
/// eliminant has degree below the quotient dimension.
pub fn shape_basis<F: Field, O: MonomialOrder>(
    gb: &GroebnerBasis<F, O>,
    retained: &Retained<F::Elem>,
    max_dim: usize,
) -> Result<Option<ShapeBasis<F>>, ElimError> {
    let f = gb.field().clone();
    if gb.is_unit() {
        return Ok(None);
    }
    let n = gb.nvars();
    let c = retained.coefficients(&f, n);
    let (std, index, m) = quotient_data(gb, &c, max_dim)?;
    let dim = std.len();
    let eliminant = krylov_minpoly(&f, &m);
    if eliminant.degree() != Some(dim) {
        return Ok(None);
    }
    let mut krylov = Vec::with_capacity(dim);
    let mut v = vec![f.zero(); dim];
    v[0] = f.one();
    for _ in 0..dim {
        let next = mat_vec(&f, &m, &v);
        krylov.push(v);
        v = next;
    }
    let targets: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let mut t = vec![f.zero(); dim];
            let x = Monomial::var(i);
            let nf = match index.get(&x) {
                Some(&r) => vec![(std[r], f.one())],
                None => gb.normal_form_terms(vec![(x, f.one())]),
            };
            for (mon, a) in nf {
                t[index[&mon]] = a;
            }
            t
        })
        .collect();
    let mut aug: Vec<Vec<F::Elem>> = (0..dim)
        .map(|r| krylov.iter().map(|k| k[r].clone()).chain(targets.iter().map(|t| t[r].clone())).collect())
        .collect();
    let pivots = linalg::rref(&f, &mut aug);
    debug_assert!(pivots.iter().take(dim).copied().eq(0..dim), "Krylov vectors span the quotient");
    let coords = (0..n).map(|i| UniPoly::new(f.clone(), (0..dim).map(|j| aug[j][dim + i].clone()).collect())).collect();
    Ok(Some(ShapeBasis { eliminant, coords }))
}

/// `shape_basis` of a system through its grevlex basis.
pub fn groebner_shape<F: Field>(
    sys: &PolySystem<F>,
    retained: &Retained<F::Elem>,
    opts: ElimOptions,
) -> Result<Option<ShapeBasis<F>>, ElimError> {
    let gb = GroebnerBasis::<F, GrevLex>::compute(&sys.field, sys.nvars(), &sys.polys, opts.gb)?;
    shape_basis(&gb, retained, opts.max_quotient_dim)
}

/// Eliminant of a system: grevlex basis, then minimal polynomial of the
/// retained coordinate on the quotient ring.
pub fn groebner_eliminate<F: Field>(
    sys: &PolySystem<F>,
    retained: &Retained<F::Elem>,
    opts: ElimOptions,
) -> Result<Eliminant<F>, ElimError> {
    let gb = GroebnerBasis::<F, GrevLex>::compute(&sys.field, sys.nvars(), &sys.polys, opts.gb)?;
    eliminant_from_basis(&gb, retained, opts.max_quotient_dim)
}

/// Lex basis of the system with the retained coordinate appended as the
/// last (smallest) variable, together with the eliminant read off from it.
pub struct LexElimination<F: Field> {
    pub basis: GroebnerBasis<F, Lex>,
    pub eliminant: Eliminant<F>,
}

/// The lex route: append `y` last, add `y - Σ cᵢ xᵢ`, compute a lex basis and
/// return its lowest-degree member in `k[y]`.
pub fn lex_eliminate<F: Field>(
    sys: &PolySystem<F>,
    retained: &Retained<F::Elem>,
    opts: GbOptions,
) -> Result<LexElimination<F>, ElimError> {
    let f = sys.field.clone();
    let n = sys.nvars();
    if n + 1 > MAX_VARS {
        return Err(ElimError::TooManyVariables);
    }
    let c = retained.coefficients(&f, n);
    let mut polys: Vec<MultiPoly<F>> = sys.polys.iter().map(|p| p.extend_vars(n + 1)).collect();
    let mut link = MultiPoly::var(f.clone(), n + 1, n);
    for (i, ci) in c.iter().enumerate() {
        link = link.sub(&MultiPoly::var(f.clone(), n + 1, i).scale(ci));
    }
    polys.push(link);
    let basis = GroebnerBasis::<F, Lex>::compute(&f, n + 1, &polys, opts)?;
    if basis.is_unit() {
        let eliminant = Eliminant { poly: UniPoly::one(f), empty: true, multiplicity_count: 0 };
        return Ok(LexElimination { basis, eliminant });
    }
    let dim = standard_monomials(&basis, usize::MAX)?.len();
    let uni = basis
        .polys()
        .iter()
        .filter(|p| p.iter().all(|(m, _)| m.is_pure_power_of(n)))
        .min_by_key(|p| p[0].0.degree())
        .ok_or(ElimError::PositiveDimensional(n))?;
    let deg = uni[0].0.degree() as usize;
    let mut coeffs = vec![f.zero(); deg + 1];
    for (m, a) in uni {
        coeffs[m.exp(n) as usize] = a.clone();
    }
    let eliminant = Eliminant { poly: UniPoly::new(f, coeffs).monic(), empty: false, multiplicity_count: dim };
    Ok(LexElimination { basis, eliminant })
}

/// For a lex basis in shape position (every variable except the last appears
/// as `xᵢ - hᵢ(x_last)`), recover the point over a root of the eliminant.
pub fn back_substitute<F: Field>(basis: &GroebnerBasis<F, Lex>, root: &F::Elem) -> Option<Vec<F::Elem>> {
    let f = basis.field();
    let n = basis.nvars();
    let last = n - 1;
    let mut point = vec![f.zero(); n];
    point[last] = root.clone();
    for i in 0..last {
        let target = Monomial::var(i);
        let p = basis.polys().iter().find(|p| p[0].0 == target)?;
        let mut val = f.zero();
        for (m, a) in &p[1..] {
            if !m.is_pure_power_of(last) {
                return None;
            }
            val = f.sub(&val, &f.mul(a, &f.pow(root, m.exp(last) as u64)));
        }
        point[i] = val;
    }
    Some(point)
}
