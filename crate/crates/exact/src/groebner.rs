//! Buchberger's algorithm with the sugar strategy and Gebauer–Möller pair
//! criteria.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::marker::PhantomData;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::field::Field;
use crate::linalg;
use crate::monomial::{Monomial, MonomialOrder};
use crate::multivariate::MultiPoly;

/// Terms sorted by descending monomial order.
pub type Terms<E> = Vec<(Monomial, E)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("Gröbner basis computation exceeded {0} S-polynomial reductions")]
    StepLimit(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Abort after this many S-polynomial reductions.
    pub max_reductions: usize,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { max_reductions: 200_000 }
    }
}

#[derive(Clone, Copy)]
struct Keyed<O>(Monomial, PhantomData<O>);

impl<O> PartialEq for Keyed<O> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<O: MonomialOrder> PartialOrd for Keyed<O> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<O: MonomialOrder> Ord for Keyed<O> {
    fn cmp(&self, other: &Self) -> Ordering {
        O::cmp(&self.0, &other.0)
    }
}

impl<O> Eq for Keyed<O> {}

/// A reduced Gröbner basis with respect to the order `O`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field, O: MonomialOrder> {
    field: F,
    nvars: usize,
    /// Monic elements sorted by ascending leading monomial.
    polys: Vec<Terms<F::Elem>>,
    _order: PhantomData<O>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'a, F: Field, O: MonomialOrder> {
    field: &'a F,
    polys: Vec<Terms<F::Elem>>,
    sugar: Vec<u32>,
    lms: Vec<Monomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    _order: PhantomData<O>,
}

fn sort_terms<O: MonomialOrder, E>(t: &mut Terms<E>) {
    t.sort_by(|a, b| O::cmp(&b.0, &a.0));
}

impl<'a, F: Field, O: MonomialOrder> Engine<'a, F, O> {
    fn new(field: &'a F) -> Self {
        Engine {
            field,
            polys: Vec::new(),
            sugar: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            _order: PhantomData,
        }
    }

    fn find_reducer(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .find(|&g| Some(g) != skip && self.lms[g].divides(m))
    }

    /// Full reduction of the sum of `seed` terms modulo the active set.
    /// Returns the remainder (monic if `normalize`) and its sugar.
    fn reduce(
        &self,
        seed: Terms<F::Elem>,
        mut sugar: u32,
        skip: Option<usize>,
        normalize: bool,
    ) -> (Terms<F::Elem>, u32) {
        let f = self.field;
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        let mut heap: BinaryHeap<Keyed<O>> = BinaryHeap::new();
        for (m, c) in seed {
            match acc.get_mut(&m) {
                Some(e) => *e = f.add(e, &c),
                None => {
                    acc.insert(m, c);
                    heap.push(Keyed(m, PhantomData));
                }
            }
        }
        let mut out: Terms<F::Elem> = Vec::new();
        while let Some(Keyed(m, _)) = heap.pop() {
            let c = acc.remove(&m).unwrap();
            if f.is_zero(&c) {
                continue;
            }
            match self.find_reducer(&m, skip) {
                Some(g) => {
                    let q = self.lms[g].quotient_of(&m).unwrap();
                    sugar = sugar.max(q.degree() + self.sugar[g]);
                    for (t, a) in &self.polys[g][1..] {
                        let mon = t.mul(&q);
                        match acc.get_mut(&mon) {
                            Some(e) => *e = f.sub_mul(e, &c, a),
                            None => {
                                acc.insert(mon, f.neg(&f.mul(&c, a)));
                                heap.push(Keyed(mon, PhantomData));
                            }
                        }
                    }
                }
                None => out.push((m, c)),
            }
        }
        if let Some((_, lc)) = out.first().filter(|_| normalize) {
            let inv = f.inv(lc).unwrap();
            for (_, c) in out.iter_mut() {
                *c = f.mul(c, &inv);
            }
        }
        (out, sugar)
    }

    fn spoly_seed(&self, p: &Pair) -> (Terms<F::Elem>, u32) {
        let f = self.field;
        let qi = self.lms[p.i].quotient_of(&p.lcm).unwrap();
        let qj = self.lms[p.j].quotient_of(&p.lcm).unwrap();
        let mut seed = Vec::with_capacity(self.polys[p.i].len() + self.polys[p.j].len());
        for (t, c) in &self.polys[p.i][1..] {
            seed.push((t.mul(&qi), c.clone()));
        }
        for (t, c) in &self.polys[p.j][1..] {
            seed.push((t.mul(&qj), f.neg(c)));
        }
        (seed, p.sugar)
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.lms[i].lcm(&self.lms[j]);
        let si = self.sugar[i] - self.lms[i].degree();
        let sj = self.sugar[j] - self.lms[j].degree();
        Pair { i, j, lcm, sugar: si.max(sj) + lcm.degree() }
    }

    /// Insert a new monic element, applying the Gebauer–Möller update.
    fn insert(&mut self, terms: Terms<F::Elem>, sugar: u32) {
        let h = self.polys.len();
        let lm_h = terms[0].0;
        self.polys.push(terms);
        self.sugar.push(sugar);
        self.lms.push(lm_h);

        let mut c: Vec<Pair> = self.active.iter().map(|&g| self.make_pair(h, g)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let coprime = lm_h.is_coprime(&self.lms[p.j]);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !lm_h.is_coprime(&self.lms[p.j])).collect();

        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm) && lms[p.i].lcm(&lm_h) != p.lcm && lms[p.j].lcm(&lm_h) != p.lcm)
        });
        self.pairs.extend(e);
        self.active.retain(|&g| !lm_h.divides(&lms[g]));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar.cmp(&pb.sugar).then_with(|| O::cmp(&pa.lcm, &pb.lcm))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Linear interreduction: reduced row echelon form of the coefficient matrix,
/// columns ordered by descending monomial.
fn linear_echelon<F: Field, O: MonomialOrder>(f: &F, polys: &[Terms<F::Elem>]) -> Vec<Terms<F::Elem>> {
    let mut mons: Vec<Monomial> = polys.iter().flat_map(|p| p.iter().map(|t| t.0)).collect();
    mons.sort_by(|a, b| O::cmp(b, a));
    mons.dedup();
    let index: FxHashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut mat: linalg::Matrix<F::Elem> = polys
        .iter()
        .map(|p| {
            let mut row = vec![f.zero(); mons.len()];
            for (m, c) in p {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    linalg::rref(f, &mut mat);
    mat.into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(i, c)| (mons[i], c))
                .collect()
        })
        .collect()
}

impl<F: Field, O: MonomialOrder> GroebnerBasis<F, O> {
    /// Reduced Gröbner basis of the ideal generated by `input`.
    pub fn compute(field: &F, nvars: usize, input: &[MultiPoly<F>], opts: GbOptions) -> Result<Self, GbError> {
        let mut gens: Vec<Terms<F::Elem>> = input
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                assert_eq!(p.nvars(), nvars);
                let mut t = p.terms().to_vec();
                sort_terms::<O, _>(&mut t);
                t
            })
            .collect();
        if gens.len() > 1 {
            gens = linear_echelon::<F, O>(field, &gens);
        }
        // smallest leading monomial first
        gens.sort_by(|a, b| O::cmp(&a[0].0, &b[0].0));

        let mut eng: Engine<F, O> = Engine::new(field);
        for g in gens {
            let sugar = g.iter().map(|t| t.0.degree()).max().unwrap_or(0);
            let (r, s) = eng.reduce(g, sugar, None, true);
            if r.is_empty() {
                continue;
            }
            if r[0].0.is_one() {
                return Ok(Self::unit(field, nvars));
            }
            eng.insert(r, s);
        }
        let mut steps = 0;
        while let Some(pair) = eng.select() {
            steps += 1;
            if steps > opts.max_reductions {
                return Err(GbError::StepLimit(opts.max_reductions));
            }
            let (seed, sugar) = eng.spoly_seed(&pair);
            let (r, s) = eng.reduce(seed, sugar, None, true);
            if r.is_empty() {
                continue;
            }
            if r[0].0.is_one() {
                return Ok(Self::unit(field, nvars));
            }
            eng.insert(r, s);
        }

        // interreduce the minimal basis
        let active = eng.active.clone();
        let mut reduced = Vec::with_capacity(active.len());
        for &g in &active {
            let lead = eng.polys[g][0].clone();
            let tail = eng.polys[g][1..].to_vec();
            let (t, _) = eng.reduce(tail, 0, Some(g), false);
            let mut p = vec![lead];
            p.extend(t);
            reduced.push(p);
        }
        reduced.sort_by(|a, b| O::cmp(&a[0].0, &b[0].0));
        Ok(GroebnerBasis { field: field.clone(), nvars, polys: reduced, _order: PhantomData })
    }

    fn unit(field: &F, nvars: usize) -> Self {
        GroebnerBasis {
            field: field.clone(),
            nvars,
            polys: vec![vec![(Monomial::one(), field.one())]],
            _order: PhantomData,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Terms<F::Elem>] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p[0].0).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0][0].0.is_one()
    }

    pub fn to_multipolys(&self) -> Vec<MultiPoly<F>> {
        self.polys
            .iter()
            .map(|p| MultiPoly::from_terms(self.field.clone(), self.nvars, p.iter().cloned()))
            .collect()
    }

    /// Normal form of a term list (unnormalized: the true remainder).
    pub fn normal_form_terms(&self, seed: Terms<F::Elem>) -> Terms<F::Elem> {
        normal_form::<F, O>(&self.field, &self.polys, seed)
    }

    pub fn normal_form(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        let r = self.normal_form_terms(p.terms().to_vec());
        MultiPoly::from_terms(self.field.clone(), self.nvars, r)
    }

    pub fn contains(&self, p: &MultiPoly<F>) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Remainder of `seed` on division by monic `basis` (no normalization).
pub fn normal_form<F: Field, O: MonomialOrder>(
    f: &F,
    basis: &[Terms<F::Elem>],
    seed: Terms<F::Elem>,
) -> Terms<F::Elem> {
    let lms: Vec<Monomial> = basis.iter().map(|p| p[0].0).collect();
    let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
    let mut heap: BinaryHeap<Keyed<O>> = BinaryHeap::new();
    for (m, c) in seed {
        match acc.get_mut(&m) {
            Some(e) => *e = f.add(e, &c),
            None => {
                acc.insert(m, c);
                heap.push(Keyed(m, PhantomData));
            }
        }
    }
    let mut out = Vec::new();
    while let Some(Keyed(m, _)) = heap.pop() {
        let c = acc.remove(&m).unwrap();
        if f.is_zero(&c) {
            continue;
        }
        match lms.iter().position(|l| l.divides(&m)) {
            Some(g) => {
                let q = lms[g].quotient_of(&m).unwrap();
                for (t, a) in &basis[g][1..] {
                    let mon = t.mul(&q);
                    match acc.get_mut(&mon) {
                        Some(e) => *e = f.sub_mul(e, &c, a),
                        None => {
                            acc.insert(mon, f.neg(&f.mul(&c, a)));
                            heap.push(Keyed(mon, PhantomData));
                        }
                    }
                }
            }
            None => out.push((m, c)),
        }
    }
    out
}
