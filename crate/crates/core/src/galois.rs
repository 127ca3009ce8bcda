//! Frobenius cycle types modulo primes, the proclamation loop, Jordan-type
//! evidence, and the Schubert recursion with Vakil's criterion on Gr(2,n).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::ToPrimitive;
use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use sclab_exact::eliminate::{groebner_eliminate, ElimOptions, Retained};
use sclab_exact::factor::factor_mod_p;
use sclab_exact::field::PrimeField;
use sclab_exact::linalg::{self, Matrix};
use sclab_exact::primes::{is_prime, random_prime};
use sclab_exact::univariate::squarefree_and_degree;

use crate::combinat::{problem_degree_usize, SchubertProblem};
use crate::error::{Error, Result};
use crate::parallel::map_indexed;
use crate::sampling::instance_rng;
use crate::schubert::{assemble_mod_p, assemble_with_flags_in, EquationStyle, Param};

/// Weakly decreasing parts summing to the degree.
pub type CycleType = Vec<usize>;

/// Cycle type of a permutation given as images.
pub fn cycle_type(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Whether permutations of this cycle type are odd.
pub fn is_odd(t: &[usize]) -> bool {
    t.iter().map(|&c| c - 1).sum::<usize>() % 2 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PrimeSource {
    Fixed { prime: u64 },
    Random { lo: u64, hi: u64 },
}

impl Default for PrimeSource {
    fn default() -> Self {
        PrimeSource::Random { lo: 10_000, hi: 1 << 31 }
    }
}

impl PrimeSource {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match *self {
            PrimeSource::Fixed { prime } => prime,
            PrimeSource::Random { lo, hi } => random_prime(rng, lo, hi),
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let ok = match *self {
            PrimeSource::Fixed { prime } => is_prime(prime) && prime > n as u64,
            PrimeSource::Random { lo, hi } => hi > lo && lo > n as u64 && hi <= 1 << 62,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("prime source {self:?} unusable for n = {n}")))
        }
    }
}

/// Which flags a Frobenius draw uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagKind {
    /// Osculating flags at random distinct points of the prime field.
    #[default]
    Osculating,
    /// Random invertible matrices: flags in general position.
    General,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SampleOptions {
    pub style: EquationStyle,
    pub flags: FlagKind,
}

/// One Frobenius draw.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub prime: u64,
    /// `None` when the gate rejected the eliminant.
    pub cycle_type: Option<CycleType>,
}

fn random_invertible<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Matrix<u64> {
    loop {
        let m: Matrix<u64> = (0..n).map(|_| (0..n).map(|_| rng.random_range(0..field.modulus())).collect()).collect();
        if linalg::rank(&field, &m) == n {
            return m;
        }
    }
}

/// Cycle type of Frobenius at `prime` for random flags and a random linear
/// form, or `None` if the eliminant fails the gate.
pub fn frobenius_sample<R: Rng + ?Sized>(
    p: &SchubertProblem,
    prime: u64,
    rng: &mut R,
    opts: SampleOptions,
) -> Result<Option<CycleType>> {
    if prime <= p.n as u64 || !is_prime(prime) {
        return Err(Error::Characteristic { p: prime, n: p.n });
    }
    let field = PrimeField::new(prime);
    let r = p.conditions.len();
    if (r as u64) > prime {
        return Err(Error::Characteristic { p: prime, n: r });
    }
    let sys = match opts.flags {
        FlagKind::Osculating => {
            let mut params: Vec<u64> = Vec::with_capacity(r);
            while params.len() < r {
                let t = rng.random_range(0..prime);
                if !params.contains(&t) {
                    params.push(t);
                }
            }
            let params: Vec<Param<u64>> = params.into_iter().map(Param::Finite).collect();
            assemble_mod_p(p, field, &params, opts.style)?
        }
        FlagKind::General => {
            let flags: Vec<Matrix<u64>> = (0..r).map(|_| random_invertible(field, p.n, rng)).collect();
            assemble_with_flags_in(&field, p, &flags, opts.style)?
        }
    };
    let form: Vec<u64> = (0..p.dim()).map(|_| rng.random_range(1..prime)).collect();
    let d = problem_degree_usize(p);
    let Ok(elim) = groebner_eliminate(&sys, &Retained::Linear(form), ElimOptions::default()) else {
        return Ok(None);
    };
    if elim.empty || !squarefree_and_degree(&elim.poly, d) {
        return Ok(None);
    }
    Ok(Some(factor_mod_p(&elim.poly, rng).degree_pattern()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub counts: BTreeMap<CycleType, usize>,
    pub samples: usize,
    pub rejections: usize,
    pub primes: Vec<u64>,
    /// Cycle type of every sample in order, `None` for rejections.
    pub outcomes: Vec<Option<CycleType>>,
}

impl Census {
    pub fn record(&mut self, s: &Sample) {
        self.samples += 1;
        self.primes.push(s.prime);
        self.outcomes.push(s.cycle_type.clone());
        match &s.cycle_type {
            Some(t) => *self.counts.entry(t.clone()).or_insert(0) += 1,
            None => self.rejections += 1,
        }
    }

    pub fn accepted(&self) -> usize {
        self.samples - self.rejections
    }

    pub fn fraction(&self, t: &[usize]) -> f64 {
        let a = self.accepted();
        if a == 0 {
            return 0.0;
        }
        self.counts.get(t).copied().unwrap_or(0) as f64 / a as f64
    }

    pub fn types(&self) -> BTreeSet<CycleType> {
        self.counts.keys().cloned().collect()
    }
}

/// Draw `i` of a run: its own stream for both prime and parameters.
pub fn seeded_sample(p: &SchubertProblem, primes: &PrimeSource, seed: u64, i: u64, opts: SampleOptions) -> Result<Sample> {
    let mut rng = instance_rng(seed, i);
    let prime = primes.draw(&mut rng);
    let cycle_type = frobenius_sample(p, prime, &mut rng, opts)?;
    Ok(Sample { prime, cycle_type })
}

/// `count` independent samples in index order.
pub fn sample_census(
    p: &SchubertProblem,
    count: usize,
    primes: &PrimeSource,
    seed: u64,
    jobs: usize,
    opts: SampleOptions,
) -> Result<Census> {
    primes.check(p.n)?;
    let samples = map_indexed(count, jobs, |i| seeded_sample(p, primes, seed, i as u64, opts))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut c = Census::default();
    for s in &samples {
        c.record(s);
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanEvidence {
    pub has_prime_cycle: bool,
    pub has_d_cycle: bool,
    pub has_dminus1_cycle: bool,
    pub parity_odd_seen: bool,
}

/// Primes `ℓ` with `d/2 < ℓ < d - 2`.
pub fn prime_window(d: usize) -> Vec<usize> {
    (d / 2 + 1..d.saturating_sub(2)).filter(|&l| is_prime(l as u64)).collect()
}

pub fn type_evidence(t: &[usize], d: usize) -> JordanEvidence {
    let window = prime_window(d);
    JordanEvidence {
        has_prime_cycle: t.iter().any(|c| window.contains(c)),
        has_d_cycle: t == [d],
        has_dminus1_cycle: d >= 2 && t == [d - 1, 1],
        parity_odd_seen: is_odd(t),
    }
}

pub fn jordan_evidence(census: &Census, d: usize) -> JordanEvidence {
    let mut e = JordanEvidence { has_prime_cycle: false, has_d_cycle: false, has_dminus1_cycle: false, parity_odd_seen: false };
    for t in census.counts.keys() {
        let x = type_evidence(t, d);
        e.has_prime_cycle |= x.has_prime_cycle;
        e.has_d_cycle |= x.has_d_cycle;
        e.has_dminus1_cycle |= x.has_dminus1_cycle;
        e.parity_odd_seen |= x.parity_odd_seen;
    }
    e
}

/// Closure of a set of permutations of `0..d` under composition.
pub fn generate_group(d: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..d).collect();
    let mut seen: FxHashSet<Vec<usize>> = FxHashSet::default();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h: Vec<usize> = (0..d).map(|i| s[g[i]]).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out
}

pub fn cycle_type_support(group: &[Vec<usize>]) -> BTreeSet<CycleType> {
    group.iter().map(|g| cycle_type(g)).collect()
}

fn affine(d: usize, a: usize, b: usize) -> Vec<usize> {
    (0..d).map(|x| (a * x + b) % d).collect()
}

fn from_cycles(d: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    for c in cycles {
        for i in 0..c.len() {
            p[c[i]] = c[(i + 1) % c.len()];
        }
    }
    p
}

/// A maximal transitive proper subgroup of `S_d` with its cycle types.
#[derive(Clone, Debug)]
pub struct SubgroupSupport {
    pub name: &'static str,
    pub types: BTreeSet<CycleType>,
}

fn even_types(d: usize) -> BTreeSet<CycleType> {
    partitions_of(d).into_iter().filter(|t| !is_odd(t)).collect()
}

fn partitions_of(d: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// Maximal transitive proper subgroups of `S_d` for `3 ≤ d ≤ 7`, up to
/// conjugacy. Every proper transitive subgroup lies in one of them.
pub fn maximal_transitive_subgroups(d: usize) -> Option<Vec<SubgroupSupport>> {
    let gen = |name, gens: Vec<Vec<usize>>| SubgroupSupport { name, types: cycle_type_support(&generate_group(d, &gens)) };
    let alt = SubgroupSupport { name: "A", types: even_types(d) };
    Some(match d {
        2 => vec![],
        3 => vec![alt],
        4 => vec![alt, gen("D4", vec![from_cycles(4, &[&[0, 1, 2, 3]]), from_cycles(4, &[&[0, 2]])])],
        5 => vec![alt, gen("F20", vec![affine(5, 1, 1), affine(5, 2, 0)])],
        6 => {
            // PGL(2,5) on the projective line {0,…,4,∞=5}
            let inv: Vec<usize> =
                (0..6).map(|x| if x == 5 { 0 } else if x == 0 { 5 } else { (5 - mod_inv5(x)) % 5 }).collect();
            let shift: Vec<usize> = (0..6).map(|x| if x == 5 { 5 } else { (x + 1) % 5 }).collect();
            let scale: Vec<usize> = (0..6).map(|x| if x == 5 { 5 } else { (2 * x) % 5 }).collect();
            vec![
                alt,
                gen("PGL(2,5)", vec![shift, scale, inv]),
                gen(
                    "S3 wr S2",
                    vec![from_cycles(6, &[&[0, 1]]), from_cycles(6, &[&[0, 1, 2]]), from_cycles(6, &[&[0, 3], &[1, 4], &[2, 5]])],
                ),
                gen(
                    "S2 wr S3",
                    vec![from_cycles(6, &[&[0, 1]]), from_cycles(6, &[&[0, 2], &[1, 3]]), from_cycles(6, &[&[0, 2, 4], &[1, 3, 5]])],
                ),
            ]
        }
        7 => vec![alt, gen("AGL(1,7)", vec![affine(7, 1, 1), affine(7, 3, 0)])],
        _ => return None,
    })
}

fn mod_inv5(x: usize) -> usize {
    (1..5).find(|y| (x * y) % 5 == 1).unwrap()
}

/// For `d ≤ 7`: whether the observed types fit no proper transitive subgroup.
pub fn excludes_proper_subgroups(types: &BTreeSet<CycleType>, d: usize) -> Option<bool> {
    let subs = maximal_transitive_subgroups(d)?;
    Some(subs.iter().all(|s| !types.is_subset(&s.types)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Proclamation {
    FullSymmetric,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct GaloisVerdict {
    pub problem: String,
    pub d: usize,
    pub proclamation: Proclamation,
    pub epsilons: [bool; 3],
    pub census: Census,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    problem: &'a str,
    d: usize,
    samples: usize,
    rejections: usize,
    census: BTreeMap<String, usize>,
    verdict: Proclamation,
    epsilons: [u8; 3],
    primes: &'a [u64],
    notes: &'a [String],
}

pub fn type_key(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl GaloisVerdict {
    pub fn to_json(&self) -> String {
        let v = VerdictJson {
            problem: &self.problem,
            d: self.d,
            samples: self.census.samples,
            rejections: self.census.rejections,
            census: self.census.counts.iter().map(|(t, c)| (type_key(t), *c)).collect(),
            verdict: self.proclamation,
            epsilons: self.epsilons.map(u8::from),
            primes: &self.census.primes,
            notes: &self.notes,
        };
        serde_json::to_string_pretty(&v).expect("verdict serializes")
    }
}

/// Samples in fixed-size batches so the stopping point does not depend on
/// the worker count.
const BATCH: usize = 16;

/// Sample until the group is proclaimed full symmetric or the budget runs
/// out. For `d ≥ 8` proclamation needs a `d`-cycle, a `(d-1,1)` type and a
/// prime cycle from the window; below that the census must fit no proper
/// transitive subgroup.
pub fn frobenius_algorithm(
    p: &SchubertProblem,
    budget: usize,
    primes: &PrimeSource,
    seed: u64,
    jobs: usize,
    opts: SampleOptions,
) -> Result<GaloisVerdict> {
    frobenius_algorithm_until(p, budget, primes, seed, jobs, opts, &|| false)
}

/// `frobenius_algorithm` that also stops between batches once `stop`
/// returns true; the verdict then carries a `truncated` note.
pub fn frobenius_algorithm_until(
    p: &SchubertProblem,
    budget: usize,
    primes: &PrimeSource,
    seed: u64,
    jobs: usize,
    opts: SampleOptions,
    stop: &(dyn Fn() -> bool + Sync),
) -> Result<GaloisVerdict> {
    let d = problem_degree_usize(p);
    if d < 2 {
        return Err(Error::Invalid(format!("degree {d} leaves nothing to permute")));
    }
    if budget == 0 {
        return Err(Error::Invalid("budget must be positive".into()));
    }
    primes.check(p.n)?;
    let mut census = Census::default();
    let mut eps = [false; 3];
    let mut proclaimed = false;
    let mut notes = Vec::new();
    let small = maximal_transitive_subgroups(d).is_some();
    if small {
        notes.push(format!("d = {d}: the prime window is empty, so the census is compared with the maximal transitive subgroups"));
    }
    let mut next = 0;
    'outer: while next < budget {
        if stop() {
            notes.push("truncated".into());
            break;
        }
        let n = BATCH.min(budget - next);
        let batch = map_indexed(n, jobs, |j| seeded_sample(p, primes, seed, (next + j) as u64, opts))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        next += n;
        for s in &batch {
            census.record(s);
            if let Some(t) = &s.cycle_type {
                let e = type_evidence(t, d);
                eps[0] |= e.has_d_cycle;
                eps[1] |= e.has_dminus1_cycle;
                eps[2] |= e.has_prime_cycle;
            }
            proclaimed = if small {
                excludes_proper_subgroups(&census.types(), d) == Some(true) && census.accepted() > 0
            } else {
                eps.iter().all(|&e| e)
            };
            if proclaimed {
                break 'outer;
            }
        }
    }
    if census.accepted() == 0 {
        notes.push("every sample was rejected".into());
    }
    Ok(GaloisVerdict {
        problem: p.render(),
        d,
        proclamation: if proclaimed { Proclamation::FullSymmetric } else { Proclamation::Inconclusive },
        epsilons: eps,
        census,
        notes,
    })
}

/// Cycle types of `S_4` acting on the six 2-subsets of `{0,1,2,3}`.
pub fn s4_on_pairs_support() -> BTreeSet<CycleType> {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&q| q == (a.min(b), a.max(b))).unwrap();
    let mut out = BTreeSet::new();
    for g in generate_group(4, &[from_cycles(4, &[&[0, 1]]), from_cycles(4, &[&[0, 1, 2, 3]])]) {
        let on_pairs: Vec<usize> = pairs.iter().map(|&(a, b)| index(g[a], g[b])).collect();
        out.insert(cycle_type(&on_pairs));
    }
    out
}

/// Class proportions of a permutation group, by cycle type.
pub fn class_proportions(group: &[Vec<usize>]) -> BTreeMap<CycleType, f64> {
    let mut m: BTreeMap<CycleType, f64> = BTreeMap::new();
    for g in group {
        *m.entry(cycle_type(g)).or_insert(0.0) += 1.0;
    }
    let n = group.len() as f64;
    m.values_mut().for_each(|v| *v /= n);
    m
}

pub fn symmetric_group(d: usize) -> Vec<Vec<usize>> {
    if d <= 1 {
        return vec![(0..d).collect()];
    }
    let mut gens = vec![from_cycles(d, &[&[0, 1]])];
    let cycle: Vec<usize> = (0..d).collect();
    gens.push(from_cycles(d, &[&cycle]));
    generate_group(d, &gens)
}

fn special_check(a: &[usize], n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::BadGrassmannian { k: 2, n });
    }
    let s: usize = a.iter().sum();
    if s != 2 * (n - 2) {
        return Err(Error::Codimension { got: s, expected: 2 * (n - 2) });
    }
    if a.iter().any(|&x| x == 0 || x > n - 2) {
        return Err(Error::Invalid(format!("special conditions must lie in 1..={}", n - 2)));
    }
    Ok(())
}

fn normalized(a: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().copied().filter(|&x| x > 0).collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

type DegMemo = FxHashMap<(Vec<usize>, usize), u128>;

fn recursion_degree(a: &[usize], n: usize, memo: &mut DegMemo) -> u128 {
    let a = normalized(a);
    if n < 2 || a.iter().sum::<usize>() != 2 * (n - 2) || a.iter().any(|&x| x > n - 2) {
        return 0;
    }
    if a.is_empty() {
        return 1;
    }
    if a.len() == 1 {
        return 0;
    }
    if let Some(&v) = memo.get(&(a.clone(), n)) {
        return v;
    }
    let r = a.len();
    let (x, y) = (a[r - 2], a[r - 1]);
    let mut merged = a[..r - 2].to_vec();
    merged.push(x + y);
    let mut split = a[..r - 2].to_vec();
    split.extend([x - 1, y - 1]);
    let v = recursion_degree(&merged, n, memo) + recursion_degree(&split, n - 1, memo);
    memo.insert((a, n), v);
    v
}

/// Degree of the special problem `a` in Gr(2,n) by Schubert's recursion
/// `d(…, x, y) = d_n(…, x + y) + d_{n-1}(…, x - 1, y - 1)`.
pub fn special_recursion_degree(a: &[usize], n: usize) -> Result<u128> {
    special_check(a, n)?;
    Ok(recursion_degree(a, n, &mut FxHashMap::default()))
}

/// Replace the problem by an equivalent one with `a_i + a_j ≤ n - 2` for all
/// pairs, moving to a smaller Grassmannian.
pub fn reduce_special(a: &[usize], n: usize) -> (Vec<usize>, usize) {
    let mut a = normalized(a);
    let mut n = n;
    loop {
        if a.len() < 2 || n < 2 {
            return (a, n);
        }
        // the two largest parts give the worst pair
        let m = (a[0] + a[1]).saturating_sub(n - 2);
        if m == 0 {
            return (a, n);
        }
        a[0] -= m;
        a[1] -= m;
        n -= m;
        a = normalized(&a);
    }
}

/// Node of a certificate: a problem and how its group was shown to be at
/// least alternating.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VakilNode {
    pub problem: Vec<usize>,
    pub n: usize,
    pub degree: u128,
    pub rule: VakilRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VakilRule {
    /// Degree at most 2.
    Small,
    /// One branch of the degeneration is empty.
    Single(Box<VakilNode>),
    /// Both branches certified, with distinct degrees or both of degree 1.
    Split(Box<VakilNode>, Box<VakilNode>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VakilVerdict {
    pub at_least_alternating: bool,
    pub trace: Option<VakilNode>,
}

type CertMemo = FxHashMap<(Vec<usize>, usize), Option<VakilNode>>;

fn certify(a: &[usize], n: usize, deg: &mut DegMemo, memo: &mut CertMemo) -> Option<VakilNode> {
    let (a, n) = reduce_special(a, n);
    if let Some(v) = memo.get(&(a.clone(), n)) {
        return v.clone();
    }
    let degree = recursion_degree(&a, n, deg);
    let result = if degree <= 2 {
        Some(VakilNode { problem: a.clone(), n, degree, rule: VakilRule::Small })
    } else {
        let mut found = None;
        let r = a.len();
        let mut tried: FxHashSet<(usize, usize)> = FxHashSet::default();
        'pairs: for i in 0..r {
            for j in i + 1..r {
                if !tried.insert((a[i], a[j])) {
                    continue;
                }
                let rest: Vec<usize> = (0..r).filter(|&q| q != i && q != j).map(|q| a[q]).collect();
                let mut merged = rest.clone();
                merged.push(a[i] + a[j]);
                let mut split = rest;
                split.extend([a[i] - 1, a[j] - 1]);
                let d1 = recursion_degree(&merged, n, deg);
                let d2 = recursion_degree(&split, n - 1, deg);
                let rule = match (d1, d2) {
                    (0, 0) => None,
                    (0, _) => certify(&split, n - 1, deg, memo).map(|c| VakilRule::Single(Box::new(c))),
                    (_, 0) => certify(&merged, n, deg, memo).map(|c| VakilRule::Single(Box::new(c))),
                    _ if d1 != d2 || d1 == 1 => {
                        match (certify(&merged, n, deg, memo), certify(&split, n - 1, deg, memo)) {
                            (Some(x), Some(y)) => Some(VakilRule::Split(Box::new(x), Box::new(y))),
                            _ => None,
                        }
                    }
                    _ => None,
                };
                if let Some(rule) = rule {
                    found = Some(VakilNode { problem: a.clone(), n, degree, rule });
                    break 'pairs;
                }
            }
        }
        found
    };
    memo.insert((a, n), result.clone());
    result
}

/// Search for a certificate that the Galois group of the special problem
/// `a` in Gr(2,n) contains the alternating group.
pub fn vakil_alternating_gr2(a: &[usize], n: usize) -> Result<VakilVerdict> {
    special_check(a, n)?;
    let trace = certify(a, n, &mut FxHashMap::default(), &mut FxHashMap::default());
    Ok(VakilVerdict { at_least_alternating: trace.is_some(), trace })
}

/// Reduced special problems in Gr(2,n): multisets of parts in `1..=n-2`
/// summing to `2(n-2)` with every pairwise sum at most `n-2`.
pub fn reduced_special_problems(n: usize) -> Vec<Vec<usize>> {
    let total = 2 * (n - 2);
    let mut out = Vec::new();
    fn go(rest: usize, max: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.len() < 2 || cur[0] + cur[1] <= n - 2 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            if cur.len() == 1 && cur[0] + p > n - 2 {
                continue;
            }
            cur.push(p);
            go(rest - p, p, n, cur, out);
            cur.pop();
        }
    }
    go(total, n - 2, n, &mut Vec::new(), &mut out);
    out
}

/// Degree as a machine integer, for tests comparing with Kostka numbers.
pub fn kostka_gr2(a: &[usize], n: usize) -> Result<u128> {
    Ok(crate::combinat::kostka(2, n, a)?.to_u128().unwrap_or(u128::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Partition;

    #[test]
    fn windows() {
        assert!(prime_window(5).is_empty());
        assert!(prime_window(4).is_empty());
        assert_eq!(prime_window(10), vec![7]);
        let mut c = Census::default();
        c.record(&Sample { prime: 7, cycle_type: Some(vec![5]) });
        c.record(&Sample { prime: 7, cycle_type: Some(vec![2, 2, 1]) });
        let e = jordan_evidence(&c, 5);
        assert!(e.has_d_cycle && !e.has_prime_cycle && !e.parity_odd_seen);
    }

    #[test]
    fn subgroup_orders() {
        let d4 = generate_group(4, &[from_cycles(4, &[&[0, 1, 2, 3]]), from_cycles(4, &[&[0, 2]])]);
        assert_eq!(d4.len(), 8);
        assert_eq!(generate_group(5, &[affine(5, 1, 1), affine(5, 2, 0)]).len(), 20);
        assert_eq!(generate_group(7, &[affine(7, 1, 1), affine(7, 3, 0)]).len(), 42);
        assert_eq!(symmetric_group(5).len(), 120);
    }

    #[test]
    fn s5_is_recognized() {
        let all: BTreeSet<CycleType> = cycle_type_support(&symmetric_group(5));
        assert_eq!(excludes_proper_subgroups(&all, 5), Some(true));
        let only_even: BTreeSet<CycleType> = all.iter().filter(|t| !is_odd(t)).cloned().collect();
        assert_eq!(excludes_proper_subgroups(&only_even, 5), Some(false));
    }

    #[test]
    fn pairs_support_has_no_long_cycles() {
        let s = s4_on_pairs_support();
        assert!(!s.contains(&vec![6]) && !s.contains(&vec![5, 1]));
        assert!(s.contains(&vec![4, 2]));
        assert_eq!(excludes_proper_subgroups(&s, 6), Some(false));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(special_recursion_degree(&[1, 1, 1, 1], 4).unwrap(), 2);
        assert_eq!(special_recursion_degree(&[1; 6], 5).unwrap(), 5);
        assert!(special_recursion_degree(&[1, 1, 1], 4).is_err());
        let v = vakil_alternating_gr2(&[1, 1, 1, 1], 4).unwrap();
        assert!(v.at_least_alternating);
        assert!(vakil_alternating_gr2(&[1; 6], 5).unwrap().at_least_alternating);
    }

    #[test]
    fn four_lines_samples() {
        let p = SchubertProblem::new(2, 4, vec![Partition::box_one(); 4]).unwrap();
        let c = sample_census(&p, 40, &PrimeSource::Fixed { prime: 10007 }, 3, 1, SampleOptions::default()).unwrap();
        assert_eq!(c.types(), BTreeSet::from([vec![2], vec![1, 1]]));
    }
}
