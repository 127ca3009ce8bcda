//! Counting real solutions: eliminant, the Shape-Lemma gate, Sturm count,
//! frequency tables and the congruence and lower-bound checks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use sclab_exact::eliminate::{groebner_eliminate, ElimOptions, Retained};
use sclab_exact::field::Gaussian;
use sclab_exact::multimodular::{multimodular_eliminate, MultiModOptions};
use sclab_exact::multivariate::PolySystem;
use sclab_exact::{gated_real_count, RationalField};

use crate::combinat::{problem_degree_usize, sign_imbalance, Partition, SchubertProblem, SkewShape};
use crate::error::{Error, Result};
use crate::parallel::map_indexed;
use crate::sampling::{self, draw_config, instance_rng, OscType};
use crate::schubert::{
    assemble_instance_with, assemble_with_flags, mobius, overlap_number, secant_flag, EquationStyle, OscPoint,
    OsculationConfig, Param,
};

/// How the eliminant of a rational system is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Images modulo many primes, rational reconstruction.
    #[default]
    Multimodular,
    /// One Gröbner basis over the rationals.
    Direct,
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub backend: Backend,
    pub style: EquationStyle,
    /// Extra attempts after a rejected draw.
    pub retries: usize,
    pub elim: ElimOptions,
    pub max_primes: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            backend: Backend::default(),
            style: EquationStyle::default(),
            retries: 10,
            elim: ElimOptions::default(),
            max_primes: 2000,
        }
    }
}

/// Result of one elimination plus gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count {
    /// Degree of the eliminant, when elimination succeeded.
    pub eliminant_degree: Option<usize>,
    /// Real roots, present exactly when the gate passed.
    pub real_count: Option<usize>,
}

impl Count {
    pub fn valid(&self) -> bool {
        self.real_count.is_some()
    }
}

/// Eliminate onto `y = Σ cᵢ xᵢ`, gate on a squarefree eliminant of degree
/// `d`, then count real roots. Elimination failures are rejections.
pub fn count_system(sys: &PolySystem<RationalField>, form: &[i64], d: usize, opts: &CountOptions) -> Count {
    let retained = Retained::Linear(form.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect());
    let elim = match opts.backend {
        Backend::Direct => groebner_eliminate(sys, &retained, opts.elim).ok(),
        Backend::Multimodular => {
            let mm = MultiModOptions { elim: opts.elim, max_primes: opts.max_primes };
            multimodular_eliminate(sys, &retained, mm).ok().map(|r| r.eliminant)
        }
    };
    let Some(elim) = elim.filter(|e| !e.empty) else {
        return Count { eliminant_degree: None, real_count: None };
    };
    let deg = elim.poly.degree();
    let real_count = gated_real_count(&elim.poly, d);
    Count { eliminant_degree: deg, real_count }
}

fn gaussian_mobius(z: &Gaussian, s: &BigRational) -> Gaussian {
    let a = &z.re - s;
    let norm = &a * &a + &z.im * &z.im;
    Gaussian::new(a / &norm, -&z.im / norm)
}

/// Move a configuration off infinity by `t ↦ 1/(t - s)` for a rational `s`
/// distinct from every real parameter. Real solution counts are unchanged.
pub fn normalize_infinity(cfg: &OsculationConfig) -> OsculationConfig {
    if !cfg.points.iter().any(|p| matches!(p, OscPoint::Real(Param::Infinity))) {
        return cfg.clone();
    }
    let reals: Vec<&BigRational> = cfg
        .points
        .iter()
        .filter_map(|p| match p {
            OscPoint::Real(Param::Finite(t)) => Some(t),
            _ => None,
        })
        .collect();
    let mut s = BigRational::one();
    while reals.contains(&&s) {
        s += BigRational::one();
    }
    let points = cfg
        .points
        .iter()
        .map(|p| match p {
            OscPoint::Real(t) => OscPoint::Real(Param::Finite(mobius(t, &s))),
            OscPoint::Pair { value, partner } => {
                OscPoint::Pair { value: gaussian_mobius(value, &s), partner: *partner }
            }
        })
        .collect();
    OsculationConfig { points }
}

/// Count for one configuration and one linear form.
pub fn count_config(p: &SchubertProblem, cfg: &OsculationConfig, form: &[i64], opts: &CountOptions) -> Result<Count> {
    cfg.validate(p)?;
    let sys = assemble_instance_with(p, &normalize_infinity(cfg), opts.style)?;
    Ok(count_system(&sys, form, problem_degree_usize(p), opts))
}

/// Record of one osculating or secant instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealCountRecord {
    pub problem: String,
    pub k: usize,
    pub n: usize,
    pub instance: u64,
    #[serde(rename = "type")]
    pub osc_type: BTreeMap<String, usize>,
    pub params: Vec<String>,
    pub eliminant_degree: Option<usize>,
    pub real_count: Option<usize>,
    pub valid: bool,
    pub attempts: usize,
    pub seed: u64,
}

fn type_map(t: &OscType) -> BTreeMap<String, usize> {
    t.iter().map(|(p, r)| (p.to_string(), *r)).collect()
}

fn render_point(p: &OscPoint) -> String {
    match p {
        OscPoint::Real(Param::Infinity) => "inf".into(),
        OscPoint::Real(Param::Finite(t)) => t.to_string(),
        OscPoint::Pair { value, .. } => {
            if value.im.is_negative() {
                format!("{}-{}i", value.re, -&value.im)
            } else {
                format!("{}+{}i", value.re, value.im)
            }
        }
    }
}

/// `count_config` on a drawn configuration with a drawn linear form.
pub fn count_real<R: Rng + ?Sized>(
    p: &SchubertProblem,
    cfg: &OsculationConfig,
    rng: &mut R,
    opts: &CountOptions,
) -> Result<Count> {
    let form = sampling::random_linear_form(rng, p.dim());
    count_config(p, cfg, &form, opts)
}

/// One row of a schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleRow {
    pub osc_type: OscType,
    pub instances: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub count: CountOptions,
    /// Conditions with fixed real parameters.
    pub pinned: Vec<(usize, Param<BigRational>)>,
    pub jobs: usize,
}

/// Draw, retrying rejected attempts with fresh draws from the same stream.
pub fn run_instance(
    p: &SchubertProblem,
    osc_type: &OscType,
    seed: u64,
    index: u64,
    opts: &RunOptions,
) -> Result<RealCountRecord> {
    let mut rng = instance_rng(seed, index);
    let mut last = None;
    for attempt in 0..=opts.count.retries {
        let cfg = draw_config(&mut rng, p, osc_type, &opts.pinned)?;
        let count = count_real(p, &cfg, &mut rng, &opts.count)?;
        let done = count.valid();
        last = Some((cfg, count, attempt + 1));
        if done {
            break;
        }
    }
    let (cfg, count, attempts) = last.expect("at least one attempt");
    Ok(RealCountRecord {
        problem: p.render(),
        k: p.k,
        n: p.n,
        instance: index,
        osc_type: type_map(osc_type),
        params: cfg.points.iter().map(render_point).collect(),
        eliminant_degree: count.eliminant_degree,
        real_count: count.real_count,
        valid: count.valid(),
        attempts,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "type")]
    pub osc_type: BTreeMap<String, usize>,
    pub counts: BTreeMap<usize, usize>,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub problem: String,
    pub k: usize,
    pub n: usize,
    pub degree: usize,
    pub rows: Vec<TableRow>,
    /// Instances whose every attempt was rejected.
    pub rejections: usize,
    /// Rejected attempts that were redrawn.
    pub resampled: usize,
    pub seed: u64,
}

impl FrequencyTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Aligned columns: one per possible real count, then the total.
    pub fn to_csv(&self) -> String {
        let cols: Vec<usize> = (0..=self.degree).filter(|c| c % 2 == self.degree % 2).collect();
        let labels: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.osc_type.iter().map(|(p, n)| format!("{p}:{n}")).collect::<Vec<_>>().join(" "))
            .collect();
        let w0 = labels.iter().map(|l| l.len()).chain(std::iter::once(4)).max().unwrap_or(4);
        let w = self
            .rows
            .iter()
            .map(|r| r.total.to_string().len())
            .chain(cols.iter().map(|c| c.to_string().len()))
            .chain(std::iter::once(5))
            .max()
            .unwrap_or(5);
        let mut out = String::new();
        let _ = write!(out, "{:<w0$}", "type");
        for c in &cols {
            let _ = write!(out, ",{c:>w$}");
        }
        let _ = writeln!(out, ",{:>w$}", "total");
        for (row, label) in self.rows.iter().zip(&labels) {
            let _ = write!(out, "{label:<w0$}");
            for c in &cols {
                let _ = write!(out, ",{:>w$}", row.counts.get(c).copied().unwrap_or(0));
            }
            let _ = writeln!(out, ",{:>w$}", row.total);
        }
        out
    }
}

/// Records in instance order plus their aggregate.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub records: Vec<RealCountRecord>,
    pub table: FrequencyTable,
}

/// Table rows from records, one per schedule row.
pub fn tabulate(p: &SchubertProblem, schedule: &[ScheduleRow], records: &[RealCountRecord], seed: u64) -> FrequencyTable {
    let mut rows: Vec<TableRow> = schedule
        .iter()
        .map(|r| TableRow { osc_type: type_map(&r.osc_type), counts: BTreeMap::new(), total: 0 })
        .collect();
    let mut rejections = 0;
    let mut resampled = 0;
    let mut next = 0;
    for (row, s) in rows.iter_mut().zip(schedule) {
        for rec in &records[next..next + s.instances] {
            resampled += rec.attempts - 1;
            match rec.real_count {
                Some(c) => {
                    *row.counts.entry(c).or_insert(0) += 1;
                    row.total += 1;
                }
                None => rejections += 1,
            }
        }
        next += s.instances;
    }
    FrequencyTable {
        problem: p.render(),
        k: p.k,
        n: p.n,
        degree: problem_degree_usize(p),
        rows,
        rejections,
        resampled,
        seed,
    }
}

/// Every schedule row is checked before any instance is computed.
pub fn run_experiment(p: &SchubertProblem, schedule: &[ScheduleRow], seed: u64, opts: &RunOptions) -> Result<Experiment> {
    for row in schedule {
        sampling::check_type(p, &row.osc_type, &opts.pinned)?;
    }
    let jobs: Vec<(&OscType, u64)> = schedule
        .iter()
        .flat_map(|r| std::iter::repeat_n(&r.osc_type, r.instances))
        .zip(0u64..)
        .collect();
    let records =
        map_indexed(jobs.len(), opts.jobs, |i| run_instance(p, jobs[i].0, seed, jobs[i].1, opts))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
    let table = tabulate(p, schedule, &records, seed);
    Ok(Experiment { records, table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceVerdict {
    pub applicable: bool,
    pub satisfied: bool,
}

/// Whether the problem meets the mod-four hypothesis.
pub fn congruence_applicable(p: &SchubertProblem) -> bool {
    let lengths: usize = p.conditions.iter().map(|c| c.len()).sum();
    p.n == 2 * p.k && p.conditions.iter().all(|c| c.is_symmetric()) && lengths > p.k + 3
}

pub fn congruence_verdict(p: &SchubertProblem, table: &FrequencyTable) -> CongruenceVerdict {
    let d = problem_degree_usize(p);
    let satisfied = table.rows.iter().flat_map(|r| r.counts.keys()).all(|&c| c % 4 == d % 4);
    CongruenceVerdict { applicable: congruence_applicable(p), satisfied }
}

/// The problem `(λ, μ, ⊡^m)` in Gr(k,n).
pub fn sigma_problem(k: usize, n: usize, lambda: &Partition, mu: &Partition) -> Result<SchubertProblem> {
    let total = k.checked_mul(n.saturating_sub(k)).unwrap_or(0);
    let used = lambda.weight() + mu.weight();
    if used > total {
        return Err(Error::Codimension { got: used, expected: total });
    }
    let mut conds = vec![lambda.clone(), mu.clone()];
    conds.extend(std::iter::repeat_n(Partition::box_one(), total - used));
    SchubertProblem::new(k, n, conds)
}

/// `σ(λᶜ/μ)`, or 0 when `μ ⊄ λᶜ`.
pub fn lower_bound_sigma(k: usize, n: usize, lambda: &Partition, mu: &Partition) -> Result<BigUint> {
    let comp = lambda.complement(k, n)?;
    mu.check_box(k, n)?;
    match SkewShape::new(comp, mu.clone()) {
        Ok(s) => Ok(sign_imbalance(&s)),
        Err(_) => Ok(BigUint::zero()),
    }
}

/// Pinning used with `lower_bound_sigma`: λ at infinity, μ at zero.
pub fn sigma_pins() -> Vec<(usize, Param<BigRational>)> {
    vec![(0, Param::Infinity), (1, Param::Finite(BigRational::zero()))]
}

/// Record of a secant instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantRecord {
    pub instance: u64,
    pub points: Vec<Vec<String>>,
    pub overlap: usize,
    pub eliminant_degree: Option<usize>,
    pub real_count: Option<usize>,
    pub valid: bool,
    pub attempts: usize,
}

/// Secant instance with disjoint flags: `n` sorted points per condition,
/// cut from one sorted draw so the intervals never interleave.
pub fn run_secant_instance(p: &SchubertProblem, seed: u64, index: u64, opts: &CountOptions) -> Result<SecantRecord> {
    let mut rng = instance_rng(seed, index);
    let r = p.conditions.len();
    let d = problem_degree_usize(p);
    let mut last = None;
    for attempt in 0..=opts.retries {
        let pts = sampling::random_sorted_points(&mut rng, r * p.n);
        let sets: Vec<Vec<BigRational>> = pts.chunks(p.n).map(|c| c.to_vec()).collect();
        let flags = sets.iter().map(|s| secant_flag(s)).collect::<Result<Vec<_>>>()?;
        let sys = assemble_with_flags(p, &flags, opts.style)?;
        let form = sampling::random_linear_form(&mut rng, p.dim());
        let count = count_system(&sys, &form, d, opts);
        let done = count.valid();
        last = Some((sets, count, attempt + 1));
        if done {
            break;
        }
    }
    let (sets, count, attempts) = last.expect("at least one attempt");
    Ok(SecantRecord {
        instance: index,
        overlap: overlap_number(&sets),
        points: sets.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect(),
        eliminant_degree: count.eliminant_degree,
        real_count: count.real_count,
        valid: count.valid(),
        attempts,
    })
}

pub fn run_secant(p: &SchubertProblem, instances: usize, seed: u64, jobs: usize, opts: &CountOptions) -> Result<Vec<SecantRecord>> {
    map_indexed(instances, jobs, |i| run_secant_instance(p, seed, i as u64, opts)).into_iter().collect()
}
