//! Experiment configuration, the problem grammar, and dispatch with
//! JSONL/table emission for the `sclab` command line.
//!
//! Instance `i` of a run with seed `s` draws from ChaCha8 seeded with `s`
//! on stream `i`; retries continue on that stream, so no instance shifts
//! another's draws. Records are written in index order after each chunk of
//! `CHUNK` instances, which makes the output independent of `jobs`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combinat::{count_tableaux, problem_degree, problem_degree_usize, sign_imbalance, Partition, SchubertProblem, SkewShape};
use crate::error::{Error, Result};
use crate::family::{admissible_rho, box_partition, cross_check_instance, family_bounds, nu, CrossCheckRecord};
use crate::galois::{
    frobenius_algorithm_until, reduced_special_problems, seeded_sample, type_key, vakil_alternating_gr2, Census,
    FlagKind, PrimeSource, SampleOptions,
};
use crate::parallel::map_indexed;
use crate::realcount::{run_instance, run_secant_instance, tabulate, Backend, CountOptions, RunOptions, ScheduleRow};
use crate::sampling::{all_real_type, check_type, OscType};
use crate::schubert::{EquationStyle, Param};

/// Instances computed between flushes.
pub const CHUNK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Degree,
    Tableaux,
    Osculating,
    Secant,
    Galois,
    Family,
    Vakil,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Every field mirrors a command-line flag; unset fields take defaults at
/// run time so a file and flags can be layered.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Osculation types, `row(;row)*` with one real count per distinct
    /// condition in order of first appearance.
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub osc_type: Option<String>,
    /// Instances per type row.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    /// Sample budget of the Frobenius algorithm.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Fixed-size Frobenius census, without early stopping.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_lo: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_hi: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<FlagKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
    /// Skew shape `outer/inner` for tableaux.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    /// Fixed real parameters, `index=value(;index=value)*`, value `inf` or a rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<Backend>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub style: Option<EquationStyle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub retries: Option<usize>,
    /// JSONL record file.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

macro_rules! layer {
    ($base:ident, $top:ident; $($f:ident),*) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f; } )*
    };
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Fields set in `top` replace those of `self`.
    pub fn overlay(mut self, top: ExperimentConfig) -> Self {
        layer!(self, top; mode, problem, k, n, osc_type, instances, budget, samples, seed, jobs, prime,
            prime_lo, prime_hi, flags, rho, shape, pin, backend, style, retries, out, format);
        self
    }

    fn need_kn(&self) -> Result<(usize, usize)> {
        match (self.k, self.n) {
            (Some(k), Some(n)) => Ok((k, n)),
            _ => Err(Error::Config("--k and --n are required".into())),
        }
    }

    pub fn schubert_problem(&self) -> Result<SchubertProblem> {
        let (k, n) = self.need_kn()?;
        let text = self.problem.as_deref().ok_or_else(|| Error::Config("--problem is required".into()))?;
        parse_problem(text, k, n)
    }

    pub fn prime_source(&self) -> Result<PrimeSource> {
        match (self.prime, self.prime_lo, self.prime_hi) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                Err(Error::Config("--prime conflicts with a prime range".into()))
            }
            (Some(prime), None, None) => Ok(PrimeSource::Fixed { prime }),
            (None, None, None) => Ok(PrimeSource::default()),
            (None, lo, hi) => {
                let PrimeSource::Random { lo: dlo, hi: dhi } = PrimeSource::default() else { unreachable!() };
                Ok(PrimeSource::Random { lo: lo.unwrap_or(dlo), hi: hi.unwrap_or(dhi) })
            }
        }
    }

    pub fn count_options(&self) -> CountOptions {
        let mut o = CountOptions::default();
        if let Some(b) = self.backend {
            o.backend = b;
        }
        if let Some(s) = self.style {
            o.style = s;
        }
        if let Some(r) = self.retries {
            o.retries = r;
        }
        o
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// `0` lets the pool pick.
    pub fn jobs(&self) -> usize {
        self.jobs.unwrap_or(0)
    }
}

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => self.err(format!("expected a number, found {:?}", c as char)),
                None => self.err("expected a number, found end of input"),
            };
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse { pos: start, msg: format!("number {text} is too large") })
    }

    fn ints(&mut self) -> Result<Vec<usize>> {
        let mut v = vec![self.int()?];
        while self.eat(b',') {
            v.push(self.int()?);
        }
        Ok(v)
    }

    fn end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected {:?}", c as char)),
        }
    }
}

/// `cond(;cond)*` with `cond := parts(^repeat)?` and `parts := int(,int)*`.
/// `0` stands for the empty partition.
pub fn parse_problem(text: &str, k: usize, n: usize) -> Result<SchubertProblem> {
    let mut sc = Scanner { s: text.as_bytes(), pos: 0 };
    let mut conds = Vec::new();
    loop {
        let start = sc.pos;
        let lam = match Partition::new(sc.ints()?) {
            Ok(l) => l,
            Err(Error::NotAPartition(p)) => {
                return Err(Error::Parse { pos: start, msg: format!("{p} is not weakly decreasing") });
            }
            Err(e) => return Err(e),
        };
        let mut repeat = 1;
        if sc.eat(b'^') {
            let at = sc.pos;
            repeat = sc.int()?;
            if repeat == 0 {
                return Err(Error::Parse { pos: at, msg: "repeat count must be positive".into() });
            }
        }
        conds.extend(std::iter::repeat_n(lam, repeat));
        if !sc.eat(b';') {
            break;
        }
    }
    sc.end()?;
    SchubertProblem::new(k, n, conds)
}

/// Type rows: one real count per distinct condition of `p`, first-appearance
/// order. An empty string is the all-real type.
pub fn parse_types(text: &str, p: &SchubertProblem) -> Result<Vec<OscType>> {
    if text.trim().is_empty() {
        return Ok(vec![all_real_type(p)]);
    }
    let mults = p.multiplicities();
    let mut sc = Scanner { s: text.as_bytes(), pos: 0 };
    let mut rows = Vec::new();
    loop {
        let start = sc.pos;
        let counts = sc.ints()?;
        if counts.len() != mults.len() {
            return Err(Error::Parse {
                pos: start,
                msg: format!("{} counts given for {} distinct conditions", counts.len(), mults.len()),
            });
        }
        rows.push(mults.iter().zip(counts).map(|((lam, _), r)| (lam.clone(), r)).collect());
        if !sc.eat(b';') {
            break;
        }
    }
    sc.end()?;
    Ok(rows)
}

/// `index=value(;index=value)*`.
pub fn parse_pins(text: &str, p: &SchubertProblem) -> Result<Vec<(usize, Param<BigRational>)>> {
    let mut out: Vec<(usize, Param<BigRational>)> = Vec::new();
    let mut pos = 0;
    for item in text.split(';') {
        let bad = |msg: String| Error::Parse { pos, msg };
        let (i, v) = item.split_once('=').ok_or_else(|| bad(format!("expected index=value in {item:?}")))?;
        let i: usize = i.parse().map_err(|_| bad(format!("bad index {i:?}")))?;
        if i >= p.conditions.len() || out.iter().any(|(j, _)| *j == i) {
            return Err(bad(format!("index {i} is out of range or repeated")));
        }
        let v = if v == "inf" {
            Param::Infinity
        } else {
            Param::Finite(v.parse::<BigRational>().map_err(|_| bad(format!("bad value {v:?}")))?)
        };
        out.push((i, v));
        pos += item.len() + 1;
    }
    Ok(out)
}

/// `outer` or `outer/inner`.
pub fn parse_shape(text: &str) -> Result<SkewShape> {
    let (o, i) = text.split_once('/').unwrap_or((text, "0"));
    let outer: Partition = o.parse()?;
    let inner: Partition = i.parse().map_err(|e| match e {
        Error::Parse { msg, .. } => Error::Parse { pos: o.len() + 1, msg },
        e => e,
    })?;
    SkewShape::new(outer, inner)
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// Some instance exhausted its retries.
    Degenerate,
    /// Stopped early; partial records were flushed with a marker.
    Truncated,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Complete => 0,
            Status::Degenerate => 3,
            Status::Truncated => 130,
        }
    }
}

/// Exit code for a failed run.
pub fn error_exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        2
    } else if matches!(e, Error::Degenerate(_)) {
        3
    } else {
        1
    }
}

/// Machine-readable error report.
pub fn error_json(e: &Error) -> String {
    let kind = match e {
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
        Error::Degenerate(_) | Error::Elim(_) | Error::MultiMod(_) => "computation",
        _ => "validation",
    };
    let mut v = json!({ "error": kind, "message": e.to_string() });
    if let Error::Parse { pos, .. } = e {
        v["position"] = json!(pos);
    }
    v.to_string()
}

/// Where a run writes: per-instance JSONL and the aggregate.
pub struct Sinks<'a> {
    pub records: Option<&'a mut dyn Write>,
    pub table: &'a mut dyn Write,
}

fn big(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn line<T: Serialize>(w: &mut dyn Write, v: &T) -> Result<()> {
    serde_json::to_writer(&mut *w, v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

/// Computes `count` items chunk by chunk, writing each record as soon as its
/// chunk is done. Returns `None` if `stop` was raised; the marker line is
/// already written then.
fn chunked<T, F>(count: usize, jobs: usize, stop: &AtomicBool, sinks: &mut Sinks, f: F) -> Result<Option<Vec<T>>>
where
    T: Send + Serialize,
    F: Fn(usize) -> Result<T> + Send + Sync,
{
    let mut all = Vec::with_capacity(count);
    let mut next = 0;
    while next < count {
        if stop.load(Ordering::SeqCst) {
            let marker = json!({ "truncated": true, "completed": next, "requested": count });
            if let Some(w) = sinks.records.as_deref_mut() {
                line(w, &marker)?;
                w.flush()?;
            }
            line(sinks.table, &marker)?;
            return Ok(None);
        }
        let n = CHUNK.min(count - next);
        let batch = map_indexed(n, jobs, |j| f(next + j)).into_iter().collect::<Result<Vec<_>>>()?;
        if let Some(w) = sinks.records.as_deref_mut() {
            for r in &batch {
                line(w, r)?;
            }
            w.flush()?;
        }
        all.extend(batch);
        next += n;
    }
    Ok(Some(all))
}

fn emit(sinks: &mut Sinks, fmt: Format, value: &Value, csv: impl FnOnce() -> String) -> Result<()> {
    match fmt {
        Format::Json => writeln!(sinks.table, "{}", serde_json::to_string_pretty(value).expect("json"))?,
        Format::Csv => write!(sinks.table, "{}", csv())?,
    }
    Ok(())
}

/// Dispatch on the mode. Validation happens before any computation.
pub fn run(cfg: &ExperimentConfig, sinks: &mut Sinks, stop: &AtomicBool) -> Result<Status> {
    let mode = cfg.mode.ok_or_else(|| Error::Config("no mode given".into()))?;
    match mode {
        Mode::Degree => run_degree(cfg, sinks),
        Mode::Tableaux => run_tableaux(cfg, sinks),
        Mode::Osculating => run_osculating(cfg, sinks, stop),
        Mode::Secant => run_secant_mode(cfg, sinks, stop),
        Mode::Galois => run_galois(cfg, sinks, stop),
        Mode::Family => run_family(cfg, sinks, stop),
        Mode::Vakil => run_vakil(cfg, sinks),
    }
}

fn run_degree(cfg: &ExperimentConfig, sinks: &mut Sinks) -> Result<Status> {
    let p = cfg.schubert_problem()?;
    let d = problem_degree(&p);
    match cfg.format {
        None => writeln!(sinks.table, "{d}")?,
        Some(fmt) => {
            let v = json!({ "problem": p.render(), "k": p.k, "n": p.n, "degree": big(&d) });
            emit(sinks, fmt, &v, || format!("problem,k,n,degree\n\"{}\",{},{},{d}\n", p.render(), p.k, p.n))?;
        }
    }
    Ok(Status::Complete)
}

fn run_tableaux(cfg: &ExperimentConfig, sinks: &mut Sinks) -> Result<Status> {
    let text = cfg.shape.as_deref().ok_or_else(|| Error::Config("--shape is required".into()))?;
    let s = parse_shape(text)?;
    let count = count_tableaux(&s);
    let sigma = sign_imbalance(&s);
    let v = json!({
        "outer": s.outer().to_string(),
        "inner": s.inner().to_string(),
        "cells": s.cells(),
        "count": big(&count),
        "sign_imbalance": big(&sigma),
    });
    let csv = || format!("outer,inner,cells,count,sign_imbalance\n\"{}\",\"{}\",{},{count},{sigma}\n", s.outer(), s.inner(), s.cells());
    emit(sinks, cfg.format.unwrap_or_default(), &v, csv)?;
    Ok(Status::Complete)
}

fn run_osculating(cfg: &ExperimentConfig, sinks: &mut Sinks, stop: &AtomicBool) -> Result<Status> {
    let p = cfg.schubert_problem()?;
    let types = parse_types(cfg.osc_type.as_deref().unwrap_or(""), &p)?;
    let pinned = match &cfg.pin {
        Some(t) => parse_pins(t, &p)?,
        None => Vec::new(),
    };
    for t in &types {
        check_type(&p, t, &pinned)?;
    }
    let per_row = cfg.instances.unwrap_or(10);
    let schedule: Vec<ScheduleRow> = types.into_iter().map(|t| ScheduleRow { osc_type: t, instances: per_row }).collect();
    let jobs: Vec<&OscType> = schedule.iter().flat_map(|r| std::iter::repeat_n(&r.osc_type, r.instances)).collect();
    let opts = RunOptions { count: cfg.count_options(), pinned, jobs: 1 };
    let seed = cfg.seed();
    let Some(records) = chunked(jobs.len(), cfg.jobs(), stop, sinks, |i| run_instance(&p, jobs[i], seed, i as u64, &opts))?
    else {
        return Ok(Status::Truncated);
    };
    let table = tabulate(&p, &schedule, &records, seed);
    match cfg.format.unwrap_or_default() {
        Format::Json => writeln!(sinks.table, "{}", table.to_json())?,
        Format::Csv => write!(sinks.table, "{}", table.to_csv())?,
    }
    Ok(if table.rejections > 0 { Status::Degenerate } else { Status::Complete })
}

fn run_secant_mode(cfg: &ExperimentConfig, sinks: &mut Sinks, stop: &AtomicBool) -> Result<Status> {
    let p = cfg.schubert_problem()?;
    let opts = cfg.count_options();
    let seed = cfg.seed();
    let count = cfg.instances.unwrap_or(10);
    let Some(records) = chunked(count, cfg.jobs(), stop, sinks, |i| run_secant_instance(&p, seed, i as u64, &opts))? else {
        return Ok(Status::Truncated);
    };
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for c in records.iter().filter_map(|r| r.real_count) {
        *counts.entry(c).or_insert(0) += 1;
    }
    let rejections = records.iter().filter(|r| !r.valid).count();
    let max_overlap = records.iter().map(|r| r.overlap).max().unwrap_or(0);
    let d = problem_degree_usize(&p);
    let v = json!({
        "problem": p.render(),
        "k": p.k,
        "n": p.n,
        "degree": d,
        "instances": count,
        "counts": counts,
        "rejections": rejections,
        "max_overlap": max_overlap,
        "seed": seed,
    });
    let csv = || {
        let mut s = "real_count,instances\n".to_string();
        for (c, m) in &counts {
            s.push_str(&format!("{c},{m}\n"));
        }
        s
    };
    emit(sinks, cfg.format.unwrap_or_default(), &v, csv)?;
    Ok(if rejections > 0 { Status::Degenerate } else { Status::Complete })
}

#[derive(Serialize)]
struct SampleRecord<'a> {
    sample: usize,
    prime: u64,
    cycle_type: &'a Option<Vec<usize>>,
}

fn census_records(c: &Census) -> Vec<SampleRecord<'_>> {
    c.primes
        .iter()
        .zip(&c.outcomes)
        .enumerate()
        .map(|(i, (&prime, t))| SampleRecord { sample: i, prime, cycle_type: t })
        .collect()
}

fn census_csv(c: &Census) -> String {
    let mut s = "cycle_type,count,fraction\n".to_string();
    for (t, m) in &c.counts {
        s.push_str(&format!("\"{}\",{m},{:.4}\n", type_key(t), c.fraction(t)));
    }
    s
}

fn run_galois(cfg: &ExperimentConfig, sinks: &mut Sinks, stop: &AtomicBool) -> Result<Status> {
    let p = cfg.schubert_problem()?;
    let primes = cfg.prime_source()?;
    primes.check(p.n)?;
    let opts = SampleOptions { style: cfg.style.unwrap_or_default(), flags: cfg.flags.unwrap_or_default() };
    let seed = cfg.seed();
    let d = problem_degree_usize(&p);
    if let Some(count) = cfg.samples {
        if cfg.budget.is_some() {
            return Err(Error::Config("--samples and --budget are exclusive".into()));
        }
        let Some(samples) = chunked(count, cfg.jobs(), stop, sinks, |i| {
            let s = seeded_sample(&p, &primes, seed, i as u64, opts)?;
            Ok(json!({ "sample": i, "prime": s.prime, "cycle_type": s.cycle_type }))
        })?
        else {
            return Ok(Status::Truncated);
        };
        let mut c = Census::default();
        for v in samples {
            let prime = v["prime"].as_u64().expect("prime");
            let cycle_type = serde_json::from_value(v["cycle_type"].clone()).expect("cycle type");
            c.record(&crate::galois::Sample { prime, cycle_type });
        }
        let census: BTreeMap<String, usize> = c.counts.iter().map(|(t, m)| (type_key(t), *m)).collect();
        let fractions: BTreeMap<String, f64> = c.counts.keys().map(|t| (type_key(t), c.fraction(t))).collect();
        let v = json!({
            "problem": p.render(),
            "d": d,
            "samples": c.samples,
            "rejections": c.rejections,
            "census": census,
            "fractions": fractions,
            "seed": seed,
        });
        emit(sinks, cfg.format.unwrap_or_default(), &v, || census_csv(&c))?;
        return Ok(if c.accepted() == 0 { Status::Degenerate } else { Status::Complete });
    }
    let budget = cfg.budget.unwrap_or(100);
    let verdict =
        frobenius_algorithm_until(&p, budget, &primes, seed, cfg.jobs(), opts, &|| stop.load(Ordering::SeqCst))?;
    if let Some(w) = sinks.records.as_deref_mut() {
        for r in census_records(&verdict.census) {
            line(w, &r)?;
        }
        w.flush()?;
    }
    match cfg.format.unwrap_or_default() {
        Format::Json => writeln!(sinks.table, "{}", verdict.to_json())?,
        Format::Csv => write!(sinks.table, "{}", census_csv(&verdict.census))?,
    }
    Ok(if verdict.notes.iter().any(|n| n == "truncated") {
        Status::Truncated
    } else if verdict.census.accepted() == 0 {
        Status::Degenerate
    } else {
        Status::Complete
    })
}

fn run_family(cfg: &ExperimentConfig, sinks: &mut Sinks, stop: &AtomicBool) -> Result<Status> {
    let (k, n) = cfg.need_kn()?;
    let boxp = box_partition(k, n)?;
    if let Some(count) = cfg.instances {
        let opts = cfg.count_options();
        let seed = cfg.seed();
        let Some(records) =
            chunked(count, cfg.jobs(), stop, sinks, |i| cross_check_instance(k, n, seed, i as u64, &opts))?
        else {
            return Ok(Status::Truncated);
        };
        let conclusive = records.iter().filter(|r| r.factorization.is_some() && r.pipeline.is_some()).count();
        let agree = records.iter().filter(|r| r.agrees).count();
        let disagree: Vec<u64> = records
            .iter()
            .filter(|r: &&CrossCheckRecord| r.factorization.is_some() && r.pipeline.is_some() && !r.agrees)
            .map(|r| r.instance)
            .collect();
        let v = json!({
            "k": k,
            "n": n,
            "instances": count,
            "conclusive": conclusive,
            "agree": agree,
            "disagree": disagree,
            "seed": seed,
        });
        let csv = || format!("k,n,instances,conclusive,agree\n{k},{n},{count},{conclusive},{agree}\n");
        emit(sinks, cfg.format.unwrap_or_default(), &v, csv)?;
        return Ok(if conclusive < count { Status::Degenerate } else { Status::Complete });
    }
    let nus = admissible_rho(n).into_iter().map(|r| Ok((r, nu(k, n, r)?))).collect::<Result<Vec<_>>>()?;
    let mut v = json!({
        "k": k,
        "n": n,
        "box": boxp.to_string(),
        "nu": nus.iter().map(|(r, x)| (r.to_string(), big(x))).collect::<serde_json::Map<_, _>>(),
    });
    if let Some(rho) = cfg.rho {
        let b = family_bounds(k, n, rho)?;
        v["rho_box"] = json!(rho);
        v["lower"] = big(&b.lower);
        v["attainable"] = Value::Array(b.attainable.iter().map(big).collect());
    }
    let csv = || {
        let mut s = "rho,nu\n".to_string();
        for (r, x) in &nus {
            s.push_str(&format!("{r},{x}\n"));
        }
        s
    };
    emit(sinks, cfg.format.unwrap_or_default(), &v, csv)?;
    Ok(Status::Complete)
}

/// Special conditions of a problem in Gr(2,n) as integers.
fn special_parts(p: &SchubertProblem) -> Result<Vec<usize>> {
    p.conditions
        .iter()
        .map(|c| match c.parts() {
            [a] => Ok(*a),
            _ => Err(Error::Invalid(format!("condition {c} is not special"))),
        })
        .collect()
}

fn run_vakil(cfg: &ExperimentConfig, sinks: &mut Sinks) -> Result<Status> {
    let n = cfg.n.ok_or_else(|| Error::Config("--n is required".into()))?;
    if cfg.k.is_some_and(|k| k != 2) {
        return Err(Error::Config("vakil works in Gr(2,n)".into()));
    }
    if let Some(text) = &cfg.problem {
        let p = parse_problem(text, 2, n)?;
        let a = special_parts(&p)?;
        let verdict = vakil_alternating_gr2(&a, n)?;
        let v = json!({ "problem": p.render(), "n": n, "verdict": verdict });
        let csv = || format!("problem,n,at_least_alternating\n\"{}\",{n},{}\n", p.render(), verdict.at_least_alternating);
        emit(sinks, cfg.format.unwrap_or_default(), &v, csv)?;
        return Ok(Status::Complete);
    }
    if n < 4 {
        return Err(Error::BadGrassmannian { k: 2, n });
    }
    let problems = reduced_special_problems(n);
    let mut certified = 0;
    let mut rows = Vec::new();
    for a in &problems {
        let verdict = vakil_alternating_gr2(a, n)?;
        certified += verdict.at_least_alternating as usize;
        let conds: Vec<Partition> = a.iter().map(|&x| Partition::of(&[x])).collect();
        let text = SchubertProblem::new(2, n, conds)?.render();
        let d = crate::galois::kostka_gr2(a, n)?;
        let rec = json!({ "problem": text, "n": n, "degree": d, "at_least_alternating": verdict.at_least_alternating });
        if let Some(w) = sinks.records.as_deref_mut() {
            line(w, &rec)?;
        }
        rows.push(rec);
    }
    if let Some(w) = sinks.records.as_deref_mut() {
        w.flush()?;
    }
    let v = json!({ "n": n, "problems": problems.len(), "certified": certified });
    let csv = || {
        let mut s = "problem,degree,at_least_alternating\n".to_string();
        for r in &rows {
            s.push_str(&format!("\"{}\",{},{}\n", r["problem"].as_str().unwrap_or(""), r["degree"], r["at_least_alternating"]));
        }
        s
    };
    emit(sinks, cfg.format.unwrap_or_default(), &v, csv)?;
    Ok(Status::Complete)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let p = parse_problem("1^4", 2, 4).unwrap();
        assert_eq!(p.conditions, vec![Partition::box_one(); 4]);
        let p = parse_problem("2,2^4", 4, 8).unwrap();
        assert_eq!(p.conditions, vec![Partition::of(&[2, 2]); 4]);
        assert_eq!(parse_problem("3,1;1^7", 2, 8), Err(Error::Codimension { got: 11, expected: 12 }));
        assert!(matches!(parse_problem("1^4;", 2, 4), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_problem("1^^4", 2, 4), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_problem("1,2;1^2", 2, 4), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_problem("1 ^4", 2, 4), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn types_and_pins() {
        let p = parse_problem("2,1;2;1^13", 3, 9).unwrap();
        let t = parse_types("1,1,13;1,1,1", &p).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1][2], (Partition::box_one(), 1));
        assert!(matches!(parse_types("1,1", &p), Err(Error::Parse { pos: 0, .. })));
        let pins = parse_pins("0=inf;1=-3/4", &p).unwrap();
        assert_eq!(pins[0], (0, Param::Infinity));
        assert!(parse_pins("0=inf;0=1", &p).is_err());
    }

    #[test]
    fn overlay_prefers_top() {
        let file = ExperimentConfig::from_json(r#"{"mode":"osculating","k":2,"n":4,"seed":3,"problem":"1^4"}"#).unwrap();
        let flags = ExperimentConfig { seed: Some(9), ..Default::default() };
        let c = file.overlay(flags);
        assert_eq!((c.seed, c.k, c.mode), (Some(9), Some(2), Some(Mode::Osculating)));
        assert!(ExperimentConfig::from_json(r#"{"sede":1}"#).is_err());
    }

    #[test]
    fn degree_prints_number() {
        let cfg = ExperimentConfig {
            mode: Some(Mode::Degree),
            k: Some(3),
            n: Some(6),
            problem: Some("1^9".into()),
            ..Default::default()
        };
        let mut out = Vec::new();
        let st = run(&cfg, &mut Sinks { records: None, table: &mut out }, &AtomicBool::new(false)).unwrap();
        assert_eq!(st, Status::Complete);
        assert_eq!(String::from_utf8(out).unwrap(), "42\n");
    }

    #[test]
    fn stop_flushes_marker() {
        let cfg = ExperimentConfig {
            mode: Some(Mode::Osculating),
            k: Some(2),
            n: Some(4),
            problem: Some("1^4".into()),
            instances: Some(5),
            ..Default::default()
        };
        let (mut rec, mut tab) = (Vec::new(), Vec::new());
        let st = run(&cfg, &mut Sinks { records: Some(&mut rec), table: &mut tab }, &AtomicBool::new(true)).unwrap();
        assert_eq!(st, Status::Truncated);
        assert!(String::from_utf8(rec).unwrap().contains("\"truncated\":true"));
    }
}
