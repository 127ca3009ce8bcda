//! Flags, the chart `[I_k : X]`, determinantal Schubert conditions and
//! instance assembly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use sclab_exact::field::{Field, Gaussian, GaussianField, PrimeField, RationalField};
use sclab_exact::linalg::{self, Matrix};
use sclab_exact::multivariate::{realize_gaussian, MultiPoly, PolySystem};

use crate::combinat::{Partition, SchubertProblem};
use crate::error::{Error, Result};

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param<E> {
    Finite(E),
    Infinity,
}

/// Osculation parameter of one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OscPoint {
    Real(Param<BigRational>),
    /// `value` and its conjugate, carried by this condition and `partner`.
    Pair { value: Gaussian, partner: usize },
}

/// One osculation point per condition of a problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OsculationConfig {
    pub points: Vec<OscPoint>,
}

impl OsculationConfig {
    pub fn all_real(ts: &[BigRational]) -> Self {
        OsculationConfig { points: ts.iter().map(|t| OscPoint::Real(Param::Finite(t.clone()))).collect() }
    }

    /// Check distinctness, pairing and the single-infinity rule against `p`.
    pub fn validate(&self, p: &SchubertProblem) -> Result<()> {
        if self.points.len() != p.conditions.len() {
            return Err(Error::Config(format!(
                "{} osculation points for {} conditions",
                self.points.len(),
                p.conditions.len()
            )));
        }
        let mut infinities = 0;
        let mut values: Vec<Gaussian> = Vec::new();
        for (i, pt) in self.points.iter().enumerate() {
            match pt {
                OscPoint::Real(Param::Infinity) => infinities += 1,
                OscPoint::Real(Param::Finite(t)) => values.push(Gaussian::real(t.clone())),
                OscPoint::Pair { value, partner } => {
                    if value.is_real() {
                        return Err(Error::Config("conjugate pair with a real value".into()));
                    }
                    let Some(OscPoint::Pair { value: v2, partner: back }) = self.points.get(*partner) else {
                        return Err(Error::Config(format!("condition {i} links to a non-pair entry")));
                    };
                    if *back != i || *v2 != value.conj() {
                        return Err(Error::Config(format!("condition {i} is not linked to its conjugate")));
                    }
                    if p.conditions[i] != p.conditions[*partner] {
                        return Err(Error::Config("conjugate pair on different partitions".into()));
                    }
                    values.push(value.clone());
                }
            }
        }
        if infinities > 1 {
            return Err(Error::Config("more than one condition at infinity".into()));
        }
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if values[i] == values[j] {
                    return Err(Error::RepeatedParameter);
                }
            }
        }
        Ok(())
    }

    /// Number of real points carried by each distinct partition.
    pub fn osculation_type(&self, p: &SchubertProblem) -> Vec<(Partition, usize)> {
        p.multiplicities()
            .into_iter()
            .map(|(lam, _)| {
                let real = self
                    .points
                    .iter()
                    .zip(&p.conditions)
                    .filter(|(pt, c)| **c == lam && matches!(pt, OscPoint::Real(_)))
                    .count();
                (lam, real)
            })
            .collect()
    }
}

fn inverse_factorials<F: Field>(f: &F, n: usize) -> Result<Vec<F::Elem>> {
    let mut out = Vec::with_capacity(n);
    let mut acc = f.one();
    for j in 0..n {
        if j > 0 {
            acc = f.mul(&acc, &f.from_u64(j as u64));
        }
        let inv = f.inv(&acc).ok_or(Error::Characteristic { p: f.characteristic(), n })?;
        out.push(inv);
    }
    Ok(out)
}

/// Flag osculating the rational normal curve `γ(t) = (1, t, t²/2!, …)`:
/// row `i` is `γ^{(i)}(t)`. At infinity, the reversed identity.
pub fn osculating_flag<F: Field>(f: &F, t: &Param<F::Elem>, n: usize) -> Result<Matrix<F::Elem>> {
    let p = f.characteristic();
    if p != 0 && (p as usize) < n {
        return Err(Error::Characteristic { p, n });
    }
    let t = match t {
        Param::Infinity => {
            return Ok((0..n)
                .map(|i| (0..n).map(|j| if j == n - 1 - i { f.one() } else { f.zero() }).collect())
                .collect());
        }
        Param::Finite(t) => t,
    };
    let invf = inverse_factorials(f, n)?;
    let powers: Vec<F::Elem> = (0..n).map(|e| f.pow(t, e as u64)).collect();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j < i { f.zero() } else { f.mul(&powers[j - i], &invf[j - i]) })
                .collect()
        })
        .collect())
}

/// Flag secant to the curve: row `i` is `γ(pts[i])`.
pub fn secant_flag_in<F: Field>(f: &F, pts: &[F::Elem]) -> Result<Matrix<F::Elem>> {
    let n = pts.len();
    let invf = inverse_factorials(f, n)?;
    Ok(pts
        .iter()
        .map(|t| (0..n).map(|j| f.mul(&f.pow(t, j as u64), &invf[j])).collect())
        .collect())
}

/// Secant flag through strictly increasing rational points.
pub fn secant_flag(pts: &[BigRational]) -> Result<Matrix<BigRational>> {
    if pts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("secant points must be strictly increasing".into()));
    }
    secant_flag_in(&RationalField, pts)
}

/// `Σ_{i≠j} #{points of j strictly inside the hull of i}`.
pub fn overlap_number(point_sets: &[Vec<BigRational>]) -> usize {
    let hulls: Vec<Option<(&BigRational, &BigRational)>> = point_sets
        .iter()
        .map(|s| Some((s.iter().min()?, s.iter().max()?)))
        .collect();
    let mut total = 0;
    for (i, h) in hulls.iter().enumerate() {
        let Some((lo, hi)) = h else { continue };
        for (j, s) in point_sets.iter().enumerate() {
            if i != j {
                total += s.iter().filter(|x| *x > lo && *x < hi).count();
            }
        }
    }
    total
}

/// The chart `X ↦ rowspace [I_k : X]` of Gr(k,n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub k: usize,
    pub n: usize,
}

impl Chart {
    pub fn new(k: usize, n: usize) -> Self {
        Chart { k, n }
    }

    pub fn nvars(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn var(&self, r: usize, c: usize) -> usize {
        r * (self.n - self.k) + c
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.nvars());
        for r in 0..self.k {
            for c in 0..self.n - self.k {
                out.push(format!("x{}_{}", r + 1, c + 1));
            }
        }
        out
    }

    /// `[I_k : X]` with polynomial entries.
    pub fn matrix<F: Field>(&self, f: &F) -> Vec<Vec<MultiPoly<F>>> {
        let nv = self.nvars();
        (0..self.k)
            .map(|r| {
                (0..self.n)
                    .map(|c| {
                        if c < self.k {
                            let v = if c == r { f.one() } else { f.zero() };
                            MultiPoly::constant(f.clone(), nv, v)
                        } else {
                            MultiPoly::var(f.clone(), nv, self.var(r, c - self.k))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The point `[I_k : X]` as a constant matrix.
    pub fn point_matrix<F: Field>(&self, f: &F, x: &[F::Elem]) -> Matrix<F::Elem> {
        (0..self.k)
            .map(|r| {
                (0..self.n)
                    .map(|c| {
                        if c < self.k {
                            if c == r {
                                f.one()
                            } else {
                                f.zero()
                            }
                        } else {
                            x[self.var(r, c - self.k)].clone()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// All `size x size` minors of a polynomial matrix, by row expansion with
/// column-subset memoization per row subset.
fn all_minors<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>], size: usize, nvars: usize) -> Vec<MultiPoly<F>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if size == 0 || size > rows || size > cols {
        return Vec::new();
    }
    let col_sets = subsets(cols, size);
    let mut out = Vec::new();
    for rs in subsets(rows, size) {
        let mut memo: FxHashMap<u64, MultiPoly<F>> = FxHashMap::default();
        for cs in &col_sets {
            let mask = cs.iter().fold(0u64, |a, &c| a | 1 << c);
            let d = minor_rec(f, m, &rs, 0, mask, nvars, &mut memo);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn minor_rec<F: Field>(
    f: &F,
    m: &[Vec<MultiPoly<F>>],
    rs: &[usize],
    depth: usize,
    mask: u64,
    nvars: usize,
    memo: &mut FxHashMap<u64, MultiPoly<F>>,
) -> MultiPoly<F> {
    if depth == rs.len() {
        return MultiPoly::constant(f.clone(), nvars, f.one());
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let row = &m[rs[depth]];
    let mut acc = MultiPoly::zero(f.clone(), nvars);
    let mut pos = 0;
    for c in 0..64 {
        if mask & (1 << c) == 0 {
            continue;
        }
        if !row[c].is_zero() {
            let sub = minor_rec(f, m, rs, depth + 1, mask & !(1 << c), nvars, memo);
            if !sub.is_zero() {
                let t = row[c].mul(&sub);
                acc = if pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Rank conditions `(j, i)` of `X_λ F•`: `dim(H ∩ F_i) ≥ j` for each `j` with
/// `λ_j > 0`, where `i = n - k + j - λ_j` (1-based `j`).
pub fn rank_conditions(lambda: &Partition, k: usize, n: usize) -> Vec<(usize, usize)> {
    (1..=lambda.len()).map(|j| (j, n - k + j - lambda.part(j - 1))).collect()
}

/// Conditions at the corners of `λ` only; the others are implied.
pub fn essential_rank_conditions(lambda: &Partition, k: usize, n: usize) -> Vec<(usize, usize)> {
    (1..=lambda.len())
        .filter(|&j| lambda.part(j - 1) > lambda.part(j))
        .map(|j| (j, n - k + j - lambda.part(j - 1)))
        .collect()
}

fn constant_rows<F: Field>(f: &F, rows: &[Vec<F::Elem>], nvars: usize) -> Vec<Vec<MultiPoly<F>>> {
    rows.iter()
        .map(|r| r.iter().map(|c| MultiPoly::constant(f.clone(), nvars, c.clone())).collect())
        .collect()
}

/// Every `(k+i-j+1)`-minor of `[I_k:X ; F_i]` for each rank condition.
pub fn schubert_equations<F: Field>(
    f: &F,
    lambda: &Partition,
    flag: &Matrix<F::Elem>,
    chart: Chart,
) -> Result<PolySystem<F>> {
    let (k, n) = (chart.k, chart.n);
    lambda.check_box(k, n)?;
    let nv = chart.nvars();
    let mut sys = PolySystem::new(f.clone(), chart.var_names());
    let h = chart.matrix(f);
    for (j, i) in rank_conditions(lambda, k, n) {
        let mut stacked = h.clone();
        stacked.extend(constant_rows(f, &flag[..i], nv));
        for p in all_minors(f, &stacked, k + i - j + 1, nv) {
            sys.push(p);
        }
    }
    Ok(sys)
}

/// Same ideal as [`schubert_equations`] with fewer generators: for each
/// essential condition, the `(k-j+1)`-minors of `H·K` where the columns of
/// `K` span the annihilator of `F_i`.
pub fn schubert_equations_compact<F: Field>(
    f: &F,
    lambda: &Partition,
    flag: &Matrix<F::Elem>,
    chart: Chart,
) -> Result<PolySystem<F>> {
    let (k, n) = (chart.k, chart.n);
    lambda.check_box(k, n)?;
    let nv = chart.nvars();
    let mut sys = PolySystem::new(f.clone(), chart.var_names());
    let h = chart.matrix(f);
    for (j, i) in essential_rank_conditions(lambda, k, n) {
        let kernel = linalg::kernel(f, &flag[..i].to_vec(), n);
        // (H K)[r][c] = Σ_l H[r][l] K_c[l]
        let hk: Vec<Vec<MultiPoly<F>>> = h
            .iter()
            .map(|row| {
                kernel
                    .iter()
                    .map(|kv| {
                        let mut acc = MultiPoly::zero(f.clone(), nv);
                        for (hl, kl) in row.iter().zip(kv.iter()) {
                            if !f.is_zero(kl) && !hl.is_zero() {
                                acc = acc.add(&hl.scale(kl));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        for p in all_minors(f, &hk, k - j + 1, nv) {
            sys.push(p);
        }
    }
    Ok(sys)
}

/// How to write each Schubert condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationStyle {
    /// Minors of the stacked matrix `[H ; F_i]` for every rank condition.
    #[default]
    Stacked,
    /// Minors of `H·K` for the essential conditions.
    Compact,
}

pub fn equations_with<F: Field>(
    f: &F,
    lambda: &Partition,
    flag: &Matrix<F::Elem>,
    chart: Chart,
    style: EquationStyle,
) -> Result<PolySystem<F>> {
    match style {
        EquationStyle::Stacked => schubert_equations(f, lambda, flag, chart),
        EquationStyle::Compact => schubert_equations_compact(f, lambda, flag, chart),
    }
}

/// The rational system of an osculating instance. Conjugate pairs are written
/// over the Gaussian rationals at each of the two conjugate parameters and
/// realized as `Re + Im`.
pub fn assemble_instance(p: &SchubertProblem, cfg: &OsculationConfig) -> Result<PolySystem<RationalField>> {
    assemble_instance_with(p, cfg, EquationStyle::default())
}

pub fn assemble_instance_with(
    p: &SchubertProblem,
    cfg: &OsculationConfig,
    style: EquationStyle,
) -> Result<PolySystem<RationalField>> {
    cfg.validate(p)?;
    let chart = Chart::new(p.k, p.n);
    let mut sys = PolySystem::new(RationalField, chart.var_names());
    for (lambda, pt) in p.conditions.iter().zip(&cfg.points) {
        match pt {
            OscPoint::Real(t) => {
                let flag = osculating_flag(&RationalField, t, p.n)?;
                sys.extend(equations_with(&RationalField, lambda, &flag, chart, style)?);
            }
            OscPoint::Pair { value, .. } => {
                let g = GaussianField;
                let flag = osculating_flag(&g, &Param::Finite(value.clone()), p.n)?;
                let gsys = equations_with(&g, lambda, &flag, chart, style)?;
                for poly in &gsys.polys {
                    sys.push(realize_gaussian(poly));
                }
            }
        }
    }
    Ok(sys)
}

/// The instance modulo a prime, with one osculation parameter per condition.
pub fn assemble_mod_p(
    p: &SchubertProblem,
    field: PrimeField,
    params: &[Param<u64>],
    style: EquationStyle,
) -> Result<PolySystem<PrimeField>> {
    if params.len() != p.conditions.len() {
        return Err(Error::Config("one parameter per condition required".into()));
    }
    let chart = Chart::new(p.k, p.n);
    let mut sys = PolySystem::new(field, chart.var_names());
    for (lambda, t) in p.conditions.iter().zip(params) {
        let flag = osculating_flag(&field, t, p.n)?;
        sys.extend(equations_with(&field, lambda, &flag, chart, style)?);
    }
    Ok(sys)
}

/// Rational system for conditions on arbitrary (e.g. secant) flags.
pub fn assemble_with_flags(
    p: &SchubertProblem,
    flags: &[Matrix<BigRational>],
    style: EquationStyle,
) -> Result<PolySystem<RationalField>> {
    assemble_with_flags_in(&RationalField, p, flags, style)
}

pub fn assemble_with_flags_in<F: Field>(
    f: &F,
    p: &SchubertProblem,
    flags: &[Matrix<F::Elem>],
    style: EquationStyle,
) -> Result<PolySystem<F>> {
    if flags.len() != p.conditions.len() {
        return Err(Error::Config("one flag per condition required".into()));
    }
    let chart = Chart::new(p.k, p.n);
    let mut sys = PolySystem::new(f.clone(), chart.var_names());
    for (lambda, flag) in p.conditions.iter().zip(flags) {
        sys.extend(equations_with(f, lambda, flag, chart, style)?);
    }
    Ok(sys)
}

/// Whether the row space of `h` lies in `X_λ F•`, by exact ranks.
pub fn membership_check<F: Field>(f: &F, h: &Matrix<F::Elem>, lambda: &Partition, flag: &Matrix<F::Elem>) -> Result<bool> {
    let k = h.len();
    let n = flag.len();
    if linalg::rank(f, h) != k {
        return Err(Error::Invalid("H does not have full rank".into()));
    }
    lambda.check_box(k, n)?;
    for (j, i) in rank_conditions(lambda, k, n) {
        let mut stacked = h.clone();
        stacked.extend(flag[..i].iter().cloned());
        if linalg::rank(f, &stacked) > k + i - j {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rational number from small integers.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Determinant of a rational flag matrix.
pub fn flag_det(flag: &Matrix<BigRational>) -> BigRational {
    linalg::det(&RationalField, flag)
}

/// `1 / (t - s)`, the Möbius map used to move parameters off infinity.
pub fn mobius(t: &Param<BigRational>, s: &BigRational) -> BigRational {
    match t {
        Param::Infinity => BigRational::zero(),
        Param::Finite(t) => BigRational::one() / (t - s),
    }
}
