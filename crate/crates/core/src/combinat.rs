//! Partitions, skew shapes, Littlewood–Richardson products, Kostka numbers
//! and tableau counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Panics on non-partitions; for literals.
    pub fn of(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("not a partition")
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(r^m)`: `m` rows of length `r`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition { parts: vec![cols; rows] }
    }

    pub fn box_one() -> Self {
        Partition { parts: vec![1] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.parts.len() <= rows && self.part(0) <= cols
    }

    /// Box check for Gr(k,n): at most `k` parts, each at most `n-k`.
    pub fn check_box(&self, k: usize, n: usize) -> Result<()> {
        if self.fits(k, n - k) {
            Ok(())
        } else {
            Err(Error::BoxViolation { part: self.to_string(), rows: k, cols: n - k })
        }
    }

    pub fn transpose(&self) -> Self {
        let cols = self.part(0);
        let parts = (0..cols).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect();
        Partition { parts }
    }

    /// Complement in the `k x (n-k)` box.
    pub fn complement(&self, k: usize, n: usize) -> Result<Self> {
        self.check_box(k, n)?;
        let parts = (0..k).rev().map(|i| n - k - self.part(i)).collect();
        Self::new(parts)
    }

    /// Number of boxes on the main diagonal.
    pub fn diagonal_length(&self) -> usize {
        self.parts.iter().enumerate().take_while(|(i, &p)| p > *i).count()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.parts.len() <= self.parts.len() && other.parts.iter().enumerate().all(|(i, &p)| p <= self.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse { pos: 0, msg: format!("bad part {t:?}") })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Derived data of a partition in Gr(k,n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived {
    pub complement: Partition,
    pub transpose: Partition,
    pub diagonal_length: usize,
    pub is_symmetric: bool,
}

pub fn partition_derive(lambda: &Partition, k: usize, n: usize) -> Result<Derived> {
    Ok(Derived {
        complement: lambda.complement(k, n)?,
        transpose: lambda.transpose(),
        diagonal_length: lambda.diagonal_length(),
        is_symmetric: lambda.is_symmetric(),
    })
}

/// `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::NotContained { inner: inner.to_string(), outer: outer.to_string() });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn cells(&self) -> usize {
        self.outer.weight() - self.inner.weight()
    }

    /// Cells `(row, col)` in reading order: rows top to bottom, each left to right.
    pub fn cell_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.cells());
        for r in 0..self.outer.len() {
            for c in self.inner.part(r)..self.outer.part(r) {
                out.push((r, c));
            }
        }
        out
    }
}

/// A Schubert problem in Gr(k,n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchubertProblem {
    pub k: usize,
    pub n: usize,
    pub conditions: Vec<Partition>,
}

impl SchubertProblem {
    pub fn new(k: usize, n: usize, conditions: Vec<Partition>) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::BadGrassmannian { k, n });
        }
        for c in &conditions {
            c.check_box(k, n)?;
        }
        let got: usize = conditions.iter().map(|c| c.weight()).sum();
        if got != k * (n - k) {
            return Err(Error::Codimension { got, expected: k * (n - k) });
        }
        Ok(SchubertProblem { k, n, conditions })
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// Text form `cond(;cond)*` with `^m` for runs of equal conditions.
    pub fn render(&self) -> String {
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.conditions.len() {
            let mut j = i;
            while j < self.conditions.len() && self.conditions[j] == self.conditions[i] {
                j += 1;
            }
            let c = self.conditions[i].to_string();
            out.push(if j - i > 1 { format!("{c}^{}", j - i) } else { c });
            i = j;
        }
        out.join(";")
    }

    /// Distinct conditions with their multiplicities, first-appearance order.
    pub fn multiplicities(&self) -> Vec<(Partition, usize)> {
        let mut out: Vec<(Partition, usize)> = Vec::new();
        for c in &self.conditions {
            match out.iter_mut().find(|(p, _)| p == c) {
                Some(e) => e.1 += 1,
                None => out.push((c.clone(), 1)),
            }
        }
        out
    }
}

/// Littlewood–Richardson expansion of `s_lambda * s_mu`, truncated to shapes
/// with at most `rows` rows and at most `cols` columns.
pub fn lr_product(lambda: &Partition, mu: &Partition, rows: usize, cols: usize) -> FxHashMap<Partition, BigUint> {
    let mut out: FxHashMap<Partition, BigUint> = FxHashMap::default();
    if !lambda.fits(rows, cols) || !mu.fits(rows, cols) {
        return out;
    }
    let mut shape: Vec<usize> = (0..rows).map(|i| lambda.part(i)).collect();
    // counts[j][s]: number of label j placed in row s
    let mut counts = vec![vec![0usize; rows]; mu.len()];
    lr_fill(mu, 0, 0, mu.part(0), &mut shape, &mut counts, cols, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn lr_fill(
    mu: &Partition,
    label: usize,
    row: usize,
    remaining: usize,
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    cols: usize,
    out: &mut FxHashMap<Partition, BigUint>,
) {
    let rows = shape.len();
    if label == mu.len() {
        let p = Partition::new(shape.clone()).unwrap();
        *out.entry(p).or_insert_with(BigUint::zero) += 1u32;
        return;
    }
    if row == rows {
        if remaining == 0 {
            let next = mu.part(label + 1);
            lr_fill(mu, label + 1, label + 1, next, shape, counts, cols, out);
        }
        return;
    }
    // the strip for this label was laid on the shape before any label-th box
    let before_row = shape[row];
    let bound_above = if row == 0 {
        cols
    } else {
        // horizontal strip: cannot pass the previous row's length before this label
        shape[row - 1] - counts[label][row - 1]
    };
    let max_here = bound_above.min(cols).saturating_sub(before_row).min(remaining);
    for a in (0..=max_here).rev() {
        // lattice: labels `label` in rows <= row must not exceed labels `label-1` in rows < row
        if label > 0 {
            let mine: usize = counts[label][..row].iter().sum::<usize>() + a;
            let prev: usize = counts[label - 1][..row].iter().sum();
            if mine > prev {
                continue;
            }
        }
        if a == 0 && remaining > 0 && row + 1 == rows {
            continue;
        }
        counts[label][row] = a;
        shape[row] += a;
        lr_fill(mu, label, row + 1, remaining - a, shape, counts, cols, out);
        shape[row] -= a;
        counts[label][row] = 0;
    }
}

/// d(λ¹,…,λʳ): coefficient of the full box in the product of the classes.
pub fn problem_degree(p: &SchubertProblem) -> BigUint {
    let (rows, cols) = (p.k, p.n - p.k);
    let mut current: FxHashMap<Partition, BigUint> = FxHashMap::default();
    current.insert(Partition::empty(), BigUint::one());
    for cond in &p.conditions {
        let mut next: FxHashMap<Partition, BigUint> = FxHashMap::default();
        for (shape, mult) in &current {
            for (nu, c) in lr_product(shape, cond, rows, cols) {
                *next.entry(nu).or_insert_with(BigUint::zero) += c * mult;
            }
        }
        current = next;
    }
    current.remove(&Partition::rectangle(rows, cols)).unwrap_or_else(BigUint::zero)
}

/// d(λ) as a machine integer; panics on overflow.
pub fn problem_degree_usize(p: &SchubertProblem) -> usize {
    problem_degree(p).to_usize().expect("degree overflows usize")
}

/// Degree of the Wronski map on Gr(k,n).
pub fn wronski_degree(k: usize, n: usize) -> BigUint {
    assert!(k >= 1 && k < n);
    let f = |m: usize| sclab_exact::field::factorial(m as u64);
    let mut num = f(k * (n - k));
    for i in 1..k {
        num *= f(i);
    }
    let mut den = BigUint::one();
    for i in 1..=k {
        den *= f(n - i);
    }
    num / den
}

/// Number of semistandard tableaux of shape `shape` and content `content`.
pub fn kostka_shape(shape: &Partition, content: &[usize]) -> BigUint {
    let mut memo: FxHashMap<(usize, Vec<usize>), BigUint> = FxHashMap::default();
    let target: Vec<usize> = shape.parts().to_vec();
    let start = vec![0; target.len()];
    kostka_go(&target, content, 0, start, &mut memo)
}

fn kostka_go(
    target: &[usize],
    content: &[usize],
    idx: usize,
    cur: Vec<usize>,
    memo: &mut FxHashMap<(usize, Vec<usize>), BigUint>,
) -> BigUint {
    if idx == content.len() {
        return if cur == target { BigUint::one() } else { BigUint::zero() };
    }
    if let Some(v) = memo.get(&(idx, cur.clone())) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut strips = Vec::new();
    horizontal_strips(target, &cur, 0, content[idx], &mut cur.clone(), &mut strips);
    for s in strips {
        total += kostka_go(target, content, idx + 1, s, memo);
    }
    memo.insert((idx, cur), total.clone());
    total
}

/// All shapes `nu ⊆ target` with `nu / cur` a horizontal strip of `size` boxes.
fn horizontal_strips(
    target: &[usize],
    cur: &[usize],
    row: usize,
    size: usize,
    work: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if row == cur.len() {
        if size == 0 {
            out.push(work.clone());
        }
        return;
    }
    let upper = if row == 0 { target[0] } else { cur[row - 1].min(target[row]) };
    let room = upper.saturating_sub(cur[row]);
    for a in 0..=room.min(size) {
        work[row] = cur[row] + a;
        horizontal_strips(target, cur, row + 1, size - a, work, out);
    }
    work[row] = cur[row];
}

/// Kostka number for the special Schubert problem with conditions `a` in Gr(k,n).
pub fn kostka(k: usize, n: usize, a: &[usize]) -> Result<BigUint> {
    let s: usize = a.iter().sum();
    if k == 0 || k >= n {
        return Err(Error::BadGrassmannian { k, n });
    }
    if s != k * (n - k) {
        return Err(Error::Codimension { got: s, expected: k * (n - k) });
    }
    Ok(kostka_shape(&Partition::rectangle(k, n - k), a))
}

fn addable_cells(shape: &[usize], outer: &Partition) -> Vec<usize> {
    (0..shape.len())
        .filter(|&r| shape[r] < outer.part(r) && (r == 0 || shape[r - 1] > shape[r]))
        .collect()
}

/// Number of standard tableaux, by dynamic programming over the Young lattice.
pub fn count_tableaux(s: &SkewShape) -> BigUint {
    let rows = s.outer().len();
    let start: Vec<usize> = (0..rows).map(|r| s.inner().part(r)).collect();
    let mut memo: FxHashMap<Vec<usize>, BigUint> = FxHashMap::default();
    fn go(shape: &mut Vec<usize>, outer: &Partition, memo: &mut FxHashMap<Vec<usize>, BigUint>) -> BigUint {
        if let Some(v) = memo.get(shape) {
            return v.clone();
        }
        let cells = addable_cells(shape, outer);
        let total = if cells.is_empty() {
            BigUint::one()
        } else {
            let mut t = BigUint::zero();
            for r in cells {
                shape[r] += 1;
                t += go(shape, outer, memo);
                shape[r] -= 1;
            }
            t
        };
        memo.insert(shape.clone(), total.clone());
        total
    }
    let mut shape = start;
    go(&mut shape, s.outer(), &mut memo)
}

/// Number of standard tableaux by filling cells with 1, 2, ... in turn.
pub fn count_tableaux_backtrack(s: &SkewShape) -> u64 {
    let mut count = 0;
    enumerate_tableaux(s, |_| count += 1);
    count
}

/// Visit every standard tableau as the list of its entries in reading order.
pub fn enumerate_tableaux(s: &SkewShape, mut visit: impl FnMut(&[usize])) {
    let cells = s.cell_list();
    let index: FxHashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let rows = s.outer().len();
    let mut shape: Vec<usize> = (0..rows).map(|r| s.inner().part(r)).collect();
    let mut filling = vec![0usize; cells.len()];
    fn go(
        value: usize,
        shape: &mut Vec<usize>,
        s: &SkewShape,
        index: &FxHashMap<(usize, usize), usize>,
        filling: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if value > filling.len() {
            visit(filling);
            return;
        }
        for r in addable_cells(shape, s.outer()) {
            let cell = (r, shape[r]);
            filling[index[&cell]] = value;
            shape[r] += 1;
            go(value + 1, shape, s, index, filling, visit);
            shape[r] -= 1;
        }
    }
    go(1, &mut shape, s, &index, &mut filling, &mut visit);
}

/// Sign of a permutation of `1..=m` given as a word.
pub fn permutation_sign(word: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `|Σ_T sgn(T)|` over standard tableaux, by a signed count over the Young
/// lattice: placing the next value in a cell creates one inversion for every
/// already filled cell later in reading order.
pub fn sign_imbalance(s: &SkewShape) -> BigUint {
    let rows = s.outer().len();
    let mut shape: Vec<usize> = (0..rows).map(|r| s.inner().part(r)).collect();
    let mut memo: FxHashMap<Vec<usize>, num_bigint::BigInt> = FxHashMap::default();
    fn go(
        shape: &mut Vec<usize>,
        s: &SkewShape,
        memo: &mut FxHashMap<Vec<usize>, num_bigint::BigInt>,
    ) -> num_bigint::BigInt {
        if let Some(v) = memo.get(shape) {
            return v.clone();
        }
        let cells = addable_cells(shape, s.outer());
        let total = if cells.is_empty() {
            num_bigint::BigInt::one()
        } else {
            let mut t = num_bigint::BigInt::zero();
            for r in cells {
                // filled cells after (r, shape[r]) in reading order: the rest of
                // row r is empty, so count filled cells in lower rows
                let later: usize = (r + 1..shape.len()).map(|q| shape[q] - s.inner().part(q)).sum();
                shape[r] += 1;
                let sub = go(shape, s, memo);
                shape[r] -= 1;
                if later % 2 == 0 {
                    t += sub;
                } else {
                    t -= sub;
                }
            }
            t
        };
        memo.insert(shape.clone(), total.clone());
        total
    }
    go(&mut shape, s, &mut memo).magnitude().clone()
}

/// All partitions fitting in a `rows x cols` box.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()).unwrap());
        if cur.len() == rows {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            go(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}
