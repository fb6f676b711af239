//! Minimum distance: the order (Geil) lower bound for `NT_u(s)`, and two exact
//! algorithms used as ground truth at desk scale.
//!
//! * [`exact_min_distance_enum`] walks every codeword whose message has a
//!   leading coefficient of 1 (weights are scale invariant).
//! * [`exact_min_distance_parity`] looks for the smallest set of linearly
//!   dependent columns of a parity-check matrix.
//!
//! Both split their search space into tasks that are processed by a fixed
//! number of scoped threads. The merged answer keeps the first witness in a
//! canonical order, so it does not depend on the number of workers.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linear::{LinearCode, Vector};
pub use crate::monomial::DeltaVariant;
use crate::monomial::{footprint_variant, MonomialOrder};

pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceConfig {
    /// Upper limit on the work an exact method may plan to do.
    pub budget: u64,
    pub workers: usize,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        let workers = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(8);
        DistanceConfig {
            budget: DEFAULT_BUDGET,
            workers,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Enumeration,
    ColumnDependence,
}

impl DistanceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceMethod::Enumeration => "enumeration",
            DistanceMethod::ColumnDependence => "column-dependence",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub lower_bound: Option<u64>,
    pub exact: Option<usize>,
    pub method: Option<DistanceMethod>,
    /// A codeword of minimum weight.
    pub witness: Option<Vector>,
}

/// Order bound on the minimum distance of `NT_u(s)` over the footprint.
pub fn geil_bound(c: &CurveSpec, s: i64) -> Result<u64> {
    geil_bound_variant(c, s, DeltaVariant::Footprint)
}

/// `min_{P ∈ Δ, ρ(P) <= s} #{ K ∈ Δ : ρ(K) - ρ(P) ∈ ρ(Δ) }`.
pub fn geil_bound_variant(c: &CurveSpec, s: i64, variant: DeltaVariant) -> Result<u64> {
    if s < 0 {
        return Err(Error::invalid("the order bound needs s >= 0"));
    }
    let delta = footprint_variant(c, variant);
    let order = MonomialOrder::of(c);
    let weights: Vec<u64> = delta.monomials().iter().map(|&m| order.weight(m)).collect();
    let present: HashSet<u64> = weights.iter().copied().collect();
    let bound = weights
        .iter()
        .filter(|&&wp| wp <= s as u64)
        .map(|&wp| {
            weights
                .iter()
                .filter(|&&wk| wk >= wp && present.contains(&(wk - wp)))
                .count() as u64
        })
        .min()
        .expect("the constant monomial has weight 0");
    Ok(bound)
}

fn check_nonzero(code: &LinearCode) -> Result<()> {
    if code.k() == 0 {
        return Err(Error::invalid("the zero code has no minimum distance"));
    }
    Ok(())
}

/// `q^k`, the number of messages an enumeration would touch.
pub fn enumeration_cost(code: &LinearCode) -> u128 {
    (code.field().order() as u128).saturating_pow(code.k() as u32)
}

/// Per-row scaled copies of the generator, in a representation chosen for speed.
trait Accumulator: Sync {
    type Word: Copy + Default + Send + Sync;
    fn width(&self) -> usize;
    /// `out = base + a * row_i`.
    fn combine(&self, out: &mut [Self::Word], base: &[Self::Word], row: usize, a: usize);
    fn weight(&self, buf: &[Self::Word]) -> usize;
}

/// Characteristic 2: one bit-plane per coordinate bit, addition is XOR.
struct Packed {
    planes: usize,
    words: usize,
    /// `scaled[row][a]` flattened as `planes * words` words.
    scaled: Vec<Vec<Vec<u64>>>,
}

impl Packed {
    fn new(code: &LinearCode) -> Self {
        let f = code.field();
        let planes = f.degree() as usize;
        let words = code.n().div_ceil(64);
        let scaled = code
            .generator()
            .iter()
            .map(|row| {
                f.elements()
                    .map(|a| {
                        let mut buf = vec![0u64; planes * words];
                        for (i, &x) in row.iter().enumerate() {
                            let v = f.mul(a, x).encoding();
                            for b in 0..planes {
                                if v >> b & 1 == 1 {
                                    buf[b * words + i / 64] |= 1 << (i % 64);
                                }
                            }
                        }
                        buf
                    })
                    .collect()
            })
            .collect();
        Packed {
            planes,
            words,
            scaled,
        }
    }
}

impl Accumulator for Packed {
    type Word = u64;

    fn width(&self) -> usize {
        self.planes * self.words
    }

    #[inline]
    fn combine(&self, out: &mut [u64], base: &[u64], row: usize, a: usize) {
        for ((o, &b), &s) in out.iter_mut().zip(base).zip(&self.scaled[row][a]) {
            *o = b ^ s;
        }
    }

    #[inline]
    fn weight(&self, buf: &[u64]) -> usize {
        (0..self.words)
            .map(|w| {
                (0..self.planes)
                    .fold(0u64, |acc, b| acc | buf[b * self.words + w])
                    .count_ones() as usize
            })
            .sum()
    }
}

/// Any characteristic: encodings, added through the field.
struct Plain<'a> {
    field: &'a Field,
    scaled: Vec<Vec<Vec<u32>>>,
}

impl<'a> Plain<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let f = code.field();
        let scaled = code
            .generator()
            .iter()
            .map(|row| {
                f.elements()
                    .map(|a| row.iter().map(|&x| f.mul(a, x).encoding()).collect())
                    .collect()
            })
            .collect();
        Plain { field: f, scaled }
    }
}

impl Accumulator for Plain<'_> {
    type Word = u32;

    fn width(&self) -> usize {
        self.scaled
            .first()
            .and_then(|r| r.first())
            .map_or(0, Vec::len)
    }

    fn combine(&self, out: &mut [u32], base: &[u32], row: usize, a: usize) {
        let f = self.field;
        for ((o, &b), &s) in out.iter_mut().zip(base).zip(&self.scaled[row][a]) {
            *o = f
                .add(
                    FieldElement::from_encoding(b),
                    FieldElement::from_encoding(s),
                )
                .encoding();
        }
    }

    fn weight(&self, buf: &[u32]) -> usize {
        buf.iter().filter(|&&x| x != 0).count()
    }
}

type Best = Option<(usize, Vec<u32>)>;

fn better(a: &Best, b: &Best) -> bool {
    match (a, b) {
        (Some(_), None) => true,
        (Some((wa, ma)), Some((wb, mb))) => (wa, ma) < (wb, mb),
        _ => false,
    }
}

struct Walk<'a, A: Accumulator> {
    acc: &'a A,
    k: usize,
    q: usize,
    levels: Vec<Vec<A::Word>>,
    digits: Vec<u32>,
    best: Best,
}

impl<A: Accumulator> Walk<'_, A> {
    fn descend(&mut self, depth: usize, leading_zero: bool) {
        if depth == self.k {
            if leading_zero {
                return;
            }
            let w = self.acc.weight(&self.levels[depth]);
            if self.best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                self.best = Some((w, self.digits.clone()));
            }
            return;
        }
        // normalized messages: the first nonzero digit is 1
        let top = if leading_zero { 2 } else { self.q };
        for a in 0..top {
            self.step(depth, a);
            self.descend(depth + 1, leading_zero && a == 0);
        }
    }

    fn step(&mut self, depth: usize, a: usize) {
        let (lo, hi) = self.levels.split_at_mut(depth + 1);
        self.acc.combine(&mut hi[0], &lo[depth], depth, a);
        self.digits[depth] = a as u32;
    }
}

fn enumerate_with<A: Accumulator>(acc: &A, k: usize, q: usize, workers: usize) -> Best {
    // fixed task split: every normalized prefix of `plen` digits
    let mut plen = 0;
    while plen < k && q.pow(plen as u32) < 256 {
        plen += 1;
    }
    let mut prefixes: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..plen {
        let mut next = Vec::new();
        for p in &prefixes {
            let leading_zero = p.iter().all(|&d| d == 0);
            let top = if leading_zero { 2 } else { q };
            for a in 0..top {
                let mut np = p.clone();
                np.push(a as u32);
                next.push(np);
            }
        }
        prefixes = next;
    }

    let workers = workers.clamp(1, prefixes.len());
    let run = |tasks: &[Vec<u32>]| -> Best {
        let mut walk = Walk {
            acc,
            k,
            q,
            levels: vec![vec![A::Word::default(); acc.width()]; k + 1],
            digits: vec![0; k],
            best: None,
        };
        let mut best: Best = None;
        for prefix in tasks {
            walk.best = None;
            for (d, &a) in prefix.iter().enumerate() {
                walk.step(d, a as usize);
            }
            walk.descend(prefix.len(), prefix.iter().all(|&d| d == 0));
            if better(&walk.best, &best) {
                best = walk.best.take();
            }
        }
        best
    };
    let chunk = prefixes.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = prefixes
            .chunks(chunk)
            .map(|tasks| s.spawn(move || run(tasks)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .fold(None, |acc, b| if better(&b, &acc) { b } else { acc })
    })
}

/// Exact minimum distance by walking all codewords.
pub fn exact_min_distance_enum(code: &LinearCode, cfg: &DistanceConfig) -> Result<DistanceResult> {
    check_nonzero(code)?;
    let cost = enumeration_cost(code);
    if cost > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "codeword enumeration",
            needed: cost,
            budget: cfg.budget,
        });
    }
    let f = code.field();
    let (k, q) = (code.k(), f.order() as usize);
    let best = if f.characteristic() == 2 {
        enumerate_with(&Packed::new(code), k, q, cfg.workers)
    } else {
        enumerate_with(&Plain::new(code), k, q, cfg.workers)
    };
    let (weight, message) = best.expect("a nonzero code has a nonzero codeword");
    let message: Vector = message
        .into_iter()
        .map(FieldElement::from_encoding)
        .collect();
    Ok(DistanceResult {
        lower_bound: None,
        exact: Some(weight),
        method: Some(DistanceMethod::Enumeration),
        witness: Some(code.encode(&message)),
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Incremental echelon basis over the columns chosen so far.
struct ColumnSearch<'a> {
    field: &'a Field,
    columns: &'a [Vector],
    target: usize,
    stop_after: &'a AtomicUsize,
    chosen: Vec<usize>,
    basis: Vec<(usize, Vector)>,
}

impl ColumnSearch<'_> {
    /// Does `v` reduce to zero against the basis? Otherwise returns the reduced,
    /// normalized vector and its pivot.
    fn reduce(&self, v: &Vector) -> Option<(usize, Vector)> {
        let f = self.field;
        let mut w = v.clone();
        for (p, b) in &self.basis {
            let c = w[*p];
            if c.is_zero() {
                continue;
            }
            let minus = f.neg(c);
            for (x, &y) in w.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(minus, y));
            }
        }
        let p = w.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(w[p]).expect("nonzero pivot");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        Some((p, w))
    }

    /// Lexicographically first dependent `target`-subset extending `chosen`.
    fn search(&mut self, start: usize) -> bool {
        let n = self.columns.len();
        let need = self.target - self.chosen.len();
        for j in start..=n - need {
            if self.chosen.is_empty() && j > self.stop_after.load(Ordering::Relaxed) {
                return false;
            }
            match self.reduce(&self.columns[j]) {
                None => {
                    if need == 1 {
                        self.chosen.push(j);
                        return true;
                    }
                    // a smaller dependent set would have been found first
                }
                Some(entry) => {
                    if need > 1 {
                        self.chosen.push(j);
                        self.basis.push(entry);
                        if self.search(j + 1) {
                            return true;
                        }
                        self.basis.pop();
                        self.chosen.pop();
                    }
                }
            }
        }
        false
    }
}

/// Exact minimum distance as the size of the smallest dependent set of
/// parity-check columns.
pub fn exact_min_distance_parity(
    code: &LinearCode,
    cfg: &DistanceConfig,
) -> Result<DistanceResult> {
    check_nonzero(code)?;
    let f = code.field();
    let n = code.n();
    let checks = code.kernel();
    let columns: Vec<Vector> = (0..n)
        .map(|j| checks.generator().iter().map(|row| row[j]).collect())
        .collect();
    let q1 = f.order() as u128 - 1;

    let mut planned = 0u128;
    for w in 1..=n.min(checks.k() + 1) {
        planned += binomial(n, w) * q1.pow(w as u32 - 1);
        if planned > cfg.budget as u128 {
            return Err(Error::BudgetExceeded {
                what: "parity-check column search",
                needed: planned,
                budget: cfg.budget,
            });
        }
        if let Some(subset) = first_dependent_subset(f, &columns, w, cfg.workers) {
            let witness = null_combination(f, &columns, &subset, n);
            debug_assert!(code.contains(&witness));
            return Ok(DistanceResult {
                lower_bound: None,
                exact: Some(w),
                method: Some(DistanceMethod::ColumnDependence),
                witness: Some(witness),
            });
        }
    }
    Err(Error::Inconsistent(
        "no dependent column set within the Singleton bound".into(),
    ))
}

fn first_dependent_subset(
    field: &Field,
    columns: &[Vector],
    w: usize,
    workers: usize,
) -> Option<Vec<usize>> {
    let n = columns.len();
    let starts: Vec<usize> = (0..=n - w).collect();
    let workers = workers.clamp(1, starts.len());
    let stop_after = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<Vec<usize>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|id| {
                let stop_after = &stop_after;
                // interleaved so that every worker starts near the front
                let mine: Vec<usize> = starts.iter().copied().skip(id).step_by(workers).collect();
                s.spawn(move || {
                    for first in mine {
                        if first > stop_after.load(Ordering::Relaxed) {
                            return None;
                        }
                        let mut search = ColumnSearch {
                            field,
                            columns,
                            target: w,
                            stop_after,
                            chosen: Vec::with_capacity(w),
                            basis: Vec::with_capacity(w),
                        };
                        let found = if w == 1 {
                            search
                                .reduce(&columns[first])
                                .is_none()
                                .then(|| vec![first])
                        } else {
                            match search.reduce(&columns[first]) {
                                None => None,
                                Some(entry) => {
                                    search.chosen.push(first);
                                    search.basis.push(entry);
                                    search.search(first + 1).then(|| search.chosen.clone())
                                }
                            }
                        };
                        if let Some(subset) = found {
                            stop_after.fetch_min(first, Ordering::Relaxed);
                            return Some(subset);
                        }
                    }
                    None
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("column search worker panicked"))
            .collect()
    });
    results.into_iter().flatten().min()
}

/// The codeword supported on `subset` (a minimal dependent set), normalized so
/// its first nonzero entry is 1.
fn null_combination(field: &Field, columns: &[Vector], subset: &[usize], n: usize) -> Vector {
    let rows = columns[0].len();
    let system: Vec<Vector> = (0..rows)
        .map(|r| subset.iter().map(|&j| columns[j][r]).collect())
        .collect();
    let null = solve_null(field, &system, subset.len());
    let mut out = vec![FieldElement::ZERO; n];
    for (&j, &a) in subset.iter().zip(&null) {
        out[j] = a;
    }
    out
}

fn solve_null(field: &Field, system: &[Vector], width: usize) -> Vector {
    let mut m = system.to_vec();
    let pivots = crate::linear::rref(field, &mut m);
    let free = (0..width)
        .find(|c| !pivots.contains(c))
        .expect("a dependent set has a free column");
    let mut v = vec![FieldElement::ZERO; width];
    v[free] = FieldElement::ONE;
    for (row, &p) in m.iter().zip(&pivots) {
        v[p] = field.neg(row[free]);
    }
    let lead = v.iter().copied().find(|x| !x.is_zero()).expect("nonzero");
    let inv = field.inv(lead).expect("nonzero");
    v.iter().map(|&x| field.mul(x, inv)).collect()
}

/// Picks the cheaper exact method and runs it within the budget.
pub fn exact_min_distance(code: &LinearCode, cfg: &DistanceConfig) -> Result<DistanceResult> {
    check_nonzero(code)?;
    let enum_cost = enumeration_cost(code);
    // the column search costs at least its first few layers
    let n = code.n();
    let q1 = code.field().order() as u128 - 1;
    let redundancy = n - code.k();
    let parity_floor: u128 = (1..=redundancy.min(3) + 1)
        .map(|w| binomial(n, w) * q1.pow(w as u32 - 1))
        .sum();
    if enum_cost <= cfg.budget as u128 && enum_cost <= parity_floor {
        exact_min_distance_enum(code, cfg)
    } else {
        exact_min_distance_parity(code, cfg).or_else(|e| match e {
            Error::BudgetExceeded { .. } if enum_cost <= cfg.budget as u128 => {
                exact_min_distance_enum(code, cfg)
            }
            e => Err(e),
        })
    }
}

/// Does every codeword of a binary code have even weight? Equivalent to the
/// all-ones word lying in the dual.
pub fn is_even_weight(code: &LinearCode) -> Result<bool> {
    if code.field().order() != 2 {
        return Err(Error::invalid("even-weight test needs a binary code"));
    }
    let ones = vec![FieldElement::ONE; code.n()];
    let by_dual = code.kernel().contains(&ones);
    let by_rows = code
        .generator()
        .iter()
        .all(|row| row.iter().filter(|x| !x.is_zero()).count() % 2 == 0);
    if by_dual != by_rows {
        return Err(Error::Inconsistent(
            "dual membership of the all-ones word disagrees with the row weights".into(),
        ));
    }
    Ok(by_dual)
}
