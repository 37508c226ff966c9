//! Peeling approximations.
//!
//! [`peel`] removes one minimum-count vertex at a time and keeps the densest
//! intermediate set (a `1/k` approximation). [`batch_peel`] removes every
//! vertex whose count is at most `k(1+ε)` times the current density in one
//! round (a `1/(k(1+ε))` approximation in `O(log_{1+ε} n)` rounds).
//! [`greedy_ds`] is the single-vertex peel over edges.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::clique::CliqueIndex;
use crate::error::{Error, Result};
use crate::exact::SolveResult;
use crate::graph::{Graph, VertexSet};
use crate::scalar::Rational;

/// Bucket queue keyed by live clique count.
///
/// Bucket `i` holds the queued vertices whose current count is `i`;
/// `min_pointer` never exceeds the smallest non-empty bucket.
#[derive(Clone, Debug)]
pub struct PeelBuckets {
    counts: Vec<u64>,
    buckets: Vec<BTreeSet<usize>>,
    queued: Vec<bool>,
    min_pointer: usize,
}

impl PeelBuckets {
    /// Queues every vertex with `eligible[v]`; others only have their count
    /// tracked.
    pub fn new(counts: Vec<u64>, eligible: &[bool]) -> Self {
        let max = counts.iter().copied().max().unwrap_or(0) as usize;
        let mut buckets = vec![BTreeSet::new(); max + 1];
        for (v, &count) in counts.iter().enumerate() {
            if eligible[v] {
                buckets[count as usize].insert(v);
            }
        }
        PeelBuckets {
            counts,
            buckets,
            queued: eligible.to_vec(),
            min_pointer: 0,
        }
    }

    pub fn count(&self, v: usize) -> u64 {
        self.counts[v]
    }

    /// Lowers the count of `v` by one, re-bucketing it if queued.
    pub fn decrement(&mut self, v: usize) {
        let old = self.counts[v] as usize;
        self.counts[v] -= 1;
        if self.queued[v] {
            self.buckets[old].remove(&v);
            self.buckets[old - 1].insert(v);
            if old - 1 < self.min_pointer {
                self.min_pointer = old - 1;
            }
        }
    }

    fn dequeue(&mut self, v: usize) {
        if self.queued[v] {
            self.buckets[self.counts[v] as usize].remove(&v);
            self.queued[v] = false;
        }
    }

    /// Removes and returns the queued vertex with the smallest count, ties
    /// broken by smallest id.
    pub fn pop_min(&mut self) -> Option<(usize, u64)> {
        while self.min_pointer < self.buckets.len() {
            if let Some(v) = self.buckets[self.min_pointer].pop_first() {
                self.queued[v] = false;
                return Some((v, self.counts[v]));
            }
            self.min_pointer += 1;
        }
        None
    }
}

/// Density of the live set after some number of removals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DensityPoint {
    pub cliques: u64,
    pub size: usize,
}

impl DensityPoint {
    pub fn density(&self) -> Rational {
        if self.size == 0 {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(self.cliques), BigInt::from(self.size))
        }
    }

    /// `self > other` in density, by cross-multiplication.
    fn beats(&self, other: &DensityPoint) -> bool {
        (self.cliques as u128) * (other.size as u128) > (other.cliques as u128) * (self.size as u128)
    }
}

/// Record of a single-vertex peel.
#[derive(Clone, Debug, Default)]
pub struct PeelTrace {
    /// Removed vertices with their live count at removal time.
    pub removals: Vec<(usize, u64)>,
    /// `curve[i]` is the live set after `i` removals; `curve[0]` is the start.
    pub curve: Vec<DensityPoint>,
    /// Number of removals preceding the returned set.
    pub best_prefix: usize,
}

impl PeelTrace {
    /// CSV rows `step,removed_label,count,density_num,density_den`, where the
    /// density columns are the live clique count and live size after the
    /// step.
    pub fn to_csv(&self, g: &Graph) -> String {
        let mut out = String::from("step,removed_label,count,density_num,density_den\n");
        for (step, &(v, count)) in self.removals.iter().enumerate() {
            let point = self.curve[step + 1];
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                step + 1,
                g.label(v),
                count,
                point.cliques,
                point.size
            ));
        }
        out
    }
}

/// Incremental peeling state: live flags, live counts and live totals.
#[derive(Clone, Debug)]
pub struct Peeler<'a> {
    index: &'a CliqueIndex,
    buckets: PeelBuckets,
    vertex_live: Vec<bool>,
    clique_live: Vec<bool>,
    live_cliques: u64,
    live_size: usize,
}

impl<'a> Peeler<'a> {
    /// Starts with every vertex live; vertices in `protected` are never
    /// offered for removal.
    pub fn new(index: &'a CliqueIndex, protected: &VertexSet) -> Result<Self> {
        protected.check(index.n())?;
        let n = index.n();
        let eligible: Vec<bool> = protected.mask(n).iter().map(|&p| !p).collect();
        Ok(Peeler {
            index,
            buckets: PeelBuckets::new(index.counts().to_vec(), &eligible),
            vertex_live: vec![true; n],
            clique_live: vec![true; index.len()],
            live_cliques: index.len() as u64,
            live_size: n,
        })
    }

    pub fn point(&self) -> DensityPoint {
        DensityPoint {
            cliques: self.live_cliques,
            size: self.live_size,
        }
    }

    pub fn is_live(&self, v: usize) -> bool {
        self.vertex_live[v]
    }

    /// Live clique count of `v` (meaningful while `v` is live).
    pub fn live_count(&self, v: usize) -> u64 {
        self.buckets.count(v)
    }

    /// Removes the minimum-count unprotected vertex.
    pub fn remove_next(&mut self) -> Option<(usize, u64)> {
        let (v, count) = self.buckets.pop_min()?;
        self.remove(v);
        Some((v, count))
    }

    /// Removes a specific live vertex, protected or not.
    pub fn remove_vertex(&mut self, v: usize) {
        self.buckets.dequeue(v);
        self.remove(v);
    }

    fn remove(&mut self, v: usize) {
        self.vertex_live[v] = false;
        self.live_size -= 1;
        for &c in self.index.memberships(v) {
            if !self.clique_live[c] {
                continue;
            }
            self.clique_live[c] = false;
            self.live_cliques -= 1;
            for &u in self.index.clique(c) {
                if u != v {
                    self.buckets.decrement(u);
                }
            }
        }
    }

    fn live_set(&self) -> VertexSet {
        VertexSet::from_mask(&self.vertex_live)
    }
}

/// Greedy single-vertex peeling over the cliques of `index`.
///
/// Vertices in `protected` stay; the returned set is the densest live set
/// seen (ties go to the smaller set) and always contains `protected`.
pub fn peel(g: &Graph, index: &CliqueIndex, protected: &VertexSet) -> Result<(SolveResult, PeelTrace)> {
    let mut peeler = Peeler::new(index, protected)?;
    let mut trace = PeelTrace {
        curve: vec![peeler.point()],
        ..PeelTrace::default()
    };
    let mut best = peeler.point();
    while let Some(step) = peeler.remove_next() {
        trace.removals.push(step);
        let point = peeler.point();
        trace.curve.push(point);
        if point.size > 0 && !best.beats(&point) {
            best = point;
            trace.best_prefix = trace.removals.len();
        }
    }
    let mut keep = vec![true; g.n()];
    for &(v, _) in &trace.removals[..trace.best_prefix] {
        keep[v] = false;
    }
    let best_set = VertexSet::from_mask(&keep);
    debug_assert_eq!(
        crate::exact::clique_density(index, &best_set),
        trace.curve[trace.best_prefix].density()
    );
    let result = SolveResult::from_set(g, index, best_set, trace.removals.len())?;
    Ok((result, trace))
}

/// Greedy densest-subgraph baseline: peel minimum-degree vertices and keep
/// the best average-degree prefix.
pub fn greedy_ds(g: &Graph) -> Result<(SolveResult, PeelTrace)> {
    let edges = CliqueIndex::edges(g);
    peel(g, &edges, &VertexSet::empty())
}

/// `ceil(log_{1+ε}(n)) + 1`, computed exactly.
pub fn batch_round_bound(n: usize, epsilon: &Rational) -> usize {
    let base = Rational::one() + epsilon;
    let target = Rational::from_integer(BigInt::from(n));
    let mut power = Rational::one();
    let mut exponent = 0;
    while power < target {
        power *= &base;
        exponent += 1;
    }
    exponent + 1
}

/// Batch peeling: each round removes every live vertex whose live count is
/// at most `k(1+ε)·c_k(S)/|S|`. Returns the densest set seen after any round
/// (starting from `V`, ties to the later, smaller set) and the round count.
pub fn batch_peel(g: &Graph, index: &CliqueIndex, epsilon: &Rational) -> Result<(SolveResult, usize)> {
    if !epsilon.is_positive() {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let n = g.n();
    let k = BigInt::from(index.k());
    let factor = (Rational::one() + epsilon) * Rational::from_integer(k);
    let mut peeler = Peeler::new(index, &VertexSet::empty())?;
    let mut best_set = peeler.live_set();
    let mut best = peeler.point();
    let mut rounds = 0;
    while peeler.live_size > 0 {
        rounds += 1;
        let point = peeler.point();
        let threshold = (&factor * point.density()).floor().to_integer();
        let cap = threshold.to_u64().unwrap_or(u64::MAX);
        let batch: Vec<usize> = (0..n)
            .filter(|&v| peeler.is_live(v) && peeler.live_count(v) <= cap)
            .collect();
        debug_assert!(!batch.is_empty());
        for v in batch {
            peeler.remove_vertex(v);
        }
        let point = peeler.point();
        if point.size > 0 && !best.beats(&point) {
            best = point;
            best_set = peeler.live_set();
        }
    }
    let result = SolveResult::from_set(g, index, best_set, rounds)?;
    Ok((result, rounds))
}
