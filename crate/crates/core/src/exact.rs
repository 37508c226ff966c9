//! Exact triangle- and k-clique-densest subgraph by parametric min cuts.
//!
//! The network for threshold `α` has a node per vertex and per clique:
//! `s -> v` with capacity `c_v`, `v -> clique` with capacity 1 for each
//! clique containing `v`, `clique -> v` with capacity `k - 1` for each member,
//! and `v -> t` with capacity `kα`. Its minimum cut is below `k·|C|` exactly
//! when some vertex set has clique density above `α`; a binary search over
//! `α` then pins down the optimum. All capacities are multiplied by a common
//! denominator so they are integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::clique::CliqueIndex;
use crate::error::{Error, Result};
use crate::flow::{max_flow, CutResult, FlowNetwork};
use crate::graph::{density_report, DensityReport, Graph, VertexSet};
use crate::scalar::{ceil_log2, is_nonnegative, Capacity, Rational};

/// Output of an exact or approximate densest-subgraph solve.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub best_set: VertexSet,
    /// `c_k(best_set) / |best_set|`, recomputed from the index.
    pub density: Rational,
    pub report: DensityReport,
    /// Binary-search steps for exact solves, removal steps or rounds for
    /// peeling.
    pub iterations: usize,
    /// Set when the graph has no `k`-clique at all.
    pub no_clique: bool,
}

impl SolveResult {
    pub fn from_set(
        g: &Graph,
        index: &CliqueIndex,
        best_set: VertexSet,
        iterations: usize,
    ) -> Result<Self> {
        let density = clique_density(index, &best_set);
        let report = density_report(g, &best_set, index)?;
        Ok(SolveResult {
            best_set,
            density,
            report,
            iterations,
            no_clique: index.is_empty(),
        })
    }
}

/// `c_k(S) / |S|`, zero for the empty set.
pub fn clique_density(index: &CliqueIndex, set: &VertexSet) -> Rational {
    if set.is_empty() {
        return Rational::zero();
    }
    Rational::new(
        BigInt::from(index.count_within(set)),
        BigInt::from(set.len()),
    )
}

/// The network `H_α` together with the node layout needed to read cuts.
///
/// Node 0 is the source, nodes `1..=n` are vertices, the next `|C|` nodes are
/// cliques and the last node is the sink.
#[derive(Clone, Debug)]
pub struct CliqueNetwork<C> {
    pub network: FlowNetwork<C>,
    n: usize,
    k: usize,
    cliques: usize,
    scale: BigInt,
    sink_arcs: Vec<usize>,
}

impl<C: Capacity> CliqueNetwork<C> {
    /// Builds the α-independent part of the network with every capacity
    /// multiplied by `scale`. Vertices in `forced` get a source arc large
    /// enough that every minimum cut keeps them on the source side for any
    /// `α < n^k`. Sink arcs start at zero; call [`Self::set_alpha`].
    fn with_scale(index: &CliqueIndex, scale: BigInt, forced: Option<&VertexSet>) -> Result<Self> {
        let (n, k, cliques) = (index.n(), index.k(), index.len());
        let source = 0;
        let sink = n + cliques + 1;
        let mut network = FlowNetwork::new(n + cliques + 2, source, sink)?;
        let unit = C::try_from_bigint(&scale)?;
        let back = C::try_from_bigint(&(&scale * (k - 1)))?;
        for v in 0..n {
            for &c in index.memberships(v) {
                network.add_arc(1 + v, 1 + n + c, unit.clone())?;
            }
        }
        for c in 0..cliques {
            for &v in index.clique(c) {
                network.add_arc(1 + n + c, 1 + v, back.clone())?;
            }
        }
        let forced_mask = forced.map(|q| q.mask(n));
        let bound = num_traits::pow(BigInt::from(n), k) * k;
        for v in 0..n {
            let count = BigInt::from(index.count(v));
            let cap = match &forced_mask {
                Some(mask) if mask[v] => (&bound + count + 1u32) * &scale,
                _ => count * &scale,
            };
            network.add_arc(source, 1 + v, C::try_from_bigint(&cap)?)?;
        }
        let mut sink_arcs = Vec::with_capacity(n);
        for v in 0..n {
            sink_arcs.push(network.add_arc(1 + v, sink, C::zero())?);
        }
        Ok(CliqueNetwork {
            network,
            n,
            k,
            cliques,
            scale,
            sink_arcs,
        })
    }

    /// Sets every `v -> t` capacity to `k·α·scale`, which must be integral.
    pub fn set_alpha(&mut self, alpha: &Rational) -> Result<()> {
        if !is_nonnegative(alpha) {
            return Err(Error::Parameter("alpha must be non-negative".into()));
        }
        let scaled = alpha * Rational::from_integer(&self.scale * self.k);
        if !scaled.is_integer() {
            return Err(Error::Parameter(format!(
                "k*alpha*scale = {scaled} is not an integer"
            )));
        }
        let cap = C::try_from_bigint(&scaled.to_integer())?;
        for &arc in &self.sink_arcs {
            self.network.set_capacity(arc, cap.clone());
        }
        Ok(())
    }

    /// Common capacity multiplier `D`.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn vertex_node(&self, v: usize) -> usize {
        1 + v
    }

    pub fn clique_node(&self, c: usize) -> usize {
        1 + self.n + c
    }

    /// Vertex-layer members of a cut's source side.
    pub fn source_vertices(&self, cut: &CutResult<C>) -> VertexSet {
        VertexSet::from_sorted(
            cut.source_side
                .iter()
                .filter(|&&node| node >= 1 && node <= self.n)
                .map(|&node| node - 1)
                .collect(),
        )
    }

    /// Capacity of the canonical cut induced by `a1`: the source, the
    /// vertices of `a1` and the cliques lying entirely inside `a1` form the
    /// source side. Summed arc by arc from the network.
    pub fn canonical_cut_capacity(&self, index: &CliqueIndex, a1: &VertexSet) -> Result<C> {
        a1.check(self.n)?;
        let mask = a1.mask(self.n);
        let mut side = vec![false; self.network.node_count()];
        side[self.network.source()] = true;
        for v in a1.iter() {
            side[self.vertex_node(v)] = true;
        }
        for c in 0..self.cliques {
            if index.clique(c).iter().all(|&v| mask[v]) {
                side[self.clique_node(c)] = true;
            }
        }
        self.network.cut_capacity(&side)
    }

    /// `k · |C| · D`, the capacity of the trivial cut `{s}` when nothing is
    /// forced.
    pub fn trivial_cut_value(&self) -> Result<C> {
        C::try_from_bigint(&(&self.scale * self.k * self.cliques))
    }
}

/// Builds `H_α` scaled by the denominator of `k·α`.
pub fn build_network<C: Capacity>(
    g: &Graph,
    index: &CliqueIndex,
    alpha: &Rational,
) -> Result<CliqueNetwork<C>> {
    check_index(g, index)?;
    if !is_nonnegative(alpha) {
        return Err(Error::Parameter("alpha must be non-negative".into()));
    }
    let k_alpha = alpha * Rational::from_integer(BigInt::from(index.k()));
    let scale = k_alpha.denom().clone();
    let mut net = CliqueNetwork::with_scale(index, scale, None)?;
    net.set_alpha(alpha)?;
    Ok(net)
}

fn check_index(g: &Graph, index: &CliqueIndex) -> Result<()> {
    if index.n() != g.n() {
        return Err(Error::Parameter(format!(
            "clique index built for {} vertices, graph has {}",
            index.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Closed-form capacity of the canonical cut induced by `a1` at threshold
/// `α`, unscaled:
/// `Σ_{v∉A1} c_v + Σ_C |C ∩ A1|·[0 < |C ∩ A1| < k] + k·α·|A1|`.
/// For triangles this is `Σ_{v∉A1} t_v + 2t₂(A1) + t₁(A1) + 3α|A1|`.
pub fn cut_cost_formula(index: &CliqueIndex, a1: &VertexSet, alpha: &Rational) -> Result<Rational> {
    a1.check(index.n())?;
    let mask = a1.mask(index.n());
    let outside: u64 = (0..index.n())
        .filter(|&v| !mask[v])
        .map(|v| index.count(v))
        .sum();
    let histogram = crate::clique::overlap_histogram(index, a1);
    let partial: u64 = histogram
        .iter()
        .enumerate()
        .take(index.k())
        .map(|(inside, &count)| inside as u64 * count)
        .sum();
    let k_alpha_size = alpha * Rational::from_integer(BigInt::from(index.k() * a1.len()));
    Ok(Rational::from_integer(BigInt::from(outside + partial)) + k_alpha_size)
}

/// Upper bound on binary-search steps: `ceil(log2(n^k · n(n-1))) + 1`.
pub fn iteration_bound(n: usize, k: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let span = num_traits::pow(BigInt::from(n), k) * BigInt::from(n * (n - 1));
    ceil_log2(&span) as usize + 1
}

/// Solves the k-clique-densest subgraph problem exactly for the clique order
/// of `index` (`k = 2` gives the classic densest subgraph).
pub fn solve_exact(g: &Graph, index: &CliqueIndex) -> Result<SolveResult> {
    solve_escalating(g, index, None)
}

/// Maximizes clique density over supersets of `query`.
pub fn solve_constrained(g: &Graph, index: &CliqueIndex, query: &VertexSet) -> Result<SolveResult> {
    query.check(g.n())?;
    solve_escalating(g, index, Some(query))
}

fn solve_escalating(g: &Graph, index: &CliqueIndex, query: Option<&VertexSet>) -> Result<SolveResult> {
    match solve_with::<i128>(g, index, query) {
        Err(Error::Overflow) => solve_with::<BigInt>(g, index, query),
        other => other,
    }
}

/// Binary search over `α` on capacity type `C`. Fails with
/// [`Error::Overflow`] when a capacity or flow does not fit `C`.
pub fn solve_with<C: Capacity>(
    g: &Graph,
    index: &CliqueIndex,
    query: Option<&VertexSet>,
) -> Result<SolveResult> {
    check_index(g, index)?;
    let query = query.filter(|q| !q.is_empty());
    let n = g.n();
    let fallback = query.cloned().unwrap_or_default();
    if index.is_empty() || n < 2 {
        return SolveResult::from_set(g, index, fallback, 0);
    }
    let k = index.k();
    let depth = iteration_bound(n, k);
    let scale = BigInt::one() << depth;
    let mut net = CliqueNetwork::<C>::with_scale(index, scale, query)?;
    let threshold = net.trivial_cut_value()?;

    let gap = Rational::new(BigInt::one(), BigInt::from(n * (n - 1)));
    let mut lower = Rational::zero();
    let mut upper = Rational::from_integer(num_traits::pow(BigInt::from(n), k));
    let mut best: Option<VertexSet> = None;
    let mut iterations = 0;
    while upper >= &lower + &gap {
        let alpha = (&lower + &upper) / Rational::from_integer(BigInt::from(2));
        net.set_alpha(&alpha)?;
        let cut = max_flow(&net.network)?;
        iterations += 1;
        let side = net.source_vertices(&cut);
        if !side.is_empty() && cut.max_flow_value <= threshold {
            lower = alpha;
            best = Some(side);
        } else {
            upper = alpha;
        }
    }
    SolveResult::from_set(g, index, best.unwrap_or(fallback), iterations)
}
