//! Exhaustive ground truth for tiny instances.
//!
//! Nothing here touches the clique index or the flow engine: densities are
//! recounted from adjacency bitmasks, and cuts are summed over every
//! partition of the inner nodes.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexSet};
use crate::scalar::{Capacity, Rational};

pub const MAX_ORACLE_VERTICES: usize = 20;
pub const MAX_CUT_INNER_NODES: usize = 22;

/// Best density over all admissible subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub optimum: Rational,
    /// Lexicographically smallest maximizer.
    pub witness: VertexSet,
    /// Number of subsets evaluated.
    pub scanned: u64,
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect()
}

/// Cliques of order `k` inside `candidates`, counted by recursive extension
/// over bitmasks.
fn count_cliques(adj: &[u32], candidates: u32, k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return candidates.count_ones() as u64;
    }
    let mut total = 0;
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // only neighbors after v, so each clique is counted once
        total += count_cliques(adj, rest & adj[v], k - 1);
    }
    total
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

fn check_inputs(g: &Graph, k: usize, query: &VertexSet) -> Result<()> {
    if g.n() > MAX_ORACLE_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices, oracle limit is {MAX_ORACLE_VERTICES}",
            g.n()
        )));
    }
    if !(2..=crate::clique::MAX_CLIQUE_ORDER).contains(&k) {
        return Err(Error::Parameter(format!("clique order {k} outside 2..=8")));
    }
    query.check(g.n())
}

#[derive(Default)]
struct Best {
    found: Option<(u64, usize, Vec<usize>)>,
    scanned: u64,
}

impl Best {
    fn offer(&mut self, cliques: u64, members: Vec<usize>) {
        self.scanned += 1;
        let size = members.len();
        let replace = match &self.found {
            None => true,
            Some((c, s, w)) => {
                let lhs = cliques as u128 * *s as u128;
                let rhs = *c as u128 * size as u128;
                lhs > rhs || (lhs == rhs && members < *w)
            }
        };
        if replace {
            self.found = Some((cliques, size, members));
        }
    }

    fn finish(self) -> OracleResult {
        match self.found {
            None => OracleResult {
                optimum: Rational::zero(),
                witness: VertexSet::empty(),
                scanned: self.scanned,
            },
            Some((c, s, w)) => OracleResult {
                optimum: Rational::new(BigInt::from(c), BigInt::from(s)),
                witness: VertexSet::from_sorted(w),
                scanned: self.scanned,
            },
        }
    }
}

/// Maximizes `c_k(S)/|S|` over all nonempty `S` with `query ⊆ S ⊆ V`.
pub fn brute_force_densest(g: &Graph, k: usize, query: &VertexSet) -> Result<OracleResult> {
    check_inputs(g, k, query)?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let required = query.iter().fold(0u32, |m, v| m | (1 << v));
    let mut best = Best::default();
    for mask in 1u32..(1u32 << n) {
        if mask & required != required {
            continue;
        }
        best.offer(count_cliques(&adj, mask, k), members(mask));
    }
    Ok(best.finish())
}

/// Same maximization with a different scan: subsets are visited from the
/// full set downward, and cliques are counted by testing every `k`-subset
/// of the members for pairwise adjacency.
pub fn brute_force_densest_alt(g: &Graph, k: usize, query: &VertexSet) -> Result<OracleResult> {
    check_inputs(g, k, query)?;
    let n = g.n();
    let mut best = Best::default();
    for mask in (1u32..(1u32 << n)).rev() {
        let set = members(mask);
        if !query.iter().all(|q| set.contains(&q)) {
            continue;
        }
        let mut count = 0u64;
        let mut pick = Vec::with_capacity(k);
        count_by_subsets(g, &set, k, 0, &mut pick, &mut count);
        best.offer(count, set);
    }
    Ok(best.finish())
}

fn count_by_subsets(
    g: &Graph,
    set: &[usize],
    k: usize,
    start: usize,
    pick: &mut Vec<usize>,
    count: &mut u64,
) {
    if pick.len() == k {
        let complete = pick
            .iter()
            .enumerate()
            .all(|(i, &u)| pick[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if complete {
            *count += 1;
        }
        return;
    }
    for i in start..set.len() {
        pick.push(set[i]);
        count_by_subsets(g, set, k, i + 1, pick, count);
        pick.pop();
    }
}

/// `c_k(S)` by bitmask recursion, for tests that need an index-free count.
pub fn count_cliques_in(g: &Graph, k: usize, set: &VertexSet) -> Result<u64> {
    if g.n() > 32 {
        return Err(Error::TooLarge(format!("{} vertices, limit is 32", g.n())));
    }
    let adj = adjacency_masks(g);
    let mask = set.iter().fold(0u32, |m, v| m | (1 << v));
    Ok(count_cliques(&adj, mask, k))
}

/// Minimum s-t cut capacity by scanning every partition of the inner nodes.
pub fn brute_force_cut<C: Capacity>(net: &FlowNetwork<C>) -> Result<C> {
    let inner: Vec<usize> = (0..net.node_count())
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    if inner.len() > MAX_CUT_INNER_NODES {
        return Err(Error::TooLarge(format!(
            "{} inner nodes, limit is {MAX_CUT_INNER_NODES}",
            inner.len()
        )));
    }
    let mut side = vec![false; net.node_count()];
    side[net.source()] = true;
    let mut best: Option<C> = None;
    for mask in 0u64..(1u64 << inner.len()) {
        for (bit, &v) in inner.iter().enumerate() {
            side[v] = mask & (1 << bit) != 0;
        }
        let cap = net.cut_capacity(&side)?;
        if best.as_ref().is_none_or(|b| cap < *b) {
            best = Some(cap);
        }
    }
    Ok(best.expect("at least one partition"))
}
