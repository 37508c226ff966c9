//! Triangle and k-clique enumeration with per-vertex participation counts.
//!
//! Edges are oriented from the endpoint of lower `(degree, id)` rank to the
//! higher one; every clique is then found exactly once from its lowest-ranked
//! vertex by intersecting sorted out-neighborhoods.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const MAX_CLIQUE_ORDER: usize = 8;

/// Enumerated `k`-cliques with per-vertex counts and membership lists.
///
/// Cliques are stored as strictly increasing `k`-tuples in lexicographic
/// order. `k = 2` is the edge set.
#[derive(Clone, Debug)]
pub struct CliqueIndex {
    k: usize,
    n: usize,
    members: Vec<usize>,
    counts: Vec<u64>,
    membership_offsets: Vec<usize>,
    membership: Vec<usize>,
}

impl CliqueIndex {
    /// Index over `k`-cliques for `k` in `2..=8`.
    pub fn build(g: &Graph, k: usize) -> Result<Self> {
        match k {
            2 => Ok(Self::edges(g)),
            _ => list_kcliques(g, k),
        }
    }

    /// The edge set viewed as 2-cliques.
    pub fn edges(g: &Graph) -> Self {
        let members = g.edges().flat_map(|(u, v)| [u, v]).collect();
        Self::from_sorted_members(g.n(), 2, members)
    }

    /// Builds an index from lexicographically sorted, strictly increasing
    /// tuples flattened into `members`.
    fn from_sorted_members(n: usize, k: usize, members: Vec<usize>) -> Self {
        let mut counts = vec![0u64; n];
        for &v in &members {
            counts[v] += 1;
        }
        let mut membership_offsets = Vec::with_capacity(n + 1);
        membership_offsets.push(0);
        for v in 0..n {
            membership_offsets.push(membership_offsets[v] + counts[v] as usize);
        }
        let mut cursor = membership_offsets.clone();
        let mut membership = vec![0; members.len()];
        for (index, tuple) in members.chunks_exact(k.max(1)).enumerate() {
            for &v in tuple {
                membership[cursor[v]] = index;
                cursor[v] += 1;
            }
        }
        CliqueIndex {
            k,
            n,
            members,
            counts,
            membership_offsets,
            membership,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Vertex count of the graph the index was built on.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cliques.
    pub fn len(&self) -> usize {
        self.members.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn clique(&self, index: usize) -> &[usize] {
        &self.members[index * self.k..(index + 1) * self.k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.members.chunks_exact(self.k)
    }

    /// `c_v`: the number of cliques containing `v`.
    pub fn count(&self, v: usize) -> u64 {
        self.counts[v]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Indices of the cliques containing `v`, ascending.
    pub fn memberships(&self, v: usize) -> &[usize] {
        &self.membership[self.membership_offsets[v]..self.membership_offsets[v + 1]]
    }

    /// `c_k(S)`: cliques with every member in `set`.
    pub fn count_within(&self, set: &VertexSet) -> u64 {
        let mask = set.mask(self.n);
        self.count_within_mask(&mask)
    }

    pub(crate) fn count_within_mask(&self, mask: &[bool]) -> u64 {
        // each clique is visited from its smallest member only
        (0..self.n)
            .filter(|&v| mask[v])
            .map(|v| {
                self.memberships(v)
                    .iter()
                    .filter(|&&c| {
                        let tuple = self.clique(c);
                        tuple[0] == v && tuple.iter().all(|&u| mask[u])
                    })
                    .count() as u64
            })
            .sum()
    }

    /// Writes one clique per line as tab-separated labels.
    pub fn dump(&self, g: &Graph) -> String {
        let mut out = String::new();
        for tuple in self.iter() {
            let labels: Vec<&str> = tuple.iter().map(|&v| g.label(v)).collect();
            out.push_str(&labels.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Out-neighborhoods under the `(degree, id)` orientation, sorted by id.
fn oriented(g: &Graph) -> Vec<Vec<usize>> {
    let rank = |v: usize| (g.degree(v), v);
    (0..g.n())
        .map(|u| {
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&v| rank(v) > rank(u))
                .collect()
        })
        .collect()
}

fn intersect(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

fn finish(n: usize, k: usize, mut tuples: Vec<Vec<usize>>) -> CliqueIndex {
    for tuple in &mut tuples {
        tuple.sort_unstable();
    }
    tuples.par_sort_unstable();
    let members = tuples.into_iter().flatten().collect();
    CliqueIndex::from_sorted_members(n, k, members)
}

/// Lists every triangle of `g` once.
pub fn list_triangles(g: &Graph) -> CliqueIndex {
    let out = oriented(g);
    let tuples: Vec<Vec<usize>> = (0..g.n())
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut common = Vec::new();
            let mut found = Vec::new();
            for &v in &out[u] {
                intersect(&out[u], &out[v], &mut common);
                found.extend(common.iter().map(|&w| vec![u, v, w]));
            }
            found
        })
        .collect();
    finish(g.n(), 3, tuples)
}

fn extend_cliques(
    out: &[Vec<usize>],
    prefix: &mut Vec<usize>,
    candidates: &[usize],
    k: usize,
    found: &mut Vec<Vec<usize>>,
) {
    if prefix.len() + 1 == k {
        for &v in candidates {
            let mut tuple = prefix.clone();
            tuple.push(v);
            found.push(tuple);
        }
        return;
    }
    let mut next = Vec::new();
    for &v in candidates {
        intersect(candidates, &out[v], &mut next);
        if next.len() + prefix.len() + 1 < k {
            continue;
        }
        prefix.push(v);
        let narrowed = std::mem::take(&mut next);
        extend_cliques(out, prefix, &narrowed, k, found);
        next = narrowed;
        prefix.pop();
    }
}

/// Lists every `k`-clique of `g` once, `3 <= k <= 8`.
pub fn list_kcliques(g: &Graph, k: usize) -> Result<CliqueIndex> {
    if !(3..=MAX_CLIQUE_ORDER).contains(&k) {
        return Err(Error::Parameter(format!(
            "clique order must be in 3..={MAX_CLIQUE_ORDER}, got {k}"
        )));
    }
    let out = oriented(g);
    let tuples: Vec<Vec<usize>> = (0..g.n())
        .into_par_iter()
        .flat_map_iter(|u| {
            let mut found = Vec::new();
            let mut prefix = vec![u];
            extend_cliques(&out, &mut prefix, &out[u], k, &mut found);
            found
        })
        .collect();
    Ok(finish(g.n(), k, tuples))
}

/// Triangles grouped by how many of their vertices lie in a set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TriangleTypeCounts {
    pub t1: u64,
    pub t2: u64,
    pub t3: u64,
}

/// Histogram of `|clique ∩ set|` over all cliques; entry `i` counts cliques
/// with exactly `i` members in `set`.
pub fn overlap_histogram(index: &CliqueIndex, set: &VertexSet) -> Vec<u64> {
    let mask = set.mask(index.n());
    let mut histogram = vec![0u64; index.k() + 1];
    for tuple in index.iter() {
        histogram[tuple.iter().filter(|&&v| mask[v]).count()] += 1;
    }
    histogram
}

/// Splits the triangles touching `set` by how many vertices they share with it.
pub fn triangle_type_counts(index: &CliqueIndex, set: &VertexSet) -> Result<TriangleTypeCounts> {
    if index.k() != 3 {
        return Err(Error::Parameter(format!(
            "triangle types need a k=3 index, got k={}",
            index.k()
        )));
    }
    set.check(index.n())?;
    let h = overlap_histogram(index, set);
    Ok(TriangleTypeCounts {
        t1: h[1],
        t2: h[2],
        t3: h[3],
    })
}
