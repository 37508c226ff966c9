//! Immutable undirected simple graphs, vertex subsets and density reports.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read};

use serde::Serialize;

use crate::clique::CliqueIndex;
use crate::error::{Error, Result};

/// Undirected simple graph in compressed adjacency form.
///
/// Vertices are dense ids `0..n`. Each neighbor list is sorted ascending and
/// the adjacency relation is symmetric.
#[derive(Clone, Debug)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    labels: Vec<String>,
    ids: HashMap<String, usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `"0".."n-1"`. Self-loops and
    /// duplicate edges are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph whose vertex `v` carries `labels[v]`.
    pub fn with_labels(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if u != v {
                lists[u].push(v);
                lists[v].push(u);
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        for mut list in lists {
            list.sort_unstable();
            list.dedup();
            neighbors.extend(list);
            offsets.push(neighbors.len());
        }
        let ids = labels
            .iter()
            .enumerate()
            .map(|(v, label)| (label.clone(), v))
            .collect();
        Ok(Graph {
            offsets,
            neighbors,
            labels,
            ids,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Internal id of a vertex label, if the label occurs in the graph.
    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.ids.get(label).copied()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// The full vertex set.
    pub fn vertices(&self) -> VertexSet {
        VertexSet((0..self.n()).collect())
    }
}

/// Reads a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` and blank lines are skipped; every other
/// line must hold exactly two vertex labels. Labels receive dense ids in
/// first-appearance order.
pub fn load_edge_list<R: Read>(input: R) -> Result<Graph> {
    let reader = BufReader::new(input);
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |label: &str| -> usize {
        if let Some(&id) = ids.get(label) {
            return id;
        }
        let id = labels.len();
        labels.push(label.to_string());
        ids.insert(label.to_string(), id);
        id
    };
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: index + 1,
                message: format!("expected two vertex labels, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }
    Graph::with_labels(labels, &edges)
}

/// A set of vertex ids, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Validates `ids` against a graph with `n` vertices, sorting and
    /// deduplicating them.
    pub fn new(mut ids: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&id) = ids.iter().find(|&&id| id >= n) {
            return Err(Error::VertexOutOfRange { id, n });
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(VertexSet(ids))
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_sorted(ids: Vec<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    /// Members selected by a boolean mask.
    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &keep)| keep.then_some(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut ids: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&id) if id >= n => Err(Error::VertexOutOfRange { id, n }),
            _ => Ok(()),
        }
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(set: VertexSet) -> Self {
        set.0
    }
}

/// Density measures of an induced subgraph, in the layout of a
/// Table-2-style comparison row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub size: usize,
    pub edges: u64,
    /// Induced `k`-cliques (triangles when `k = 3`).
    pub cliques: u64,
    pub k: usize,
    pub triangles: u64,
    pub f_e: f64,
    pub f_t: f64,
    pub delta: f64,
    pub tau: f64,
    pub tpv: f64,
    pub vertices: Vec<String>,
}

pub(crate) fn choose(n: u64, r: u64) -> f64 {
    if r > n {
        return 0.0;
    }
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Number of edges induced by `set`.
pub fn induced_edges(g: &Graph, set: &VertexSet) -> u64 {
    let mask = set.mask(g.n());
    set.iter()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| u > v && mask[u])
                .count() as u64
        })
        .sum()
}

/// Number of triangles induced by `set`, counted from adjacency lists.
pub fn induced_triangles(g: &Graph, set: &VertexSet) -> u64 {
    let mask = set.mask(g.n());
    let mut total = 0u64;
    for u in set.iter() {
        let nu = g.neighbors(u);
        for &v in nu.iter().filter(|&&v| v > u && mask[v]) {
            let nv = g.neighbors(v);
            let (mut i, mut j) = (0, 0);
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let w = nu[i];
                        if w > v && mask[w] {
                            total += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    total
}

/// Computes the density report of the subgraph induced by `set`.
///
/// `cliques` comes from `index` (so it follows the index's `k`); edge and
/// triangle measures are counted directly on `g`. Sizes below 2 (resp. 3)
/// report `f_e = 0` (resp. `f_t = 0`).
pub fn density_report(g: &Graph, set: &VertexSet, index: &CliqueIndex) -> Result<DensityReport> {
    set.check(g.n())?;
    if index.n() != g.n() {
        return Err(Error::Parameter(format!(
            "clique index built for {} vertices, graph has {}",
            index.n(),
            g.n()
        )));
    }
    let s = set.len() as u64;
    let edges = induced_edges(g, set);
    let triangles = induced_triangles(g, set);
    let cliques = index.count_within(set);
    let per_vertex = |x: u64| if s == 0 { 0.0 } else { x as f64 / s as f64 };
    let f_e = if s < 2 { 0.0 } else { edges as f64 / choose(s, 2) };
    let f_t = if s < 3 { 0.0 } else { triangles as f64 / choose(s, 3) };
    Ok(DensityReport {
        size: set.len(),
        edges,
        cliques,
        k: index.k(),
        triangles,
        f_e,
        f_t,
        delta: per_vertex(2 * edges),
        tau: per_vertex(triangles),
        tpv: per_vertex(3 * triangles),
        vertices: set.iter().map(|v| g.label(v).to_string()).collect(),
    })
}
