//! Erdős–Rényi graphs with a planted clique.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A generated instance; vertex `v` is labelled `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Planted clique members, ascending.
    pub planted: Vec<usize>,
}

/// `⌈n^γ⌉`, with values within 1e-9 of an integer snapped to it.
pub fn planted_size(n: usize, gamma: f64) -> usize {
    let exact = (n as f64).powf(gamma);
    let rounded = exact.round();
    if (exact - rounded).abs() < 1e-9 {
        rounded as usize
    } else {
        exact.ceil() as usize
    }
}

/// Samples `G(n, p)` and overlays a clique on `⌈n^γ⌉` uniformly chosen
/// vertices. Output is a pure function of the arguments.
pub fn gen_planted(n: usize, p: f64, gamma: f64, seed: u64) -> Result<PlantedGraph> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::Parameter(format!("p must lie in [0, 1), got {p}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Parameter(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = planted_size(n, gamma).min(n);
    let mut planted = sample(&mut rng, n, size).into_vec();
    planted.sort_unstable();

    let mut adjacent = vec![false; n * n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                adjacent[u * n + v] = true;
            }
        }
    }
    for (i, &u) in planted.iter().enumerate() {
        for &v in &planted[i + 1..] {
            adjacent[u * n + v] = true;
        }
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| adjacent[u * n + v])
        .collect();
    Ok(PlantedGraph { n, edges, planted })
}

impl PlantedGraph {
    /// Edge-list text; the first line is a `# planted:` comment listing the
    /// planted labels, which the edge-list reader skips.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let labels: Vec<String> = self.planted.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "# planted: {}", labels.join(" "));
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Planted labels, one per line.
    pub fn sidecar(&self) -> String {
        self.planted.iter().map(|v| format!("{v}\n")).collect()
    }

    /// The instance as a graph with isolated vertices kept.
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("generated ids are in range")
    }
}
