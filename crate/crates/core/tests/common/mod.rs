#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trident::{Graph, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) on labels 0..n, isolated vertices kept.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_subset(n: usize, p: f64, rng: &mut ChaCha8Rng) -> VertexSet {
    let ids = (0..n).filter(|_| rng.gen::<f64>() < p).collect();
    VertexSet::new(ids, n).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn dataset(name: &str) -> Graph {
    let path = format!("{}/data/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    let file = std::fs::File::open(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    trident::load_edge_list(file).unwrap()
}

/// Naive O(n^3) triangle scan, tuples ascending.
pub fn naive_triangles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}
