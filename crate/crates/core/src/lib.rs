//! Triangle- and k-clique-densest subgraph extraction.
//!
//! * [`graph`]: edge-list loading, vertex sets, density reports.
//! * [`clique`]: triangle / k-clique listing with per-vertex counts.
//! * [`flow`]: exact max-flow with maximal min-cut extraction, generic over
//!   the capacity integer.
//! * [`exact`]: binary search over min cuts for the exact optimum, with and
//!   without a required query set.
//! * [`peel`]: single-vertex and batch peeling approximations.
//! * [`lp`]: the triangle LP, indicator solutions and level-set rounding.
//! * [`oracle`]: exhaustive search for tiny instances.
//! * [`generate`]: planted-clique random graphs.

pub mod clique;
pub mod error;
pub mod exact;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod lp;
pub mod oracle;
pub mod peel;
pub mod scalar;

pub use clique::{list_kcliques, list_triangles, triangle_type_counts, CliqueIndex, TriangleTypeCounts};
pub use error::{Error, Result};
pub use exact::{build_network, cut_cost_formula, solve_constrained, solve_exact, SolveResult};
pub use flow::{max_flow, CutResult, FlowNetwork};
pub use graph::{density_report, load_edge_list, DensityReport, Graph, VertexSet};
pub use peel::{batch_peel, greedy_ds, peel, PeelTrace};
pub use scalar::{Capacity, Rational};

/// Flow network on 128-bit capacities, the default width of every solve.
pub type Network = FlowNetwork<i128>;
/// Flow network on arbitrary-precision capacities.
pub type WideNetwork = FlowNetwork<num_bigint::BigInt>;
/// Parametric clique network on 128-bit capacities.
pub type CliqueNetwork = exact::CliqueNetwork<i128>;
/// Parametric clique network on arbitrary-precision capacities.
pub type WideCliqueNetwork = exact::CliqueNetwork<num_bigint::BigInt>;
