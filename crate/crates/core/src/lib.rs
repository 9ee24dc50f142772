//! Personalized PageRank on simple undirected graphs.
//!
//! The crate builds the degree-normalized transition matrix of a graph,
//! computes PageRank with two independent iterative solvers plus a dense
//! reference solve, and checks the L1 relationships between the PageRank
//! vector, the personalization vector and the degree distribution:
//!
//! * with personalization equal to the degree distribution `f`, the
//!   PageRank vector is exactly `f`;
//! * in general `(1-c)/(1+c) * |v - f|_1 <= |pi - f|_1 <= |v - f|_1`.
//!
//! Modules are layered bottom-up: [`graph`] -> [`transition`] ->
//! [`solver`] -> [`analysis`] -> [`experiments`].

pub mod analysis;
pub mod dense;
mod error;
pub mod experiments;
pub mod graph;
pub mod solver;
pub mod transition;

pub use analysis::{
    check_theorem, difference_identity_defect, l1_distance, norm_identities, theorem_bounds,
    BoundReport, NormReport, Verdict,
};
pub use error::{Error, Location, Result};
pub use experiments::{run_sweep, tightness_summary, SweepRow, SweepSpec, TightnessSummary, VStrategy};
pub use graph::{degrees, generate, is_bipartite, is_connected, DegreeVector, Family, GeneratorSpec, Graph};
pub use solver::{
    pagerank, pagerank_dense_oracle, pagerank_linear, pagerank_power, Method, PageRankConfig,
    PageRankResult,
};
pub use transition::{
    degree_distribution, transition_matrix, uniform_vector, ProbabilityVector, RowStochasticMatrix,
};
