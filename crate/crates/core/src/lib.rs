//! Permutation routing with matchings on graphs, and sorting networks
//! constrained to a host graph.
//!
//! Vertices are 0-indexed in the API and 1-indexed in every text format.

pub mod bench;
mod blossom;
pub mod bounded_sat;
pub mod error;
pub mod graph;
pub mod matching;
pub mod perm;
pub mod route;
pub mod sat;
pub mod sortnet;
pub mod tree_sort;
pub mod two_step;

pub use error::{Error, ParseError, Result};
pub use graph::Graph;
pub use matching::{enumerate_matchings, Comparator, DirectedMatching, EdgeMode, Matching};
pub use perm::{CycleDecomposition, PebbleConfiguration, Permutation};
pub use route::{
    for_each_plan, route_tree, rt_at_most_k, rt_at_most_k_budgeted, rt_exact, rt_worst_case,
    verify_plan, RoutingOutcome, RoutingPlan, RoutingStatus,
};
pub use two_step::{decide_two_step, CycleGraph};
