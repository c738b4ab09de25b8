//! k-diameter component connectivity.
//!
//! A graph is in a *failure state* for `k` when every component has diameter
//! below `k`. This crate computes how many vertex deletions (`CV_k`), edge
//! deletions (`CE_k`), or `p` vertex deletions followed by edge deletions
//! (`CM_k(G, p)`) it takes to get there:
//!
//! * [`closed_forms`] evaluates the exact formulas for paths, cycles,
//!   complete graphs, complete bipartite graphs and perfect trees;
//! * [`witnesses`] builds the matching optimal deletion sets;
//! * [`oracle`] solves the same problems by exhaustive search on any small
//!   graph, which is how the formulas are checked.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod closed_forms;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod witnesses;

pub use closed_forms::{
    ce_bipartite, ce_cycle, ce_path, cm, curve, cv, tree_level_sum, tree_witness_cardinality,
    ConnectivityCurve, ConnectivityPair, FormulaError, MixedCase, MixedConnectivity, VertexCase,
    VertexConnectivity,
};
pub use families::{FamilySpec, SpecError, TreeCoordinate, TreeShape};
pub use graph::{Distance, Edge, Graph, GraphError, InducedSubgraph};
pub use oracle::{
    greedy_disjoint_k_paths, Oracle, OracleError, OracleLimits, OracleResult, PathPacking,
};
pub use witnesses::{mixed_witness, verify_witness, vertex_witness, Witness, WitnessError};

pub use num_bigint::BigUint;
