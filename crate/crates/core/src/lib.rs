//! Goods transportation on undirected graphs with a single truck.
//!
//! - [`generator`] builds seeded random instances of stores, warehouses
//!   and joints.
//! - [`dot`] reads and writes instances as Graphviz DOT.
//! - [`router`] runs the greedy threshold-driven delivery simulation,
//!   using [`shortest_path`] to pick the cheapest next target.
//! - [`report`] renders solutions as a readable log, JSON lines and an
//!   annotated DOT overlay.
//! - [`analysis`] sweeps truck capacity over a fixed instance.

pub mod analysis;
pub mod cli;
pub mod dot;
pub mod generator;
pub mod model;
pub mod report;
pub mod rng;
pub mod router;
pub mod shortest_path;

pub use dot::{emit_dot, parse_dot};
pub use generator::{generate, GeneratorParams};
pub use model::{
    edge_cost, euclidean_distance, Edge, Node, NodeId, NodeKind, TransportGraph, Violation,
};
pub use router::{solve, SolveOutcome, SolveStatus, SolverParams};
pub use shortest_path::{cheapest_route, nearest_of_kind, Route};
