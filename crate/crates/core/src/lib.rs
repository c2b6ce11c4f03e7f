//! Degenerate-degree (coreness) analysis of simple graphs.
//!
//! The crate computes per-vertex degenerate degrees `ζ(v)` (the largest
//! minimum degree of any subgraph containing `v`), cheap vertices and
//! `k`-cheap sets, evaluates the `Z_k` family of lower bounds on
//! `k`-independence numbers in exact rational arithmetic, and runs greedy
//! algorithms that construct `k`-independent sets at least as large as those
//! bounds. Brute-force oracles and graph generators live in [`oracle`] and
//! [`generate`].
//!
//! Vertex ids are dense integers `0..n`; external labels are an I/O concern.

pub mod bounds;
pub mod cheap;
pub mod degeneracy;
pub mod generate;
pub mod graph;
pub mod greedy;
pub mod oracle;
pub mod rational;

pub use bounds::{BoundError, BoundReport, ComponentLambda};
pub use cheap::{Anomaly, CheapKind, CheapSet, CheapSetError, CheapVerdict};
pub use degeneracy::{LayerDecomposition, ZetaProfile};
pub use generate::{GeneratorError, GeneratorSpec};
pub use graph::{smallest_last_order, Graph, GraphError, SmallestLastResult, VertexMap, VertexSet};
pub use greedy::{GreedyError, GreedyRun, GreedyStep, StepKind};
pub use oracle::OracleError;
pub use rational::Rational;
