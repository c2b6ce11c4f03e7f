//! Benchmark inputs shared by the criterion suites.

use zeta_kit_core::generate::{generate, GeneratorSpec};
use zeta_kit_core::Graph;

/// Random graph with `n` vertices and expected average degree `degree`.
pub fn sparse_graph(n: usize, degree: f64, seed: u64) -> Graph {
    let p = (degree / (n.max(2) - 1) as f64).min(1.0);
    generate(&GeneratorSpec::RandomGnp { n, p, seed }).expect("p is clamped to [0, 1]")
}

pub fn forest(n: usize, seed: u64) -> Graph {
    let trees = (n / 16).max(1);
    generate(&GeneratorSpec::RandomForest { n, trees, seed }).expect("trees <= n")
}
