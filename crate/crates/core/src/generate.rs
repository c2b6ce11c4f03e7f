//! Deterministic generators for the graph families used in tests, benchmarks
//! and the command line.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::degeneracy::zeta_profile;
use crate::graph::Graph;

/// Attempts per requested extra edge in the family-F sampler.
pub const FAMILY_F_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    /// Layers `I_1..I_{2k}` with `|I_i| = i`, consecutive layers completely
    /// joined. Vertex ids run layer by layer, so `I_1 = {0}`.
    Example1 { k: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// `K_{1,leaves}` with center 0.
    Star { leaves: usize },
    /// Triangle `0 1 2` with a pendant vertex 3 on vertex 0.
    TrianglePendant,
    /// Disjoint cliques plus up to `extra_edges` random inter-clique edges,
    /// each kept only if no degenerate degree changes.
    FamilyF { clique_sizes: Vec<usize>, extra_edges: usize, seed: u64 },
    RandomGnp { n: usize, p: f64, seed: u64 },
    /// Uniformly relabeled random forest with exactly `trees` components.
    RandomForest { n: usize, trees: usize, seed: u64 },
    DisjointCliques { sizes: Vec<usize> },
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Example1 { .. } => "example1",
            GeneratorSpec::Path { .. } => "path",
            GeneratorSpec::Cycle { .. } => "cycle",
            GeneratorSpec::Complete { .. } => "complete",
            GeneratorSpec::Star { .. } => "star",
            GeneratorSpec::TrianglePendant => "triangle-pendant",
            GeneratorSpec::FamilyF { .. } => "family-F",
            GeneratorSpec::RandomGnp { .. } => "random-gnp",
            GeneratorSpec::RandomForest { .. } => "random-forest",
            GeneratorSpec::DisjointCliques { .. } => "disjoint-cliques",
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("{family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
}

fn invalid(spec: &GeneratorSpec, reason: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParameter {
        family: spec.family(),
        reason: reason.into(),
    }
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("generators emit valid edges")
}

fn clique_edges(offset: usize, size: usize) -> impl Iterator<Item = (usize, usize)> {
    (offset..offset + size).flat_map(move |u| (u + 1..offset + size).map(move |v| (u, v)))
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GeneratorError> {
    match *spec {
        GeneratorSpec::Example1 { k } => {
            if k == 0 {
                return Err(invalid(spec, "k must be at least 1"));
            }
            Ok(example1(k))
        }
        GeneratorSpec::Path { n } => Ok(build(n, (1..n).map(|i| (i - 1, i)).collect())),
        GeneratorSpec::Cycle { n } => {
            if n < 3 {
                return Err(invalid(spec, "a cycle needs at least 3 vertices"));
            }
            Ok(build(n, (0..n).map(|i| (i, (i + 1) % n)).collect()))
        }
        GeneratorSpec::Complete { n } => Ok(build(n, clique_edges(0, n).collect())),
        GeneratorSpec::Star { leaves } => Ok(build(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())),
        GeneratorSpec::TrianglePendant => Ok(build(4, vec![(0, 1), (1, 2), (0, 2), (0, 3)])),
        GeneratorSpec::FamilyF {
            ref clique_sizes,
            extra_edges,
            seed,
        } => {
            if clique_sizes.contains(&0) {
                return Err(invalid(spec, "clique sizes must be positive"));
            }
            Ok(family_f(clique_sizes, extra_edges, seed))
        }
        GeneratorSpec::RandomGnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(spec, format!("edge probability {p} is outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Ok(build(n, edges))
        }
        GeneratorSpec::RandomForest { n, trees, seed } => {
            if trees > n || (trees == 0 && n > 0) {
                return Err(invalid(spec, format!("cannot split {n} vertices into {trees} trees")));
            }
            Ok(random_forest(n, trees, seed))
        }
        GeneratorSpec::DisjointCliques { ref sizes } => {
            if sizes.contains(&0) {
                return Err(invalid(spec, "clique sizes must be positive"));
            }
            Ok(disjoint_cliques(sizes))
        }
    }
}

fn example1(k: usize) -> Graph {
    let layers = 2 * k;
    let mut starts = Vec::with_capacity(layers + 1);
    let mut next = 0;
    for size in 1..=layers + 1 {
        starts.push(next);
        next += size;
    }
    let n = starts[layers];
    let mut edges = Vec::new();
    for i in 0..layers - 1 {
        for u in starts[i]..starts[i + 1] {
            for v in starts[i + 1]..starts[i + 2] {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

fn disjoint_cliques(sizes: &[usize]) -> Graph {
    let mut offset = 0;
    let mut edges = Vec::new();
    for &size in sizes {
        edges.extend(clique_edges(offset, size));
        offset += size;
    }
    build(offset, edges)
}

fn family_f(sizes: &[usize], extra_edges: usize, seed: u64) -> Graph {
    let mut graph = disjoint_cliques(sizes);
    let n = graph.vertex_count();
    let mut clique_of = Vec::with_capacity(n);
    for (i, &size) in sizes.iter().enumerate() {
        clique_of.extend(std::iter::repeat_n(i, size));
    }
    if sizes.len() < 2 {
        return graph;
    }
    let target = zeta_profile(&graph).zeta;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra_edges {
        for _ in 0..FAMILY_F_ATTEMPTS {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if clique_of[u] == clique_of[v] || graph.has_edge(u, v) {
                continue;
            }
            let mut edges: Vec<_> = graph.edges().collect();
            edges.push((u, v));
            let candidate = build(n, edges);
            if zeta_profile(&candidate).zeta == target {
                graph = candidate;
                break;
            }
        }
    }
    graph
}

fn random_forest(n: usize, trees: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    // Random recursive tree on the shuffled labels, then cut `trees - 1`
    // distinct edges.
    let mut edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (labels[rng.random_range(0..i)], labels[i]))
        .collect();
    edges.shuffle(&mut rng);
    edges.truncate(n.saturating_sub(trees));
    build(n, edges)
}
