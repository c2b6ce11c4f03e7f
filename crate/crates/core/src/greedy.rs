//! Certified greedy algorithms. Each run returns the chosen set together with
//! the lower-bound certificate accumulated along the way and a full trace.
//!
//! All algorithms share one loop: move the isolated vertices of the working
//! graph into the result, pick a set `S` by the algorithm's rule, keep `S`
//! and delete `N[S]`. Certificates are accumulated with the degenerate
//! degrees of the working graph of each round.

use std::collections::BTreeSet;

use num_traits::One;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{cheap_cost, min_degree_independent_subset, strong_bound_component, strong_bound_grouped, z_bound, z_term};
use crate::cheap::{find_1_cheap, find_2_cheap, find_k_cheap_forest, Anomaly, CheapKind, CheapSearch, CheapSetError};
use crate::degeneracy::{cheap_vertices_with, zeta_profile, ZetaProfile};
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreedyError {
    #[error("graph is not a forest")]
    NotForest,
    #[error(transparent)]
    CheapSet(#[from] CheapSetError),
}

/// How the set of one round was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// Isolated vertices of the working graph.
    Isolated,
    /// A single minimum-degree vertex.
    MinDegree,
    /// A maximal independent set of cheap vertices, per-component λ.
    ComponentLambda,
    /// One degenerate-degree class of cheap vertices, shared λ.
    GroupedLambda,
    /// A single cheap vertex, when neither λ rule applies.
    SingleCheap,
    CheapSet(CheapKind),
}

impl StepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StepKind::Isolated => "isolated",
            StepKind::MinDegree => "min-degree",
            StepKind::ComponentLambda => "component-lambda",
            StepKind::GroupedLambda => "grouped-lambda",
            StepKind::SingleCheap => "single-cheap",
            StepKind::CheapSet(kind) => kind.as_str(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStep {
    pub kind: StepKind,
    /// Vertices kept, in original ids.
    pub picked: VertexSet,
    /// Vertices deleted this round (`N[picked]`), in original ids.
    pub removed: VertexSet,
    pub lambda: Option<Rational>,
    /// This round's share of the certificate; `None` for min-greedy rounds,
    /// whose certificate is computed globally.
    pub contribution: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyRun {
    pub algorithm: &'static str,
    /// The chosen set has maximum induced degree at most `level`.
    pub level: usize,
    pub chosen: VertexSet,
    pub certificate: Rational,
    pub trace: Vec<GreedyStep>,
    pub anomalies: Vec<Anomaly>,
}

/// Working graph with a map back to original ids.
struct Residual {
    graph: Graph,
    to_original: Vec<usize>,
}

impl Residual {
    fn new(graph: &Graph) -> Self {
        Self {
            graph: graph.clone(),
            to_original: graph.vertices().collect(),
        }
    }

    fn original(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.to_original[v]).collect()
    }

    fn remove(&mut self, set: &VertexSet) {
        let (rest, map) = self.graph.remove_vertices(set);
        self.to_original = map.new_to_old.iter().map(|&v| self.to_original[v]).collect();
        self.graph = rest;
    }
}

struct Recorder {
    chosen: Vec<usize>,
    certificate: Rational,
    trace: Vec<GreedyStep>,
    anomalies: Vec<Anomaly>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            chosen: Vec::new(),
            certificate: rational::zero(),
            trace: Vec::new(),
            anomalies: Vec::new(),
        }
    }

    /// Keeps `picked`, deletes its closed neighborhood from `residual`.
    fn take(
        &mut self,
        residual: &mut Residual,
        kind: StepKind,
        picked: &VertexSet,
        lambda: Option<Rational>,
        contribution: Option<Rational>,
    ) {
        let removed = residual.graph.closed_neighborhood(picked);
        let picked_original = residual.original(picked);
        self.chosen.extend(picked_original.iter());
        if let Some(c) = &contribution {
            self.certificate += c;
        }
        self.trace.push(GreedyStep {
            kind,
            picked: picked_original,
            removed: residual.original(&removed),
            lambda,
            contribution,
        });
        residual.remove(&removed);
    }

    /// Moves all isolated vertices into the result, each worth 1.
    fn harvest_isolated(&mut self, residual: &mut Residual) {
        let isolated = residual.graph.isolated_vertices();
        if !isolated.is_empty() {
            let worth = rational::from_usize(isolated.len());
            self.take(residual, StepKind::Isolated, &isolated, None, Some(worth));
        }
    }

    fn finish(self, algorithm: &'static str, level: usize) -> GreedyRun {
        GreedyRun {
            algorithm,
            level,
            chosen: self.chosen.into_iter().collect(),
            certificate: self.certificate,
            trace: self.trace,
            anomalies: self.anomalies,
        }
    }
}

/// Repeatedly keeps a minimum-degree vertex (smallest id) and deletes its
/// closed neighborhood. The certificate is `Z_1` of the input graph.
pub fn min_greedy(graph: &Graph) -> GreedyRun {
    min_greedy_by(graph, |queue| queue.first().expect("nonempty").1)
}

/// [`min_greedy`] with minimum-degree ties broken uniformly at random.
pub fn min_greedy_seeded(graph: &Graph, seed: u64) -> GreedyRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    min_greedy_by(graph, move |queue| {
        let low = queue.first().expect("nonempty").0;
        let tied: Vec<usize> = queue.range((low, 0)..(low + 1, 0)).map(|&(_, v)| v).collect();
        *tied.choose(&mut rng).expect("nonempty")
    })
}

fn min_greedy_by(graph: &Graph, mut pick: impl FnMut(&BTreeSet<(usize, usize)>) -> usize) -> GreedyRun {
    let n = graph.vertex_count();
    let mut degree: Vec<usize> = graph.vertices().map(|v| graph.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = graph.vertices().map(|v| (degree[v], v)).collect();
    let mut chosen = Vec::new();
    let mut trace = Vec::new();
    while !queue.is_empty() {
        let v = pick(&queue);
        let mut removed = vec![v];
        removed.extend(graph.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &x in &removed {
            alive[x] = false;
            queue.remove(&(degree[x], x));
        }
        for &x in &removed {
            for &y in graph.neighbors(x) {
                if alive[y] {
                    queue.remove(&(degree[y], y));
                    degree[y] -= 1;
                    queue.insert((degree[y], y));
                }
            }
        }
        chosen.push(v);
        trace.push(GreedyStep {
            kind: StepKind::MinDegree,
            picked: VertexSet::singleton(v),
            removed: removed.into_iter().collect(),
            lambda: None,
            contribution: None,
        });
    }
    GreedyRun {
        algorithm: "min",
        level: 0,
        chosen: chosen.into_iter().collect(),
        certificate: z_bound(&zeta_profile(graph), 1).expect("k = 1"),
        trace,
        anomalies: Vec::new(),
    }
}

/// Cheap-Greedy in its complete form. Each round compares the per-component
/// λ rule on a maximal independent set of cheap vertices (usable only when
/// every λ is non-negative) with the grouped rule on one degenerate-degree
/// class; the grouped set wins when its λ is strictly smaller. When neither
/// applies a single minimum-degree vertex is taken.
pub fn cheap_greedy(graph: &Graph) -> GreedyRun {
    let mut residual = Residual::new(graph);
    let mut recorder = Recorder::new();
    loop {
        recorder.harvest_isolated(&mut residual);
        if residual.graph.is_empty() {
            break;
        }
        let h = &residual.graph;
        let profile = zeta_profile(h);
        let cheap = cheap_vertices_with(h, &profile);
        let independent = min_degree_independent_subset(h, &cheap);
        let component = strong_bound_component(h, &profile, &independent).expect("independent cheap set");
        let first = component.neighborhood_sum.as_ref().map(|sum| {
            let lambda = component.min_lambda().expect("nonempty set").clone();
            (independent.clone(), lambda, sum.clone())
        });
        let second = strong_bound_grouped(h, &profile)
            .ok()
            .and_then(|g| g.neighborhood_sum.map(|sum| (g.set, g.lambda, sum)));
        let (kind, (set, lambda, sum)) = match (first, second) {
            (Some(a), Some(b)) if b.1 < a.1 => (StepKind::GroupedLambda, b),
            (Some(a), _) => (StepKind::ComponentLambda, a),
            (None, Some(b)) => (StepKind::GroupedLambda, b),
            (None, None) => {
                let (set, sum) = single_cheap(h, &profile);
                (StepKind::SingleCheap, (set, Rational::one(), sum))
            }
        };
        recorder.take(&mut residual, kind, &set, Some(lambda), Some(sum));
    }
    recorder.finish("cheap", 0)
}

fn single_cheap(graph: &Graph, profile: &ZetaProfile) -> (VertexSet, Rational) {
    let low = graph.min_degree().expect("nonempty graph");
    let v = graph.vertices().find(|&v| graph.degree(v) == low).expect("minimum is attained");
    let set = VertexSet::singleton(v);
    let sum = graph
        .closed_neighborhood(&set)
        .iter()
        .map(|w| z_term(profile.get(w), 1))
        .sum();
    (set, sum)
}

fn cheap_set_greedy(
    graph: &Graph,
    algorithm: &'static str,
    level: usize,
    find: impl Fn(&Graph, &ZetaProfile) -> Result<CheapSearch, CheapSetError>,
) -> Result<GreedyRun, GreedyError> {
    let mut residual = Residual::new(graph);
    let mut recorder = Recorder::new();
    loop {
        recorder.harvest_isolated(&mut residual);
        if residual.graph.is_empty() {
            break;
        }
        let profile = zeta_profile(&residual.graph);
        let found = find(&residual.graph, &profile)?;
        recorder.anomalies.extend(found.anomalies.into_iter().map(|mut a| {
            a.candidate = residual.original(&a.candidate);
            a
        }));
        let closed = residual.graph.closed_neighborhood(&found.set.vertices);
        let contribution = cheap_cost(&profile, closed.iter(), level);
        recorder.take(
            &mut residual,
            StepKind::CheapSet(found.set.kind),
            &found.set.vertices,
            None,
            Some(contribution),
        );
    }
    Ok(recorder.finish(algorithm, level))
}

/// Repeatedly takes a 1-cheap set. The result induces maximum degree at most
/// 1 and has at least `Z_2(G)` vertices.
pub fn one_cheap_greedy(graph: &Graph) -> Result<GreedyRun, GreedyError> {
    cheap_set_greedy(graph, "1cheap", 1, find_1_cheap)
}

/// Repeatedly takes a 2-cheap set. The result induces maximum degree at most
/// 2 and has at least `Z_3(G)` vertices.
pub fn two_cheap_greedy(graph: &Graph) -> Result<GreedyRun, GreedyError> {
    cheap_set_greedy(graph, "2cheap", 2, find_2_cheap)
}

/// Repeatedly takes a `k`-cheap set of a forest. The result induces maximum
/// degree at most `k` and has at least `(n - m)(k+1)/(k+2) + m` vertices,
/// `m` the number of isolated vertices.
pub fn forest_k_greedy(graph: &Graph, k: usize) -> Result<GreedyRun, GreedyError> {
    if !graph.is_forest() {
        return Err(GreedyError::NotForest);
    }
    cheap_set_greedy(graph, "forest-k", k, |g, p| find_k_cheap_forest(g, p, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};
    use crate::rational::{ceil_usize, ratio};

    fn gen(spec: GeneratorSpec) -> Graph {
        generate(&spec).unwrap()
    }

    fn check(graph: &Graph, run: &GreedyRun) {
        assert!(graph.induced_max_degree(&run.chosen) <= run.level);
        assert!(run.chosen.len() >= ceil_usize(&run.certificate));
        let removed: usize = run.trace.iter().map(|s| s.removed.len()).sum();
        assert_eq!(removed, graph.vertex_count());
    }

    #[test]
    fn min_greedy_examples() {
        let k5 = gen(GeneratorSpec::Complete { n: 5 });
        assert_eq!(min_greedy(&k5).chosen.len(), 1);
        let p4 = gen(GeneratorSpec::Path { n: 4 });
        for seed in 0..20 {
            let run = min_greedy_seeded(&p4, seed);
            assert_eq!(run.chosen.len(), 2);
            check(&p4, &run);
        }
        let g = gen(GeneratorSpec::Example1 { k: 2 });
        assert_eq!(min_greedy(&g).certificate, ratio(31, 12));
        for seed in 0..200 {
            assert!(min_greedy_seeded(&g, seed).chosen.len() <= 5);
        }
    }

    #[test]
    fn cheap_greedy_examples() {
        let g = gen(GeneratorSpec::Example1 { k: 2 });
        let run = cheap_greedy(&g);
        check(&g, &run);
        assert_eq!(run.trace[0].picked, VertexSet::from(vec![6, 7, 8, 9]));
        assert_eq!(run.trace[0].lambda, Some(ratio(-5, 4)));
        assert_eq!(run.chosen.len(), 6);
        assert!(run.certificate >= ratio(31, 12));

        let k4 = gen(GeneratorSpec::Complete { n: 4 });
        let run = cheap_greedy(&k4);
        assert_eq!((run.chosen.len(), run.certificate.clone()), (1, ratio(1, 1)));

        let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let run = cheap_greedy(&k23);
        assert_eq!((run.chosen.len(), run.certificate.clone()), (3, ratio(3, 1)));
    }

    #[test]
    fn one_cheap_examples() {
        let p6 = gen(GeneratorSpec::Path { n: 6 });
        let run = one_cheap_greedy(&p6).unwrap();
        check(&p6, &run);
        assert!(run.anomalies.is_empty());
        assert_eq!(run.chosen.len(), 4);
        assert_eq!(run.certificate, ratio(4, 1));

        let run = one_cheap_greedy(&Graph::empty(3)).unwrap();
        assert_eq!(run.chosen.len(), 3);

        let k3 = gen(GeneratorSpec::Complete { n: 3 });
        let run = one_cheap_greedy(&k3).unwrap();
        check(&k3, &run);
        assert_eq!(run.chosen.len(), 2);
    }

    #[test]
    fn two_cheap_examples() {
        let p4 = gen(GeneratorSpec::Path { n: 4 });
        assert_eq!(two_cheap_greedy(&p4).unwrap().chosen.len(), 4);
        let c6 = gen(GeneratorSpec::Cycle { n: 6 });
        let run = two_cheap_greedy(&c6).unwrap();
        check(&c6, &run);
        assert!(run.anomalies.is_empty());
        assert_eq!(run.chosen.len(), 4);
        assert!(run.certificate >= ratio(18, 7));
        assert_eq!(two_cheap_greedy(&Graph::empty(1)).unwrap().chosen.len(), 1);
    }

    #[test]
    fn forest_examples() {
        let star = gen(GeneratorSpec::Star { leaves: 3 });
        let run = forest_k_greedy(&star, 1).unwrap();
        check(&star, &run);
        assert!(run.chosen.len() >= 3);
        let p7 = gen(GeneratorSpec::Path { n: 7 });
        let run = forest_k_greedy(&p7, 2).unwrap();
        check(&p7, &run);
        assert!(run.chosen.len() >= 6);
        assert_eq!(forest_k_greedy(&Graph::empty(4), 3).unwrap().chosen.len(), 4);
        let c4 = gen(GeneratorSpec::Cycle { n: 4 });
        assert_eq!(forest_k_greedy(&c4, 1), Err(GreedyError::NotForest));
    }
}
