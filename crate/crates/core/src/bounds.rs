//! Lower bounds on independence and `k`-independence numbers, in exact
//! rational arithmetic.
//!
//! * `Z_k(G) = Σ_v min{1, 1/(ζ(v) + 1/k)}`; `Z_1` bounds `α`, `Z_2` bounds
//!   `α_1` and `Z_3` bounds `α_2`.
//! * The λ-strengthened bounds replace the `+1` in `Z_1` by a correction
//!   `λ = 1 + (|N(S)| - e(S, N(S))) / |S|` on the closed neighborhood of an
//!   independent set `S` of cheap vertices, either per connected component
//!   of the bipartite graph between `S` and `N(S)` (valid when every λ is
//!   non-negative), or for one group of cheap vertices sharing the same
//!   degenerate degree (valid whenever every denominator stays positive).
//! * Caro-Wei, a Turán-type bound in `ζ̄`, and literature baselines for
//!   `α_1`/`α_2` are provided for comparison.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::degeneracy::{cheap_vertices_with, zeta_profile, ZetaProfile};
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("bound is undefined on the empty graph")]
    EmptyGraph,
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(usize),
    #[error("set is not independent: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("vertex {0} is not cheap")]
    NotCheap(usize),
    #[error("graph has no non-isolated cheap vertex")]
    NoNonIsolatedCheap,
    #[error("need 0 <= m <= n, got n = {n}, m = {m}")]
    InvalidForestParameters { n: usize, m: usize },
}

fn int(value: usize) -> BigInt {
    BigInt::from(value)
}

/// `min{1, 1/(ζ + 1/k)} = min{1, k/(kζ + 1)}`; equals 1 exactly when `ζ = 0`.
pub fn z_term(zeta: usize, k: usize) -> Rational {
    if zeta == 0 {
        Rational::one()
    } else {
        Rational::new(int(k), int(k * zeta + 1))
    }
}

/// `Z_k(G)` for `k >= 1`.
pub fn z_bound(profile: &ZetaProfile, k: usize) -> Result<Rational, BoundError> {
    if k == 0 {
        return Err(BoundError::InvalidK(k));
    }
    Ok(profile.zeta.iter().map(|&z| z_term(z, k)).sum())
}

/// `Σ_v 1/(deg(v) + 1)`.
pub fn caro_wei(graph: &Graph) -> Rational {
    graph
        .vertices()
        .map(|v| Rational::new(BigInt::one(), int(graph.degree(v) + 1)))
        .sum()
}

/// `n / (ζ̄ + 1) = n² / (Σ ζ(v) + n)`.
pub fn turan_zeta(graph: &Graph, profile: &ZetaProfile) -> Result<Rational, BoundError> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(BoundError::EmptyGraph);
    }
    Ok(Rational::new(int(n * n), int(profile.sum() + n)))
}

/// Average-degree and degree-sequence bounds from the `k`-independence
/// literature. Reported for comparison only.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Baselines {
    /// `α_1 >= 2n / (⌈d̄⌉ + 2)`.
    pub ch_a1: Option<Rational>,
    /// `α_2 >= 3n / (d̄ + 3)`.
    pub ch_a2: Option<Rational>,
    /// `α_1 >= Σ 3 / (2(deg(v) + 1))`, stated for minimum degree at least 2.
    pub caro_tuza_a1: Option<Rational>,
}

pub fn baseline_bounds(graph: &Graph) -> Baselines {
    let n = graph.vertex_count();
    if n == 0 {
        return Baselines::default();
    }
    let degree_sum = 2 * graph.edge_count();
    let ceil_avg = degree_sum.div_ceil(n);
    let ch_a1 = Rational::new(int(2 * n), int(ceil_avg + 2));
    let ch_a2 = Rational::new(int(3 * n * n), int(degree_sum + 3 * n));
    let caro_tuza_a1 = (graph.min_degree() >= Some(2)).then(|| {
        graph
            .vertices()
            .map(|v| Rational::new(int(3), int(2 * (graph.degree(v) + 1))))
            .sum()
    });
    Baselines {
        ch_a1: Some(ch_a1),
        ch_a2: Some(ch_a2),
        caro_tuza_a1,
    }
}

/// Edge surplus of one component of the bipartite graph between `S` and
/// `N(S)`: `λ = 1 - e/s + t/s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLambda {
    pub s: usize,
    pub t: usize,
    pub e: usize,
    pub lambda: Rational,
}

impl ComponentLambda {
    pub fn new(s: usize, t: usize, e: usize) -> Self {
        let lambda = Rational::new(int(s + t) - int(e), int(s));
        Self { s, t, e, lambda }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaComponent {
    /// Members of `S` in this component.
    pub members: VertexSet,
    /// Members of `N(S)` in this component.
    pub neighbors: VertexSet,
    pub lambda: ComponentLambda,
}

fn check_cheap_independent(graph: &Graph, profile: &ZetaProfile, set: &VertexSet) -> Result<(), BoundError> {
    if let Some(v) = set.iter().find(|&v| v >= graph.vertex_count()) {
        return Err(BoundError::InvalidVertex(v));
    }
    for u in set.iter() {
        if let Some(&w) = graph.neighbors(u).iter().find(|&&w| set.contains(w)) {
            return Err(BoundError::NotIndependent(u.min(w), u.max(w)));
        }
        if !profile.is_cheap(graph, u) {
            return Err(BoundError::NotCheap(u));
        }
    }
    Ok(())
}

/// Splits the bipartite graph between an independent set of cheap vertices
/// and its neighborhood into connected components, ordered by smallest
/// member of `S`.
pub fn component_lambdas(
    graph: &Graph,
    profile: &ZetaProfile,
    set: &VertexSet,
) -> Result<Vec<LambdaComponent>, BoundError> {
    check_cheap_independent(graph, profile, set)?;
    let n = graph.vertex_count();
    let mut in_set = vec![false; n];
    for v in set.iter() {
        in_set[v] = true;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in set.iter() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut neighbors = Vec::new();
        let mut cursor = 0;
        while cursor < members.len() {
            let u = members[cursor];
            cursor += 1;
            for &w in graph.neighbors(u) {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                neighbors.push(w);
                for &x in graph.neighbors(w) {
                    if in_set[x] && !seen[x] {
                        seen[x] = true;
                        members.push(x);
                    }
                }
            }
        }
        let e = members.iter().map(|&u| graph.degree(u)).sum();
        let lambda = ComponentLambda::new(members.len(), neighbors.len(), e);
        out.push(LambdaComponent {
            members: members.into(),
            neighbors: neighbors.into(),
            lambda,
        });
    }
    Ok(out)
}

/// `Σ_{v ∈ vertices} 1/(ζ(v) + λ)`, or `None` when some denominator is not
/// positive.
fn shifted_sum(profile: &ZetaProfile, vertices: impl Iterator<Item = usize>, lambda: &Rational) -> Option<Rational> {
    let mut total = Rational::zero();
    for v in vertices {
        let denom = rational::from_usize(profile.get(v)) + lambda;
        if !denom.is_positive() {
            return None;
        }
        total += denom.recip();
    }
    Some(total)
}

/// `Σ_{v ∉ covered} 1/(ζ(v) + 1)`.
fn outside_sum(profile: &ZetaProfile, covered: &VertexSet) -> Rational {
    (0..profile.len())
        .filter(|&v| !covered.contains(v))
        .map(|v| Rational::new(BigInt::one(), int(profile.get(v) + 1)))
        .sum()
}

/// Per-component λ bound for one independent set of cheap vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBound {
    pub components: Vec<LambdaComponent>,
    /// `Σ_i Σ_{v ∈ N[S ∩ B_i]} 1/(ζ(v) + λ_i)`, the share of `N[S]`; `None`
    /// when inapplicable.
    pub neighborhood_sum: Option<Rational>,
    /// The full bound; `None` when some `λ_i < 0`.
    pub value: Option<Rational>,
}

impl ComponentBound {
    /// Index of the first component with negative λ.
    pub fn offending_component(&self) -> Option<usize> {
        self.components.iter().position(|c| c.lambda.lambda.is_negative())
    }

    /// `min_i λ_i`, or `None` for an empty set.
    pub fn min_lambda(&self) -> Option<&Rational> {
        self.components.iter().map(|c| &c.lambda.lambda).min()
    }
}

pub fn strong_bound_component(
    graph: &Graph,
    profile: &ZetaProfile,
    set: &VertexSet,
) -> Result<ComponentBound, BoundError> {
    let components = component_lambdas(graph, profile, set)?;
    if components.iter().any(|c| c.lambda.lambda.is_negative()) {
        return Ok(ComponentBound {
            components,
            neighborhood_sum: None,
            value: None,
        });
    }
    let mut inside = Rational::zero();
    for c in &components {
        let closed = c.members.iter().chain(c.neighbors.iter());
        inside += shifted_sum(profile, closed, &c.lambda.lambda)
            .expect("non-negative λ keeps every denominator positive for cheap sets");
    }
    let covered = graph.closed_neighborhood(set);
    let value = &inside + outside_sum(profile, &covered);
    Ok(ComponentBound {
        components,
        neighborhood_sum: Some(inside),
        value: Some(value),
    })
}

/// `λ(S) = 1 + (|N(S)| - e(S, N(S))) / |S|` for an independent `S`.
pub fn set_lambda(graph: &Graph, set: &VertexSet) -> Rational {
    let t = graph.open_neighborhood(set).len();
    let e: usize = set.iter().map(|v| graph.degree(v)).sum();
    ComponentLambda::new(set.len(), t, e).lambda
}

/// Picks a subset of the independent set `set` whose bipartite graph towards
/// its neighborhood is dense, i.e. whose λ is small.
///
/// This is a greedy peeling heuristic, not an exact densest-subgraph
/// computation. Starting from all of `set`, it repeatedly drops the member
/// with the fewest edges into *shared* neighbors (neighbors that still see
/// at least one other member; private neighbors add one edge and one
/// vertex and so never lower λ), breaking ties by smallest id. The prefix
/// with the smallest λ is returned, preferring larger prefixes on ties.
pub fn select_dense_subset(graph: &Graph, set: &VertexSet) -> VertexSet {
    if set.len() <= 1 {
        return set.clone();
    }
    let n = graph.vertex_count();
    let mut in_set = vec![false; n];
    for v in set.iter() {
        in_set[v] = true;
    }
    let mut count = vec![0usize; n];
    for u in set.iter() {
        for &w in graph.neighbors(u) {
            count[w] += 1;
        }
    }
    let mut shared = vec![0usize; n];
    let mut queue = BTreeSet::new();
    for u in set.iter() {
        shared[u] = graph.neighbors(u).iter().filter(|&&w| count[w] >= 2).count();
        queue.insert((shared[u], u));
    }
    let mut s = set.len();
    let mut e: usize = set.iter().map(|u| graph.degree(u)).sum();
    let mut t = graph.open_neighborhood(set).len();

    let mut best = ComponentLambda::new(s, t, e).lambda;
    let mut best_removed = 0;
    let mut removal_order = Vec::with_capacity(s);
    while s > 1 {
        let (_, u) = queue.pop_first().expect("queue tracks the remaining members");
        in_set[u] = false;
        removal_order.push(u);
        s -= 1;
        for &w in graph.neighbors(u) {
            count[w] -= 1;
            e -= 1;
            match count[w] {
                0 => t -= 1,
                1 => {
                    let x = graph.neighbors(w).iter().copied().find(|&x| in_set[x]).expect("one member left");
                    queue.remove(&(shared[x], x));
                    shared[x] -= 1;
                    queue.insert((shared[x], x));
                }
                _ => {}
            }
        }
        let lambda = ComponentLambda::new(s, t, e).lambda;
        if lambda < best {
            best = lambda;
            best_removed = removal_order.len();
        }
    }
    let dropped: VertexSet = removal_order[..best_removed].iter().copied().collect();
    set.iter().filter(|&v| !dropped.contains(v)).collect()
}

/// Maximal independent subset of `candidates` chosen greedily by minimum
/// degree inside `G[candidates]`, smallest id first on ties.
pub fn min_degree_independent_subset(graph: &Graph, candidates: &VertexSet) -> VertexSet {
    let n = graph.vertex_count();
    let mut alive = vec![false; n];
    for v in candidates.iter() {
        alive[v] = true;
    }
    let mut degree = vec![0usize; n];
    let mut queue = BTreeSet::new();
    for v in candidates.iter() {
        degree[v] = graph.neighbors(v).iter().filter(|&&w| alive[w]).count();
        queue.insert((degree[v], v));
    }
    let mut chosen = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        chosen.push(v);
        alive[v] = false;
        for &w in graph.neighbors(v) {
            if !alive[w] {
                continue;
            }
            alive[w] = false;
            queue.remove(&(degree[w], w));
            for &x in graph.neighbors(w) {
                if alive[x] {
                    queue.remove(&(degree[x], x));
                    degree[x] -= 1;
                    queue.insert((degree[x], x));
                }
            }
        }
    }
    chosen.into()
}

/// Grouped-by-ζ λ bound for the best class of cheap vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedBound {
    /// Degenerate degree shared by the chosen set.
    pub zeta_class: usize,
    pub set: VertexSet,
    pub lambda: Rational,
    /// `(ζ class, selected set, λ)` for every class considered.
    pub candidates: Vec<(usize, VertexSet, Rational)>,
    /// `Σ_{v ∈ N[S]} 1/(ζ(v) + λ)`; `None` when some denominator is not
    /// positive.
    pub neighborhood_sum: Option<Rational>,
    /// The full bound; `None` when inapplicable.
    pub value: Option<Rational>,
}

/// For each degenerate degree present among non-isolated cheap vertices,
/// selects an independent set in that class (minimum-degree greedy, then
/// [`select_dense_subset`]), keeps the class with the smallest λ (lowest
/// class on ties), and evaluates the bound on it.
pub fn strong_bound_grouped(graph: &Graph, profile: &ZetaProfile) -> Result<GroupedBound, BoundError> {
    let cheap = cheap_vertices_with(graph, profile);
    let mut classes: Vec<usize> = cheap.iter().map(|v| profile.get(v)).filter(|&z| z > 0).collect();
    classes.sort_unstable();
    classes.dedup();
    if classes.is_empty() {
        return Err(BoundError::NoNonIsolatedCheap);
    }
    let mut candidates = Vec::with_capacity(classes.len());
    for &class in &classes {
        let members: VertexSet = cheap.iter().filter(|&v| profile.get(v) == class).collect();
        let independent = min_degree_independent_subset(graph, &members);
        let selected = select_dense_subset(graph, &independent);
        let lambda = set_lambda(graph, &selected);
        candidates.push((class, selected, lambda));
    }
    let (zeta_class, set, lambda) = candidates
        .iter()
        .min_by(|a, b| a.2.cmp(&b.2))
        .cloned()
        .expect("at least one class");
    let closed = graph.closed_neighborhood(&set);
    let neighborhood_sum = shifted_sum(profile, closed.iter(), &lambda);
    let value = neighborhood_sum.as_ref().map(|inside| inside + outside_sum(profile, &closed));
    Ok(GroupedBound {
        zeta_class,
        set,
        lambda,
        candidates,
        neighborhood_sum,
        value,
    })
}

/// `(n - m)(k + 1)/(k + 2) + m`, the value of `Z_{k+1}` on a forest with `n`
/// vertices of which `m` are isolated.
pub fn forest_z_closed_form(n: usize, m: usize, k: usize) -> Result<Rational, BoundError> {
    if m > n {
        return Err(BoundError::InvalidForestParameters { n, m });
    }
    Ok(Rational::new(int((n - m) * (k + 1)), int(k + 2)) + rational::from_usize(m))
}

/// Every implemented bound for one graph. `None` marks an inapplicable bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub z1: Rational,
    pub z2: Rational,
    pub z3: Rational,
    pub caro_wei: Rational,
    pub turan_zeta: Option<Rational>,
    /// Per-component λ bound on a minimum-degree-greedy maximal independent
    /// set of cheap vertices.
    pub strong_component: Option<Rational>,
    pub strong_grouped: Option<Rational>,
    pub caro_tuza_a1: Option<Rational>,
    pub ch_a1: Option<Rational>,
    pub ch_a2: Option<Rational>,
    /// Closed-form `Z_1`, `Z_2`, `Z_3` when the graph is a forest.
    pub forest_z1: Option<Rational>,
    pub forest_z2: Option<Rational>,
    pub forest_z3: Option<Rational>,
}

impl BoundReport {
    pub fn compute(graph: &Graph) -> Self {
        Self::compute_with(graph, &zeta_profile(graph))
    }

    pub fn compute_with(graph: &Graph, profile: &ZetaProfile) -> Self {
        let z = |k| z_bound(profile, k).expect("k >= 1");
        let cheap = cheap_vertices_with(graph, profile);
        let s1 = min_degree_independent_subset(graph, &cheap);
        let strong_component = strong_bound_component(graph, profile, &s1)
            .ok()
            .and_then(|b| b.value);
        let strong_grouped = strong_bound_grouped(graph, profile).ok().and_then(|b| b.value);
        let baselines = baseline_bounds(graph);
        let forest = graph.is_forest().then(|| {
            let n = graph.vertex_count();
            let m = graph.isolated_vertices().len();
            (0..3)
                .map(|k| forest_z_closed_form(n, m, k).expect("m <= n"))
                .collect::<Vec<_>>()
        });
        let forest_k = |k: usize| forest.as_ref().map(|f| f[k].clone());
        Self {
            z1: z(1),
            z2: z(2),
            z3: z(3),
            caro_wei: caro_wei(graph),
            turan_zeta: turan_zeta(graph, profile).ok(),
            strong_component,
            strong_grouped,
            caro_tuza_a1: baselines.caro_tuza_a1,
            ch_a1: baselines.ch_a1,
            ch_a2: baselines.ch_a2,
            forest_z1: forest_k(0),
            forest_z2: forest_k(1),
            forest_z3: forest_k(2),
        }
    }

    /// `(name, value)` pairs in a fixed order, for serialization.
    pub fn entries(&self) -> Vec<(&'static str, Option<&Rational>)> {
        vec![
            ("z1", Some(&self.z1)),
            ("z2", Some(&self.z2)),
            ("z3", Some(&self.z3)),
            ("caro_wei", Some(&self.caro_wei)),
            ("turan_zeta", self.turan_zeta.as_ref()),
            ("strong_component", self.strong_component.as_ref()),
            ("strong_grouped", self.strong_grouped.as_ref()),
            ("caro_tuza_a1", self.caro_tuza_a1.as_ref()),
            ("ch_a1", self.ch_a1.as_ref()),
            ("ch_a2", self.ch_a2.as_ref()),
            ("forest_z1", self.forest_z1.as_ref()),
            ("forest_z2", self.forest_z2.as_ref()),
            ("forest_z3", self.forest_z3.as_ref()),
        ]
    }

    /// Bounds that are lower bounds on `α_0` by the results implemented here.
    pub fn alpha0_bounds(&self) -> Vec<(&'static str, &Rational)> {
        let mut out = vec![("z1", &self.z1), ("caro_wei", &self.caro_wei)];
        out.extend(self.turan_zeta.as_ref().map(|v| ("turan_zeta", v)));
        out.extend(self.strong_component.as_ref().map(|v| ("strong_component", v)));
        out.extend(self.strong_grouped.as_ref().map(|v| ("strong_grouped", v)));
        out
    }
}

/// `1/(ζ + 1/(k+1))` summed over `vertices`, without clamping.
pub fn cheap_cost(profile: &ZetaProfile, vertices: impl Iterator<Item = usize>, level: usize) -> Rational {
    let k = level + 1;
    vertices
        .map(|v| Rational::new(int(k), int(k * profile.get(v) + 1)))
        .sum()
}
