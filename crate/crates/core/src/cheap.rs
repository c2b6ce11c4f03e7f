//! `k`-cheap sets: verification and constructive finders.
//!
//! A set `S` of non-isolated vertices is `k`-cheap when `Δ(G[S]) <= k` and
//! its closed neighborhood costs at most `|S|` in `Z_{k+1}`:
//!
//! ```text
//! Σ_{v ∈ N[S]} 1/(ζ(v) + 1/(k+1)) <= |S|
//! ```
//!
//! Any set of isolated vertices is `k`-cheap as well. Removing `N[S]` from
//! the graph and keeping `S` loses nothing against `Z_{k+1}`, which is what
//! the greedy algorithms in [`crate::greedy`] rely on.
//!
//! The finders search for structured candidates and re-verify every one of
//! them exactly before returning it. A structured candidate that fails
//! verification although its structural hypotheses hold is reported as an
//! [`Anomaly`] and skipped.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bounds::cheap_cost;
use crate::degeneracy::{cheap_vertices_with, layer_decomposition, zeta_profile, LayerDecomposition, ZetaProfile};
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheapKind {
    SingleCheap,
    TypeI,
    TypeII,
    TypeIII,
    AdjacentPair,
    TripleCommonNeighbor,
    PairPlusC2Neighbor,
    C1WithTwoC2,
    InducedPath4,
    C1C3Edge,
    TwoLayerPaths,
    LayerPath,
    LayerPathPairBridge,
    WholePathUnion,
    ForestLeaf,
    IsolatedBlock,
}

impl CheapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheapKind::SingleCheap => "single-cheap",
            CheapKind::TypeI => "type-I",
            CheapKind::TypeII => "type-II",
            CheapKind::TypeIII => "type-III",
            CheapKind::AdjacentPair => "adjacent-pair",
            CheapKind::TripleCommonNeighbor => "triple-common-neighbor",
            CheapKind::PairPlusC2Neighbor => "pair-plus-c2-neighbor",
            CheapKind::C1WithTwoC2 => "c1-with-two-c2",
            CheapKind::InducedPath4 => "induced-path-4",
            CheapKind::C1C3Edge => "c1-c3-edge",
            CheapKind::TwoLayerPaths => "two-layer-paths",
            CheapKind::LayerPath => "layer-path",
            CheapKind::LayerPathPairBridge => "layer-path-pair-bridge",
            CheapKind::WholePathUnion => "whole-path-union",
            CheapKind::ForestLeaf => "forest-leaf",
            CheapKind::IsolatedBlock => "isolated-block",
        }
    }
}

impl fmt::Display for CheapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A vertex set certified `level`-cheap in the graph it was found in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheapSet {
    pub vertices: VertexSet,
    pub level: usize,
    pub kind: CheapKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheapVerdict {
    /// Conditions (i) and (ii) hold; `contribution` is the cost of `N[S]`.
    Cheap { contribution: Rational },
    /// Every member is isolated.
    Isolated,
    DegreeExceeds { vertex: usize, degree: usize },
    ContributionExceeds { contribution: Rational, size: usize },
}

impl CheapVerdict {
    pub fn is_cheap(&self) -> bool {
        matches!(self, CheapVerdict::Cheap { .. } | CheapVerdict::Isolated)
    }
}

/// A structured candidate whose verification failed although the structural
/// hypotheses of its pattern held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anomaly {
    pub pattern: CheapKind,
    pub candidate: VertexSet,
    pub verdict: CheapVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheapSetError {
    #[error("candidate set is empty")]
    EmptySet,
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(usize),
    #[error("graph has no edge")]
    NoEdge,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is isolated; strip isolated vertices first")]
    IsolatedVertex(usize),
    #[error("graph is not a forest")]
    NotForest,
    #[error("no {level}-cheap set found; this contradicts the existence theorem")]
    NotFound { level: usize, anomalies: Vec<Anomaly> },
}

/// Result of a successful search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheapSearch {
    pub set: CheapSet,
    pub anomalies: Vec<Anomaly>,
}

/// Checks whether `set` is `level`-cheap in `graph`, using exact arithmetic.
pub fn verify_k_cheap(
    graph: &Graph,
    profile: &ZetaProfile,
    set: &VertexSet,
    level: usize,
) -> Result<CheapVerdict, CheapSetError> {
    if set.is_empty() {
        return Err(CheapSetError::EmptySet);
    }
    if !set.is_valid_for(graph.vertex_count()) {
        return Err(CheapSetError::InvalidVertex(set.iter().last().unwrap_or(0)));
    }
    if set.iter().all(|v| graph.degree(v) == 0) {
        return Ok(CheapVerdict::Isolated);
    }
    let mut mark = vec![false; graph.vertex_count()];
    for v in set.iter() {
        mark[v] = true;
    }
    for v in set.iter() {
        let degree = graph.neighbors(v).iter().filter(|&&w| mark[w]).count();
        if degree > level {
            return Ok(CheapVerdict::DegreeExceeds { vertex: v, degree });
        }
    }
    let closed = graph.closed_neighborhood(set);
    let contribution = cheap_cost(profile, closed.iter(), level);
    if contribution > rational::from_usize(set.len()) {
        return Ok(CheapVerdict::ContributionExceeds {
            contribution,
            size: set.len(),
        });
    }
    Ok(CheapVerdict::Cheap { contribution })
}

fn require_isolated_free(graph: &Graph) -> Result<(), CheapSetError> {
    if graph.is_empty() {
        return Err(CheapSetError::EmptyGraph);
    }
    match graph.vertices().find(|&v| graph.degree(v) == 0) {
        Some(v) => Err(CheapSetError::IsolatedVertex(v)),
        None => Ok(()),
    }
}

/// Collects candidates, verifies them, and keeps the anomaly log.
struct Search<'a> {
    graph: &'a Graph,
    profile: &'a ZetaProfile,
    level: usize,
    anomalies: Vec<Anomaly>,
}

impl<'a> Search<'a> {
    fn new(graph: &'a Graph, profile: &'a ZetaProfile, level: usize) -> Self {
        Self {
            graph,
            profile,
            level,
            anomalies: Vec::new(),
        }
    }

    /// Verifies a candidate. Failures are logged as anomalies only when the
    /// pattern's structural hypotheses held (`expected`).
    fn try_candidate(&mut self, kind: CheapKind, vertices: VertexSet, expected: bool) -> Option<CheapSet> {
        let verdict = verify_k_cheap(self.graph, self.profile, &vertices, self.level).ok()?;
        if verdict.is_cheap() {
            return Some(CheapSet {
                vertices,
                level: self.level,
                kind,
            });
        }
        if expected {
            self.anomalies.push(Anomaly {
                pattern: kind,
                candidate: vertices,
                verdict,
            });
        }
        None
    }

    fn finish(self, set: Option<CheapSet>) -> Result<CheapSearch, CheapSetError> {
        match set {
            Some(set) => Ok(CheapSearch {
                set,
                anomalies: self.anomalies,
            }),
            None => Err(CheapSetError::NotFound {
                level: self.level,
                anomalies: self.anomalies,
            }),
        }
    }
}

/// Finds a 2-vertex 1-cheap set: two adjacent cheap vertices (type I), two
/// cheap vertices with a common neighbor (type III), or a cheap vertex `u`
/// with a neighbor `w` that is cheap once all cheap vertices are deleted
/// (type II), searched in that order.
pub fn find_1_cheap(graph: &Graph, profile: &ZetaProfile) -> Result<CheapSearch, CheapSetError> {
    if graph.edge_count() == 0 {
        return Err(CheapSetError::NoEdge);
    }
    require_isolated_free(graph)?;
    let mut search = Search::new(graph, profile, 1);
    let cheap = cheap_vertices_with(graph, profile);
    let mut is_cheap = vec![false; graph.vertex_count()];
    for v in cheap.iter() {
        is_cheap[v] = true;
    }

    for u in cheap.iter() {
        for &w in graph.neighbors(u) {
            if w > u && is_cheap[w] {
                if let Some(found) = search.try_candidate(CheapKind::TypeI, VertexSet::from(vec![u, w]), true) {
                    return search.finish(Some(found));
                }
            }
        }
    }

    for u in cheap.iter() {
        let mut partners = BTreeSet::new();
        for &p in graph.neighbors(u) {
            for &w in graph.neighbors(p) {
                if w > u && is_cheap[w] && !graph.has_edge(u, w) {
                    partners.insert(w);
                }
            }
        }
        for w in partners {
            if let Some(found) = search.try_candidate(CheapKind::TypeIII, VertexSet::from(vec![u, w]), true) {
                return search.finish(Some(found));
            }
        }
    }

    // No two cheap vertices are adjacent or share a neighbor, so every cheap
    // vertex of G ∖ CHEAP(G) has exactly one cheap neighbor in G.
    let (rest, map) = graph.remove_vertices(&cheap);
    let rest_profile = zeta_profile(&rest);
    for w_rest in cheap_vertices_with(&rest, &rest_profile).iter() {
        let w = map.to_old(w_rest);
        let cheap_neighbors: Vec<usize> = graph.neighbors(w).iter().copied().filter(|&x| is_cheap[x]).collect();
        if let [u] = cheap_neighbors[..] {
            if let Some(found) = search.try_candidate(CheapKind::TypeII, VertexSet::from(vec![u, w]), true) {
                return search.finish(Some(found));
            }
        }
    }
    search.finish(None)
}

/// Layer structure shared by the 2-cheap patterns.
struct Layers<'a> {
    graph: &'a Graph,
    decomposition: LayerDecomposition,
}

impl<'a> Layers<'a> {
    fn layer_of(&self, v: usize) -> usize {
        self.decomposition.layer_of[v]
    }

    fn neighbors_in(&self, v: usize, layer: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| self.decomposition.layer_of[w] == layer)
    }

    /// Walks from `v` down through consecutive layers, taking the smallest
    /// neighbor in the layer below each time. Returned bottom-up; `None` if
    /// some step has no neighbor one layer down.
    fn descend(&self, v: usize) -> Option<Vec<usize>> {
        let mut path = vec![v];
        let mut current = v;
        while self.layer_of(current) > 0 {
            let below = self.layer_of(current) - 1;
            current = self.neighbors_in(current, below).next()?;
            path.push(current);
        }
        path.reverse();
        Some(path)
    }

    /// Whether the vertex sets are disjoint and no edge joins them.
    fn separated(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter()
            .all(|&x| !b.contains(&x) && b.iter().all(|&y| !self.graph.has_edge(x, y)))
    }

    /// Whether `deg(v) = ζ(v) + 1` for every vertex above the bottom layer.
    fn tight_above_bottom(&self, profile: &ZetaProfile, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .all(|&v| self.layer_of(v) == 0 || self.graph.degree(v) == profile.get(v) + 1)
    }

    /// Whether every neighbor outside `vertices` has degenerate degree at
    /// least that of the member it is attached to.
    fn dominated_outside(&self, profile: &ZetaProfile, vertices: &[usize]) -> bool {
        vertices.iter().all(|&v| {
            self.graph
                .neighbors(v)
                .iter()
                .all(|&w| vertices.contains(&w) || profile.get(w) >= profile.get(v))
        })
    }

    /// The counting hypotheses shared by the layer-path patterns.
    fn path_counting_holds(&self, profile: &ZetaProfile, vertices: &[usize]) -> bool {
        self.tight_above_bottom(profile, vertices) && self.dominated_outside(profile, vertices)
    }

    /// Whether `path` is an induced path in the order given.
    fn is_induced_path(&self, path: &[usize]) -> bool {
        path.iter().enumerate().all(|(i, &x)| {
            path.iter()
                .enumerate()
                .skip(i + 1)
                .all(|(j, &y)| self.graph.has_edge(x, y) == (j == i + 1))
        })
    }
}

/// Finds a 2-cheap set in an isolated-free graph.
///
/// With `C_1, C_2, ..` the cheap-vertex layers, candidates are tried in this
/// order, each pattern over the whole graph before the next:
///
/// 1. two adjacent vertices of `C_1`;
/// 2. three vertices of `C_1` with a common neighbor;
/// 3. two vertices of `C_1` and a common neighbor in `C_2`;
/// 4. a `C_1` vertex with two neighbors in `C_2`;
/// 5. an induced path `x u w y` with `u w` an edge of `C_2` and `x, y` in
///    `C_1`;
/// 6. a `C_1`-`C_3` edge `u w`, a `C_2` neighbor `y` of `w` and the `C_1`
///    neighbor `u'` of `y`: `{u, y}` when `u = u'`, else `{u, u', y}`;
/// 7. descending layer paths (one neighbor per lower layer): two paths below
///    distinct lower neighbors of a common vertex, one path whose top and a
///    lower member share a neighbor, two paths joined by an edge inside one
///    layer, and finally any single path through three or more layers;
/// 8. the whole vertex set when the maximum degree is at most 2.
pub fn find_2_cheap(graph: &Graph, profile: &ZetaProfile) -> Result<CheapSearch, CheapSetError> {
    require_isolated_free(graph)?;
    let layers = Layers {
        graph,
        decomposition: layer_decomposition(graph),
    };
    let mut search = Search::new(graph, profile, 2);
    let found = two_cheap_patterns(&layers, &mut search);
    search.finish(found)
}

fn two_cheap_patterns(layers: &Layers<'_>, search: &mut Search<'_>) -> Option<CheapSet> {
    let graph = layers.graph;
    let profile = search.profile;
    let c1 = layers.decomposition.layer(0).to_vec();
    let c2 = layers.decomposition.layer(1).to_vec();
    let set = |v: Vec<usize>| VertexSet::from(v);

    // 1
    for &u in &c1 {
        for w in layers.neighbors_in(u, 0).filter(|&w| w > u) {
            if let Some(found) = search.try_candidate(CheapKind::AdjacentPair, set(vec![u, w]), true) {
                return Some(found);
            }
        }
    }
    // 2
    for x in graph.vertices() {
        let below: Vec<usize> = layers.neighbors_in(x, 0).collect();
        if below.len() >= 3 {
            let candidate = set(below[..3].to_vec());
            if let Some(found) = search.try_candidate(CheapKind::TripleCommonNeighbor, candidate, true) {
                return Some(found);
            }
        }
    }
    // 3
    for &p in &c2 {
        let below: Vec<usize> = layers.neighbors_in(p, 0).collect();
        if below.len() >= 2 {
            let candidate = set(vec![below[0], below[1], p]);
            if let Some(found) = search.try_candidate(CheapKind::PairPlusC2Neighbor, candidate, true) {
                return Some(found);
            }
        }
    }
    // 4
    for &u in &c1 {
        let above: Vec<usize> = layers.neighbors_in(u, 1).collect();
        if above.len() >= 2 {
            let candidate = set(vec![u, above[0], above[1]]);
            if let Some(found) = search.try_candidate(CheapKind::C1WithTwoC2, candidate, true) {
                return Some(found);
            }
        }
    }
    // 5
    for &u in &c2 {
        for w in layers.neighbors_in(u, 1).filter(|&w| w > u) {
            let (Some(x), Some(y)) = (layers.neighbors_in(u, 0).next(), layers.neighbors_in(w, 0).next()) else {
                continue;
            };
            if x == y {
                continue;
            }
            let path = [x, u, w, y];
            let expected = layers.is_induced_path(&path) && layers.path_counting_holds(profile, &path);
            if let Some(found) = search.try_candidate(CheapKind::InducedPath4, set(path.to_vec()), expected) {
                return Some(found);
            }
        }
    }
    // 6
    for &u in &c1 {
        for w in layers.neighbors_in(u, 2) {
            let Some(y) = layers.neighbors_in(w, 1).next() else {
                continue;
            };
            let candidate = if graph.has_edge(u, y) {
                set(vec![u, y])
            } else {
                let Some(u2) = layers.neighbors_in(y, 0).next() else {
                    continue;
                };
                set(vec![u, u2, y])
            };
            if let Some(found) = search.try_candidate(CheapKind::C1C3Edge, candidate, true) {
                return Some(found);
            }
        }
    }
    // 7a: two descending paths below distinct lower neighbors of one vertex.
    for x in graph.vertices() {
        let lx = layers.layer_of(x);
        let lower: Vec<usize> = graph
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| layers.layer_of(w) < lx)
            .collect();
        for (i, &a) in lower.iter().enumerate() {
            for &b in &lower[i + 1..] {
                if layers.layer_of(a) == 0 && layers.layer_of(b) == 0 {
                    continue; // pattern 2/3 territory
                }
                let (Some(p), Some(q)) = (layers.descend(a), layers.descend(b)) else {
                    continue;
                };
                let candidate: VertexSet = p.iter().chain(&q).copied().collect();
                let expected = layers.separated(&p, &q)
                    && layers.is_induced_path(&p)
                    && layers.is_induced_path(&q)
                    && layers.path_counting_holds(profile, candidate.as_slice());
                if let Some(found) = search.try_candidate(CheapKind::TwoLayerPaths, candidate, expected) {
                    return Some(found);
                }
            }
        }
    }
    // 7b: one descending path whose top shares an outside neighbor with a
    // lower member of the path.
    for top in graph.vertices().filter(|&v| layers.layer_of(v) >= 1) {
        let Some(path) = layers.descend(top) else {
            continue;
        };
        let shares = graph.neighbors(top).iter().any(|&x| {
            !path.contains(&x)
                && path[..path.len() - 1]
                    .iter()
                    .any(|&p| graph.has_edge(p, x))
        });
        if shares {
            let expected = layers.is_induced_path(&path) && layers.path_counting_holds(profile, &path);
            if let Some(found) = search.try_candidate(CheapKind::LayerPath, set(path), expected) {
                return Some(found);
            }
        }
    }
    // 7c: two descending paths whose tops are adjacent inside one layer.
    for (u, w) in graph.edges() {
        if layers.layer_of(u) != layers.layer_of(w) || layers.layer_of(u) == 0 {
            continue;
        }
        let (Some(p), Some(q)) = (layers.descend(u), layers.descend(w)) else {
            continue;
        };
        let mut bridged = p.clone();
        bridged.extend(q.iter().rev());
        let disjoint = p.iter().all(|x| !q.contains(x));
        let expected = disjoint && layers.is_induced_path(&bridged) && layers.path_counting_holds(profile, &bridged);
        let candidate: VertexSet = bridged.iter().copied().collect();
        if let Some(found) = search.try_candidate(CheapKind::LayerPathPairBridge, candidate, expected) {
            return Some(found);
        }
    }
    // 7d: one descending path through at least three layers.
    for top in graph.vertices().filter(|&v| layers.layer_of(v) >= 2) {
        let Some(path) = layers.descend(top) else {
            continue;
        };
        let top_dominates = path.iter().all(|&v| profile.get(v) <= profile.get(top));
        let expected = top_dominates
            && layers.is_induced_path(&path)
            && layers.path_counting_holds(profile, &path);
        if let Some(found) = search.try_candidate(CheapKind::LayerPath, set(path), expected) {
            return Some(found);
        }
    }
    // 8
    if graph.max_degree().unwrap_or(0) <= 2 {
        let all: VertexSet = graph.vertices().collect();
        if let Some(found) = search.try_candidate(CheapKind::WholePathUnion, all, true) {
            return Some(found);
        }
    }
    None
}

/// Finds a `level`-cheap set in an isolated-free forest.
///
/// Works inside the tree containing vertex 0. Leaves are deleted one at a
/// time (smallest id first) until at most `level + 1` vertices remain; that
/// remainder is the starting set. Leaves are then restored in reverse, with
/// `w` the restored leaf's neighbor:
///
/// * `w ∉ S`: keep `S`;
/// * `w ∈ S` with fewer than `level` neighbors in `S`: add the leaf;
/// * otherwise swap a neighbor `p ∈ S` of `w` with degree at least 2 for the
///   leaf, or keep `S` when every such neighbor is a leaf.
pub fn find_k_cheap_forest(graph: &Graph, profile: &ZetaProfile, level: usize) -> Result<CheapSearch, CheapSetError> {
    require_isolated_free(graph)?;
    if !graph.is_forest() {
        return Err(CheapSetError::NotForest);
    }
    let tree = graph
        .components()
        .into_iter()
        .next()
        .expect("nonempty graph has a component");
    let n = graph.vertex_count();
    let mut alive = vec![false; n];
    for v in tree.iter() {
        alive[v] = true;
    }
    let mut degree: Vec<usize> = (0..n).map(|v| if alive[v] { graph.degree(v) } else { 0 }).collect();
    let mut leaves: BTreeSet<usize> = tree.iter().filter(|&v| degree[v] == 1).collect();
    let mut remaining = tree.len();
    // (leaf, its neighbor at deletion time)
    let mut deletions = Vec::new();
    while remaining > level + 1 {
        let u = leaves.pop_first().expect("a tree with two or more vertices has a leaf");
        let w = graph
            .neighbors(u)
            .iter()
            .copied()
            .find(|&w| alive[w])
            .expect("a leaf has one live neighbor");
        alive[u] = false;
        remaining -= 1;
        degree[u] = 0;
        degree[w] -= 1;
        if degree[w] == 1 {
            leaves.insert(w);
        } else if degree[w] == 0 {
            leaves.remove(&w);
        }
        deletions.push((u, w));
    }

    let mut in_set = alive.clone();
    let mut set_degree: Vec<usize> = (0..n)
        .map(|v| {
            if in_set[v] {
                graph.neighbors(v).iter().filter(|&&w| in_set[w]).count()
            } else {
                0
            }
        })
        .collect();
    for &(u, w) in deletions.iter().rev() {
        alive[u] = true;
        degree[u] = 1;
        degree[w] += 1;
        if !in_set[w] {
            continue;
        }
        if set_degree[w] < level {
            in_set[u] = true;
            set_degree[u] = 1;
            set_degree[w] += 1;
            continue;
        }
        let swap = graph
            .neighbors(w)
            .iter()
            .copied()
            .find(|&p| in_set[p] && degree[p] >= 2);
        if let Some(p) = swap {
            in_set[p] = false;
            for &x in graph.neighbors(p) {
                if in_set[x] {
                    set_degree[x] -= 1;
                }
            }
            set_degree[p] = 0;
            in_set[u] = true;
            set_degree[u] = 1;
            set_degree[w] += 1;
        }
    }

    let mut search = Search::new(graph, profile, level);
    let candidate = VertexSet::from_mask(&in_set);
    if let Some(found) = search.try_candidate(CheapKind::ForestLeaf, candidate, true) {
        return search.finish(Some(found));
    }
    let fallback = forest_subtree_candidate(graph, &tree, level);
    let found = search.try_candidate(CheapKind::ForestLeaf, fallback, true);
    search.finish(found)
}

/// A `level`-cheap set in one tree by a subtree argument: root the tree at
/// its smallest vertex and take the lowest vertex `x` whose subtree has at
/// least `level + 1` vertices. Every child subtree then has at most `level`
/// vertices. If `x` has at most `level` children the subtree of `x` works
/// (its only outside neighbor is the parent of `x`); otherwise `level + 1`
/// child subtrees do (their only outside neighbor is `x`). A tree with at
/// most `level` vertices is taken whole.
fn forest_subtree_candidate(graph: &Graph, tree: &VertexSet, level: usize) -> VertexSet {
    let root = tree.first().expect("nonempty tree");
    let n = graph.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    let mut cursor = 0;
    parent[root] = root;
    while cursor < order.len() {
        let v = order[cursor];
        cursor += 1;
        for &w in graph.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != root {
            size[parent[v]] += size[v];
        }
    }
    let subtree = |top: usize| -> Vec<usize> {
        let mut out = vec![top];
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            i += 1;
            out.extend(graph.neighbors(v).iter().copied().filter(|&w| w != parent[v] || v == root).filter(|&w| parent[w] == v && w != root));
        }
        out
    };
    let Some(&x) = order.iter().rev().find(|&&v| size[v] > level) else {
        return tree.clone();
    };
    let children: Vec<usize> = graph
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&w| parent[w] == x && w != root)
        .collect();
    if children.len() <= level {
        subtree(x).into()
    } else {
        children[..=level].iter().flat_map(|&c| subtree(c)).collect()
    }
}
