//! Exact brute-force oracles for small graphs: `α_k`, degenerate degrees by
//! subset maximisation, membership in the equality family of the `Z_1`
//! bound, and exhaustive enumeration of labeled graphs.
//!
//! Everything here is exponential and guarded by vertex-count limits.

use thiserror::Error;

use crate::degeneracy::zeta_profile;
use crate::graph::{Graph, VertexSet};

/// Largest graph accepted by the `α_0` branch-and-bound solver.
pub const ALPHA0_LIMIT: usize = 40;
/// Largest graph accepted by the `α_k` (`k >= 1`) search.
pub const ALPHA_K_LIMIT: usize = 20;
/// Largest graph accepted by subset-enumeration oracles.
pub const SUBSET_LIMIT: usize = 22;
/// Largest vertex count for [`enumerate_small_graphs`].
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

fn check_limit(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// An optimal `k`-independent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaResult {
    pub size: usize,
    pub witness: VertexSet,
}

fn adjacency_masks(graph: &Graph) -> Vec<u64> {
    graph
        .vertices()
        .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn mask_to_set(mask: u64) -> VertexSet {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// `α_k(G)` with a witness. `k = 0` uses branch and bound (up to
/// [`ALPHA0_LIMIT`] vertices), `k >= 1` a degree-constrained backtracking
/// search (up to [`ALPHA_K_LIMIT`]).
pub fn exact_alpha_k(graph: &Graph, k: usize) -> Result<AlphaResult, OracleError> {
    if k == 0 {
        alpha0_branch_and_bound(graph)
    } else {
        alpha_k_search(graph, k)
    }
}

/// Maximum independent set by branch and bound: branch on a vertex of
/// maximum degree among the candidates, bound by a greedy clique cover.
pub fn alpha0_branch_and_bound(graph: &Graph) -> Result<AlphaResult, OracleError> {
    check_limit(graph.vertex_count(), ALPHA0_LIMIT)?;
    let adj = adjacency_masks(graph);
    let all = if graph.vertex_count() == 64 { u64::MAX } else { (1u64 << graph.vertex_count()) - 1 };
    let mut best = (0, 0u64);
    mis_branch(&adj, all, 0, &mut best);
    Ok(AlphaResult {
        size: best.0,
        witness: mask_to_set(best.1),
    })
}

fn mis_branch(adj: &[u64], candidates: u64, chosen: u64, best: &mut (usize, u64)) {
    let size = chosen.count_ones() as usize;
    if candidates == 0 {
        if size > best.0 {
            *best = (size, chosen);
        }
        return;
    }
    if size + clique_cover_size(adj, candidates) <= best.0 {
        return;
    }
    let mut pivot = candidates.trailing_zeros() as usize;
    let mut pivot_degree = 0;
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & candidates).count_ones();
        if d > pivot_degree {
            pivot = v;
            pivot_degree = d;
        }
    }
    if pivot_degree == 0 {
        let total = size + candidates.count_ones() as usize;
        if total > best.0 {
            *best = (total, chosen | candidates);
        }
        return;
    }
    let bit = 1u64 << pivot;
    mis_branch(adj, candidates & !bit & !adj[pivot], chosen | bit, best);
    mis_branch(adj, candidates & !bit, chosen, best);
}

/// Number of cliques in a greedy clique cover of `candidates`; an upper
/// bound on their independence number.
fn clique_cover_size(adj: &[u64], mut candidates: u64) -> usize {
    let mut cliques = 0;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= !(1u64 << v);
        let mut common = adj[v] & candidates;
        while common != 0 {
            let w = common.trailing_zeros() as usize;
            candidates &= !(1u64 << w);
            common &= adj[w] & !(1u64 << w);
        }
        cliques += 1;
    }
    cliques
}

/// Maximum independent set by checking every vertex subset. Independent of
/// the branch-and-bound solver and used to cross-check it.
pub fn alpha0_enumeration(graph: &Graph) -> Result<AlphaResult, OracleError> {
    check_limit(graph.vertex_count(), SUBSET_LIMIT)?;
    let n = graph.vertex_count();
    let mut best = (0usize, 0u64);
    for mask in 0u64..1 << n {
        let size = mask.count_ones() as usize;
        if size <= best.0 {
            continue;
        }
        if graph.edges().all(|(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0) {
            best = (size, mask);
        }
    }
    Ok(AlphaResult {
        size: best.0,
        witness: mask_to_set(best.1),
    })
}

/// Maximum `k`-independent set by include-first backtracking over vertices in
/// id order, pruned by the number of undecided vertices.
pub fn alpha_k_search(graph: &Graph, k: usize) -> Result<AlphaResult, OracleError> {
    check_limit(graph.vertex_count(), ALPHA_K_LIMIT)?;
    let mut search = KSearch {
        graph,
        k,
        inside: vec![0; graph.vertex_count()],
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    Ok(AlphaResult {
        size: search.best.len(),
        witness: search.best.into_iter().collect(),
    })
}

struct KSearch<'a> {
    graph: &'a Graph,
    k: usize,
    /// Number of chosen neighbors of each vertex.
    inside: Vec<usize>,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl KSearch<'_> {
    fn run(&mut self, next: usize) {
        let n = self.graph.vertex_count();
        if self.chosen.len() + (n - next) <= self.best.len() {
            return;
        }
        if next == n {
            self.best = self.chosen.clone();
            return;
        }
        let v = next;
        let fits = self.inside[v] <= self.k
            && self
                .graph
                .neighbors(v)
                .iter()
                .all(|&w| self.inside[w] < self.k || !self.chosen.contains(&w));
        if fits {
            self.chosen.push(v);
            for &w in self.graph.neighbors(v) {
                self.inside[w] += 1;
            }
            self.run(next + 1);
            for &w in self.graph.neighbors(v) {
                self.inside[w] -= 1;
            }
            self.chosen.pop();
        }
        self.run(next + 1);
    }
}

/// Degenerate degrees straight from the definition: the maximum of `δ(G[S])`
/// over all vertex subsets `S` containing the vertex.
pub fn zeta_exhaustive(graph: &Graph) -> Result<Vec<usize>, OracleError> {
    let n = graph.vertex_count();
    check_limit(n, SUBSET_LIMIT)?;
    let adj = adjacency_masks(graph);
    let mut zeta = vec![0; n];
    for mask in 1u64..1 << n {
        let mut min_degree = u32::MAX;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            min_degree = min_degree.min((adj[v] & mask).count_ones());
        }
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            zeta[v] = zeta[v].max(min_degree as usize);
        }
    }
    Ok(zeta)
}

/// Recognises the graphs for which `α(G) = Z_1(G)`: disjoint cliques plus
/// extra edges that leave every degenerate degree unchanged.
///
/// Repeatedly takes a minimum-degree vertex `u` (smallest id), requires
/// `N[u]` to be a clique whose members all have degenerate degree `deg(u)`,
/// and deletes `N[u]`, requiring the remaining degenerate degrees to be
/// unchanged. Returns the cliques removed, or `None` if some step fails.
pub fn family_f_witness(graph: &Graph) -> Option<Vec<VertexSet>> {
    let mut cliques = Vec::new();
    let mut current = graph.clone();
    let mut to_original: Vec<usize> = graph.vertices().collect();
    let mut profile = zeta_profile(&current);
    while !current.is_empty() {
        let min_degree = current.min_degree()?;
        let u = current.vertices().find(|&v| current.degree(v) == min_degree)?;
        let clique = current.closed_neighborhood(&VertexSet::singleton(u));
        let is_clique = clique
            .iter()
            .all(|a| clique.iter().all(|b| a == b || current.has_edge(a, b)));
        if !is_clique || clique.iter().any(|v| profile.get(v) != min_degree) {
            return None;
        }
        let (rest, map) = current.remove_vertices(&clique);
        let rest_profile = zeta_profile(&rest);
        if rest.vertices().any(|v| rest_profile.get(v) != profile.get(map.to_old(v))) {
            return None;
        }
        cliques.push(clique.iter().map(|v| to_original[v]).collect());
        to_original = map.new_to_old.iter().map(|&v| to_original[v]).collect();
        current = rest;
        profile = rest_profile;
    }
    Some(cliques)
}

pub fn is_in_family_f(graph: &Graph) -> bool {
    family_f_witness(graph).is_some()
}

/// Membership straight from the definition: searches every partition of the
/// vertices into cliques where each vertex of a clique on `s` vertices has
/// degenerate degree `s - 1`. Exponential; up to [`SUBSET_LIMIT`] vertices.
pub fn family_f_exhaustive(graph: &Graph) -> Result<Option<Vec<VertexSet>>, OracleError> {
    let n = graph.vertex_count();
    check_limit(n, SUBSET_LIMIT)?;
    let zeta = zeta_profile(graph).zeta;
    let adj = adjacency_masks(graph);
    let mut parts = Vec::new();
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    Ok(clique_partition(&adj, &zeta, all, &mut parts).then(|| parts.into_iter().map(mask_to_set).collect()))
}

fn clique_partition(adj: &[u64], zeta: &[usize], left: u64, parts: &mut Vec<u64>) -> bool {
    if left == 0 {
        return true;
    }
    let v = left.trailing_zeros() as usize;
    let want = zeta[v];
    let candidates: Vec<usize> = (0..adj.len())
        .filter(|&w| (adj[v] & left) >> w & 1 == 1 && zeta[w] == want)
        .collect();
    // Choose `want` more members among the candidates, all pairwise adjacent.
    fn extend(adj: &[u64], zeta: &[usize], candidates: &[usize], need: usize, clique: u64, left: u64, parts: &mut Vec<u64>) -> bool {
        if need == 0 {
            parts.push(clique);
            if clique_partition(adj, zeta, left & !clique, parts) {
                return true;
            }
            parts.pop();
            return false;
        }
        for (i, &w) in candidates.iter().enumerate() {
            let inside = clique & !(1u64 << w);
            if adj[w] & inside == inside
                && extend(adj, zeta, &candidates[i + 1..], need - 1, clique | 1 << w, left, parts)
            {
                return true;
            }
        }
        false
    }
    candidates.len() >= want && extend(adj, zeta, &candidates, want, 1 << v, left, parts)
}

/// All labeled simple graphs on `n` vertices, one per edge subset, in order
/// of the subset bitmask over pairs `(0,1), (0,2), .., (n-2,n-1)`.
pub fn enumerate_small_graphs(n: usize) -> Result<SmallGraphs, OracleError> {
    check_limit(n, ENUMERATION_LIMIT)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(SmallGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
    })
}

#[derive(Debug, Clone)]
pub struct SmallGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl SmallGraphs {
    /// Number of graphs in the full sequence.
    pub fn total(&self) -> u64 {
        self.end
    }

    /// The graph with edge-subset bitmask `mask`.
    pub fn graph(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(self.n, edges).expect("enumerated pairs are valid")
    }
}

impl Iterator for SmallGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let graph = self.graph(self.next);
        self.next += 1;
        Some(graph)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SmallGraphs {}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(exact_alpha_k(&cycle(5), 0).unwrap().size, 2);
        assert_eq!(exact_alpha_k(&path(6), 1).unwrap().size, 4);
        assert_eq!(exact_alpha_k(&path(6), 2).unwrap().size, 6);
        assert_eq!(exact_alpha_k(&cycle(6), 1).unwrap().size, 4);
        assert_eq!(exact_alpha_k(&cycle(7), 1).unwrap().size, 4);
        assert_eq!(exact_alpha_k(&complete(4), 2).unwrap().size, 3);
        assert_eq!(exact_alpha_k(&Graph::empty(0), 0).unwrap().size, 0);
        let big = Graph::empty(ALPHA_K_LIMIT + 1);
        assert_eq!(
            exact_alpha_k(&big, 1),
            Err(OracleError::TooLarge { n: 21, limit: ALPHA_K_LIMIT })
        );
    }

    #[test]
    fn witnesses_are_valid() {
        let g = cycle(7);
        let r = exact_alpha_k(&g, 0).unwrap();
        assert_eq!(r.size, 3);
        assert!(g.is_independent(&r.witness));
        let r = exact_alpha_k(&g, 1).unwrap();
        assert_eq!(r.witness.len(), r.size);
        assert!(g.induced_max_degree(&r.witness) <= 1);
    }

    #[test]
    fn alpha_oracles_agree_on_small_graphs() {
        for g in enumerate_small_graphs(5).unwrap() {
            assert_eq!(
                alpha0_branch_and_bound(&g).unwrap().size,
                alpha0_enumeration(&g).unwrap().size
            );
        }
    }

    #[test]
    fn exhaustive_zeta_matches_profile() {
        for g in enumerate_small_graphs(5).unwrap() {
            assert_eq!(zeta_exhaustive(&g).unwrap(), zeta_profile(&g).zeta);
        }
    }

    #[test]
    fn family_f_examples() {
        let cliques = Graph::new(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        assert_eq!(family_f_witness(&cliques).unwrap().len(), 2);
        let bridged = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert!(is_in_family_f(&bridged));
        assert!(!is_in_family_f(&cycle(5)));
        assert!(is_in_family_f(&Graph::empty(3)));
        assert!(!is_in_family_f(&path(3)));
    }

    #[test]
    fn exhaustive_family_f() {
        let bridged = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert_eq!(family_f_exhaustive(&bridged).unwrap().unwrap().len(), 2);
        assert!(family_f_exhaustive(&cycle(5)).unwrap().is_none());
        assert!(family_f_exhaustive(&path(3)).unwrap().is_none());
        assert_eq!(family_f_exhaustive(&Graph::empty(0)).unwrap(), Some(vec![]));
    }

    /// A 5-cycle plus a vertex joined to three consecutive cycle vertices:
    /// every degenerate degree is 2 and `α = Z_1 = 2`, yet vertex 1 lies in
    /// no triangle, so no partition into triangles exists.
    #[test]
    fn equality_outside_family() {
        let g = Graph::new(6, [(0, 3), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(zeta_profile(&g).zeta, vec![2; 6]);
        assert_eq!(exact_alpha_k(&g, 0).unwrap().size, 2);
        assert!(!is_in_family_f(&g));
        assert!(family_f_exhaustive(&g).unwrap().is_none());
    }

    #[test]
    fn recognizer_matches_definition() {
        for n in 1..=6 {
            for g in enumerate_small_graphs(n).unwrap() {
                assert_eq!(is_in_family_f(&g), family_f_exhaustive(&g).unwrap().is_some(), "{g:?}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_small_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_small_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_small_graphs(4).unwrap().count(), 64);
        assert!(enumerate_small_graphs(9).is_err());
    }
}
