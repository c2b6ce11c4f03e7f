//! Degenerate degrees, cheap vertices and the cheap-vertex layer
//! decomposition.
//!
//! The degenerate degree `ζ(v)` of a vertex is the largest minimum degree of
//! any subgraph containing `v`, i.e. its core number. Along a smallest-last
//! order `v_1..v_n` with residual degrees `d_i` it satisfies
//! `ζ(v_i) = max(d_1, .., d_i)`, which gives a linear-time algorithm.
//!
//! A vertex `u` is *cheap* when `ζ(u) = deg(u)` and no neighbor has a smaller
//! degenerate degree. Every minimum-degree vertex is cheap.

use crate::graph::{smallest_last_order, Graph, SmallestLastResult, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaProfile {
    /// `zeta[v]` is the degenerate degree of vertex `v`.
    pub zeta: Vec<usize>,
    /// `max_v ζ(v)`, zero for the empty graph.
    pub degeneracy: usize,
    pub order: SmallestLastResult,
}

impl ZetaProfile {
    pub fn of(graph: &Graph) -> Self {
        zeta_profile(graph)
    }

    pub fn get(&self, v: usize) -> usize {
        self.zeta[v]
    }

    pub fn len(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeta.is_empty()
    }

    /// Whether `v` is cheap in `graph`, which must be the graph this profile
    /// was computed for.
    pub fn is_cheap(&self, graph: &Graph, v: usize) -> bool {
        let z = self.zeta[v];
        z == graph.degree(v) && graph.neighbors(v).iter().all(|&w| self.zeta[w] >= z)
    }

    pub fn sum(&self) -> usize {
        self.zeta.iter().sum()
    }
}

/// Degenerate degree of every vertex via the prefix maximum of residual
/// degrees along a smallest-last order. `O(|V| + |E|)`.
pub fn zeta_profile(graph: &Graph) -> ZetaProfile {
    let order = smallest_last_order(graph);
    let mut zeta = vec![0; graph.vertex_count()];
    let mut running = 0;
    for (&v, &d) in order.order.iter().zip(&order.residual_degrees) {
        running = running.max(d);
        zeta[v] = running;
    }
    ZetaProfile {
        zeta,
        degeneracy: running,
        order,
    }
}

/// Core numbers by repeated threshold peeling: for `d = 1, 2, ..` delete
/// vertices of remaining degree below `d` until none are left. A vertex's
/// value is the last threshold it survived.
///
/// This shares no code with [`zeta_profile`] and exists to cross-check it.
pub fn zeta_oracle(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = graph.vertices().map(|v| graph.degree(v)).collect();
    let mut core = vec![0; n];
    let mut remaining = n;
    let mut threshold = 1;
    let mut queue = Vec::new();
    while remaining > 0 {
        queue.extend((0..n).filter(|&v| alive[v] && degree[v] < threshold));
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            remaining -= 1;
            core[v] = threshold - 1;
            for &w in graph.neighbors(v) {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] < threshold {
                        queue.push(w);
                    }
                }
            }
        }
        threshold += 1;
    }
    core
}

/// True iff all degenerate degrees coincide, equivalently iff the
/// degeneracy equals the minimum degree.
pub fn is_zeta_regular(graph: &Graph) -> bool {
    let profile = zeta_profile(graph);
    profile.zeta.windows(2).all(|w| w[0] == w[1])
}

/// All cheap vertices of `graph`. `O(|V| + |E|)`.
pub fn cheap_vertices(graph: &Graph) -> VertexSet {
    cheap_vertices_with(graph, &zeta_profile(graph))
}

/// Cheap vertices using a precomputed profile of `graph`.
pub fn cheap_vertices_with(graph: &Graph, profile: &ZetaProfile) -> VertexSet {
    graph.vertices().filter(|&v| profile.is_cheap(graph, v)).collect()
}

/// Partition of the vertex set into cheap-vertex strata: `layers[0]` is the
/// set of cheap vertices of the graph, `layers[i]` the cheap vertices of the
/// graph with `layers[..i]` deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub layers: Vec<VertexSet>,
    /// Zero-based index of the layer holding each vertex.
    pub layer_of: Vec<usize>,
}

impl LayerDecomposition {
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Members of layer `index`, or an empty slice past the last layer.
    pub fn layer(&self, index: usize) -> &[usize] {
        self.layers.get(index).map_or(&[], |l| l.as_slice())
    }
}

/// Strips cheap vertices repeatedly, recomputing degenerate degrees of each
/// residual graph from scratch.
pub fn layer_decomposition(graph: &Graph) -> LayerDecomposition {
    let n = graph.vertex_count();
    let mut layer_of = vec![usize::MAX; n];
    let mut layers = Vec::new();
    let mut current = graph.clone();
    let mut to_original: Vec<usize> = (0..n).collect();
    while !current.is_empty() {
        let cheap = cheap_vertices(&current);
        debug_assert!(!cheap.is_empty(), "a nonempty graph has a minimum-degree vertex");
        let layer: VertexSet = cheap.iter().map(|v| to_original[v]).collect();
        for v in layer.iter() {
            layer_of[v] = layers.len();
        }
        layers.push(layer);
        let (rest, map) = current.remove_vertices(&cheap);
        to_original = map.new_to_old.iter().map(|&v| to_original[v]).collect();
        current = rest;
    }
    LayerDecomposition { layers, layer_of }
}
