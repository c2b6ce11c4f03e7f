//! Immutable simple undirected graphs and the ordering primitives built on them.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
}

/// A simple undirected graph on the vertices `0..n`.
///
/// Adjacency is stored in compressed rows: the sorted, duplicate-free
/// neighbors of `v` are `targets[offsets[v]..offsets[v + 1]]`. The structure
/// is never mutated after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges (in either
    /// orientation) are merged; self-loops and out-of-range ids are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            pairs.push((u, v));
        }
        let mut count = vec![0; n + 1];
        for &(u, v) in &pairs {
            count[u + 1] += 1;
            count[v + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut cursor = count.clone();
        let mut targets = vec![0; count[n]];
        for &(u, v) in &pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut write = 0;
        for v in 0..n {
            let row = &mut targets[count[v]..count[v + 1]];
            row.sort_unstable();
            let mut last = None;
            for i in count[v]..count[v + 1] {
                let w = targets[i];
                if last != Some(w) {
                    targets[write] = w;
                    write += 1;
                    last = Some(w);
                }
            }
            offsets.push(write);
        }
        targets.truncate(write);
        Ok(Self { offsets, targets })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph from already symmetric, sorted, loop-free lists.
    fn from_sorted_rows(rows: impl Iterator<Item = impl Iterator<Item = usize>>) -> Self {
        let mut offsets = vec![0];
        let mut targets = Vec::new();
        for row in rows {
            targets.extend(row);
            offsets.push(targets.len());
        }
        Self { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).max()
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        self.vertices().filter(|&v| self.degree(v) == 0).collect()
    }

    /// `N(S)`: vertices adjacent to some member of `set`, excluding `set`
    /// itself.
    pub fn open_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut mark = vec![false; self.vertex_count()];
        for v in set.iter() {
            for &w in self.neighbors(v) {
                mark[w] = true;
            }
        }
        for v in set.iter() {
            mark[v] = false;
        }
        VertexSet::from_mask(&mark)
    }

    /// `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut mark = vec![false; self.vertex_count()];
        for v in set.iter() {
            mark[v] = true;
            for &w in self.neighbors(v) {
                mark[w] = true;
            }
        }
        VertexSet::from_mask(&mark)
    }

    /// The subgraph induced by `V ∖ removed`, with vertices renumbered
    /// densely in increasing id order.
    pub fn remove_vertices(&self, removed: &VertexSet) -> (Graph, VertexMap) {
        let mut keep = vec![true; self.vertex_count()];
        for v in removed.iter() {
            keep[v] = false;
        }
        self.induced_by_mask(&keep)
    }

    /// The subgraph induced by `kept`, renumbered densely.
    pub fn induced_subgraph(&self, kept: &VertexSet) -> (Graph, VertexMap) {
        let mut keep = vec![false; self.vertex_count()];
        for v in kept.iter() {
            keep[v] = true;
        }
        self.induced_by_mask(&keep)
    }

    fn induced_by_mask(&self, keep: &[bool]) -> (Graph, VertexMap) {
        let mut old_to_new = vec![None; self.vertex_count()];
        let mut new_to_old = Vec::new();
        for v in self.vertices().filter(|&v| keep[v]) {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
        let graph = Graph::from_sorted_rows(
            new_to_old
                .iter()
                .map(|&v| self.neighbors(v).iter().filter_map(|&w| old_to_new[w])),
        );
        (
            graph,
            VertexMap {
                new_to_old,
                old_to_new,
            },
        )
    }

    /// Maximum degree of the subgraph induced by `set`.
    pub fn induced_max_degree(&self, set: &VertexSet) -> usize {
        let mut mark = vec![false; self.vertex_count()];
        for v in set.iter() {
            mark[v] = true;
        }
        set.iter()
            .map(|v| self.neighbors(v).iter().filter(|&&w| mark[w]).count())
            .max()
            .unwrap_or(0)
    }

    /// Whether no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        self.induced_max_degree(set) == 0
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(VertexSet::from_iter(members));
        }
        out
    }

    /// A forest has `m = n - c` edges where `c` counts components.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.vertex_count()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Translation between the ids of a graph and one of its induced subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub new_to_old: Vec<usize>,
    pub old_to_new: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        Self {
            new_to_old: (0..n).collect(),
            old_to_new: (0..n).map(Some).collect(),
        }
    }

    pub fn to_old(&self, v: usize) -> usize {
        self.new_to_old[v]
    }

    pub fn to_new(&self, v: usize) -> Option<usize> {
        self.old_to_new[v]
    }

    pub fn set_to_old(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.new_to_old[v]).collect()
    }

    /// `self` maps `mid -> outer`, `inner` maps `sub -> mid`; the result maps
    /// `sub -> outer`.
    pub fn compose(&self, inner: &VertexMap) -> VertexMap {
        let new_to_old: Vec<usize> = inner.new_to_old.iter().map(|&v| self.new_to_old[v]).collect();
        let mut old_to_new = vec![None; self.old_to_new.len()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        VertexMap {
            new_to_old,
            old_to_new,
        }
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &m)| m.then_some(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// True when every id is below `n`.
    pub fn is_valid_for(&self, n: usize) -> bool {
        self.0.last().is_none_or(|&v| v < n)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(members: Vec<usize>) -> Self {
        members.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A smallest-last vertex order together with the residual degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallestLastResult {
    /// `order[i]` is the vertex removed at step `i`.
    pub order: Vec<usize>,
    /// `residual_degrees[i]` is the degree of `order[i]` in the subgraph
    /// induced by `order[i..]`.
    pub residual_degrees: Vec<usize>,
}

const NIL: u32 = u32::MAX;

/// Bucket links and current degree of one vertex, packed so the peeling loop
/// touches a single cache line per neighbor.
#[derive(Clone, Copy)]
struct Slot {
    next: u32,
    prev: u32,
    degree: u32,
}

/// Doubly linked vertex lists, one per degree value. A removed vertex has
/// degree `NIL`.
struct DegreeBuckets {
    head: Vec<u32>,
    tail: Vec<u32>,
    slots: Vec<Slot>,
}

impl DegreeBuckets {
    fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        assert!(n < NIL as usize, "vertex ids must fit in 32 bits");
        let max_degree = graph.max_degree().unwrap_or(0);
        let mut buckets = Self {
            head: vec![NIL; max_degree + 1],
            tail: vec![NIL; max_degree + 1],
            slots: vec![Slot { next: NIL, prev: NIL, degree: 0 }; n],
        };
        for v in 0..n as u32 {
            buckets.slots[v as usize].degree = graph.degree(v as usize) as u32;
            buckets.push_back(v);
        }
        buckets
    }

    fn push_back(&mut self, v: u32) {
        let d = self.slots[v as usize].degree as usize;
        let tail = self.tail[d];
        let slot = &mut self.slots[v as usize];
        slot.prev = tail;
        slot.next = NIL;
        match tail {
            NIL => self.head[d] = v,
            t => self.slots[t as usize].next = v,
        }
        self.tail[d] = v;
    }

    fn unlink(&mut self, v: u32) {
        let Slot { next, prev, degree } = self.slots[v as usize];
        let d = degree as usize;
        match prev {
            NIL => self.head[d] = next,
            p => self.slots[p as usize].next = next,
        }
        match next {
            NIL => self.tail[d] = prev,
            x => self.slots[x as usize].prev = prev,
        }
    }

    fn front(&self, d: usize) -> Option<u32> {
        (self.head[d] != NIL).then_some(self.head[d])
    }
}

/// Smallest-last ordering in `O(|V| + |E|)` with linked degree buckets.
///
/// Buckets are filled in id order and a vertex whose degree drops is appended
/// to the tail of its new bucket; the head of the lowest non-empty bucket is
/// taken at each step. The lowest candidate bucket drops by at most one per
/// step, so the total scan cost is linear. The result is a deterministic
/// function of the graph.
pub fn smallest_last_order(graph: &Graph) -> SmallestLastResult {
    let n = graph.vertex_count();
    let mut buckets = DegreeBuckets::new(graph);
    let mut order = Vec::with_capacity(n);
    let mut residual_degrees = Vec::with_capacity(n);
    let mut low = 0;
    for _ in 0..n {
        let v = loop {
            match buckets.front(low) {
                Some(v) => break v,
                None => low += 1,
            }
        };
        buckets.unlink(v);
        buckets.slots[v as usize].degree = NIL;
        order.push(v as usize);
        residual_degrees.push(low);
        for &w in graph.neighbors(v as usize) {
            let w = w as u32;
            if buckets.slots[w as usize].degree == NIL {
                continue;
            }
            buckets.unlink(w);
            buckets.slots[w as usize].degree -= 1;
            buckets.push_back(w);
        }
        low = low.saturating_sub(1);
    }
    SmallestLastResult {
        order,
        residual_degrees,
    }
}
