//! Bitset-backed simple graphs and the constructions everything else builds on.
//!
//! A [`Graph`] stores one adjacency bitset row per vertex. The baseline
//! order cap is one machine word (64 vertices); rows live in a `Vec`, so
//! widening each row to a word array is a constant-factor change and no
//! algorithm below assumes anything beyond row access.

use std::fmt;

use thiserror::Error;

mod canonical;
mod graph6;

pub use graph6::Graph6Error;

/// Largest supported vertex count (one `u64` row per vertex).
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("order {order} exceeds the supported maximum of {max} vertices")]
    OrderOverflow { order: usize, max: usize },
}

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A set of vertices of some [`Graph`], stored as a bitmask.
///
/// The set itself does not know the graph's order; operations that need the
/// invariant "only bits below n are set" check it at the point of use.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        VertexSet(mask_below(n))
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_ORDER);
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest vertex in the set, if any.
    pub fn smallest(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Iterates the members in ascending order.
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the bits of a mask.
#[derive(Clone)]
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// Undirected simple graph on at most [`MAX_ORDER`] vertices.
///
/// Invariants held by every constructor and mutator: the adjacency rows are
/// symmetric, the diagonal is empty (no loops), and no row has bits at or
/// above the order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderOverflow { order: n, max: MAX_ORDER });
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let full = mask_below(n);
        for v in 0..n {
            g.rows[v] = full & !(1u64 << v);
        }
        Ok(g)
    }

    /// Path P_n on vertices 0-1-2-…-(n-1).
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        Ok(g)
    }

    /// Cycle C_n (requires n ≥ 3).
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n)?;
        g.add_edge(n - 1, 0);
        Ok(g)
    }

    /// Complete bipartite graph K_{s,t}; the first `s` vertices form one side.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self, GraphError> {
        join(&Graph::empty(s)?, &Graph::empty(t)?)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows_unchecked(n: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        let g = Graph { n, rows };
        debug_assert!(g.invariants_hold());
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub(crate) fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & (1u64 << v) != 0
    }

    /// Adds the edge `uv`. Panics on loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not representable");
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        self.rows[u] |= 1u64 << v;
        self.rows[v] |= 1u64 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        self.rows[u] &= !(1u64 << v);
        self.rows[v] &= !(1u64 << u);
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            BitIter(self.rows[u] & !mask_below(u + 1)).map(move |v| (u, v))
        })
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| {
            BitIter(!self.rows[u] & mask_below(n) & !mask_below(u + 1)).map(move |v| (u, v))
        })
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph { n: self.n, rows: vec![0; self.n] };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `set`, relabelled compactly in ascending order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let verts = set.to_vec();
        assert!(verts.iter().all(|&v| v < self.n), "vertex set out of range");
        let mut g = Graph { n: verts.len(), rows: vec![0; verts.len()] };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// The graph with the vertices in `set` deleted.
    pub fn delete_vertices(&self, set: VertexSet) -> Graph {
        self.induced(self.vertex_set().difference(set))
    }

    /// Appends one vertex adjacent to `neighborhood` (bits over the old vertices).
    pub fn extended_with(&self, neighborhood: VertexSet) -> Result<Graph, GraphError> {
        if self.n + 1 > MAX_ORDER {
            return Err(GraphError::OrderOverflow { order: self.n + 1, max: MAX_ORDER });
        }
        debug_assert!(neighborhood.is_subset_of(self.vertex_set()));
        let mut g = Graph { n: self.n + 1, rows: self.rows.clone() };
        g.rows.push(0);
        for v in neighborhood.iter() {
            g.add_edge(v, self.n);
        }
        Ok(g)
    }

    /// Connected components, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut comps = Vec::new();
        for v in 0..self.n {
            if seen.contains(v) {
                continue;
            }
            let mut comp = VertexSet::singleton(v);
            let mut frontier = VertexSet::singleton(v);
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for u in frontier.iter() {
                    next = next.union(self.neighbors(u));
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            seen = seen.union(comp);
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Canonical representative of the isomorphism class.
    ///
    /// Two graphs have equal canonical forms exactly when they are
    /// isomorphic; the map is idempotent.
    pub fn canonical_form(&self) -> Graph {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic_to(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// Parses one graph6 line.
    pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
        graph6::decode_graph6(text)
    }

    /// Parses one sparse6 line (read-only support for external generators).
    pub fn from_sparse6(text: &str) -> Result<Graph, Graph6Error> {
        graph6::decode_sparse6(text)
    }

    /// Parses a line in either format, dispatching on the `:` prefix.
    pub fn from_graph_line(text: &str) -> Result<Graph, Graph6Error> {
        graph6::decode_line(text)
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode_graph6(self)
    }

    pub(crate) fn invariants_hold(&self) -> bool {
        let full = mask_below(self.n);
        self.rows.len() == self.n
            && self.vertices().all(|v| {
                self.rows[v] & !full == 0
                    && self.rows[v] & (1u64 << v) == 0
                    && self.vertices().all(|u| self.has_edge(u, v) == self.has_edge(v, u))
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Disjoint union of two graphs; `h`'s vertices are shifted past `g`'s.
pub fn union(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.n + h.n;
    if n > MAX_ORDER {
        return Err(GraphError::OrderOverflow { order: n, max: MAX_ORDER });
    }
    let mut rows = g.rows.clone();
    rows.extend(h.rows.iter().map(|r| r << g.n));
    Ok(Graph { n, rows })
}

/// Join: the disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let mut out = union(g, h)?;
    let left = mask_below(g.n);
    let right = mask_below(out.n) & !left;
    for v in 0..g.n {
        out.rows[v] |= right;
    }
    for v in g.n..out.n {
        out.rows[v] |= left;
    }
    Ok(out)
}

/// Generalized book B_{s,t}: an s-clique joined to t independent vertices.
///
/// The clique occupies vertices `0..s`; every clique vertex dominates the
/// whole graph.
pub fn build_book(s: usize, t: usize) -> Result<Graph, GraphError> {
    join(&Graph::complete(s)?, &Graph::empty(t)?)
}
