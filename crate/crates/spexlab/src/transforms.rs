//! Dominator-partition rewrites: the L / S′ / S″ split around a candidate
//! clique, the three neighborhood surgeries built on it, minimum-degree
//! peeling, and long-path search inside a vertex set.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("vertex set contains a vertex outside the graph")]
    SetOutOfRange,
    #[error("partition does not belong to this graph")]
    PartitionMismatch,
    #[error("vertex {0} is not in S'")]
    NotInSPrime(usize),
    #[error("vertex {0} is not in L")]
    NotInL(usize),
    #[error("the designated missing edge {0}-{1} is already present")]
    EdgeAlreadyPresent(usize, usize),
    #[error("the supplied vertex sequence is not a path of the graph")]
    NotAPath,
    #[error("the supplied path leaves S''")]
    PathLeavesSDoublePrime,
}

/// Split of the vertex set around a dominating candidate `L`: `S″` holds
/// the vertices outside `L` adjacent to all of `L`, `S′` the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub l: VertexSet,
    pub s_prime: VertexSet,
    pub s_double_prime: VertexSet,
    n: usize,
}

impl Partition {
    /// Everything outside `L`.
    pub fn s(&self) -> VertexSet {
        self.s_prime.union(self.s_double_prime)
    }

    fn covers(&self, g: &Graph) -> bool {
        self.n == g.order()
            && self.l.union(self.s()).bits() == g.vertex_set().bits()
            && self.l.intersection(self.s_prime).is_empty()
            && self.l.intersection(self.s_double_prime).is_empty()
            && self.s_prime.intersection(self.s_double_prime).is_empty()
    }
}

/// Partitions `V(g)` into `L`, `S″ = {v ∉ L : L ⊆ N(v)}` and `S′` the rest.
///
/// An empty `L` dominates vacuously, so then `S″` is everything.
pub fn partition_by_dominators(g: &Graph, l: VertexSet) -> Result<Partition, TransformError> {
    if !l.is_subset_of(g.vertex_set()) {
        return Err(TransformError::SetOutOfRange);
    }
    let mut s_double_prime = VertexSet::EMPTY;
    let mut s_prime = VertexSet::EMPTY;
    for v in g.vertex_set().difference(l).iter() {
        if l.is_subset_of(g.neighbors(v)) {
            s_double_prime.insert(v);
        } else {
            s_prime.insert(v);
        }
    }
    Ok(Partition { l, s_prime, s_double_prime, n: g.order() })
}

fn check_partition(g: &Graph, p: &Partition) -> Result<(), TransformError> {
    let fresh = partition_by_dominators(g, p.l)?;
    if fresh != *p {
        return Err(TransformError::PartitionMismatch);
    }
    Ok(())
}

/// Rewires every `S′` vertex so its neighborhood becomes exactly `L`;
/// all other adjacencies stay.
pub fn transform_g0(g: &Graph, p: &Partition) -> Result<Graph, TransformError> {
    check_partition(g, p)?;
    let mut out = g.clone();
    for u in p.s_prime.iter() {
        for w in g.neighbors(u).iter() {
            out.remove_edge(u, w);
        }
        for v in p.l.iter() {
            out.add_edge(u, v);
        }
    }
    Ok(out)
}

/// Strips all `S′`–`S` edges and completes every `S′` vertex to `L`,
/// except that the single edge `u_k`–`v_jk` (missing in `g`) stays missing.
pub fn transform_g1(
    g: &Graph,
    p: &Partition,
    u_k: usize,
    v_jk: usize,
) -> Result<Graph, TransformError> {
    check_partition(g, p)?;
    if !p.s_prime.contains(u_k) {
        return Err(TransformError::NotInSPrime(u_k));
    }
    if !p.l.contains(v_jk) {
        return Err(TransformError::NotInL(v_jk));
    }
    if g.has_edge(u_k, v_jk) {
        return Err(TransformError::EdgeAlreadyPresent(u_k, v_jk));
    }
    let s = p.s();
    let mut out = g.clone();
    for u in p.s_prime.iter() {
        for w in g.neighbors(u).intersection(s).iter() {
            out.remove_edge(u, w);
        }
        for v in p.l.difference(g.neighbors(u)).iter() {
            out.add_edge(u, v);
        }
    }
    out.remove_edge(u_k, v_jk);
    Ok(out)
}

/// Restores `u_k`–`v_jk` and deletes every `S″`-internal edge that touches
/// the path `p0` without lying on it, making `p0` a linear path of the
/// `S″`-induced subgraph. Edges from `p0` to `L` are untouched.
pub fn transform_g2(
    g1: &Graph,
    p: &Partition,
    u_k: usize,
    v_jk: usize,
    p0: &[usize],
) -> Result<Graph, TransformError> {
    if p.n != g1.order() || !p.covers(g1) {
        return Err(TransformError::PartitionMismatch);
    }
    if !p.s_prime.contains(u_k) {
        return Err(TransformError::NotInSPrime(u_k));
    }
    if !p.l.contains(v_jk) {
        return Err(TransformError::NotInL(v_jk));
    }
    if g1.has_edge(u_k, v_jk) {
        return Err(TransformError::EdgeAlreadyPresent(u_k, v_jk));
    }
    let on_path: VertexSet = p0.iter().copied().collect();
    if !on_path.is_subset_of(p.s_double_prime) {
        return Err(TransformError::PathLeavesSDoublePrime);
    }
    if on_path.len() != p0.len() || p0.is_empty() {
        return Err(TransformError::NotAPath);
    }
    if p0.windows(2).any(|w| !g1.has_edge(w[0], w[1])) {
        return Err(TransformError::NotAPath);
    }
    let mut path_edges = Graph::empty(g1.order()).expect("same order");
    for w in p0.windows(2) {
        path_edges.add_edge(w[0], w[1]);
    }
    let mut out = g1.clone();
    out.add_edge(u_k, v_jk);
    for &w in p0 {
        let doomed = out
            .neighbors(w)
            .intersection(p.s_double_prime)
            .difference(path_edges.neighbors(w));
        for x in doomed.iter() {
            out.remove_edge(w, x);
        }
    }
    Ok(out)
}

/// A vertex sequence whose internal vertices have degree exactly 2 in the
/// ambient graph. The endpoints may coincide, closing a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPath(pub Vec<usize>);

impl LinearPath {
    /// Validates the sequence inside the subgraph induced by `region`
    /// (degrees are counted within `region` only). Pass the full vertex
    /// set for the plain ambient-graph reading.
    pub fn validate_within(&self, g: &Graph, region: VertexSet) -> Result<(), TransformError> {
        let seq = &self.0;
        if seq.is_empty() {
            return Err(TransformError::NotAPath);
        }
        let on: VertexSet = seq.iter().copied().collect();
        if !on.is_subset_of(region) || !region.is_subset_of(g.vertex_set()) {
            return Err(TransformError::PathLeavesSDoublePrime);
        }
        let closes_cycle = seq.len() > 2 && seq.first() == seq.last();
        let distinct_needed = if closes_cycle { seq.len() - 1 } else { seq.len() };
        if on.len() != distinct_needed {
            return Err(TransformError::NotAPath);
        }
        if seq.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return Err(TransformError::NotAPath);
        }
        if seq.len() > 2 {
            for &w in &seq[1..seq.len() - 1] {
                if g.neighbors(w).intersection(region).len() != 2 {
                    return Err(TransformError::NotAPath);
                }
            }
        }
        Ok(())
    }
}

/// Orders `s` so that each vertex has minimum degree in the subgraph
/// induced by the vertices not yet peeled; ties go to the lowest index.
pub fn peel_min_degree(g: &Graph, s: VertexSet) -> Vec<usize> {
    let mut remaining = s;
    let mut order = Vec::with_capacity(s.len());
    while !remaining.is_empty() {
        let v = remaining
            .iter()
            .min_by_key(|&v| (g.neighbors(v).intersection(remaining).len(), v))
            .expect("remaining is non-empty");
        order.push(v);
        remaining.remove(v);
    }
    order
}

/// Outcome of [`find_longest_path_within`]: the best path found and
/// whether the search enumerated every simple path (it stops early once
/// the target is reached).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPathSearch {
    pub path: Vec<usize>,
    pub exhaustive: bool,
}

impl LongestPathSearch {
    pub fn meets(&self, target_len: usize) -> bool {
        self.path.len() >= target_len
    }
}

/// Backtracking search for a path of order at least `target_len` inside
/// `s`. If none exists the returned path is a genuine longest path of the
/// induced subgraph and `exhaustive` is true.
pub fn find_longest_path_within(g: &Graph, s: VertexSet, target_len: usize) -> LongestPathSearch {
    let mut best: Vec<usize> = Vec::new();
    if target_len == 0 {
        return LongestPathSearch { path: best, exhaustive: false };
    }
    let mut stack: Vec<usize> = Vec::new();
    let mut exhaustive = true;
    'outer: for start in s.iter() {
        stack.push(start);
        let mut visited = VertexSet::singleton(start);
        if extend_path(g, s, &mut stack, &mut visited, &mut best, target_len) {
            exhaustive = false;
            break 'outer;
        }
        stack.pop();
    }
    LongestPathSearch { path: best, exhaustive }
}

/// Returns true when the target was reached and the search should stop.
fn extend_path(
    g: &Graph,
    s: VertexSet,
    stack: &mut Vec<usize>,
    visited: &mut VertexSet,
    best: &mut Vec<usize>,
    target: usize,
) -> bool {
    if stack.len() > best.len() {
        *best = stack.clone();
        if best.len() >= target {
            return true;
        }
    }
    let last = *stack.last().expect("stack is non-empty");
    for w in g.neighbors(last).intersection(s).difference(*visited).iter() {
        stack.push(w);
        visited.insert(w);
        if extend_path(g, s, stack, visited, best, target) {
            return true;
        }
        visited.remove(w);
        stack.pop();
    }
    false
}

/// Vertex of `set` with the smallest weight entry, ties to the lowest
/// index. Used to pick the peeled vertex with minimal Perron weight.
pub fn min_entry_vertex(set: VertexSet, weights: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in set.iter() {
        debug_assert!(v < weights.len());
        if best.is_none_or(|b| weights[v] < weights[b]) {
            best = Some(v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_book;

    #[test]
    fn book_partition_has_empty_s_prime() {
        let b = build_book(3, 5).unwrap();
        let l = VertexSet::full(3);
        let p = partition_by_dominators(&b, l).unwrap();
        assert!(p.s_prime.is_empty());
        assert_eq!(p.s_double_prime, b.vertex_set().difference(l));
    }

    #[test]
    fn removing_a_cross_edge_moves_the_vertex_to_s_prime() {
        let mut b = build_book(3, 5).unwrap();
        b.remove_edge(0, 4);
        let p = partition_by_dominators(&b, VertexSet::full(3)).unwrap();
        assert_eq!(p.s_prime.to_vec(), vec![4]);
    }

    #[test]
    fn empty_l_dominates_vacuously() {
        let g = Graph::cycle(5).unwrap();
        let p = partition_by_dominators(&g, VertexSet::EMPTY).unwrap();
        assert!(p.s_prime.is_empty());
        assert_eq!(p.s_double_prime, g.vertex_set());
    }

    #[test]
    fn g0_with_empty_s_prime_is_identity() {
        let b = build_book(2, 4).unwrap();
        let p = partition_by_dominators(&b, VertexSet::full(2)).unwrap();
        assert_eq!(transform_g0(&b, &p).unwrap(), b);
    }

    #[test]
    fn g0_rewires_neighborhood_to_l() {
        // A 7-vertex graph where vertex 6 misses L = {0,1} partially and
        // carries assorted edges into S.
        let mut g = build_book(2, 5).unwrap();
        g.remove_edge(1, 6);
        g.add_edge(5, 6);
        g.add_edge(4, 6);
        let p = partition_by_dominators(&g, VertexSet::full(2)).unwrap();
        assert!(p.s_prime.contains(6));
        let out = transform_g0(&g, &p).unwrap();
        assert_eq!(out.neighbors(6), VertexSet::full(2));
        // Untouched vertices keep their adjacency.
        assert_eq!(out.neighbors(2), g.neighbors(2));
    }

    #[test]
    fn g0_edge_count_identity() {
        let mut g = build_book(2, 5).unwrap();
        g.remove_edge(0, 3);
        g.remove_edge(1, 4);
        g.add_edge(3, 4);
        let p = partition_by_dominators(&g, VertexSet::full(2)).unwrap();
        let out = transform_g0(&g, &p).unwrap();
        let degree_sum: usize = p.s_prime.iter().map(|u| g.degree(u)).sum();
        let internal = g.induced(p.s_prime).edge_count();
        let expected =
            g.edge_count() - degree_sum + internal + p.s_prime.len() * p.l.len();
        assert_eq!(out.edge_count(), expected);
    }

    #[test]
    fn g1_degrees_match_the_construction() {
        let mut g = build_book(2, 5).unwrap();
        g.remove_edge(0, 3);
        g.remove_edge(0, 4);
        g.add_edge(3, 4);
        let p = partition_by_dominators(&g, VertexSet::full(2)).unwrap();
        assert_eq!(p.s_prime.to_vec(), vec![3, 4]);
        let out = transform_g1(&g, &p, 3, 0).unwrap();
        // u_k = 3 misses exactly the designated edge.
        assert_eq!(out.degree(3), p.l.len() - 1);
        assert_eq!(out.neighbors(4), p.l);
        assert!(out.edge_count() <= g.edge_count() + p.l.len() * p.s_prime.len());
        // Rejects a v_jk already adjacent to u_k.
        assert!(matches!(
            transform_g1(&g, &p, 3, 1),
            Err(TransformError::EdgeAlreadyPresent(3, 1))
        ));
    }

    #[test]
    fn g2_restores_the_edge_and_linearizes_the_path() {
        // Host with a non-linear S'' path 2-3-4-5: chords at interior and
        // endpoint vertices, plus a pair fully off the path.
        let mut g = build_book(2, 7).unwrap();
        g.remove_edge(0, 8);
        for (u, v) in [(2, 3), (3, 4), (4, 5), (2, 4), (3, 6), (5, 6), (6, 7)] {
            g.add_edge(u, v);
        }
        let p = partition_by_dominators(&g, VertexSet::full(2)).unwrap();
        assert_eq!(p.s_prime.to_vec(), vec![8]);
        let g1 = transform_g1(&g, &p, 8, 0).unwrap();
        let p0 = [2usize, 3, 4, 5];
        let g2 = transform_g2(&g1, &p, 8, 0, &p0).unwrap();
        assert!(g2.has_edge(8, 0));
        // Interior vertices now have S''-degree exactly 2.
        LinearPath(p0.to_vec())
            .validate_within(&g2, p.s_double_prime)
            .unwrap();
        // Off-path chords touching the path go, even at its endpoints.
        assert!(!g2.has_edge(2, 4) && !g2.has_edge(3, 6) && !g2.has_edge(5, 6));
        // S'' pairs fully off the path keep their mutual edges.
        assert!(g2.has_edge(6, 7));
        // Edges from the path to L are untouched.
        assert!(g2.has_edge(3, 0) && g2.has_edge(3, 1));
    }

    #[test]
    fn g2_with_already_linear_path_only_adds_the_edge() {
        let mut g = build_book(2, 4).unwrap();
        g.remove_edge(0, 5);
        g.add_edge(2, 3);
        g.add_edge(3, 4);
        let p = partition_by_dominators(&g, VertexSet::full(2)).unwrap();
        let g1 = transform_g1(&g, &p, 5, 0).unwrap();
        let g2 = transform_g2(&g1, &p, 5, 0, &[2, 3, 4]).unwrap();
        let mut expected = g1.clone();
        expected.add_edge(5, 0);
        assert_eq!(g2, expected);
    }

    #[test]
    fn g2_rejects_bad_paths() {
        let mut g = build_book(2, 4).unwrap();
        g.remove_edge(0, 5);
        let p = partition_by_dominators(&g, VertexSet::full(2)).unwrap();
        let g1 = transform_g1(&g, &p, 5, 0).unwrap();
        assert!(matches!(
            transform_g2(&g1, &p, 5, 0, &[2, 4]),
            Err(TransformError::NotAPath)
        ));
        assert!(matches!(
            transform_g2(&g1, &p, 5, 0, &[0, 1]),
            Err(TransformError::PathLeavesSDoublePrime)
        ));
    }

    #[test]
    fn peeling_orders() {
        let g = Graph::path(4).unwrap();
        let order = peel_min_degree(&g, g.vertex_set());
        assert_eq!(order[0], 0); // an endpoint goes first
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(peel_min_degree(&k4, k4.vertex_set()), vec![0, 1, 2, 3]);
    }

    #[test]
    fn peeling_respects_the_average_degree_bound() {
        let g = build_book(2, 5).unwrap();
        let mut remaining = g.vertex_set();
        for v in peel_min_degree(&g, remaining) {
            let e = g.induced(remaining).edge_count() as f64;
            let deg = g.neighbors(v).intersection(remaining).len() as f64;
            assert!(deg <= 2.0 * e / remaining.len() as f64 + 1e-12);
            remaining.remove(v);
        }
    }

    #[test]
    fn longest_path_in_cycles_and_stars() {
        let c6 = Graph::cycle(6).unwrap();
        let res = find_longest_path_within(&c6, c6.vertex_set(), 6);
        assert!(res.meets(6));

        let star = build_book(1, 5).unwrap();
        let res = find_longest_path_within(&star, star.vertex_set(), 4);
        assert!(!res.meets(4));
        assert!(res.exhaustive);
        assert_eq!(res.path.len(), 3);
    }

    #[test]
    fn longest_path_respects_the_region() {
        let b = build_book(2, 4).unwrap();
        // Inside the independent side there are no edges at all.
        let res = find_longest_path_within(&b, b.vertex_set().difference(VertexSet::full(2)), 2);
        assert_eq!(res.path.len(), 1);
        assert!(res.exhaustive);
    }

    #[test]
    fn min_entry_vertex_breaks_ties_low() {
        let weights = [0.5, 0.25, 0.25, 0.9];
        let set: VertexSet = [0usize, 1, 2, 3].into_iter().collect();
        assert_eq!(min_entry_vertex(set, &weights), Some(1));
        assert_eq!(min_entry_vertex(VertexSet::EMPTY, &weights), None);
    }
}
