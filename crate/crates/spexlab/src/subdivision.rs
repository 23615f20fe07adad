//! Exact topological containment: subdivision models and witnesses,
//! minimal models, family freeness, saturation, and the reduced
//! induced-subgraph families used by the post-extremal characterization.
//!
//! Containment is decided by exhaustive backtracking: pattern vertices are
//! placed in descending-degree order, candidate images are filtered by
//! degree, and every pattern edge whose endpoints are placed is realized
//! immediately by internally disjoint host paths enumerated shortest
//! first. The search backtracks across both path choices and branch
//! assignments, so a `None` answer is a proof of absence at these sizes.

use std::ops::ControlFlow;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("member of order {order} is smaller than the requested subgraph size offset {gamma}")]
    SizeUnderflow { order: usize, gamma: i64 },
}

/// Reasons a claimed model fails validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("branch map has {got} entries for a pattern of order {want}")]
    BranchMapSize { got: usize, want: usize },
    #[error("branch map image {0} is outside the host")]
    BranchMapRange(usize),
    #[error("branch map is not injective")]
    BranchMapNotInjective,
    #[error("expected one path per pattern edge ({want}), got {got}")]
    PathCount { got: usize, want: usize },
    #[error("path {0} does not run between the images of its pattern edge")]
    EndpointMismatch(usize),
    #[error("path {0} is not a path of the host")]
    NotAPath(usize),
    #[error("an internal vertex of path {0} is a branch vertex")]
    InternalHitsBranch(usize),
    #[error("paths {0} and {1} share an internal vertex")]
    InternallyOverlapping(usize, usize),
    #[error("path {0} skips a host edge between its endpoints")]
    NotNormalized(usize),
}

/// Witness that the host contains a subdivision of the pattern: an
/// injective branch map plus one host path per pattern edge.
///
/// Pattern edges are indexed in lexicographic order (as yielded by
/// [`Graph::edges`]); `paths[k]` runs from the image of the smaller
/// endpoint to the image of the larger one. Whenever the two images are
/// adjacent in the host the path is exactly that edge.
#[derive(Debug, Clone)]
pub struct SubdivisionModel {
    pub pattern: Graph,
    pub host: Graph,
    /// `phi[v]` is the host image of pattern vertex `v`.
    pub phi: Vec<usize>,
    /// One vertex sequence per pattern edge.
    pub paths: Vec<Vec<usize>>,
}

impl SubdivisionModel {
    /// Total vertex count of the path system, endpoints included.
    pub fn total_size(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Every host vertex used by the model (branch images and interiors).
    pub fn vertex_set(&self) -> VertexSet {
        let mut set: VertexSet = self.phi.iter().copied().collect();
        for p in &self.paths {
            for &v in p {
                set.insert(v);
            }
        }
        set
    }

    /// Checks every structural invariant of the witness.
    pub fn validate(&self) -> Result<(), ModelError> {
        let h = self.pattern.order();
        if self.phi.len() != h {
            return Err(ModelError::BranchMapSize { got: self.phi.len(), want: h });
        }
        if self.phi.iter().any(|&v| v >= self.host.order()) {
            return Err(ModelError::BranchMapRange(
                *self.phi.iter().find(|&&v| v >= self.host.order()).unwrap(),
            ));
        }
        let branch: VertexSet = self.phi.iter().copied().collect();
        if branch.len() != h {
            return Err(ModelError::BranchMapNotInjective);
        }
        let edges: Vec<(usize, usize)> = self.pattern.edges().collect();
        if self.paths.len() != edges.len() {
            return Err(ModelError::PathCount { got: self.paths.len(), want: edges.len() });
        }
        let mut interiors: Vec<VertexSet> = Vec::with_capacity(edges.len());
        for (k, ((a, b), path)) in edges.iter().zip(&self.paths).enumerate() {
            if path.len() < 2
                || path.first() != Some(&self.phi[*a])
                || path.last() != Some(&self.phi[*b])
            {
                return Err(ModelError::EndpointMismatch(k));
            }
            let distinct: VertexSet = path.iter().copied().collect();
            if distinct.len() != path.len()
                || path.windows(2).any(|w| !self.host.has_edge(w[0], w[1]))
            {
                return Err(ModelError::NotAPath(k));
            }
            if self.host.has_edge(self.phi[*a], self.phi[*b]) && path.len() != 2 {
                return Err(ModelError::NotNormalized(k));
            }
            let interior: VertexSet =
                path[1..path.len() - 1].iter().copied().collect();
            if !interior.intersection(branch).is_empty() {
                return Err(ModelError::InternalHitsBranch(k));
            }
            for (j, other) in interiors.iter().enumerate() {
                if !interior.intersection(*other).is_empty() {
                    return Err(ModelError::InternallyOverlapping(j, k));
                }
            }
            interiors.push(interior);
        }
        Ok(())
    }
}

impl Serialize for SubdivisionModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SubdivisionModel", 4)?;
        s.serialize_field("pattern", &self.pattern.to_graph6())?;
        s.serialize_field("host", &self.host.to_graph6())?;
        s.serialize_field("phi", &self.phi)?;
        s.serialize_field("paths", &self.paths)?;
        s.end()
    }
}

const UNSET: usize = usize::MAX;

struct Engine<'a, F: FnMut(SubdivisionModel) -> ControlFlow<()>> {
    host: &'a Graph,
    pattern: &'a Graph,
    /// Pattern vertices in placement order: descending degree, then index.
    order: Vec<usize>,
    edges: Vec<(usize, usize)>,
    /// Edge indices that become realizable at each placement step.
    step_edges: Vec<Vec<usize>>,
    /// Cap on the total path-system size, when minimizing.
    budget: Option<usize>,
    phi: Vec<usize>,
    used: VertexSet,
    paths: Vec<Vec<usize>>,
    realized_size: usize,
    edges_left: usize,
    emit: F,
}

impl<'a, F: FnMut(SubdivisionModel) -> ControlFlow<()>> Engine<'a, F> {
    fn new(host: &'a Graph, pattern: &'a Graph, budget: Option<usize>, emit: F) -> Self {
        let mut order: Vec<usize> = pattern.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
        let mut step_of = vec![0usize; pattern.order()];
        for (step, &v) in order.iter().enumerate() {
            step_of[v] = step;
        }
        let edges: Vec<(usize, usize)> = pattern.edges().collect();
        let mut step_edges = vec![Vec::new(); pattern.order()];
        for (k, &(a, b)) in edges.iter().enumerate() {
            step_edges[step_of[a].max(step_of[b])].push(k);
        }
        Engine {
            host,
            pattern,
            order,
            edges_left: edges.len(),
            paths: vec![Vec::new(); edges.len()],
            edges,
            step_edges,
            budget,
            phi: vec![UNSET; pattern.order()],
            used: VertexSet::EMPTY,
            realized_size: 0,
            emit,
        }
    }

    fn run(&mut self) -> ControlFlow<()> {
        self.place(0)
    }

    fn place(&mut self, step: usize) -> ControlFlow<()> {
        if let Some(budget) = self.budget {
            // Every unrealized edge needs at least its two endpoints.
            if self.realized_size + 2 * self.edges_left > budget {
                return ControlFlow::Continue(());
            }
        }
        if step == self.order.len() {
            debug_assert_eq!(self.edges_left, 0);
            let model = SubdivisionModel {
                pattern: self.pattern.clone(),
                host: self.host.clone(),
                phi: self.phi.clone(),
                paths: self.paths.clone(),
            };
            debug_assert_eq!(model.validate(), Ok(()));
            return (self.emit)(model);
        }
        let pv = self.order[step];
        let need = self.pattern.degree(pv);
        for c in self.host.vertices() {
            if self.used.contains(c) || self.host.degree(c) < need {
                continue;
            }
            self.phi[pv] = c;
            self.used.insert(c);
            self.realize_from(step, 0)?;
            self.used.remove(c);
            self.phi[pv] = UNSET;
        }
        ControlFlow::Continue(())
    }

    fn realize_from(&mut self, step: usize, next: usize) -> ControlFlow<()> {
        if next == self.step_edges[step].len() {
            return self.place(step + 1);
        }
        let k = self.step_edges[step][next];
        let (pa, pb) = self.edges[k];
        let (a, b) = (self.phi[pa], self.phi[pb]);
        if self.host.has_edge(a, b) {
            // Adjacent images take the direct edge; any model using a longer
            // path here can be rerouted through it, so nothing is lost.
            self.paths[k].extend([a, b]);
            self.realized_size += 2;
            self.edges_left -= 1;
            let r = self.realize_from(step, next + 1);
            self.edges_left += 1;
            self.realized_size -= 2;
            self.paths[k].clear();
            return r;
        }
        let free = self.host.vertex_set().difference(self.used).len();
        let mut max_interior = free;
        if let Some(budget) = self.budget {
            let other_edges = 2 * (self.edges_left - 1);
            let slack = budget
                .saturating_sub(self.realized_size + other_edges + 2);
            max_interior = max_interior.min(slack);
        }
        for interior in 1..=max_interior {
            self.paths[k].push(a);
            self.grow_path(step, next, k, a, b, interior)?;
            self.paths[k].clear();
        }
        ControlFlow::Continue(())
    }

    fn grow_path(
        &mut self,
        step: usize,
        next: usize,
        k: usize,
        at: usize,
        goal: usize,
        remaining: usize,
    ) -> ControlFlow<()> {
        if remaining == 0 {
            if !self.host.has_edge(at, goal) {
                return ControlFlow::Continue(());
            }
            self.paths[k].push(goal);
            self.realized_size += self.paths[k].len();
            self.edges_left -= 1;
            let r = self.realize_from(step, next + 1);
            self.edges_left += 1;
            self.realized_size -= self.paths[k].len();
            self.paths[k].pop();
            return r;
        }
        for w in self.host.neighbors(at).difference(self.used).iter() {
            self.used.insert(w);
            self.paths[k].push(w);
            let r = self.grow_path(step, next, k, w, goal, remaining - 1);
            self.paths[k].pop();
            self.used.remove(w);
            r?;
        }
        ControlFlow::Continue(())
    }
}

/// Runs the exhaustive model search, feeding every found model to `emit`
/// until it breaks. `budget` caps the total path-system size.
fn search_models<F: FnMut(SubdivisionModel) -> ControlFlow<()>>(
    host: &Graph,
    pattern: &Graph,
    budget: Option<usize>,
    emit: F,
) {
    if pattern.order() > host.order() {
        return;
    }
    let _ = Engine::new(host, pattern, budget, emit).run();
}

/// Decides whether the host contains a subdivision of the pattern,
/// returning a validated witness when it does.
///
/// The empty pattern is contained in every host via the empty model.
pub fn contains_subdivision(host: &Graph, pattern: &Graph) -> Option<SubdivisionModel> {
    let mut found = None;
    search_models(host, pattern, None, |model| {
        found = Some(model);
        ControlFlow::Break(())
    });
    found
}

/// Among all models, returns one of minimum total path-system size; ties
/// prefer the model covering the most vertices of `prefer`, then the first
/// witness in the deterministic search order.
pub fn find_minimal_subdivision(
    host: &Graph,
    pattern: &Graph,
    prefer: VertexSet,
) -> Option<SubdivisionModel> {
    contains_subdivision(host, pattern)?;
    let m = pattern.edge_count();
    // Total size is 2m plus the interiors, which fit inside the host.
    for budget in 2 * m..=2 * m + host.order() {
        let mut best: Option<(usize, SubdivisionModel)> = None;
        search_models(host, pattern, Some(budget), |model| {
            debug_assert_eq!(model.total_size(), budget);
            let overlap = model.vertex_set().intersection(prefer).len();
            if best.as_ref().is_none_or(|(top, _)| overlap > *top) {
                best = Some((overlap, model));
            }
            ControlFlow::Continue(())
        });
        if let Some((_, model)) = best {
            return Some(model);
        }
    }
    unreachable!("a model exists, so some budget admits it")
}

/// True when the host contains no subdivision of any family member.
pub fn is_family_subdivision_free(g: &Graph, family: &[Graph]) -> bool {
    family.iter().all(|h| contains_subdivision(g, h).is_none())
}

/// True when `g` is family-subdivision-free and adding any missing edge
/// creates a subdivision of some member. Non-edges across components
/// count like any other, so the definition stays literal on disconnected
/// graphs.
pub fn is_subdivision_saturated(g: &Graph, family: &[Graph]) -> bool {
    if !is_family_subdivision_free(g, family) {
        return false;
    }
    g.non_edges().all(|(u, v)| {
        let mut extended = g.clone();
        extended.add_edge(u, v);
        family.iter().any(|h| contains_subdivision(&extended, h).is_some())
    })
}

/// The deduplicated union, over the family, of the irreducible induced
/// subgraphs on `|H| − gamma_family` vertices of each member.
///
/// A subgraph of that size is irreducible when no other induced subgraph
/// of the same member and size embeds into it as a proper (spanning)
/// subgraph. Results are canonical forms in a deterministic order.
pub fn gamma_family_subgraphs(
    family: &[Graph],
    gamma_family: i64,
) -> Result<Vec<Graph>, SubdivisionError> {
    let mut out = std::collections::BTreeSet::new();
    for h in family {
        let size = h.order() as i64 - gamma_family;
        if size < 0 {
            return Err(SubdivisionError::SizeUnderflow {
                order: h.order(),
                gamma: gamma_family,
            });
        }
        let size = size as usize;
        if size > h.order() {
            continue;
        }
        let mut classes = std::collections::BTreeSet::new();
        let mut subsets = Vec::new();
        push_subsets(h.order(), size, 0, VertexSet::EMPTY, &mut subsets);
        for set in subsets {
            classes.insert(h.induced(set).canonical_form());
        }
        for candidate in &classes {
            let reducible = classes.iter().any(|other| {
                other != candidate
                    && other.edge_count() < candidate.edge_count()
                    && spanning_subgraph_embeds(other, candidate)
            });
            if !reducible {
                out.insert(candidate.clone());
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn push_subsets(n: usize, size: usize, start: usize, acc: VertexSet, out: &mut Vec<VertexSet>) {
    if size == 0 {
        out.push(acc);
        return;
    }
    for v in start..=n - size {
        let mut next = acc;
        next.insert(v);
        push_subsets(n, size - 1, v + 1, next, out);
    }
}

/// Whether `sub` maps onto the equal-order `sup` with every `sub` edge
/// landing on a `sup` edge (subgraph isomorphism, not induced).
fn spanning_subgraph_embeds(sub: &Graph, sup: &Graph) -> bool {
    debug_assert_eq!(sub.order(), sup.order());
    let mut order: Vec<usize> = sub.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(sub.degree(v)), v));
    let mut image = vec![UNSET; sub.order()];
    let mut used = VertexSet::EMPTY;
    embed(sub, sup, &order, 0, &mut image, &mut used)
}

fn embed(
    sub: &Graph,
    sup: &Graph,
    order: &[usize],
    step: usize,
    image: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if step == order.len() {
        return true;
    }
    let v = order[step];
    for c in sup.vertices() {
        if used.contains(c) || sup.degree(c) < sub.degree(v) {
            continue;
        }
        let ok = sub
            .neighbors(v)
            .iter()
            .filter(|&u| image[u] != UNSET)
            .all(|u| sup.has_edge(image[u], c));
        if !ok {
            continue;
        }
        image[v] = c;
        used.insert(c);
        if embed(sub, sup, order, step + 1, image, used) {
            return true;
        }
        used.remove(c);
        image[v] = UNSET;
    }
    false
}
