//! Isomorph-free enumeration and the exhaustive extremal search: for a
//! pattern family and order n, scan every isomorphism class, keep the
//! subdivision-free graphs of maximum spectral radius, and attach the
//! spanning-book / saturation verdicts to the report.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{build_book, Graph, GraphError, VertexSet};
use crate::invariants::{family_profile, InvariantError};
use crate::spectral::{spectral_radius, SpectralError, DEFAULT_TOL, TIE_TOL};
use crate::subdivision::{
    gamma_family_subgraphs, is_family_subdivision_free, is_subdivision_saturated,
    SubdivisionError,
};

/// Built-in enumeration stops here; larger orders come from a corpus file.
pub const ENUMERATION_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("built-in enumeration caps at {cap} vertices, got {n}; supply a corpus instead")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("the family invariant gamma is {0}, but the extremal theory needs at least 1")]
    GammaTooSmall(i64),
    #[error("order {n} does not exceed the clique size {gamma}")]
    OrderTooSmall { n: usize, gamma: usize },
    #[error("corpus graph has order {found}, expected {expected}")]
    CorpusOrderMismatch { expected: usize, found: usize },
    #[error("no family-subdivision-free graph was scanned")]
    NoFreeGraphs,
    #[error("witness set is not a spanning-book clique of the graph")]
    InvalidWitness,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Every isomorphism class on `n` vertices, optionally restricted to
/// connected graphs, in a deterministic order.
///
/// Classes are grown level by level: every (n−1)-vertex class is extended
/// by one vertex with every possible neighborhood and the children are
/// deduplicated by canonical form, which keeps exactly one representative
/// per class.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, SearchError> {
    if n > ENUMERATION_CAP {
        return Err(SearchError::OrderTooLarge { n, cap: ENUMERATION_CAP });
    }
    let mut level = vec![Graph::empty(n.min(1)).expect("tiny order")];
    for k in 2..=n {
        let mut seen = std::collections::HashSet::new();
        for parent in &level {
            for bits in 0u64..1 << (k - 1) {
                let child = parent
                    .extended_with(VertexSet::from_bits(bits))
                    .expect("order stays under the cap");
                seen.insert(child.canonical_form());
            }
        }
        level = seen.into_iter().collect();
        level.sort();
    }
    if connected_only {
        level.retain(Graph::is_connected);
    }
    Ok(level)
}

/// Knobs for [`spex_search`]. The pruning toggles only skip work that
/// provably cannot change the extremal set.
#[derive(Debug, Clone)]
pub struct SpexOptions {
    /// Eigensolver residual tolerance.
    pub tol: f64,
    /// Two radii within this distance are co-extremal.
    pub tie_tol: f64,
    /// Scan this corpus instead of the built-in enumeration.
    pub corpus: Option<Vec<Graph>>,
    /// Restrict the built-in enumeration to connected graphs.
    pub connected_only: bool,
    /// Skip graphs whose edge count already rules out freeness.
    pub prune_edge_bound: bool,
    /// Skip graphs whose √(2e) bound cannot reach the incumbent radius.
    pub prune_rho_bound: bool,
    /// Graphs per parallel batch; fixed batching keeps reports identical
    /// across thread counts.
    pub chunk_size: usize,
}

impl Default for SpexOptions {
    fn default() -> Self {
        SpexOptions {
            tol: DEFAULT_TOL,
            tie_tol: TIE_TOL,
            corpus: None,
            connected_only: false,
            prune_edge_bound: true,
            prune_rho_bound: true,
            chunk_size: 1024,
        }
    }
}

#[derive(Debug, Clone, Serialize, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub graphs_scanned: u64,
    /// Graphs verified family-subdivision-free.
    pub free_graphs: u64,
    pub skipped_edge_bound: u64,
    pub skipped_rho_bound: u64,
    /// Maximum edge count among verified-free graphs.
    pub max_free_edges: Option<u64>,
    /// Wall-clock milliseconds; the only non-deterministic report field.
    pub runtime_ms: u64,
}

/// Spanning-book verdict for one extremal graph.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BookVerdict {
    pub found: bool,
    /// Witness clique (empty when not found).
    pub clique: Vec<usize>,
}

/// Outcome of one exhaustive extremal scan.
#[derive(Debug, Clone, Serialize)]
pub struct SpexReport {
    pub n: usize,
    /// The family as graph6, in input order.
    pub family: Vec<String>,
    pub gamma_family: i64,
    /// Maximum spectral radius over the family-free classes.
    pub spex_value: f64,
    /// Canonical graph6 of every co-extremal class, sorted.
    pub extremal: Vec<String>,
    /// Per-extremal spanning-book verdict, aligned with `extremal`.
    pub contains_spanning_book: Vec<BookVerdict>,
    /// Whether the book itself is family-subdivision-saturated.
    pub book_saturated: bool,
    /// True when the book is not saturated (vacuously) or the extremal
    /// set is exactly the book.
    pub corollary1_holds: bool,
    /// Per-extremal: is the graph minus its witness clique saturated for
    /// the reduced family? `None` when no spanning book was found.
    pub theorem5_verdicts: Vec<Option<bool>>,
    /// More than one co-extremal class was found.
    pub tie_detected: bool,
    pub stats: EnumerationStats,
}

enum Outcome {
    SkippedEdgeBound,
    SkippedRhoBound,
    NotFree,
    Free { rho: f64, edges: u64, graph: Option<Graph> },
}

/// Exhaustive extremal scan for `(n, family)`.
pub fn spex_search(
    n: usize,
    family: &[Graph],
    opts: &SpexOptions,
) -> Result<SpexReport, SearchError> {
    let profile = family_profile(family)?;
    if profile.gamma_family < 1 {
        return Err(SearchError::GammaTooSmall(profile.gamma_family));
    }
    let gamma = profile.gamma_family as usize;
    if n <= gamma {
        return Err(SearchError::OrderTooSmall { n, gamma });
    }
    let started = Instant::now();
    let graphs = match &opts.corpus {
        Some(corpus) => {
            if let Some(bad) = corpus.iter().find(|g| g.order() != n) {
                return Err(SearchError::CorpusOrderMismatch {
                    expected: n,
                    found: bad.order(),
                });
            }
            corpus.clone()
        }
        None => enumerate_graphs(n, opts.connected_only)?,
    };
    // Freeness forces e ≤ 100·e(H)·n for every member (on graphs without
    // isolated vertices; deleting isolated vertices changes neither side).
    let edge_cap: u64 = family
        .iter()
        .map(|h| 100 * h.edge_count() as u64 * n as u64)
        .min()
        .expect("family is non-empty");

    let mut stats = EnumerationStats { graphs_scanned: graphs.len() as u64, ..Default::default() };
    let mut best = f64::NEG_INFINITY;
    let mut pool: Vec<(f64, Graph)> = Vec::new();
    for chunk in graphs.chunks(opts.chunk_size.max(1)) {
        // The incumbent is frozen per chunk, so prune decisions do not
        // depend on scheduling and the report is deterministic.
        let frozen = best;
        let outcomes: Vec<Outcome> = chunk
            .par_iter()
            .map(|g| evaluate(g, family, opts, frozen, edge_cap))
            .collect::<Result<_, _>>()?;
        for outcome in outcomes {
            match outcome {
                Outcome::SkippedEdgeBound => stats.skipped_edge_bound += 1,
                Outcome::SkippedRhoBound => stats.skipped_rho_bound += 1,
                Outcome::NotFree => {}
                Outcome::Free { rho, edges, graph } => {
                    stats.free_graphs += 1;
                    stats.max_free_edges =
                        Some(stats.max_free_edges.unwrap_or(0).max(edges));
                    if rho > best {
                        best = rho;
                    }
                    if let Some(kept) = graph {
                        pool.push((rho, kept));
                    }
                }
            }
        }
        pool.retain(|(rho, _)| *rho >= best - opts.tie_tol);
    }
    if pool.is_empty() {
        return Err(SearchError::NoFreeGraphs);
    }
    let spex_value = best;
    let mut extremal_graphs: Vec<Graph> = {
        let set: std::collections::BTreeSet<Graph> =
            pool.into_iter().map(|(_, g)| g.canonical_form()).collect();
        set.into_iter().collect()
    };
    extremal_graphs.sort_by_key(|g| g.to_graph6());

    let book = build_book(gamma, n - gamma)?;
    let book_saturated = is_subdivision_saturated(&book, family);
    let book_canonical = book.canonical_form();
    let extremal_is_book =
        extremal_graphs.len() == 1 && extremal_graphs[0] == book_canonical;
    let mut verdicts = Vec::with_capacity(extremal_graphs.len());
    let mut theorem5 = Vec::with_capacity(extremal_graphs.len());
    for g in &extremal_graphs {
        match contains_spanning_book(g, gamma) {
            Some(clique) => {
                verdicts.push(BookVerdict { found: true, clique: clique.to_vec() });
                theorem5.push(Some(verify_theorem_5_1(g, family, clique)?));
            }
            None => {
                verdicts.push(BookVerdict { found: false, clique: Vec::new() });
                theorem5.push(None);
            }
        }
    }
    stats.runtime_ms = started.elapsed().as_millis() as u64;
    Ok(SpexReport {
        n,
        family: family.iter().map(Graph::to_graph6).collect(),
        gamma_family: profile.gamma_family,
        spex_value,
        extremal: extremal_graphs.iter().map(Graph::to_graph6).collect(),
        contains_spanning_book: verdicts,
        book_saturated,
        corollary1_holds: !book_saturated || extremal_is_book,
        theorem5_verdicts: theorem5,
        tie_detected: extremal_graphs.len() > 1,
        stats,
    })
}

fn evaluate(
    g: &Graph,
    family: &[Graph],
    opts: &SpexOptions,
    incumbent: f64,
    edge_cap: u64,
) -> Result<Outcome, SearchError> {
    let edges = g.edge_count() as u64;
    if opts.prune_edge_bound && edges > edge_cap {
        return Ok(Outcome::SkippedEdgeBound);
    }
    if opts.prune_rho_bound && (2.0 * edges as f64).sqrt() < incumbent - opts.tie_tol {
        return Ok(Outcome::SkippedRhoBound);
    }
    if !is_family_subdivision_free(g, family) {
        return Ok(Outcome::NotFree);
    }
    let rho = spectral_radius(g, opts.tol)?.rho;
    let graph = (rho >= incumbent - opts.tie_tol).then(|| g.clone());
    Ok(Outcome::Free { rho, edges, graph })
}

/// Searches for a spanning generalized book with clique size `gamma`:
/// a clique whose vertices are adjacent to everything else.
///
/// Each clique vertex must be adjacent to the other clique vertices and
/// to all remaining vertices, i.e. must have full degree, so the witness
/// is any `gamma` vertices of degree n−1 (lowest indices returned).
pub fn contains_spanning_book(g: &Graph, gamma: usize) -> Option<VertexSet> {
    if gamma > g.order() {
        return None;
    }
    let full: Vec<usize> = g
        .vertices()
        .filter(|&v| g.degree(v) == g.order() - 1)
        .take(gamma)
        .collect();
    (full.len() == gamma).then(|| full.into_iter().collect())
}

/// Whether the extremal set collapses to the book whenever the book is
/// saturated (vacuously true otherwise).
pub fn verify_corollary_1(
    n: usize,
    family: &[Graph],
    opts: &SpexOptions,
) -> Result<bool, SearchError> {
    Ok(spex_search(n, family, opts)?.corollary1_holds)
}

/// With `l` a spanning-book witness of `g`, checks that `g − l` is
/// subdivision-saturated for the reduced family at the family's gamma.
pub fn verify_theorem_5_1(
    g: &Graph,
    family: &[Graph],
    l: VertexSet,
) -> Result<bool, SearchError> {
    let profile = family_profile(family)?;
    if profile.gamma_family < 1 {
        return Err(SearchError::GammaTooSmall(profile.gamma_family));
    }
    let valid = l.len() == profile.gamma_family as usize
        && l.is_subset_of(g.vertex_set())
        && l.iter().all(|v| g.degree(v) == g.order() - 1);
    if !valid {
        return Err(SearchError::InvalidWitness);
    }
    let reduced = gamma_family_subgraphs(family, profile.gamma_family)?;
    Ok(is_subdivision_saturated(&g.delete_vertices(l), &reduced))
}
