//! Independent oracles shared by the integration suites. Everything here
//! is deliberately written with different data structures and search
//! orders than the library so the two sides cannot share a bug.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spexlab::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with the given generator.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Dense symmetric eigensolver (cyclic Jacobi)
// ---------------------------------------------------------------------------

/// Largest adjacency eigenvalue by cyclic Jacobi rotations on a dense
/// matrix; the independent route for spectral checks.
#[allow(clippy::needless_range_loop)] // indexed form mirrors the rotations
pub fn jacobi_spectral_radius(g: &Graph) -> f64 {
    let n = g.order();
    assert!(n > 0);
    let mut a = vec![vec![0.0f64; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let (app, aqq, apq) = (a[p][p], a[q][q], a[p][q]);
                a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::NEG_INFINITY, f64::max)
}

// ---------------------------------------------------------------------------
// Brute-force subdivision containment
// ---------------------------------------------------------------------------

/// Exhaustive containment decision: every injective branch map in plain
/// index order, then exhaustive disjoint-path realization edge by edge.
pub fn oracle_contains_subdivision(host: &Graph, pattern: &Graph) -> bool {
    let h = pattern.order();
    if h > host.order() {
        return false;
    }
    let edges: Vec<(usize, usize)> = pattern.edges().collect();
    let mut phi = vec![usize::MAX; h];
    let mut used = vec![false; host.order()];
    assign_branches(host, &edges, 0, h, &mut phi, &mut used)
}

fn assign_branches(
    host: &Graph,
    edges: &[(usize, usize)],
    v: usize,
    h: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == h {
        let mut busy = used.to_vec();
        return realize_edges(host, edges, 0, phi, &mut busy);
    }
    for c in 0..host.order() {
        if used[c] {
            continue;
        }
        phi[v] = c;
        used[c] = true;
        if assign_branches(host, edges, v + 1, h, phi, used) {
            return true;
        }
        used[c] = false;
        phi[v] = usize::MAX;
    }
    false
}

fn realize_edges(
    host: &Graph,
    edges: &[(usize, usize)],
    k: usize,
    phi: &[usize],
    busy: &mut Vec<bool>,
) -> bool {
    if k == edges.len() {
        return true;
    }
    let (pa, pb) = edges[k];
    walk_paths(host, edges, k, phi, busy, phi[pa], phi[pb])
}

fn walk_paths(
    host: &Graph,
    edges: &[(usize, usize)],
    k: usize,
    phi: &[usize],
    busy: &mut Vec<bool>,
    at: usize,
    goal: usize,
) -> bool {
    if host.has_edge(at, goal) && realize_edges(host, edges, k + 1, phi, busy) {
        return true;
    }
    for w in 0..host.order() {
        if busy[w] || w == goal || !host.has_edge(at, w) {
            continue;
        }
        busy[w] = true;
        if walk_paths(host, edges, k, phi, busy, w, goal) {
            return true;
        }
        busy[w] = false;
    }
    false
}

// ---------------------------------------------------------------------------
// Independence by subset dynamic programming
// ---------------------------------------------------------------------------

/// α(g) over all 2^n subsets: a subset is independent iff dropping its
/// lowest vertex stays independent and that vertex has no neighbor inside.
pub fn oracle_independence_number(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 20, "subset oracle explodes past 20 vertices");
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).bits()).collect();
    let mut independent = vec![false; 1usize << n];
    independent[0] = true;
    let mut best = 0;
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        independent[mask] = independent[rest] && adj[low] & rest as u64 == 0;
        if independent[mask] {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Isomorphism-class counting
// ---------------------------------------------------------------------------

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

/// Number of isomorphism classes of n-vertex graphs: orbits of the 2^C(n,2)
/// labelled graphs under vertex permutations, counted via the cycle
/// structure of each permutation's action on vertex pairs.
pub fn oracle_iso_class_count(n: usize) -> u64 {
    if n <= 1 {
        return 1;
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let mut total: u128 = 0;
    for p in &perms {
        let mut seen = vec![false; pairs.len()];
        let mut cycles = 0u32;
        for start in 0..pairs.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                let (u, v) = pairs[at];
                at = index(p[u], p[v]);
            }
        }
        total += 1u128 << cycles;
    }
    (total / perms.len() as u128) as u64
}

/// Classifies all labelled graphs on n vertices (optionally connected
/// only) by minimum relabelled encoding; returns the class count.
pub fn oracle_classify_labelled(n: usize, connected_only: bool) -> usize {
    assert!(n <= 5, "labelled classification is for tiny orders");
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut classes = std::collections::HashSet::new();
    for code in 0u64..1 << pairs.len() {
        let mut g = Graph::empty(n).unwrap();
        for (b, &(u, v)) in pairs.iter().enumerate() {
            if code >> b & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        if connected_only && !g.is_connected() {
            continue;
        }
        let min_code = perms
            .iter()
            .map(|p| {
                let relabelled = g.permuted(p);
                pairs
                    .iter()
                    .enumerate()
                    .map(|(b, &(u, v))| u64::from(relabelled.has_edge(u, v)) << b)
                    .sum::<u64>()
            })
            .min()
            .unwrap();
        classes.insert(min_code);
    }
    classes.len()
}

// ---------------------------------------------------------------------------
// Longest path by plain exhaustive search
// ---------------------------------------------------------------------------

/// Order of the longest simple path, by enumerating every simple path.
pub fn oracle_longest_path(g: &Graph) -> usize {
    let n = g.order();
    let mut best = 0;
    let mut visited = vec![false; n];
    for start in 0..n {
        visited[start] = true;
        longest_from(g, start, 1, &mut visited, &mut best);
        visited[start] = false;
    }
    best
}

fn longest_from(g: &Graph, at: usize, len: usize, visited: &mut [bool], best: &mut usize) {
    *best = (*best).max(len);
    for w in g.neighbors(at).iter() {
        if !visited[w] {
            visited[w] = true;
            longest_from(g, w, len + 1, visited, best);
            visited[w] = false;
        }
    }
}
