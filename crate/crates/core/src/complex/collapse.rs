//! Strong collapses of flag complexes.
//!
//! For a graph `G` with flag complex `F(G)`:
//!
//! - a vertex `v` with `N[v] ⊆ N[w]` for some `w ≠ v` is dominated, and
//!   deleting it is a strong collapse of `F(G)`;
//! - an edge `uv` with `N[u] ∩ N[v] ⊆ N[w]` for some `w ∉ {u, v}` is
//!   dominated, and deleting it (keeping the vertices) leaves a flag
//!   complex onto which `F(G)` collapses.
//!
//! Both preserve the homotopy type, so the homology of a Rips complex can
//! be read off the much smaller flag complex of the collapsed graph.

use alloc::vec::Vec;

use super::graph::{ones, NeighborGraph};

/// Dominators tried per edge, nearest first. Missing a dominator only
/// leaves the edge in place.
const EDGE_CANDIDATES: usize = 4;

/// Removes dominated edges and vertices of `g` until none is found.
///
/// `dist` ranks the candidate dominators of an edge `uv` by
/// `max(d(u,w), d(v,w))`. Returns the number of passes made.
pub fn collapse_flag(g: &mut NeighborGraph, dist: impl Fn(usize, usize) -> f64) -> usize {
    let mut passes = 0;
    let mut common = Vec::new();
    let mut ranked: Vec<(f64, usize)> = Vec::new();
    loop {
        passes += 1;
        let mut changed = collapse_vertices(g);
        for u in 0..g.len() {
            if !g.is_alive(u) {
                continue;
            }
            let upper: Vec<usize> = ones(g.row(u)).filter(|&v| v > u).collect();
            for v in upper {
                g.common_neighbors(u, v, &mut common);
                if common.is_empty() {
                    continue;
                }
                ranked.clear();
                ranked.extend(common.iter().map(|&w| (dist(u, w).max(dist(v, w)), w)));
                let k = ranked.len().min(EDGE_CANDIDATES);
                if ranked.len() > k {
                    ranked.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0));
                }
                if ranked[..k].iter().any(|&(_, w)| g.dominates_edge(w, u, v)) {
                    g.remove_edge(u, v);
                    changed += 1;
                }
            }
        }
        changed += collapse_vertices(g);
        if changed == 0 {
            return passes;
        }
    }
}

fn collapse_vertices(g: &mut NeighborGraph) -> usize {
    let mut removed = 0;
    for v in 0..g.len() {
        if !g.is_alive(v) {
            continue;
        }
        if g.neighbors(v).into_iter().any(|w| g.dominates_vertex(w, v)) {
            g.remove_vertex(v);
            removed += 1;
        }
    }
    removed
}
