//! Reference counting by brute force over all vertex subsets, plus random
//! graph generators shared by the integration tests.

#![allow(dead_code)]

use mis_synth::graph::{BipartiteGraph, Side, VertexSubset};
use rand::Rng;

/// Largest graph the subset walk accepts.
pub const NAIVE_MAX_VERTICES: usize = 24;

/// Closed-free adjacency masks over vertices `0..L` (left) then `L..L+R`.
fn masks(g: &BipartiteGraph) -> Vec<u32> {
    let l = g.left_size();
    let n = g.vertex_count();
    assert!(n <= NAIVE_MAX_VERTICES, "naive oracle limited to {NAIVE_MAX_VERTICES} vertices, got {n}");
    let mut adj = vec![0u32; n];
    for (a, b) in g.edges() {
        adj[a] |= 1 << (l + b);
        adj[l + b] |= 1 << a;
    }
    adj
}

fn is_independent(adj: &[u32], s: u32) -> bool {
    (0..adj.len()).all(|v| s >> v & 1 == 0 || adj[v] & s == 0)
}

fn is_maximal(adj: &[u32], s: u32) -> bool {
    (0..adj.len()).all(|v| s >> v & 1 == 1 || adj[v] & s != 0)
}

/// Every maximal independent set as a bitmask.
pub fn naive_mis(g: &BipartiteGraph) -> Vec<u32> {
    let adj = masks(g);
    (0..1u32 << adj.len()).filter(|&s| is_independent(&adj, s) && is_maximal(&adj, s)).collect()
}

pub fn naive_count_mis(g: &BipartiteGraph) -> u64 {
    naive_mis(g).len() as u64
}

pub fn naive_count_is(g: &BipartiteGraph) -> u64 {
    let adj = masks(g);
    (0..1u32 << adj.len()).filter(|&s| is_independent(&adj, s)).count() as u64
}

/// Bitmask of a subset in the naive vertex numbering.
pub fn subset_mask(g: &BipartiteGraph, s: &VertexSubset) -> u32 {
    let off = match s.side() {
        Side::Left => 0,
        Side::Right => g.left_size(),
    };
    s.members().iter().fold(0, |m, &i| m | 1 << (off + i))
}

/// Maximal independent sets of `g` meeting both subsets.
pub fn naive_hitting(g: &BipartiteGraph, u1: &VertexSubset, u2: &VertexSubset) -> u64 {
    let (m1, m2) = (subset_mask(g, u1), subset_mask(g, u2));
    naive_mis(g).into_iter().filter(|&s| s & m1 != 0 && s & m2 != 0).count() as u64
}

/// Random bipartite graph with parts in `1..=max_part`; every isolated
/// vertex gets one random edge.
pub fn random_graph<R: Rng>(rng: &mut R, max_part: usize, density: f64) -> BipartiteGraph {
    let l = rng.gen_range(1..=max_part);
    let r = rng.gen_range(1..=max_part);
    random_graph_with_parts(rng, l, r, density)
}

pub fn random_graph_with_parts<R: Rng>(rng: &mut R, l: usize, r: usize, density: f64) -> BipartiteGraph {
    let mut edges = std::collections::BTreeSet::new();
    for a in 0..l {
        for b in 0..r {
            if rng.gen_bool(density) {
                edges.insert((a, b));
            }
        }
    }
    for a in 0..l {
        if !edges.iter().any(|&(x, _)| x == a) {
            edges.insert((a, rng.gen_range(0..r)));
        }
    }
    for b in 0..r {
        if !edges.iter().any(|&(_, y)| y == b) {
            edges.insert((rng.gen_range(0..l), b));
        }
    }
    BipartiteGraph::from_edges(l, r, edges).unwrap()
}

/// Random subset of one part (possibly empty).
pub fn random_subset<R: Rng>(rng: &mut R, g: &BipartiteGraph, side: Side) -> VertexSubset {
    let n = g.part_size(side);
    VertexSubset::new(side, (0..n).filter(|_| rng.gen_bool(0.4)))
}
