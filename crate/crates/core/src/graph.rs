//! Bipartite graphs with structurally separated parts.
//!
//! A vertex is addressed by its side and its index inside that side. Every
//! edge joins a left index to a right index, so bipartiteness never has to be
//! re-derived. Each vertex keeps its neighbourhood as a bitset over the
//! opposite part.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn left(index: usize) -> Self {
        Vertex { side: Side::Left, index }
    }

    pub fn right(index: usize) -> Self {
        Vertex { side: Side::Right, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.side, self.index)
    }
}

/// A set of vertices drawn from one side of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    side: Side,
    members: BTreeSet<usize>,
}

impl VertexSubset {
    pub fn new(side: Side, members: impl IntoIterator<Item = usize>) -> Self {
        VertexSubset {
            side,
            members: members.into_iter().collect(),
        }
    }

    pub fn empty(side: Side) -> Self {
        VertexSubset {
            side,
            members: BTreeSet::new(),
        }
    }

    /// The whole `side` part of `g`.
    pub fn all(g: &BipartiteGraph, side: Side) -> Self {
        Self::new(side, 0..g.part_size(side))
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let side = self.side;
        self.members.iter().map(move |&index| Vertex { side, index })
    }

    /// Checks that every member addresses a vertex of `g`.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<()> {
        let size = g.part_size(self.side);
        match self.members.iter().next_back() {
            Some(&index) if index >= size => Err(Error::IndexOutOfRange {
                side: self.side,
                index,
                size,
            }),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    /// `left_adj[i]` holds the right-side neighbours of left vertex `i`.
    left_adj: Vec<FixedBitSet>,
    /// `right_adj[j]` holds the left-side neighbours of right vertex `j`.
    right_adj: Vec<FixedBitSet>,
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("left", &self.left_size())
            .field("right", &self.right_size())
            .field("edges", &self.edges())
            .finish()
    }
}

impl BipartiteGraph {
    /// Edgeless graph with the given part sizes.
    pub fn new(left_size: usize, right_size: usize) -> Self {
        BipartiteGraph {
            left_adj: vec![FixedBitSet::with_capacity(right_size); left_size],
            right_adj: vec![FixedBitSet::with_capacity(left_size); right_size],
        }
    }

    /// The graph with no vertices. Its unique maximal independent set is the empty set.
    pub fn empty() -> Self {
        Self::new(0, 0)
    }

    pub fn from_edges(
        left_size: usize,
        right_size: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Self::new(left_size, right_size);
        for (l, r) in edges {
            g.check_index(Side::Left, l)?;
            g.check_index(Side::Right, r)?;
            if g.has_edge(l, r) {
                return Err(Error::DuplicateEdge(l, r));
            }
            g.insert_edge(l, r);
        }
        Ok(g)
    }

    fn check_index(&self, side: Side, index: usize) -> Result<()> {
        let size = self.part_size(side);
        if index < size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { side, index, size })
        }
    }

    pub(crate) fn insert_edge(&mut self, l: usize, r: usize) {
        self.left_adj[l].insert(r);
        self.right_adj[r].insert(l);
    }

    /// Appends `left` and `right` fresh vertices; existing indices are unchanged.
    pub(crate) fn grow(&mut self, left: usize, right: usize) {
        let new_left = self.left_size() + left;
        let new_right = self.right_size() + right;
        for adj in &mut self.left_adj {
            adj.grow(new_right);
        }
        for adj in &mut self.right_adj {
            adj.grow(new_left);
        }
        self.left_adj
            .resize(new_left, FixedBitSet::with_capacity(new_right));
        self.right_adj
            .resize(new_right, FixedBitSet::with_capacity(new_left));
    }

    pub fn left_size(&self) -> usize {
        self.left_adj.len()
    }

    pub fn right_size(&self) -> usize {
        self.right_adj.len()
    }

    pub fn part_size(&self, side: Side) -> usize {
        match side {
            Side::Left => self.left_size(),
            Side::Right => self.right_size(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.left_size() + self.right_size()
    }

    pub fn edge_count(&self) -> usize {
        self.left_adj.iter().map(|a| a.count_ones(..)).sum()
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        l < self.left_size() && self.left_adj[l].contains(r)
    }

    /// Edges as `(left, right)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.left_adj
            .iter()
            .enumerate()
            .flat_map(|(l, adj)| adj.ones().map(move |r| (l, r)))
            .collect()
    }

    /// Neighbourhood of `v` as a bitset over the opposite part.
    pub fn neighbor_set(&self, v: Vertex) -> &FixedBitSet {
        match v.side {
            Side::Left => &self.left_adj[v.index],
            Side::Right => &self.right_adj[v.index],
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let side = v.side.opposite();
        self.neighbor_set(v)
            .ones()
            .map(move |index| Vertex { side, index })
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbor_set(v).count_ones(..)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.left_size())
            .map(Vertex::left)
            .chain((0..self.right_size()).map(Vertex::right))
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) == 0).collect()
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.vertices().any(|v| self.degree(v) == 0)
    }

    /// Errors with the first isolated vertex, if any.
    pub fn require_no_isolated(&self) -> Result<()> {
        match self.vertices().find(|&v| self.degree(v) == 0) {
            Some(v) => Err(Error::IsolatedVertex(v)),
            None => Ok(()),
        }
    }

    /// The same graph with its parts exchanged.
    pub fn flipped(&self) -> Self {
        BipartiteGraph {
            left_adj: self.right_adj.clone(),
            right_adj: self.left_adj.clone(),
        }
    }

    /// Induced subgraph on the vertices outside `removed`. Survivors keep
    /// their relative order within each part.
    pub fn without(&self, removed: &[&VertexSubset]) -> Self {
        let mut drop_left = vec![false; self.left_size()];
        let mut drop_right = vec![false; self.right_size()];
        for subset in removed {
            let mask = match subset.side() {
                Side::Left => &mut drop_left,
                Side::Right => &mut drop_right,
            };
            for &i in subset.members() {
                if i < mask.len() {
                    mask[i] = true;
                }
            }
        }
        let relabel = |drop: &[bool]| {
            let mut next = 0;
            drop.iter()
                .map(|&d| {
                    if d {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect::<Vec<_>>()
        };
        let left_map = relabel(&drop_left);
        let right_map = relabel(&drop_right);
        let left_size = drop_left.iter().filter(|d| !**d).count();
        let right_size = drop_right.iter().filter(|d| !**d).count();
        let mut g = Self::new(left_size, right_size);
        for (l, r) in self.edges() {
            if let (Some(nl), Some(nr)) = (left_map[l], right_map[r]) {
                g.insert_edge(nl, nr);
            }
        }
        g
    }

    /// Connected components as (left indices, right indices), ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut seen_left = vec![false; self.left_size()];
        let mut seen_right = vec![false; self.right_size()];
        let mut out = Vec::new();
        for start in self.vertices() {
            let seen = match start.side {
                Side::Left => seen_left[start.index],
                Side::Right => seen_right[start.index],
            };
            if seen {
                continue;
            }
            let mut comp = (Vec::new(), Vec::new());
            let mut stack = vec![start];
            match start.side {
                Side::Left => seen_left[start.index] = true,
                Side::Right => seen_right[start.index] = true,
            }
            while let Some(v) = stack.pop() {
                match v.side {
                    Side::Left => comp.0.push(v.index),
                    Side::Right => comp.1.push(v.index),
                }
                for u in self.neighbors(v) {
                    let flag = match u.side {
                        Side::Left => &mut seen_left[u.index],
                        Side::Right => &mut seen_right[u.index],
                    };
                    if !*flag {
                        *flag = true;
                        stack.push(u);
                    }
                }
            }
            comp.0.sort_unstable();
            comp.1.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the given left and right indices (in that order).
    pub fn induced(&self, left: &[usize], right: &[usize]) -> Self {
        let mut right_pos = vec![usize::MAX; self.right_size()];
        for (pos, &r) in right.iter().enumerate() {
            right_pos[r] = pos;
        }
        let mut g = Self::new(left.len(), right.len());
        for (nl, &l) in left.iter().enumerate() {
            for r in self.left_adj[l].ones() {
                if right_pos[r] != usize::MAX {
                    g.insert_edge(nl, right_pos[r]);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Places `b` after `a`: left parts are concatenated, as are right parts.
pub fn disjoint_union(a: &BipartiteGraph, b: &BipartiteGraph) -> BipartiteGraph {
    let (al, ar) = (a.left_size(), a.right_size());
    let mut g = a.clone();
    g.grow(b.left_size(), b.right_size());
    for (l, r) in b.edges() {
        g.insert_edge(al + l, ar + r);
    }
    g
}

/// `g` plus `m` fresh disjoint edges.
pub fn add_matching(g: &BipartiteGraph, m: usize) -> BipartiteGraph {
    let (l0, r0) = (g.left_size(), g.right_size());
    let mut out = g.clone();
    out.grow(m, m);
    for i in 0..m {
        out.insert_edge(l0 + i, r0 + i);
    }
    out
}

/// Disjoint union of `g` and `other`, plus every edge between `g_subset` (in
/// `g`) and `other_subset` (in `other`).
pub fn complete_join(
    g: &BipartiteGraph,
    g_subset: &VertexSubset,
    other: &BipartiteGraph,
    other_subset: &VertexSubset,
) -> Result<BipartiteGraph> {
    join_many(g, other, &[(g_subset, other_subset)])
}

/// Like [`complete_join`] with several subset pairs joined at once.
pub fn join_many(
    g: &BipartiteGraph,
    other: &BipartiteGraph,
    joins: &[(&VertexSubset, &VertexSubset)],
) -> Result<BipartiteGraph> {
    for (gs, os) in joins {
        gs.validate(g)?;
        os.validate(other)?;
        if gs.side() == os.side() && !gs.is_empty() && !os.is_empty() {
            return Err(Error::SideMismatch(gs.side()));
        }
    }
    let (gl, gr) = (g.left_size(), g.right_size());
    let mut out = disjoint_union(g, other);
    for (gs, os) in joins {
        if gs.is_empty() || os.is_empty() {
            continue;
        }
        for &a in gs.members() {
            for &b in os.members() {
                let (l, r) = match gs.side() {
                    Side::Left => (a, gr + b),
                    Side::Right => (gl + b, a),
                };
                out.insert_edge(l, r);
            }
        }
    }
    Ok(out)
}

/// Single vertex, placed on the left.
pub fn single_vertex() -> BipartiteGraph {
    BipartiteGraph::new(1, 0)
}

pub fn complete_bipartite(r: usize, s: usize) -> Result<BipartiteGraph> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidArgument(format!(
            "complete_bipartite needs both parts non-empty, got ({r}, {s})"
        )));
    }
    let mut g = BipartiteGraph::new(r, s);
    for l in 0..r {
        for k in 0..s {
            g.insert_edge(l, k);
        }
    }
    Ok(g)
}

/// Crown graph: K_{r,r} minus the perfect matching `{(i, i)}`.
pub fn corona(r: usize) -> Result<BipartiteGraph> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("corona needs r >= 2, got {r}")));
    }
    let mut g = BipartiteGraph::new(r, r);
    for l in 0..r {
        for k in 0..r {
            if l != k {
                g.insert_edge(l, k);
            }
        }
    }
    Ok(g)
}

/// Path on `r` vertices; the `i`-th vertex lies on the left when `i` is even.
pub fn path(r: usize) -> Result<BipartiteGraph> {
    if r == 0 {
        return Err(Error::InvalidArgument("path needs r >= 1".into()));
    }
    let mut g = BipartiteGraph::new(r.div_ceil(2), r / 2);
    for i in 0..r - 1 {
        let (l, k) = if i % 2 == 0 { (i / 2, i / 2) } else { (i / 2 + 1, i / 2) };
        g.insert_edge(l, k);
    }
    Ok(g)
}

/// Star K_{m,1}: `m` leaves on the left, the centre on the right.
pub fn star(m: usize) -> Result<BipartiteGraph> {
    complete_bipartite(m, 1)
}

pub fn matching(m: usize) -> BipartiteGraph {
    add_matching(&BipartiteGraph::empty(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_of_two_edges_is_a_matching() {
        let k11 = complete_bipartite(1, 1).unwrap();
        let g = disjoint_union(&k11, &k11);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), vec![(0, 0), (1, 1)]);
        assert_eq!(g, matching(2));
    }

    #[test]
    fn union_with_empty_is_identity() {
        let g = path(5).unwrap();
        assert_eq!(disjoint_union(&g, &BipartiteGraph::empty()), g);
        assert_eq!(disjoint_union(&BipartiteGraph::empty(), &g), g);
    }

    #[test]
    fn forest_of_stars_has_expected_order() {
        let mut g = BipartiteGraph::empty();
        for j in 0..3 {
            g = disjoint_union(&g, &star(1 << j).unwrap());
        }
        assert_eq!(g.vertex_count(), (1 << 3) + 3 - 1);
    }

    #[test]
    fn add_zero_matching_is_identity() {
        let g = corona(3).unwrap();
        assert_eq!(add_matching(&g, 0), g);
    }

    #[test]
    fn join_left_of_one_edge_to_right_of_another_gives_p4() {
        let k11 = complete_bipartite(1, 1).unwrap();
        let g = complete_join(
            &k11,
            &VertexSubset::all(&k11, Side::Left),
            &k11,
            &VertexSubset::all(&k11, Side::Right),
        )
        .unwrap();
        assert_eq!(g.edges(), vec![(0, 0), (0, 1), (1, 1)]);
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn join_with_empty_subsets_is_union() {
        let a = path(4).unwrap();
        let b = corona(3).unwrap();
        let g = complete_join(&a, &VertexSubset::empty(Side::Left), &b, &VertexSubset::empty(Side::Left))
            .unwrap();
        assert_eq!(g, disjoint_union(&a, &b));
    }

    #[test]
    fn same_side_join_is_rejected() {
        let k11 = complete_bipartite(1, 1).unwrap();
        let err = complete_join(
            &k11,
            &VertexSubset::all(&k11, Side::Left),
            &k11,
            &VertexSubset::all(&k11, Side::Left),
        );
        assert!(matches!(err, Err(Error::SideMismatch(Side::Left))));
    }

    #[test]
    fn subset_out_of_range_is_rejected() {
        let k11 = complete_bipartite(1, 1).unwrap();
        let bad = VertexSubset::new(Side::Right, [3]);
        assert!(complete_join(&k11, &VertexSubset::all(&k11, Side::Left), &k11, &bad).is_err());
    }

    #[test]
    fn builders_reject_bad_sizes() {
        assert!(corona(1).is_err());
        assert!(path(0).is_err());
        assert!(complete_bipartite(0, 3).is_err());
        assert!(star(0).is_err());
    }

    #[test]
    fn from_edges_validates() {
        assert!(matches!(
            BipartiteGraph::from_edges(1, 1, [(0, 0), (0, 0)]),
            Err(Error::DuplicateEdge(0, 0))
        ));
        assert!(BipartiteGraph::from_edges(1, 1, [(0, 1)]).is_err());
    }

    #[test]
    fn path_alternates_sides() {
        let p = path(4).unwrap();
        assert_eq!((p.left_size(), p.right_size()), (2, 2));
        assert_eq!(p.edges(), vec![(0, 0), (1, 0), (1, 1)]);
        let p5 = path(5).unwrap();
        assert_eq!((p5.left_size(), p5.right_size()), (3, 2));
        assert_eq!(p5.edge_count(), 4);
    }

    #[test]
    fn corona_two_is_two_crossing_edges() {
        assert_eq!(corona(2).unwrap().edges(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn without_relabels_densely() {
        let p = path(4).unwrap();
        let h = p.without(&[&VertexSubset::new(Side::Left, [1])]);
        assert_eq!((h.left_size(), h.right_size()), (1, 2));
        assert_eq!(h.edges(), vec![(0, 0)]);
        assert_eq!(h.isolated_vertices(), vec![Vertex::right(1)]);
    }

    #[test]
    fn flipped_swaps_parts() {
        let s = star(3).unwrap();
        let f = s.flipped();
        assert_eq!((f.left_size(), f.right_size()), (1, 3));
        assert_eq!(f.flipped(), s);
    }

    #[test]
    fn components_split_union() {
        let g = disjoint_union(&path(3).unwrap(), &complete_bipartite(2, 2).unwrap());
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (vec![0, 1], vec![0]));
        assert_eq!(comps[1], (vec![2, 3], vec![1, 2]));
    }
}
