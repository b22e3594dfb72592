//! Exhaustive search for small marked gadgets and covering families.
//!
//! Graphs are enumerated as multisets of columns over a left part of size
//! `a ≤ b`, keeping only the form that is lexicographically smallest under
//! every row permutation. Markings are deduplicated under the graph's
//! automorphisms. Output order is fixed: by vertex count, then edge count,
//! then left size and canonical columns, then marking.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gadgets::{coverage_threshold, GadgetFamily, MarkedGadget};
use crate::graph::{BipartiteGraph, Side, VertexSubset};
use crate::oracle::Oracle;

/// Largest `max_vertices` the search accepts.
pub const MAX_SEARCH_VERTICES: usize = 14;

/// Largest lcm of multipliers tried when assembling a family.
const MAX_FAMILY_MODULUS: u64 = 1 << 16;

/// A bipartite graph on rows `0..a` (left) and columns (right); column `j`
/// is the bitmask of its left neighbours.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Shape {
    a: usize,
    cols: Vec<u8>,
}

impl Shape {
    fn edge_count(&self) -> u32 {
        self.cols.iter().map(|c| c.count_ones()).sum()
    }

    fn graph(&self) -> BipartiteGraph {
        let edges = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, &c)| (0..self.a).filter(move |&r| c >> r & 1 == 1).map(move |r| (r, j)));
        BipartiteGraph::from_edges(self.a, self.cols.len(), edges).expect("shape edges are valid")
    }
}

fn permute_mask(mask: u8, perm: &[usize]) -> u8 {
    let mut out = 0u8;
    for (r, &p) in perm.iter().enumerate() {
        if mask >> r & 1 == 1 {
            out |= 1 << p;
        }
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Is the sorted column list `cols` minimal over all row permutations?
fn is_canonical(cols: &[u8], perms: &[Vec<usize>]) -> bool {
    let mut buf = vec![0u8; cols.len()];
    for perm in perms.iter().skip(1) {
        for (b, &c) in buf.iter_mut().zip(cols) {
            *b = permute_mask(c, perm);
        }
        buf.sort_unstable();
        if buf.as_slice() < cols {
            return false;
        }
    }
    true
}

/// Canonical shapes with left part `a`, right part `b` and no isolated vertex.
fn shapes(a: usize, b: usize) -> Vec<Shape> {
    let perms = permutations(a);
    let full = ((1u16 << a) - 1) as u8;
    let found: Vec<Vec<Shape>> = (1..=full)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut cols = vec![first];
            extend_shapes(&mut cols, b, full, &perms, a, &mut out);
            out
        })
        .collect();
    found.into_iter().flatten().collect()
}

fn extend_shapes(cols: &mut Vec<u8>, b: usize, full: u8, perms: &[Vec<usize>], a: usize, out: &mut Vec<Shape>) {
    if cols.len() == b {
        let covered = cols.iter().fold(0u8, |m, &c| m | c);
        if covered == full && is_canonical(cols, perms) {
            out.push(Shape { a, cols: cols.clone() });
        }
        return;
    }
    let last = *cols.last().unwrap();
    for c in last..=full {
        cols.push(c);
        extend_shapes(cols, b, full, perms, a, out);
        cols.pop();
    }
}

/// Row permutations that map `shape` onto itself (up to column order).
fn row_automorphisms(shape: &Shape, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    perms
        .iter()
        .filter(|perm| {
            let mut c: Vec<u8> = shape.cols.iter().map(|&m| permute_mask(m, perm)).collect();
            c.sort_unstable();
            c == shape.cols
        })
        .cloned()
        .collect()
}

/// Canonical key of a marking `(U₁ rows, U₂ columns)` under automorphisms.
fn marking_key(shape: &Shape, autos: &[Vec<usize>], u1: u8, u2: u32) -> (u8, Vec<(u8, bool)>) {
    autos
        .iter()
        .map(|perm| {
            let mut cols: Vec<(u8, bool)> = shape
                .cols
                .iter()
                .enumerate()
                .map(|(j, &m)| (permute_mask(m, perm), u2 >> j & 1 == 1))
                .collect();
            cols.sort_unstable();
            (permute_mask(u1, perm), cols)
        })
        .min()
        .expect("the identity is an automorphism")
}

fn gadgets_of(shape: &Shape, perms: &[Vec<usize>], oracle: &Oracle) -> Result<Vec<MarkedGadget>> {
    let graph = shape.graph();
    let autos = row_automorphisms(shape, perms);
    let b = shape.cols.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for u1 in 0..(1u16 << shape.a) {
        for u2 in 0..(1u32 << b) {
            if !seen.insert(marking_key(shape, &autos, u1 as u8, u2)) {
                continue;
            }
            let s1 = VertexSubset::new(Side::Left, (0..shape.a).filter(|r| u1 >> r & 1 == 1));
            let s2 = VertexSubset::new(Side::Right, (0..b).filter(|j| u2 >> j & 1 == 1));
            let hv = match oracle.h_values(&graph, &s1, &s2) {
                Ok(hv) => hv,
                Err(Error::InvalidArgument(_)) => continue,
                Err(e) => return Err(e),
            };
            let (Some(hp), Some(hd)) = (
                num_traits::ToPrimitive::to_u64(&hv.h_prime),
                num_traits::ToPrimitive::to_u64(&hv.h_dprime),
            ) else {
                continue;
            };
            out.push(MarkedGadget {
                name: format!("({hp},{hd})"),
                graph: graph.clone(),
                u1: s1,
                u2: s2,
                h_prime: hp,
                h_dprime: hd,
            });
        }
    }
    Ok(out)
}

fn check_bounds(max_vertices: usize) -> Result<()> {
    if max_vertices > MAX_SEARCH_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "gadget search is limited to {MAX_SEARCH_VERTICES} vertices, got {max_vertices}"
        )));
    }
    Ok(())
}

/// Calls `f` with the gadgets of each vertex count in turn, from 2 up to
/// `max_vertices`, skipping graphs with a part larger than `max_part`.
pub fn for_each_vertex_count(
    max_vertices: usize,
    max_part: usize,
    mut f: impl FnMut(usize, Vec<MarkedGadget>) -> Result<()>,
) -> Result<()> {
    check_bounds(max_vertices)?;
    let oracle = Oracle::default();
    for v in 2..=max_vertices {
        let mut all: Vec<Shape> = Vec::new();
        for a in 1..=v / 2 {
            let b = v - a;
            if b <= max_part {
                all.extend(shapes(a, b));
            }
        }
        all.sort_by_key(|s| (s.edge_count(), s.a, s.cols.clone()));
        let chunks: Vec<Vec<MarkedGadget>> = all
            .par_iter()
            .map(|s| gadgets_of(s, &permutations(s.a), &oracle))
            .collect::<Result<_>>()?;
        f(v, chunks.into_iter().flatten().collect())?;
    }
    Ok(())
}

/// Every marked gadget on at most `max_vertices` vertices with both parts of
/// size at most `max_part`, in the module's fixed order.
pub fn enumerate_marked_gadgets(max_vertices: usize, max_part: usize) -> Result<Vec<MarkedGadget>> {
    let mut out = Vec::new();
    for_each_vertex_count(max_vertices, max_part, |_, g| {
        out.extend(g);
        Ok(())
    })?;
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Covering subset of `cands` (all of cost at most the last one's), found by
/// trying moduli built from pairs of multipliers.
fn covering_subset(cands: &[&MarkedGadget], n0_max: u64) -> Option<Vec<usize>> {
    let hs: BTreeSet<u64> = cands.iter().map(|g| g.h_prime).collect();
    let mut moduli: BTreeSet<u64> = hs.clone();
    for &x in &hs {
        for &y in &hs {
            let m = lcm(x, y);
            if m <= MAX_FAMILY_MODULUS {
                moduli.insert(m);
            }
        }
    }
    for m in moduli {
        let idx: Vec<usize> = (0..cands.len()).filter(|&i| m % cands[i].h_prime == 0).collect();
        let pairs: Vec<(u64, u64)> = idx.iter().map(|&i| (cands[i].h_prime, cands[i].h_dprime)).collect();
        if coverage_threshold(&pairs).is_some_and(|t| t <= n0_max) {
            return Some(prune(cands, idx, n0_max));
        }
    }
    None
}

/// Drops members, most expensive first, while coverage survives.
fn prune(cands: &[&MarkedGadget], mut idx: Vec<usize>, n0_max: u64) -> Vec<usize> {
    let covers = |idx: &[usize]| {
        let pairs: Vec<(u64, u64)> = idx.iter().map(|&i| (cands[i].h_prime, cands[i].h_dprime)).collect();
        coverage_threshold(&pairs).is_some_and(|t| t <= n0_max)
    };
    let mut order = idx.clone();
    order.sort_by(|&x, &y| cands[y].cost().total_cmp(&cands[x].cost()).then(y.cmp(&x)));
    for i in order {
        let trial: Vec<usize> = idx.iter().copied().filter(|&j| j != i).collect();
        if !trial.is_empty() && covers(&trial) {
            idx = trial;
        }
    }
    idx
}

/// Covering families drawn from `pool` whose coverage threshold is at most
/// `n0_max`, sorted by `γ` ascending. Each pair `(h', h'')` is represented by
/// its smallest gadget.
pub fn find_covering_families(pool: &[MarkedGadget], n0_max: u64) -> Result<Vec<GadgetFamily>> {
    if pool.is_empty() {
        return Err(Error::InvalidArgument("gadget pool is empty".into()));
    }
    let mut best: BTreeMap<(u64, u64), &MarkedGadget> = BTreeMap::new();
    for g in pool.iter().filter(|g| g.h_prime >= 2) {
        let e = best.entry((g.h_prime, g.h_dprime)).or_insert(g);
        if g.vertex_count() < e.vertex_count() {
            *e = g;
        }
    }
    let mut reps: Vec<&MarkedGadget> = best.into_values().collect();
    reps.sort_by(|x, y| {
        x.cost()
            .total_cmp(&y.cost())
            .then(x.vertex_count().cmp(&y.vertex_count()))
            .then((x.h_prime, x.h_dprime).cmp(&(y.h_prime, y.h_dprime)))
    });

    let mut seen: HashSet<Vec<(u64, u64)>> = HashSet::new();
    let mut families = Vec::new();
    for end in 1..=reps.len() {
        if end < reps.len() && reps[end].cost() == reps[end - 1].cost() {
            continue;
        }
        let cands = &reps[..end];
        let Some(idx) = covering_subset(cands, n0_max) else {
            continue;
        };
        let mut members: Vec<MarkedGadget> = idx.iter().map(|&i| cands[i].clone()).collect();
        members.sort_by_key(|g| (g.h_prime, g.h_dprime));
        let key: Vec<(u64, u64)> = members.iter().map(|g| (g.h_prime, g.h_dprime)).collect();
        if seen.insert(key) {
            families.push(GadgetFamily::new(members, None)?);
        }
    }
    families.sort_by(|x, y| x.gamma().total_cmp(&y.gamma()).then(x.members().len().cmp(&y.members().len())));
    Ok(families)
}
