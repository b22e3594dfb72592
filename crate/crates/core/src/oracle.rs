//! Exact counting and enumeration of (maximal) independent sets.
//!
//! Two engines compute maximal-independent-set counts:
//!
//! * **sweep** walks every subset `A` of the smaller part `S`. With `T` the
//!   other part, `B = T \ N(A)`, and `A ∪ B` is maximal exactly when `A` is
//!   the set of `S`-vertices with no neighbour in `B`. Cost is
//!   `2^|S| · |T|`, so it is gated by [`Oracle::cap`] on the smaller part.
//! * **branch** counts independent dominating sets with a pivoting search:
//!   some vertex of `N[u]` must be chosen for every undecided `u`, the
//!   residual problem factorises over connected components, and subproblems
//!   are memoised. Its cost tracks the structure rather than the part sizes,
//!   and is bounded by [`Oracle::branch_budget`] search nodes.
//!
//! Counts are exact big integers throughout. Both engines treat forbidden
//! vertices the same way: they may not be chosen but still have to be
//! dominated.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, Vertex, VertexSubset};
use crate::BigCount;

/// Smaller-part size up to which `Engine::Auto` prefers the sweep outright.
const SWEEP_PREFERRED: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Sweep for small parts, otherwise branch; sweep again (within the cap)
    /// if the branch budget runs out.
    Auto,
    Sweep,
    Branch,
}

#[derive(Debug, Clone)]
pub struct Oracle {
    /// Largest smaller-part size the sweep will attempt.
    pub cap: usize,
    /// Search-node budget for the branch engine, per connected component.
    pub branch_budget: u64,
    /// Most sets [`Oracle::enumerate_mis`] will return.
    pub enumeration_cap: usize,
    pub engine: Engine,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: 26,
            branch_budget: 20_000_000,
            enumeration_cap: 1_000_000,
            engine: Engine::Auto,
        }
    }
}

/// Multiplier `h'` and offset `h''` of a marked graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HValues {
    pub h_prime: BigCount,
    pub h_dprime: BigCount,
}

impl Oracle {
    pub fn with_engine(engine: Engine) -> Self {
        Oracle {
            engine,
            ..Oracle::default()
        }
    }

    /// ι_m(g).
    pub fn count_mis(&self, g: &BipartiteGraph) -> Result<BigCount> {
        self.count_mis_avoiding(g, &[])
    }

    /// Number of maximal independent sets of `g` disjoint from every subset in `avoid`.
    pub fn count_mis_avoiding(&self, g: &BipartiteGraph, avoid: &[&VertexSubset]) -> Result<BigCount> {
        for s in avoid {
            s.validate(g)?;
        }
        let mut forbid_left = vec![false; g.left_size()];
        let mut forbid_right = vec![false; g.right_size()];
        for s in avoid {
            let mask = match s.side() {
                Side::Left => &mut forbid_left,
                Side::Right => &mut forbid_right,
            };
            for &i in s.members() {
                mask[i] = true;
            }
        }
        let mut total = BigUint::one();
        for (left, right) in g.components() {
            let sub = g.induced(&left, &right);
            let fl: Vec<bool> = left.iter().map(|&i| forbid_left[i]).collect();
            let fr: Vec<bool> = right.iter().map(|&i| forbid_right[i]).collect();
            let c = self.count_component(&sub, &fl, &fr)?;
            if c.is_zero() {
                return Ok(c);
            }
            total *= c;
        }
        Ok(total)
    }

    fn count_component(&self, g: &BipartiteGraph, fl: &[bool], fr: &[bool]) -> Result<BigCount> {
        let small = g.left_size().min(g.right_size());
        match self.engine {
            Engine::Sweep => Ok(BigUint::from(sweep_mis(g, fl, fr, self.cap)?)),
            Engine::Branch => branch_mis(g, fl, fr, self.branch_budget),
            Engine::Auto => {
                if small <= SWEEP_PREFERRED {
                    return Ok(BigUint::from(sweep_mis(g, fl, fr, self.cap)?));
                }
                match branch_mis(g, fl, fr, self.branch_budget) {
                    Err(Error::OracleTooLarge(_)) if small <= self.cap => {
                        Ok(BigUint::from(sweep_mis(g, fl, fr, self.cap)?))
                    }
                    other => other,
                }
            }
        }
    }

    /// Maximal independent sets meeting both `u1` and `u2`; zero when either is empty.
    pub fn count_mis_hitting(
        &self,
        g: &BipartiteGraph,
        u1: &VertexSubset,
        u2: &VertexSubset,
    ) -> Result<BigCount> {
        u1.validate(g)?;
        u2.validate(g)?;
        if u1.is_empty() || u2.is_empty() {
            return Ok(BigUint::zero());
        }
        let total = BigInt::from(self.count_mis(g)?);
        let miss1 = BigInt::from(self.count_mis_avoiding(g, &[u1])?);
        let miss2 = BigInt::from(self.count_mis_avoiding(g, &[u2])?);
        let miss12 = BigInt::from(self.count_mis_avoiding(g, &[u1, u2])?);
        let hit = total - miss1 - miss2 + miss12;
        Ok(hit.to_biguint().expect("inclusion-exclusion count is non-negative"))
    }

    /// The multiplier and offset a marked graph induces when attached.
    ///
    /// `h' = ι_m(g − U₁ − U₂)` and
    /// `h'' = ι_m(g − U₁) + ι_m(g − U₂) + #MIS hitting both − 2h'`.
    /// Errors if the offset comes out negative.
    pub fn h_values(&self, g: &BipartiteGraph, u1: &VertexSubset, u2: &VertexSubset) -> Result<HValues> {
        u1.validate(g)?;
        u2.validate(g)?;
        let h_prime = self.count_mis(&g.without(&[u1, u2]))?;
        let a = self.count_mis(&g.without(&[u1]))?;
        let b = self.count_mis(&g.without(&[u2]))?;
        let hit = self.count_mis_hitting(g, u1, u2)?;
        let dprime = BigInt::from(a) + BigInt::from(b) + BigInt::from(hit)
            - BigInt::from(2u32) * BigInt::from(h_prime.clone());
        let h_dprime = dprime
            .to_biguint()
            .ok_or_else(|| Error::InvalidArgument(format!("marked graph has negative offset {dprime}")))?;
        Ok(HValues { h_prime, h_dprime })
    }

    /// ι(g), the empty set included.
    pub fn count_is(&self, g: &BipartiteGraph) -> Result<BigCount> {
        let mut total = BigUint::one();
        for (left, right) in g.components() {
            total *= sweep_is(&g.induced(&left, &right), self.cap)?;
        }
        Ok(total)
    }

    /// Calls `f` once per maximal independent set, vertices in ascending
    /// (side, index) order. Returns the number of sets visited.
    pub fn for_each_mis(&self, g: &BipartiteGraph, mut f: impl FnMut(&[Vertex])) -> Result<usize> {
        let ctx = Unified::new(g);
        let mut chosen = Vec::new();
        let mut emitted = 0usize;
        let p = Words::full(ctx.n);
        let x = Words::zeros(ctx.n);
        ctx.enumerate(p, x, &mut chosen, &mut |set| {
            emitted += 1;
            if emitted > self.enumeration_cap {
                return false;
            }
            let mut verts: Vec<Vertex> = set.iter().map(|&i| ctx.vertex(i)).collect();
            verts.sort_unstable();
            f(&verts);
            true
        });
        if emitted > self.enumeration_cap {
            return Err(Error::EnumerationCap(self.enumeration_cap));
        }
        Ok(emitted)
    }

    pub fn enumerate_mis(&self, g: &BipartiteGraph) -> Result<Vec<Vec<Vertex>>> {
        let mut out = Vec::new();
        self.for_each_mis(g, |s| out.push(s.to_vec()))?;
        out.sort();
        Ok(out)
    }
}

pub fn count_mis(g: &BipartiteGraph) -> Result<BigCount> {
    Oracle::default().count_mis(g)
}

pub fn count_is(g: &BipartiteGraph) -> Result<BigCount> {
    Oracle::default().count_is(g)
}

pub fn count_mis_hitting(g: &BipartiteGraph, u1: &VertexSubset, u2: &VertexSubset) -> Result<BigCount> {
    Oracle::default().count_mis_hitting(g, u1, u2)
}

pub fn h_values(g: &BipartiteGraph, u1: &VertexSubset, u2: &VertexSubset) -> Result<HValues> {
    Oracle::default().h_values(g, u1, u2)
}

pub fn enumerate_mis(g: &BipartiteGraph) -> Result<Vec<Vec<Vertex>>> {
    Oracle::default().enumerate_mis(g)
}

/// The smaller part as `S` and the other as `T`, with each `T`-vertex's
/// neighbourhood packed into a mask over `S`.
struct SweepView {
    s: usize,
    t_masks: Vec<u64>,
    s_forbidden: u64,
    t_forbidden: Vec<bool>,
}

impl SweepView {
    fn new(g: &BipartiteGraph, fl: &[bool], fr: &[bool], cap: usize) -> Result<Self> {
        let small_side = if g.left_size() <= g.right_size() {
            Side::Left
        } else {
            Side::Right
        };
        let s = g.part_size(small_side);
        if s > cap.min(63) {
            return Err(Error::OracleTooLarge(format!(
                "smaller part has {s} vertices, sweep cap is {cap}"
            )));
        }
        let big_side = small_side.opposite();
        let t_masks = (0..g.part_size(big_side))
            .map(|y| {
                g.neighbor_set(Vertex { side: big_side, index: y })
                    .ones()
                    .fold(0u64, |m, x| m | (1 << x))
            })
            .collect();
        let (fs, ft) = match small_side {
            Side::Left => (fl, fr),
            Side::Right => (fr, fl),
        };
        let s_forbidden = fs
            .iter()
            .enumerate()
            .filter(|(_, f)| **f)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Ok(SweepView {
            s,
            t_masks,
            s_forbidden,
            t_forbidden: ft.to_vec(),
        })
    }
}

/// Number of chunks the subset range is split into for parallel sweeps.
const SWEEP_CHUNKS: u64 = 256;

fn sweep_mis(g: &BipartiteGraph, fl: &[bool], fr: &[bool], cap: usize) -> Result<u64> {
    let view = SweepView::new(g, fl, fr, cap)?;
    let full: u64 = if view.s == 64 { u64::MAX } else { (1u64 << view.s) - 1 };
    // Forbidden T-vertices must be dominated by A.
    let mut forbidden_t: Vec<u64> = view
        .t_masks
        .iter()
        .zip(&view.t_forbidden)
        .filter(|(_, f)| **f)
        .map(|(m, _)| *m)
        .collect();
    forbidden_t.sort_unstable();
    forbidden_t.dedup();
    if forbidden_t.contains(&0) {
        return Ok(0);
    }
    let mut masks: Vec<u64> = view.t_masks.iter().copied().filter(|&m| m != 0).collect();
    masks.sort_unstable();
    masks.dedup();
    let s_forbidden = view.s_forbidden;

    let total = 1u64 << view.s;
    let chunks = SWEEP_CHUNKS.min(total);
    let per = total.div_ceil(chunks);
    let count = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * per;
            let hi = ((c + 1) * per).min(total);
            let mut n = 0u64;
            for a in lo..hi {
                if a & s_forbidden != 0 || forbidden_t.iter().any(|&m| m & a == 0) {
                    continue;
                }
                let covered = masks
                    .iter()
                    .filter(|&&m| m & a == 0)
                    .fold(0u64, |u, &m| u | m);
                if a | covered == full {
                    n += 1;
                }
            }
            n
        })
        .sum();
    Ok(count)
}

/// ι of one graph: sum over subsets `A` of the smaller part of `2^|T \ N(A)|`.
fn sweep_is(g: &BipartiteGraph, cap: usize) -> Result<BigCount> {
    let view = SweepView::new(g, &[], &[], cap)?;
    let t = view.t_masks.len();
    let total = 1u64 << view.s;
    let chunks = SWEEP_CHUNKS.min(total);
    let per = total.div_ceil(chunks);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut h = vec![0u64; t + 1];
            for a in c * per..((c + 1) * per).min(total) {
                let free = view.t_masks.iter().filter(|&&m| m & a == 0).count();
                h[free] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; t + 1],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    Ok(hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(free, &c)| BigUint::from(c) << free)
        .sum())
}

/// Fixed-width bitset over the unified vertex numbering.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Words(Vec<u64>);

impl Words {
    fn zeros(n: usize) -> Self {
        Words(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut w = Self::zeros(n);
        for i in 0..n {
            w.insert(i);
        }
        w
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn and(&self, o: &Words) -> Words {
        Words(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, o: &Words) -> Words {
        Words(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    fn or(&self, o: &Words) -> Words {
        Words(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }

    fn and_count(&self, o: &Words) -> u32 {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Graph in a single 0..n numbering (left first) with closed neighbourhoods.
struct Unified {
    n: usize,
    left: usize,
    closed: Vec<Words>,
}

impl Unified {
    fn new(g: &BipartiteGraph) -> Self {
        let left = g.left_size();
        let n = g.vertex_count();
        let mut closed = vec![Words::zeros(n); n];
        for (i, c) in closed.iter_mut().enumerate() {
            c.insert(i);
        }
        for (l, r) in g.edges() {
            closed[l].insert(left + r);
            closed[left + r].insert(l);
        }
        Unified { n, left, closed }
    }

    fn vertex(&self, i: usize) -> Vertex {
        if i < self.left {
            Vertex::left(i)
        } else {
            Vertex::right(i - self.left)
        }
    }

    /// The vertex of `p ∪ x` with the fewest candidates in its closed
    /// neighbourhood, together with those candidates.
    fn pivot(&self, p: &Words, x: &Words) -> (usize, Words) {
        let mut best = usize::MAX;
        let mut best_count = u32::MAX;
        for v in p.or(x).ones() {
            let c = self.closed[v].and_count(p);
            if c < best_count {
                best = v;
                best_count = c;
                if c <= 1 {
                    break;
                }
            }
        }
        let cands = self.closed[best].and(p);
        (best, cands)
    }

    /// Components of the subgraph induced by `alive`.
    fn components(&self, alive: &Words) -> Vec<Words> {
        let mut rest = alive.clone();
        let mut out = Vec::new();
        loop {
            let Some(start) = rest.ones().next() else {
                break;
            };
            let mut comp = Words::zeros(self.n);
            comp.insert(start);
            let mut frontier = comp.clone();
            loop {
                let mut grown = comp.clone();
                for v in frontier.ones() {
                    grown = grown.or(&self.closed[v].and(alive));
                }
                let new = grown.and_not(&comp);
                if new.is_empty() {
                    break;
                }
                comp = grown;
                frontier = new;
            }
            rest = rest.and_not(&comp);
            out.push(comp);
        }
        out
    }

    fn enumerate(
        &self,
        mut p: Words,
        mut x: Words,
        chosen: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if p.is_empty() {
            if x.is_empty() {
                return emit(chosen);
            }
            return true;
        }
        let (_, cands) = self.pivot(&p, &x);
        for v in cands.ones() {
            chosen.push(v);
            let keep = self.enumerate(
                p.and_not(&self.closed[v]),
                x.and_not(&self.closed[v]),
                chosen,
                emit,
            );
            chosen.pop();
            if !keep {
                return false;
            }
            p.remove(v);
            x.insert(v);
        }
        true
    }
}

struct BranchCounter<'a> {
    g: &'a Unified,
    budget: u64,
    nodes: u64,
    memo: HashMap<(Words, Words), BigUint>,
}

/// Memo entries kept before the table is flushed.
const MEMO_LIMIT: usize = 1 << 20;

impl BranchCounter<'_> {
    /// Independent sets `I ⊆ p` dominating every vertex of `p ∪ x`.
    fn count(&mut self, p: Words, x: Words) -> Result<BigUint> {
        if p.is_empty() {
            return Ok(if x.is_empty() { BigUint::one() } else { BigUint::zero() });
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::OracleTooLarge(format!(
                "branch search exceeded {} nodes",
                self.budget
            )));
        }
        let alive = p.or(&x);
        let comps = self.g.components(&alive);
        if comps.len() > 1 {
            let mut total = BigUint::one();
            for c in comps {
                let part = self.count(p.and(&c), x.and(&c))?;
                if part.is_zero() {
                    return Ok(part);
                }
                total *= part;
            }
            return Ok(total);
        }
        let key = (p.clone(), x.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let (_, cands) = self.g.pivot(&p, &x);
        let mut total = BigUint::zero();
        if cands.count() > 0 {
            let (mut p, mut x) = (p, x);
            for v in cands.ones() {
                let nv = &self.g.closed[v];
                total += self.count(p.and_not(nv), x.and_not(nv))?;
                p.remove(v);
                x.insert(v);
            }
        }
        if self.memo.len() >= MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

fn branch_mis(g: &BipartiteGraph, fl: &[bool], fr: &[bool], budget: u64) -> Result<BigCount> {
    let u = Unified::new(g);
    let mut p = Words::full(u.n);
    let mut x = Words::zeros(u.n);
    for (i, _) in fl.iter().enumerate().filter(|(_, f)| **f) {
        p.remove(i);
        x.insert(i);
    }
    for (j, _) in fr.iter().enumerate().filter(|(_, f)| **f) {
        p.remove(u.left + j);
        x.insert(u.left + j);
    }
    let mut counter = BranchCounter {
        g: &u,
        budget,
        nodes: 0,
        memo: HashMap::new(),
    };
    counter.count(p, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, corona, disjoint_union, matching, path, single_vertex, star};

    fn all_engines(g: &BipartiteGraph) -> BigCount {
        let a = Oracle::with_engine(Engine::Sweep).count_mis(g).unwrap();
        let b = Oracle::with_engine(Engine::Branch).count_mis(g).unwrap();
        assert_eq!(a, b, "engines disagree on {g:?}");
        a
    }

    #[test]
    fn small_counts() {
        assert_eq!(all_engines(&complete_bipartite(1, 1).unwrap()), 2u32.into());
        assert_eq!(all_engines(&single_vertex()), 1u32.into());
        assert_eq!(all_engines(&corona(4).unwrap()), 6u32.into());
        assert_eq!(all_engines(&BipartiteGraph::empty()), 1u32.into());
        assert_eq!(all_engines(&path(4).unwrap()), 3u32.into());
    }

    #[test]
    fn path_counts_follow_padovan_recurrence() {
        let mut expect = vec![0u64, 1, 2, 2];
        for r in 4..=10 {
            let next = expect[r - 2] + expect[r - 3];
            expect.push(next);
        }
        for (r, &e) in expect.iter().enumerate().skip(1) {
            assert_eq!(all_engines(&path(r).unwrap()), e.into(), "P{r}");
        }
    }

    #[test]
    fn corona_counts() {
        for r in 2..=12 {
            assert_eq!(all_engines(&corona(r).unwrap()), BigUint::from(r + 2));
        }
    }

    #[test]
    fn p4_sets() {
        let sets = enumerate_mis(&path(4).unwrap()).unwrap();
        // Path order l0 r0 l1 r1; 1-based labels {1,3} {1,4} {2,4}.
        let expect = vec![
            vec![Vertex::left(0), Vertex::left(1)],
            vec![Vertex::left(0), Vertex::right(1)],
            vec![Vertex::right(0), Vertex::right(1)],
        ];
        assert_eq!(sets, expect);
    }

    #[test]
    fn enumerate_single_vertex_and_matching() {
        assert_eq!(enumerate_mis(&single_vertex()).unwrap(), vec![vec![Vertex::left(0)]]);
        assert_eq!(enumerate_mis(&matching(2)).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let oracle = Oracle {
            enumeration_cap: 3,
            ..Oracle::default()
        };
        assert!(matches!(oracle.enumerate_mis(&matching(2)), Err(Error::EnumerationCap(3))));
        assert_eq!(oracle.enumerate_mis(&path(4).unwrap()).unwrap().len(), 3);
    }

    #[test]
    fn independent_set_counts() {
        assert_eq!(count_is(&star(2).unwrap()).unwrap(), 5u32.into());
        assert_eq!(count_is(&BipartiteGraph::empty()).unwrap(), 1u32.into());
        assert_eq!(count_is(&complete_bipartite(1, 1).unwrap()).unwrap(), 3u32.into());
        assert_eq!(count_is(&path(4).unwrap()).unwrap(), 8u32.into());
    }

    #[test]
    fn hitting_counts() {
        let g = matching(2);
        let u1 = VertexSubset::new(Side::Left, [0]);
        let u2 = VertexSubset::new(Side::Right, [1]);
        assert_eq!(count_mis_hitting(&g, &u1, &u2).unwrap(), 1u32.into());
        assert_eq!(
            count_mis_hitting(&g, &VertexSubset::empty(Side::Left), &u2).unwrap(),
            0u32.into()
        );
    }

    #[test]
    fn h_values_of_plain_graphs() {
        let e = VertexSubset::empty(Side::Left);
        let f = VertexSubset::empty(Side::Right);
        let hv = h_values(&complete_bipartite(1, 1).unwrap(), &e, &f).unwrap();
        assert_eq!((hv.h_prime, hv.h_dprime), (2u32.into(), 0u32.into()));
        let hv = h_values(&path(4).unwrap(), &e, &f).unwrap();
        assert_eq!((hv.h_prime, hv.h_dprime), (3u32.into(), 0u32.into()));
    }

    #[test]
    fn sweep_respects_cap() {
        let oracle = Oracle {
            cap: 3,
            engine: Engine::Sweep,
            ..Oracle::default()
        };
        assert!(matches!(oracle.count_mis(&corona(4).unwrap()), Err(Error::OracleTooLarge(_))));
        // Components are swept separately.
        let g = disjoint_union(&corona(3).unwrap(), &corona(3).unwrap());
        assert_eq!(oracle.count_mis(&g).unwrap(), 25u32.into());
    }

    #[test]
    fn branch_respects_budget() {
        let oracle = Oracle {
            branch_budget: 2,
            engine: Engine::Branch,
            ..Oracle::default()
        };
        assert!(matches!(oracle.count_mis(&corona(6).unwrap()), Err(Error::OracleTooLarge(_))));
    }

    #[test]
    fn large_crown_uses_branch_engine() {
        assert_eq!(count_mis(&corona(50).unwrap()).unwrap(), 52u32.into());
    }
}
