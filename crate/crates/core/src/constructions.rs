//! Count-transforming graph operations.
//!
//! Every operation takes graphs whose maximal-independent-set count is
//! already certified and returns a new graph together with its count, so
//! nothing here calls the oracle. Each result carries a ledger of the steps
//! that produced it; [`replay`] rebuilds the graph from the ledger alone and
//! checks every recorded count and size along the way.
//!
//! Operations on a host graph `G` require `G` to have no isolated vertices
//! and `ι_m(G) ≥ 2`.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::decimal;
use crate::gadgets::{BaseGraph, GadgetJson, MarkedGadget};
use crate::graph::{self, join_many, star, BipartiteGraph, Side, VertexSubset};
use crate::oracle::Oracle;
use crate::pattern::Word;
use crate::BigCount;

/// Largest `t` accepted by [`mersenne_forest`]; the forest has `2^t + t − 1`
/// vertices.
pub const MAX_MERSENNE_T: u32 = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum StepKind {
    /// Pushes a base graph.
    Base { graph: BaseGraph },
    /// Pushes a graph counted by the oracle; replay recounts it.
    Explicit { graph: BipartiteGraph },
    AttachGadget { gadget: GadgetJson },
    AddMatching { edges: usize },
    DoublePlusOne,
    PlusTwo,
    /// Pops `h`, then `g`, pushes their sum construction.
    SumGraphs,
    /// Pops `h`, then `g`, pushes `2^{st}·g + ((2^{st}−1)/(2^t−1))·h`.
    MultiplyShiftAdd { s: usize, t: usize },
    /// Checkpoint after appending `word^reps` to the binary expansion of the
    /// count on top of the stack. Builds nothing.
    AppendPeriodic { word: String, reps: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionStep {
    #[serde(flatten)]
    pub kind: StepKind,
    /// Count of the graph on top of the stack after this step.
    #[serde(with = "decimal")]
    pub predicted_count: BigCount,
    pub vertex_count: usize,
}

/// A graph, its certified count and the steps that built it.
#[derive(Debug, Clone)]
pub struct Construction {
    pub graph: BipartiteGraph,
    pub count: BigCount,
    pub ledger: Vec<ConstructionStep>,
}

impl Construction {
    pub fn base(kind: BaseGraph) -> Result<Self> {
        let graph = kind.build()?;
        let count = BigCount::from(kind.count());
        let mut c = Construction { graph, count, ledger: Vec::new() };
        c.record(StepKind::Base { graph: kind });
        Ok(c)
    }

    /// Starts from an arbitrary graph, counted with `oracle`.
    pub fn from_graph(graph: BipartiteGraph, oracle: &Oracle) -> Result<Self> {
        let count = oracle.count_mis(&graph)?;
        let mut c = Construction { graph: graph.clone(), count, ledger: Vec::new() };
        c.record(StepKind::Explicit { graph });
        Ok(c)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn record(&mut self, kind: StepKind) {
        self.ledger.push(ConstructionStep {
            kind,
            predicted_count: self.count.clone(),
            vertex_count: self.graph.vertex_count(),
        });
    }

    fn require_host(&self) -> Result<()> {
        require_host(&self.graph, &self.count)
    }
}

fn require_host(g: &BipartiteGraph, count: &BigCount) -> Result<()> {
    g.require_no_isolated()?;
    if *count < BigUint::from(2u32) {
        return Err(Error::CountTooSmall { required: 2, actual: count.clone() });
    }
    Ok(())
}

/// Source of helper graphs with a prescribed count.
pub trait Realizer {
    fn realize_count(&self, n: &BigCount) -> Result<Construction>;
}

// Raw graph operations, shared by the public operations and by replay.

/// `g` with `gadget` attached: `U₁` joined to `L_G`, `U₂` to `R_G`. The gadget
/// is flipped so that `U₁` sits on the right part of the result.
fn attach_raw(
    g: &BipartiteGraph,
    gadget: &BipartiteGraph,
    u1: &VertexSubset,
    u2: &VertexSubset,
) -> Result<BipartiteGraph> {
    u1.validate(gadget)?;
    u2.validate(gadget)?;
    let flipped = gadget.flipped();
    let u1f = VertexSubset::new(Side::Right, u1.members().iter().copied());
    let u2f = VertexSubset::new(Side::Left, u2.members().iter().copied());
    let lg = VertexSubset::all(g, Side::Left);
    let rg = VertexSubset::all(g, Side::Right);
    join_many(g, &flipped, &[(&lg, &u1f), (&rg, &u2f)])
}

/// `P₄ = l0-r0-l1-r1` marked at the given left vertices.
fn p4_attach(g: &BipartiteGraph, u1: &[usize]) -> Result<BipartiteGraph> {
    let p4 = graph::path(4)?;
    attach_raw(
        g,
        &p4,
        &VertexSubset::new(Side::Left, u1.iter().copied()),
        &VertexSubset::empty(Side::Right),
    )
}

fn double_plus_one_raw(g: &BipartiteGraph) -> Result<BipartiteGraph> {
    p4_attach(g, &[1])
}

fn plus_two_raw(g: &BipartiteGraph) -> Result<BipartiteGraph> {
    p4_attach(g, &[0, 1])
}

/// `h` itself as a gadget with `U₁ = L_h`, `U₂ = R_h` (`h' = 1`,
/// `h'' = ι_m(h) − 2`), followed by `+2`.
fn sum_raw(g: &BipartiteGraph, h: &BipartiteGraph) -> Result<BipartiteGraph> {
    let joined = attach_raw(g, h, &VertexSubset::all(h, Side::Left), &VertexSubset::all(h, Side::Right))?;
    plus_two_raw(&joined)
}

fn multiplier(s: usize, t: usize) -> BigCount {
    ((BigCount::one() << (s * t)) - 1u32) / ((BigCount::one() << t) - 1u32)
}

/// `s−1` rows of `t+1` columns: `u_{i,j} v_{i,j}` for `j ≤ t`, and
/// `u_{i,j} v_{k,t+1}` whenever `i ≤ k`. Vertex `(i, j)` (0-based) has index
/// `i·(t+1) + j` in its part.
fn staircase_edges(rows: usize, t: usize) -> Vec<(usize, usize)> {
    let idx = |i: usize, j: usize| i * (t + 1) + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..t {
            edges.push((idx(i, j), idx(i, j)));
        }
        for k in i..rows {
            for j in 0..=t {
                edges.push((idx(i, j), idx(k, t)));
            }
        }
    }
    edges
}

/// The grid gadget alone, with `(2^{st}−1)/(2^t−1)` maximal independent sets.
pub fn staircase_graph(s: usize, t: usize) -> Result<BipartiteGraph> {
    if s < 2 || t < 1 {
        return Err(Error::InvalidArgument(format!("staircase needs s >= 2 and t >= 1, got s={s}, t={t}")));
    }
    let n = (s - 1) * (t + 1);
    BipartiteGraph::from_edges(n, n, staircase_edges(s - 1, t))
}

fn multiply_shift_add_raw(g: &BipartiteGraph, h: &BipartiteGraph, s: usize, t: usize) -> Result<BipartiteGraph> {
    if s == 1 {
        return sum_raw(&graph::add_matching(g, t), h);
    }
    let (gl, gr, hl, hr) = (g.left_size(), g.right_size(), h.left_size(), h.right_size());
    let cells = (s - 1) * (t + 1);
    // Left part: L_G, L_H, w, ũ_1..ũ_t, u grid. Right part: R_G, R_H, ṽ_1..ṽ_t, v grid.
    let (l_h, w, l_tilde, l_grid) = (gl, gl + hl, gl + hl + 1, gl + hl + 1 + t);
    let (r_h, r_tilde, r_grid) = (gr, gr + hr, gr + hr + t);
    let mut out = BipartiteGraph::new(l_grid + cells, r_grid + cells);
    for (a, b) in g.edges() {
        out.insert_edge(a, b);
    }
    for (a, b) in h.edges() {
        out.insert_edge(l_h + a, r_h + b);
    }
    for a in 0..gl {
        for b in 0..hr {
            out.insert_edge(a, r_h + b);
        }
    }
    for b in 0..gr {
        for a in 0..hl {
            out.insert_edge(l_h + a, b);
        }
    }
    for b in 0..gr {
        out.insert_edge(w, b);
    }
    for b in 0..hr {
        out.insert_edge(w, r_h + b);
    }
    for i in 0..t {
        out.insert_edge(l_tilde + i, r_tilde + i);
        for b in 0..hr {
            out.insert_edge(l_tilde + i, r_h + b);
        }
        for a in 0..hl {
            out.insert_edge(l_h + a, r_tilde + i);
        }
    }
    for (a, b) in staircase_edges(s - 1, t) {
        out.insert_edge(l_grid + a, r_grid + b);
    }
    for i in 0..s - 1 {
        let last = i * (t + 1) + t;
        for b in 0..gr {
            out.insert_edge(l_grid + last, b);
        }
        for a in 0..gl {
            out.insert_edge(a, r_grid + last);
        }
    }
    plus_two_raw(&out)
}

// Public operations.

/// Attaches a marked gadget: `ι_m = h'·ι_m(G) + h''`.
pub fn attach_gadget(c: Construction, gadget: &MarkedGadget) -> Result<Construction> {
    c.require_host()?;
    let graph = attach_raw(&c.graph, &gadget.graph, &gadget.u1, &gadget.u2)?;
    let count = &c.count * gadget.h_prime + gadget.h_dprime;
    let mut out = Construction { graph, count, ledger: c.ledger };
    out.record(StepKind::AttachGadget { gadget: gadget.to_json() });
    Ok(out)
}

/// Adds `m` disjoint edges, multiplying the count by `2^m`.
pub fn add_matching(c: Construction, m: usize) -> Result<Construction> {
    c.require_host()?;
    let graph = graph::add_matching(&c.graph, m);
    let count = &c.count << m;
    let mut out = Construction { graph, count, ledger: c.ledger };
    out.record(StepKind::AddMatching { edges: m });
    Ok(out)
}

/// `2·ι_m(G) + 1`, four extra vertices.
pub fn double_plus_one(c: Construction) -> Result<Construction> {
    c.require_host()?;
    let graph = double_plus_one_raw(&c.graph)?;
    let count = (&c.count << 1) + 1u32;
    let mut out = Construction { graph, count, ledger: c.ledger };
    out.record(StepKind::DoublePlusOne);
    Ok(out)
}

/// `ι_m(G) + 2`, four extra vertices.
pub fn plus_two(c: Construction) -> Result<Construction> {
    c.require_host()?;
    let graph = plus_two_raw(&c.graph)?;
    let count = &c.count + 2u32;
    let mut out = Construction { graph, count, ledger: c.ledger };
    out.record(StepKind::PlusTwo);
    Ok(out)
}

/// `ι_m(G) + ι_m(H)` on `ν(G) + ν(H) + 4` vertices.
pub fn sum_graphs(g: Construction, h: Construction) -> Result<Construction> {
    g.require_host()?;
    h.require_host()?;
    let graph = sum_raw(&g.graph, &h.graph)?;
    let count = &g.count + &h.count;
    let mut ledger = g.ledger;
    ledger.extend(h.ledger);
    let mut out = Construction { graph, count, ledger };
    out.record(StepKind::SumGraphs);
    Ok(out)
}

/// `2^{st}·ι_m(G) + ((2^{st}−1)/(2^t−1))·ι_m(H)`, using at most
/// `ν(G) + ν(H) + 2s(t+1) + 3` vertices.
pub fn multiply_shift_add(g: Construction, h: Construction, s: usize, t: usize) -> Result<Construction> {
    if s < 1 || t < 1 {
        return Err(Error::InvalidArgument(format!("multiply_shift_add needs s, t >= 1, got s={s}, t={t}")));
    }
    g.require_host()?;
    h.require_host()?;
    let bound = g.vertex_count() + h.vertex_count() + 2 * s * (t + 1) + 3;
    let graph = multiply_shift_add_raw(&g.graph, &h.graph, s, t)?;
    assert!(graph.vertex_count() <= bound, "multiply_shift_add({s}, {t}) used {} > {bound} vertices", graph.vertex_count());
    let count = (&g.count << (s * t)) + multiplier(s, t) * &h.count;
    let mut ledger = g.ledger;
    ledger.extend(h.ledger);
    let mut out = Construction { graph, count, ledger };
    out.record(StepKind::MultiplyShiftAdd { s, t });
    Ok(out)
}

fn helper(realizer: &dyn Realizer, word: &Word) -> Result<Construction> {
    let value = word.value();
    let h = realizer.realize_count(&value)?;
    if h.count != value {
        return Err(Error::InvalidArgument(format!("realizer returned count {} for {value}", h.count)));
    }
    let limit = 3 * word.len();
    if h.vertex_count() > limit {
        return Err(Error::InvalidArgument(format!(
            "helper for {value} has {} vertices, more than 3·{} = {limit}",
            h.vertex_count(),
            word.len()
        )));
    }
    Ok(h)
}

/// Appends one copy of `word` to the binary expansion of the count.
fn append_word(c: Construction, word: &Word, realizer: &dyn Realizer) -> Result<Construction> {
    let p = word.len();
    if word.is_all_zero() {
        add_matching(c, p)
    } else if word.is_unit() {
        let c = if p > 1 { add_matching(c, p - 1)? } else { c };
        double_plus_one(c)
    } else {
        let h = helper(realizer, word)?;
        multiply_shift_add(c, h, 1, p)
    }
}

/// Smallest `k` with `k²·p ≥ q`, i.e. `⌈√(q/p)⌉`.
fn ceil_sqrt_ratio(q: u64, p: u64) -> u64 {
    let mut k = ((q as f64 / p as f64).sqrt().ceil() as u64).max(1);
    while k > 1 && (k - 1) * (k - 1) * p >= q {
        k -= 1;
    }
    while k * k * p < q {
        k += 1;
    }
    k
}

/// Appends `word^q` to the binary expansion of the count: the result has
/// count `ι_m(G)·2^{pq} + value(word^q)` where `p = |word|`, and uses at most
/// `2pq + 20(p + √(pq))` extra vertices.
pub fn append_periodic(c: Construction, word: &Word, q: u64, realizer: &dyn Realizer) -> Result<Construction> {
    if word.is_empty() || q == 0 {
        return Err(Error::InvalidArgument("append_periodic needs a non-empty word and q >= 1".into()));
    }
    c.require_host()?;
    let p = word.len();
    let start_nu = c.vertex_count();
    let expected = (&c.count << (p * q as usize)) + word.repeat(q as usize).value();

    let mut out = if word.is_all_zero() {
        add_matching(c, p * q as usize)?
    } else if q == 1 {
        append_word(c, word, realizer)?
    } else {
        let k = ceil_sqrt_ratio(q, p as u64).max(2);
        let (s, r) = (q / k, q % k);
        let block = word.repeat(k as usize);
        let h = helper(realizer, &block)?;
        let mut out = multiply_shift_add(c, h, s as usize, p * k as usize)?;
        if r > 0 {
            out = append_word(out, &word.repeat(r as usize), realizer)?;
        }
        out
    };

    assert_eq!(out.count, expected, "append_periodic({word}, {q}) produced the wrong count");
    let added = (out.vertex_count() - start_nu) as f64;
    let (pf, qf) = (p as f64, q as f64);
    let bound = 2.0 * pf * qf + 20.0 * (pf + (pf * qf).sqrt());
    assert!(added <= bound, "append_periodic({word}, {q}) added {added} > {bound} vertices");
    out.record(StepKind::AppendPeriodic { word: word.to_string(), reps: q });
    Ok(out)
}

/// Disjoint union of the stars `K_{2^j,1}` for `j < t`: `ι = 2^{2^t} − 1`
/// independent sets on `2^t − 1 + t` vertices.
pub fn mersenne_forest(t: u32) -> Result<BipartiteGraph> {
    if !(1..=MAX_MERSENNE_T).contains(&t) {
        return Err(Error::InvalidArgument(format!("mersenne forest needs 1 <= t <= {MAX_MERSENNE_T}, got {t}")));
    }
    let mut g = BipartiteGraph::empty();
    for j in 0..t {
        g = graph::disjoint_union(&g, &star(1 << j)?);
    }
    Ok(g)
}

/// Rebuilds a construction from its ledger, checking each recorded count and
/// vertex count. Gadgets and explicit graphs in the ledger are recounted with
/// `oracle`.
pub fn replay(ledger: &[ConstructionStep], oracle: &Oracle) -> Result<Construction> {
    let mut stack: Vec<(BipartiteGraph, BigCount)> = Vec::new();
    for (i, step) in ledger.iter().enumerate() {
        let fail = |reason: String| Error::Replay { step: i, reason };
        let wrap = |e: Error| Error::Replay { step: i, reason: e.to_string() };
        let host = |stack: &mut Vec<(BipartiteGraph, BigCount)>| {
            let top = stack.pop().ok_or_else(|| fail("stack is empty".into()))?;
            require_host(&top.0, &top.1).map_err(wrap)?;
            Ok::<_, Error>(top)
        };
        match &step.kind {
            StepKind::Base { graph } => {
                stack.push((graph.build().map_err(wrap)?, BigCount::from(graph.count())));
            }
            StepKind::Explicit { graph } => {
                let n = oracle.count_mis(graph).map_err(wrap)?;
                stack.push((graph.clone(), n));
            }
            StepKind::AttachGadget { gadget } => {
                let gadget = MarkedGadget::from_json(gadget.clone(), oracle).map_err(wrap)?;
                let (g, n) = host(&mut stack)?;
                let g = attach_raw(&g, &gadget.graph, &gadget.u1, &gadget.u2).map_err(wrap)?;
                stack.push((g, n * gadget.h_prime + gadget.h_dprime));
            }
            StepKind::AddMatching { edges } => {
                let (g, n) = host(&mut stack)?;
                stack.push((graph::add_matching(&g, *edges), n << *edges));
            }
            StepKind::DoublePlusOne => {
                let (g, n) = host(&mut stack)?;
                stack.push((double_plus_one_raw(&g).map_err(wrap)?, (n << 1) + 1u32));
            }
            StepKind::PlusTwo => {
                let (g, n) = host(&mut stack)?;
                stack.push((plus_two_raw(&g).map_err(wrap)?, n + 2u32));
            }
            StepKind::SumGraphs => {
                let (h, nh) = host(&mut stack)?;
                let (g, ng) = host(&mut stack)?;
                stack.push((sum_raw(&g, &h).map_err(wrap)?, ng + nh));
            }
            StepKind::MultiplyShiftAdd { s, t } => {
                if *s < 1 || *t < 1 {
                    return Err(fail(format!("bad parameters s={s}, t={t}")));
                }
                let (h, nh) = host(&mut stack)?;
                let (g, ng) = host(&mut stack)?;
                let graph = multiply_shift_add_raw(&g, &h, *s, *t).map_err(wrap)?;
                stack.push((graph, (ng << (s * t)) + multiplier(*s, *t) * nh));
            }
            StepKind::AppendPeriodic { .. } => {
                if stack.is_empty() {
                    return Err(fail("checkpoint on an empty stack".into()));
                }
            }
        }
        let (g, n) = stack.last().expect("every step leaves a graph on the stack");
        if *n != step.predicted_count {
            return Err(fail(format!("recorded count {}, replayed count {n}", step.predicted_count)));
        }
        if g.vertex_count() != step.vertex_count {
            return Err(fail(format!(
                "recorded {} vertices, replay has {}",
                step.vertex_count,
                g.vertex_count()
            )));
        }
    }
    match stack.len() {
        1 => {
            let (graph, count) = stack.pop().unwrap();
            Ok(Construction { graph, count, ledger: ledger.to_vec() })
        }
        n => Err(Error::Replay { step: ledger.len(), reason: format!("{n} graphs left on the stack") }),
    }
}
