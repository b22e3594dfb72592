//! Top-level realization of a count `n` or a periodic binary pattern.
//!
//! [`Synthesizer::realize`] peels gadgets off `n` greedily until it reaches
//! the base table. [`Synthesizer::realize_compact`] searches gadget chains and
//! small sums for the fewest vertices instead; it is the source of the helper
//! graphs used by pattern mode, whose size must stay below three vertices per
//! bit.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::{self, append_periodic, Construction, ConstructionStep, Realizer};
use crate::error::{Error, Result};
use crate::format::decimal;
use crate::gadgets::{load_base_table, load_gamma_family, BaseGraph, BaseTable, GadgetFamily};
use crate::graph::BipartiteGraph;
use crate::oracle::Oracle;
use crate::pattern::{BinaryPattern, Word};
use crate::BigCount;

/// Per-bit slope of the vertex budget.
pub const BUDGET_SLOPE: f64 = 2.88;

/// Counts up to this value get an exhaustive small-graph table in compact mode.
const COMPACT_TABLE_MIN: u64 = 52;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexCertificate {
    pub vertices: usize,
    /// `2.88·log₂n + ν₀`.
    pub budget: f64,
    /// `2·log₂n`.
    pub lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationResult {
    pub graph: BipartiteGraph,
    pub ledger: Vec<ConstructionStep>,
    #[serde(with = "decimal")]
    pub target: BigCount,
    pub certificate: VertexCertificate,
}

impl RealizationResult {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Count certified by the last ledger step.
    pub fn ledger_count(&self) -> Option<&BigCount> {
        self.ledger.last().map(|s| &s.predicted_count)
    }

    /// Rebuilds the graph from the ledger and checks it against `graph`.
    pub fn replay(&self, oracle: &Oracle) -> Result<()> {
        let c = constructions::replay(&self.ledger, oracle)?;
        if c.graph != self.graph {
            return Err(Error::Replay { step: self.ledger.len(), reason: "replayed graph differs".into() });
        }
        if c.count != self.target {
            return Err(Error::Replay {
                step: self.ledger.len(),
                reason: format!("ledger certifies {}, target is {}", c.count, self.target),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexReport {
    pub vertices: usize,
    /// `⌈2·log₂n⌉`.
    pub lower_bound: u64,
    pub budget: f64,
    /// `ν / log₂n`; absent for `n = 1`.
    pub ratio: Option<f64>,
}

impl std::fmt::Display for VertexReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "vertices: {}\nlower bound: {}\nbudget: {:.2}\n", self.vertices, self.lower_bound, self.budget)?;
        match self.ratio {
            Some(r) => writeln!(f, "ratio: {r:.4}"),
            None => writeln!(f, "ratio: n/a"),
        }
    }
}

/// `log₂ n` for arbitrarily large `n`, accurate to double precision.
pub fn log2(n: &BigCount) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map_or(0.0, |v| (v as f64).log2());
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("top 64 bits fit");
    (top as f64).log2() + shift as f64
}

pub fn vertex_report(r: &RealizationResult) -> VertexReport {
    let lg = log2(&r.target);
    VertexReport {
        vertices: r.vertex_count(),
        lower_bound: (2.0 * lg - 1e-9).ceil().max(0.0) as u64,
        budget: r.certificate.budget,
        ratio: (lg > 0.0).then(|| r.vertex_count() as f64 / lg),
    }
}

/// How a small count is built in compact mode.
#[derive(Debug, Clone, Copy)]
enum Recipe {
    Base(BaseGraph),
    Attach { gadget: usize, from: u64 },
    DoublePlusOne(u64),
    PlusTwo(u64),
    Sum(u64, u64),
}

pub struct Synthesizer {
    family: GadgetFamily,
    base: BaseTable,
    /// Compact recipes indexed by count; entry 0 is unused.
    small: Vec<(usize, Recipe)>,
}

impl Synthesizer {
    /// Synthesizer over the shipped gadget family.
    pub fn new() -> Result<Self> {
        Self::with_family(load_gamma_family()?)
    }

    pub fn with_family(family: GadgetFamily) -> Result<Self> {
        let base = load_base_table(family.n0().max(4))?;
        let small = compact_table(&family, COMPACT_TABLE_MIN.max(family.n0()));
        Ok(Synthesizer { family, base, small })
    }

    pub fn family(&self) -> &GadgetFamily {
        &self.family
    }

    pub fn base_table(&self) -> &BaseTable {
        &self.base
    }

    /// `ν₀`, the largest base-table graph.
    pub fn nu0(&self) -> usize {
        self.base.max_vertices()
    }

    fn result(&self, c: Construction, target: BigCount) -> RealizationResult {
        assert_eq!(c.count, target, "construction certifies the wrong count");
        let lg = log2(&target);
        RealizationResult {
            certificate: VertexCertificate {
                vertices: c.graph.vertex_count(),
                budget: BUDGET_SLOPE * lg + self.nu0() as f64,
                lower_bound: 2.0 * lg,
            },
            graph: c.graph,
            ledger: c.ledger,
            target,
        }
    }

    /// Greedy realization: base table up to `n0`, then the cheapest gadget
    /// whose progression contains `n`, repeated.
    pub fn realize_construction(&self, n: &BigCount) -> Result<Construction> {
        if n.is_zero() {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let n0 = BigUint::from(self.family.n0());
        let mut chain = Vec::new();
        let mut m = n.clone();
        while m > n0 {
            let (idx, k) = self
                .family
                .select(&m)
                .ok_or_else(|| Error::Coverage(format!("no gadget produces {m}")))?;
            chain.push(idx);
            m = k;
        }
        let m = m.to_u64().expect("m <= n0");
        let kind = self.base.kind(m).expect("base table covers [1, n0]");
        let mut c = Construction::base(kind)?;
        for &idx in chain.iter().rev() {
            c = constructions::attach_gadget(c, &self.family.members()[idx])?;
        }
        Ok(c)
    }

    pub fn realize(&self, n: &BigCount) -> Result<RealizationResult> {
        Ok(self.result(self.realize_construction(n)?, n.clone()))
    }

    /// Vertex count of the compact realization of `n`, without building it.
    pub fn compact_vertex_count(&self, n: &BigCount) -> Result<usize> {
        Ok(self.compact_plan(n)?.0)
    }

    /// Gadget chain from `n` down to the small table, chosen to minimise the
    /// total vertex count.
    fn compact_plan(&self, n: &BigCount) -> Result<(usize, Vec<usize>, u64)> {
        if n.is_zero() {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let small_max = BigUint::from(self.small.len() as u64 - 1);
        let members = self.family.members();
        // memo: n -> (ν, chosen gadget, k)
        let mut memo: HashMap<BigCount, (usize, usize, BigCount)> = HashMap::new();
        let cost = |m: &BigCount, memo: &HashMap<BigCount, (usize, usize, BigCount)>| -> Option<usize> {
            if *m <= small_max {
                Some(self.small[m.to_usize().unwrap()].0)
            } else {
                memo.get(m).map(|e| e.0)
            }
        };
        let mut stack = vec![n.clone()];
        while let Some(m) = stack.last().cloned() {
            if cost(&m, &memo).is_some() {
                stack.pop();
                continue;
            }
            let options: Vec<(usize, BigCount)> =
                members.iter().enumerate().filter_map(|(i, g)| g.preimage(&m).map(|k| (i, k))).collect();
            if options.is_empty() {
                return Err(Error::Coverage(format!("no gadget produces {m}")));
            }
            let missing: Vec<BigCount> =
                options.iter().filter(|(_, k)| cost(k, &memo).is_none()).map(|(_, k)| k.clone()).collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let best = options
                .into_iter()
                .map(|(i, k)| (cost(&k, &memo).unwrap() + members[i].vertex_count(), i, k))
                .min_by_key(|(nu, i, _)| (*nu, *i))
                .unwrap();
            memo.insert(m, best);
            stack.pop();
        }
        let mut chain = Vec::new();
        let mut m = n.clone();
        while m > small_max {
            let (_, i, k) = memo[&m].clone();
            chain.push(i);
            m = k;
        }
        let m = m.to_u64().unwrap();
        let nu = cost(n, &memo).unwrap();
        Ok((nu, chain, m))
    }

    fn build_small(&self, n: u64) -> Result<Construction> {
        match self.small[n as usize].1 {
            Recipe::Base(kind) => Construction::base(kind),
            Recipe::Attach { gadget, from } => {
                constructions::attach_gadget(self.build_small(from)?, &self.family.members()[gadget])
            }
            Recipe::DoublePlusOne(from) => constructions::double_plus_one(self.build_small(from)?),
            Recipe::PlusTwo(from) => constructions::plus_two(self.build_small(from)?),
            Recipe::Sum(a, b) => constructions::sum_graphs(self.build_small(a)?, self.build_small(b)?),
        }
    }

    /// Fewest-vertex realization reachable with base graphs, family gadgets,
    /// `2x+1`, `x+2` and sums.
    pub fn compact_construction(&self, n: &BigCount) -> Result<Construction> {
        let (nu, chain, m) = self.compact_plan(n)?;
        let mut c = self.build_small(m)?;
        for &idx in chain.iter().rev() {
            c = constructions::attach_gadget(c, &self.family.members()[idx])?;
        }
        debug_assert_eq!(c.graph.vertex_count(), nu);
        Ok(c)
    }

    pub fn realize_compact(&self, n: &BigCount) -> Result<RealizationResult> {
        Ok(self.result(self.compact_construction(n)?, n.clone()))
    }

    /// Realizes the number whose binary expansion is the expanded pattern.
    ///
    /// The first block seeds the graph with its word's value and the rest is
    /// appended block by block. A seed of value one would be `K₁`, which has
    /// an isolated vertex, so in that case the first two expanded bits form
    /// the seed instead.
    pub fn realize_pattern(&self, p: &BinaryPattern) -> Result<RealizationResult> {
        let target = p.value();
        let blocks = p.blocks();
        let (w1, q1) = &blocks[0];
        let (seed, rest): (Word, Vec<(Word, u64)>) = if w1.len() > 1 {
            (w1.clone(), std::iter::once((w1.clone(), q1 - 1)).chain(blocks[1..].iter().cloned()).collect())
        } else if p.bit_len() == 1 {
            (w1.clone(), Vec::new())
        } else if *q1 >= 2 {
            (w1.repeat(2), std::iter::once((w1.clone(), q1 - 2)).chain(blocks[1..].iter().cloned()).collect())
        } else {
            let (w2, q2) = &blocks[1];
            let (head, tail) = w2.split_at(1);
            let mut rest = vec![(tail, 1), (w2.clone(), q2 - 1)];
            rest.extend(blocks[2..].iter().cloned());
            (w1.concat(&head), rest)
        };
        let mut c = self.compact_construction(&seed.value())?;
        for (w, q) in rest {
            if q > 0 && !w.is_empty() {
                c = append_periodic(c, &w, q, self)?;
            }
        }
        Ok(self.result(c, target))
    }
}

impl Realizer for Synthesizer {
    fn realize_count(&self, n: &BigCount) -> Result<Construction> {
        self.compact_construction(n)
    }
}

/// Fewest-vertex recipes for every count in `[1, max]`.
fn compact_table(family: &GadgetFamily, max: u64) -> Vec<(usize, Recipe)> {
    let mut t: Vec<(usize, Recipe)> = vec![(0, Recipe::Base(BaseGraph::SingleVertex))];
    for n in 1..=max {
        let kind = BaseGraph::for_count(n).expect("n >= 1");
        let base_nu = match kind {
            BaseGraph::SingleVertex => 1,
            BaseGraph::Edge => 2,
            BaseGraph::Path4 => 4,
            BaseGraph::Corona(r) => 2 * r,
        };
        let mut best = (base_nu, Recipe::Base(kind));
        let mut offer = |nu: usize, r: Recipe| {
            if nu < best.0 {
                best = (nu, r);
            }
        };
        if n >= 2 {
            for (i, g) in family.members().iter().enumerate() {
                if let Some(k) = g.preimage(&BigUint::from(n)) {
                    let k = k.to_u64().unwrap();
                    offer(t[k as usize].0 + g.vertex_count(), Recipe::Attach { gadget: i, from: k });
                }
            }
            if n % 2 == 1 && (n - 1) / 2 >= 2 {
                offer(t[((n - 1) / 2) as usize].0 + 4, Recipe::DoublePlusOne((n - 1) / 2));
            }
            if n >= 4 {
                offer(t[(n - 2) as usize].0 + 4, Recipe::PlusTwo(n - 2));
            }
            for a in 2..=n.saturating_sub(2) {
                offer(t[a as usize].0 + t[(n - a) as usize].0 + 4, Recipe::Sum(a, n - a));
            }
        }
        t.push(best);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_mis;

    fn synth() -> Synthesizer {
        Synthesizer::new().unwrap()
    }

    fn big(n: u64) -> BigCount {
        BigCount::from(n)
    }

    #[test]
    fn realize_small_examples() {
        let s = synth();
        let r = s.realize(&big(4)).unwrap();
        assert_eq!(r.vertex_count(), 4);
        assert_eq!(count_mis(&r.graph).unwrap(), big(4));
        let r = s.realize(&big(1)).unwrap();
        assert_eq!(r.graph, crate::graph::single_vertex());
        let r = s.realize(&big(236)).unwrap();
        assert_eq!(count_mis(&r.graph).unwrap(), big(236));
        r.replay(&Oracle::default()).unwrap();
        assert!(s.realize(&big(0)).is_err());
    }

    #[test]
    fn realize_59_is_base_three_plus_gadget() {
        let s = synth();
        let r = s.realize(&big(59)).unwrap();
        assert_eq!(r.vertex_count(), 4 + 12);
        assert_eq!(vertex_report(&r).vertices, 16);
    }

    #[test]
    fn compact_table_matches_reference_values() {
        let expected = [
            1, 2, 4, 4, 6, 6, 8, 6, 8, 8, 10, 8, 9, 10, 10, 8, 10, 10, 11, 10, 12, 12, 14, 10, 11, 11, 12, 12,
            14, 12, 13, 10, 12, 12, 14, 12, 13, 13, 13, 12, 14, 14, 14, 14, 14, 16, 14, 12, 13, 13, 14, 13,
        ];
        let s = synth();
        for (i, &nu) in expected.iter().enumerate() {
            let n = big(i as u64 + 1);
            let c = s.compact_construction(&n).unwrap();
            assert_eq!(c.graph.vertex_count(), nu, "n = {n}");
            assert_eq!(count_mis(&c.graph).unwrap(), n);
        }
    }

    #[test]
    fn compact_stays_below_three_vertices_per_bit() {
        let s = synth();
        for n in 2..5000u64 {
            let nu = s.compact_vertex_count(&big(n)).unwrap();
            assert!(nu <= 3 * (64 - n.leading_zeros() as usize), "n = {n}: {nu}");
        }
        let huge = (BigCount::from(1u32) << 300) + 12345u32;
        let c = s.compact_construction(&huge).unwrap();
        assert_eq!(c.count, huge);
        assert!(c.graph.vertex_count() <= 3 * 301);
    }

    #[test]
    fn pattern_examples() {
        let s = synth();
        for (p, n) in [("1", 1u64), ("10^3", 42), ("1^2,01^2", 53), ("1^1,0^5", 32), ("1,1^3", 15), ("1,011", 11)] {
            let r = s.realize_pattern(&p.parse().unwrap()).unwrap();
            assert_eq!(r.target, big(n), "{p}");
            assert_eq!(count_mis(&r.graph).unwrap(), big(n), "{p}");
            r.replay(&Oracle::default()).unwrap();
        }
    }

    #[test]
    fn report_examples() {
        let s = synth();
        let r = s.realize(&big(4)).unwrap();
        let rep = vertex_report(&r);
        assert_eq!((rep.vertices, rep.lower_bound), (4, 4));
        let r = s.realize_pattern(&"1,0^20".parse().unwrap()).unwrap();
        let rep = vertex_report(&r);
        assert_eq!(r.target, big(1 << 20));
        assert!(rep.ratio.unwrap() < 2.5, "{rep:?}");
    }

    #[test]
    fn log2_of_big_numbers() {
        assert_eq!(log2(&big(1)), 0.0);
        assert!((log2(&big(1 << 40)) - 40.0).abs() < 1e-12);
        assert!((log2(&(BigCount::from(3u32) << 500)) - (500.0 + 3f64.log2())).abs() < 1e-9);
    }

    #[test]
    fn result_json_round_trip() {
        let r = synth().realize(&big(1000)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""target":"1000""#));
        let back: RealizationResult = serde_json::from_str(&json).unwrap();
        assert_eq!((back.graph, back.ledger, back.target), (r.graph, r.ledger, r.target));
        assert_eq!(back.certificate.vertices, 26);
    }
}
