//! Marked gadgets, gadget families and the small-value base table.
//!
//! Attaching a marked gadget `(H, U₁, U₂)` to a graph `G` (every vertex of
//! `U₁` joined to the left part of `G`, every vertex of `U₂` to the right
//! part) turns `ι_m(G) = k` into `h'·k + h''`. A family whose progressions
//! `{h'·k + h'' : k ≥ 2}` cover every integer above a threshold `n0` drives
//! the recursive synthesis.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{corona, path, single_vertex, BipartiteGraph, Side, VertexSubset};
use crate::oracle::Oracle;
use crate::BigCount;

/// Largest modulus the residue coverage check will walk.
const MAX_COVERAGE_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGadget {
    pub name: String,
    pub graph: BipartiteGraph,
    /// Marked left vertices, joined to the left part of the host.
    pub u1: VertexSubset,
    /// Marked right vertices, joined to the right part of the host.
    pub u2: VertexSubset,
    pub h_prime: u64,
    pub h_dprime: u64,
}

impl MarkedGadget {
    /// Computes `(h', h'')` with the oracle.
    pub fn from_oracle(
        name: impl Into<String>,
        graph: BipartiteGraph,
        u1: VertexSubset,
        u2: VertexSubset,
        oracle: &Oracle,
    ) -> Result<Self> {
        let name = name.into();
        if u1.side() != Side::Left || u2.side() != Side::Right {
            return Err(Error::InvalidArgument(format!(
                "gadget {name}: U1 must be a left subset and U2 a right subset"
            )));
        }
        graph.require_no_isolated()?;
        let hv = oracle.h_values(&graph, &u1, &u2)?;
        let small = |v: &BigCount| {
            v.to_u64()
                .ok_or_else(|| Error::InvalidArgument(format!("gadget {name}: parameter {v} too large")))
        };
        Ok(MarkedGadget {
            h_prime: small(&hv.h_prime)?,
            h_dprime: small(&hv.h_dprime)?,
            name,
            graph,
            u1,
            u2,
        })
    }

    /// Builds a gadget and checks the declared pair against the oracle.
    pub fn validated(
        name: impl Into<String>,
        graph: BipartiteGraph,
        u1: VertexSubset,
        u2: VertexSubset,
        declared: (u64, u64),
        oracle: &Oracle,
    ) -> Result<Self> {
        let g = Self::from_oracle(name, graph, u1, u2, oracle)?;
        if (g.h_prime, g.h_dprime) != declared {
            return Err(Error::GadgetMismatch {
                name: g.name,
                declared_prime: declared.0.into(),
                declared_dprime: declared.1.into(),
                actual_prime: g.h_prime.into(),
                actual_dprime: g.h_dprime.into(),
            });
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Vertices spent per bit of count, `ν / log₂ h'`.
    pub fn cost(&self) -> f64 {
        self.vertex_count() as f64 / (self.h_prime as f64).log2()
    }

    /// Smallest count this gadget produces with a legal `k ≥ 2`.
    pub fn first_reachable(&self) -> u64 {
        2 * self.h_prime + self.h_dprime
    }

    /// `k` with `n = h'·k + h''` and `k ≥ 2`, if one exists.
    pub fn preimage(&self, n: &BigCount) -> Option<BigCount> {
        let h = BigUint::from(self.h_prime);
        let off = BigUint::from(self.h_dprime);
        if *n < off {
            return None;
        }
        let (k, rem) = (n - &off).div_rem(&h);
        (rem.is_zero() && k >= BigUint::from(2u32)).then_some(k)
    }

    pub fn to_json(&self) -> GadgetJson {
        GadgetJson {
            name: Some(self.name.clone()),
            graph: self.graph.clone(),
            u1: self.u1.members().iter().copied().collect(),
            u2: self.u2.members().iter().copied().collect(),
            h_prime: self.h_prime,
            h_dprime: self.h_dprime,
        }
    }

    pub fn from_json(j: GadgetJson, oracle: &Oracle) -> Result<Self> {
        let name = j.name.unwrap_or_else(|| format!("({},{})", j.h_prime, j.h_dprime));
        Self::validated(
            name,
            j.graph,
            VertexSubset::new(Side::Left, j.u1),
            VertexSubset::new(Side::Right, j.u2),
            (j.h_prime, j.h_dprime),
            oracle,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub graph: BipartiteGraph,
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub h_prime: u64,
    pub h_dprime: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n0: u64,
    pub members: Vec<GadgetJson>,
}

/// Largest integer not of the form `h'·k + h''` (`k ≥ 2`) for any pair, or
/// `None` when some residue class modulo `lcm(h')` is never covered.
/// Returns `Some(0)` when every positive integer is covered.
pub fn coverage_threshold(pairs: &[(u64, u64)]) -> Option<u64> {
    if pairs.is_empty() || pairs.iter().any(|&(h, _)| h < 2) {
        return None;
    }
    let modulus = pairs.iter().fold(1u64, |m, &(h, _)| m.lcm(&h));
    if modulus > MAX_COVERAGE_MODULUS {
        return None;
    }
    let mut threshold = 0u64;
    for c in 0..modulus {
        // Within class c every covering pair covers all members from its
        // first reachable value on.
        let bound = pairs
            .iter()
            .filter(|&&(h, off)| c % h == off % h)
            .map(|&(h, off)| 2 * h + off)
            .min()?;
        if bound > c {
            let last = bound - 1 - (bound - 1 - c) % modulus;
            if last > 0 {
                threshold = threshold.max(last);
            }
        }
    }
    Some(threshold)
}

#[derive(Debug, Clone)]
pub struct GadgetFamily {
    members: Vec<MarkedGadget>,
    n0: u64,
}

impl GadgetFamily {
    /// Builds a family. `n0` defaults to the tight coverage threshold; an
    /// explicit value must not be below it.
    pub fn new(members: Vec<MarkedGadget>, n0: Option<u64>) -> Result<Self> {
        let pairs: Vec<(u64, u64)> = members.iter().map(|g| (g.h_prime, g.h_dprime)).collect();
        let tight = coverage_threshold(&pairs).ok_or_else(|| {
            Error::Coverage(format!("progressions of {pairs:?} miss a residue class"))
        })?;
        let n0 = n0.unwrap_or(tight);
        if n0 < tight {
            return Err(Error::Coverage(format!(
                "declared threshold {n0} is below the true threshold {tight}"
            )));
        }
        Ok(GadgetFamily { members, n0 })
    }

    pub fn members(&self) -> &[MarkedGadget] {
        &self.members
    }

    /// Every `n > n0` is reachable from some `k ≥ 2`.
    pub fn n0(&self) -> u64 {
        self.n0
    }

    /// The tight threshold recomputed from the members.
    pub fn tight_threshold(&self) -> u64 {
        let pairs: Vec<(u64, u64)> = self.members.iter().map(|g| (g.h_prime, g.h_dprime)).collect();
        coverage_threshold(&pairs).expect("family was validated at construction")
    }

    /// `max ν / log₂ h'` over the members.
    pub fn gamma(&self) -> f64 {
        self.members.iter().map(MarkedGadget::cost).fold(0.0, f64::max)
    }

    /// Exact test of `γ < num/den` via `2^(ν·den) < h'^num` for each member.
    pub fn gamma_below(&self, num: u32, den: u32) -> bool {
        self.members.iter().all(|g| {
            let lhs = BigUint::from(1u32) << (g.vertex_count() * den as usize);
            lhs < BigUint::from(g.h_prime).pow(num)
        })
    }

    /// The applicable member with the lowest `ν / log₂ h'` (earliest on
    /// ties), with its `k`.
    pub fn select(&self, n: &BigCount) -> Option<(usize, BigCount)> {
        let mut best: Option<(usize, BigCount, f64)> = None;
        for (i, g) in self.members.iter().enumerate() {
            if let Some(k) = g.preimage(n) {
                let c = g.cost();
                if best.as_ref().is_none_or(|b| c < b.2) {
                    best = Some((i, k, c));
                }
            }
        }
        best.map(|(i, k, _)| (i, k))
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            n0: self.n0,
            members: self.members.iter().map(MarkedGadget::to_json).collect(),
        }
    }

    pub fn from_json(j: FamilyJson, oracle: &Oracle) -> Result<Self> {
        let members = j
            .members
            .into_iter()
            .map(|m| MarkedGadget::from_json(m, oracle))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members, Some(j.n0))
    }
}

/// The member used to reach `n > n0`, with its `k`.
pub fn select_gadget<'a>(family: &'a GadgetFamily, n: &BigCount) -> Result<(&'a MarkedGadget, BigCount)> {
    if *n <= BigUint::from(family.n0()) {
        return Err(Error::InvalidArgument(format!(
            "select_gadget needs n > {}, got {n}",
            family.n0()
        )));
    }
    let (i, k) = family
        .select(n)
        .expect("validated family covers every n above its threshold");
    Ok((&family.members[i], k))
}

/// Left count, right count, edges, marked left, marked right, declared pair.
type GadgetSpec = (
    usize,
    usize,
    &'static [(usize, usize)],
    &'static [usize],
    &'static [usize],
    (u64, u64),
);

/// The eight shipped gadgets. Row 0 of each drawing is the left part.
const GAMMA: [GadgetSpec; 8] = [
    (1, 1, &[(0, 0)], &[], &[], (2, 0)),
    (2, 2, &[(0, 0), (1, 0), (1, 1)], &[], &[], (3, 0)),
    (
        4,
        3,
        &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)],
        &[1],
        &[],
        (6, 1),
    ),
    (
        6,
        6,
        &[
            (0, 0), (1, 0), (1, 1), (1, 2), (2, 2), (3, 2),
            (3, 3), (4, 3), (4, 4), (5, 3), (5, 5),
        ],
        &[1],
        &[],
        (18, 5),
    ),
    (
        6,
        6,
        &[
            (0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (2, 3),
            (3, 2), (3, 4), (4, 3), (4, 5), (5, 5),
        ],
        &[2],
        &[],
        (18, 7),
    ),
    (
        6,
        6,
        &[
            (0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3),
            (3, 2), (3, 4), (3, 5), (4, 4), (5, 5),
        ],
        &[1],
        &[],
        (18, 11),
    ),
    (
        6,
        6,
        &[
            (0, 0), (1, 0), (1, 1), (2, 1), (3, 2), (3, 3),
            (4, 3), (4, 4), (5, 4), (5, 5),
        ],
        &[0],
        &[3],
        (18, 13),
    ),
    (
        6,
        6,
        &[
            (0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (2, 3),
            (2, 4), (3, 2), (4, 3), (5, 4), (5, 5),
        ],
        &[0],
        &[4],
        (18, 17),
    ),
];

/// Threshold the shipped family is used with: `18·2 + 17 = 53` is the last
/// progression to start.
pub const GAMMA_N0: u64 = 52;

/// The shipped eight-gadget family, each member checked against the oracle.
pub fn load_gamma_family() -> Result<GadgetFamily> {
    let oracle = Oracle::default();
    let members = GAMMA
        .iter()
        .map(|&(l, r, edges, u1, u2, pair)| {
            let graph = BipartiteGraph::from_edges(l, r, edges.iter().copied())?;
            MarkedGadget::validated(
                format!("({},{})", pair.0, pair.1),
                graph,
                VertexSubset::new(Side::Left, u1.iter().copied()),
                VertexSubset::new(Side::Right, u2.iter().copied()),
                pair,
                &oracle,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    GadgetFamily::new(members, Some(GAMMA_N0))
}

/// How a base-table graph is built; recorded in construction ledgers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "graph", content = "r", rename_all = "snake_case")]
pub enum BaseGraph {
    SingleVertex,
    Edge,
    Path4,
    Corona(usize),
}

impl BaseGraph {
    /// The base graph for `n`: `K₁`, `K₁,₁`, `P₄`, then `K'_{n−2,n−2}`.
    pub fn for_count(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidArgument("no graph has zero maximal independent sets".into())),
            1 => Ok(BaseGraph::SingleVertex),
            2 => Ok(BaseGraph::Edge),
            3 => Ok(BaseGraph::Path4),
            n => Ok(BaseGraph::Corona(n as usize - 2)),
        }
    }

    pub fn build(self) -> Result<BipartiteGraph> {
        match self {
            BaseGraph::SingleVertex => Ok(single_vertex()),
            BaseGraph::Edge => path(2),
            BaseGraph::Path4 => path(4),
            BaseGraph::Corona(r) => corona(r),
        }
    }

    pub fn count(self) -> u64 {
        match self {
            BaseGraph::SingleVertex => 1,
            BaseGraph::Edge => 2,
            BaseGraph::Path4 => 3,
            BaseGraph::Corona(r) => r as u64 + 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BaseTable {
    entries: BTreeMap<u64, (BaseGraph, BipartiteGraph)>,
}

impl BaseTable {
    pub fn get(&self, n: u64) -> Option<&BipartiteGraph> {
        self.entries.get(&n).map(|(_, g)| g)
    }

    pub fn kind(&self, n: u64) -> Option<BaseGraph> {
        self.entries.get(&n).map(|(k, _)| *k)
    }

    pub fn max(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// Largest vertex count in the table.
    pub fn max_vertices(&self) -> usize {
        self.entries.values().map(|(_, g)| g.vertex_count()).max().unwrap_or(0)
    }
}

/// Base graphs for every `n ∈ [1, n0]`, each checked with the oracle.
pub fn load_base_table(n0: u64) -> Result<BaseTable> {
    if n0 < 4 {
        return Err(Error::InvalidArgument(format!("base table needs n0 >= 4, got {n0}")));
    }
    let oracle = Oracle::default();
    let mut entries = BTreeMap::new();
    for n in 1..=n0 {
        let kind = BaseGraph::for_count(n)?;
        let g = kind.build()?;
        let c = oracle.count_mis(&g)?;
        assert_eq!(c, BigUint::from(n), "base graph {kind:?} has the wrong count");
        if n >= 2 {
            g.require_no_isolated()?;
        }
        entries.insert(n, (kind, g));
    }
    Ok(BaseTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_family_pairs_and_gamma() {
        let fam = load_gamma_family().unwrap();
        let pairs: Vec<(u64, u64)> = fam.members().iter().map(|g| (g.h_prime, g.h_dprime)).collect();
        assert_eq!(
            pairs,
            vec![(2, 0), (3, 0), (6, 1), (18, 5), (18, 7), (18, 11), (18, 13), (18, 17)]
        );
        assert_eq!(fam.members()[0].graph, path(2).unwrap());
        assert_eq!(fam.members()[3].vertex_count(), 12);
        assert!((fam.gamma() - 12.0 / 18f64.log2()).abs() < 1e-12);
        assert!(fam.gamma_below(72, 25));
        assert!(!fam.gamma_below(287, 100));
        assert_eq!(fam.n0(), 52);
    }

    #[test]
    fn shipped_gadgets_are_small_and_have_no_isolated_vertices() {
        for g in load_gamma_family().unwrap().members() {
            assert!(g.graph.left_size() <= 6 && g.graph.right_size() <= 6);
            assert!(!g.graph.has_isolated_vertices());
        }
    }

    #[test]
    fn tight_threshold_is_35() {
        // 35 = 18 + 17 needs k = 1; every larger n has a k >= 2 preimage.
        assert_eq!(load_gamma_family().unwrap().tight_threshold(), 35);
    }

    #[test]
    fn residues_mod_18_are_all_covered() {
        let covered = |c: u64| c.is_multiple_of(2) || c.is_multiple_of(3) || c % 6 == 1 || [5, 11, 17].contains(&c);
        assert!((0..18).all(covered));
    }

    #[test]
    fn coverage_threshold_examples() {
        assert_eq!(coverage_threshold(&[(2, 0)]), None);
        assert_eq!(coverage_threshold(&[(2, 0), (2, 1)]), Some(3));
        assert_eq!(coverage_threshold(&[]), None);
        assert_eq!(coverage_threshold(&[(1, 0)]), None);
    }

    #[test]
    fn selection_examples() {
        let fam = load_gamma_family().unwrap();
        let pick = |n: u64| {
            let (g, k) = select_gadget(&fam, &BigUint::from(n)).unwrap();
            (g.h_prime, g.h_dprime, k.to_u64().unwrap())
        };
        assert_eq!(pick(100), (2, 0, 50));
        assert_eq!(pick(75), (3, 0, 25));
        assert_eq!(pick(59), (18, 5, 3));
        assert_eq!(pick(53), (18, 17, 2));
        assert!(select_gadget(&fam, &BigUint::from(52u32)).is_err());
    }

    #[test]
    fn base_table_entries() {
        let t = load_base_table(52).unwrap();
        assert_eq!(t.get(3), Some(&path(4).unwrap()));
        assert_eq!(t.get(7), Some(&corona(5).unwrap()));
        assert_eq!(t.get(1), Some(&single_vertex()));
        assert_eq!(t.kind(52), Some(BaseGraph::Corona(50)));
        assert_eq!(t.max_vertices(), 100);
        assert!(load_base_table(3).is_err());
    }

    #[test]
    fn mistranscribed_gadget_is_named() {
        let g = BipartiteGraph::from_edges(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let err = MarkedGadget::validated(
            "bad",
            g,
            VertexSubset::empty(Side::Left),
            VertexSubset::empty(Side::Right),
            (4, 0),
            &Oracle::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("bad"));
    }

    #[test]
    fn family_json_round_trip() {
        let fam = load_gamma_family().unwrap();
        let text = serde_json::to_string(&fam.to_json()).unwrap();
        let back = GadgetFamily::from_json(serde_json::from_str(&text).unwrap(), &Oracle::default()).unwrap();
        assert_eq!(back.members(), fam.members());
        assert_eq!(back.n0(), 52);
    }

    #[test]
    fn declared_threshold_below_tight_is_rejected() {
        let fam = load_gamma_family().unwrap();
        assert!(GadgetFamily::new(fam.members().to_vec(), Some(20)).is_err());
    }
}
