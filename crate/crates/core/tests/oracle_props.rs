mod common;

use common::{naive_count_is, naive_count_mis, naive_hitting, naive_mis, subset_mask};
use mis_synth::format::{from_dimacs, from_json, parse_any, to_dimacs, to_json};
use mis_synth::graph::{BipartiteGraph, Side, VertexSubset};
use mis_synth::oracle::{Engine, Oracle};
use mis_synth::BigCount;
use proptest::prelude::*;

/// Arbitrary bipartite graph, isolated vertices allowed.
fn graph(max_part: usize) -> impl Strategy<Value = BipartiteGraph> {
    (0..=max_part, 0..=max_part).prop_flat_map(|(l, r)| {
        proptest::collection::vec(any::<bool>(), l * r).prop_map(move |bits| {
            let edges = (0..l * r).filter(|&i| bits[i]).map(|i| (i / r.max(1), i % r.max(1)));
            BipartiteGraph::from_edges(l, r, edges).unwrap()
        })
    })
}

fn subset(g: &BipartiteGraph, side: Side, bits: u32) -> VertexSubset {
    VertexSubset::new(side, (0..g.part_size(side)).filter(|i| bits >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn mis_count_matches_brute_force(g in graph(7)) {
        let expected = BigCount::from(naive_count_mis(&g));
        for engine in [Engine::Auto, Engine::Sweep, Engine::Branch] {
            prop_assert_eq!(Oracle::with_engine(engine).count_mis(&g).unwrap(), expected.clone());
        }
    }

    #[test]
    fn is_count_matches_brute_force(g in graph(7)) {
        prop_assert_eq!(Oracle::default().count_is(&g).unwrap(), BigCount::from(naive_count_is(&g)));
    }

    #[test]
    fn enumeration_matches_brute_force(g in graph(6)) {
        let oracle = Oracle::default();
        let mut got: Vec<u32> = oracle
            .enumerate_mis(&g)
            .unwrap()
            .iter()
            .map(|set| {
                set.iter().fold(0u32, |m, v| {
                    let off = if v.side == Side::Left { 0 } else { g.left_size() };
                    m | 1 << (off + v.index)
                })
            })
            .collect();
        got.sort_unstable();
        prop_assert_eq!(got, naive_mis(&g));
    }

    #[test]
    fn hitting_and_avoiding_match_brute_force(g in graph(6), b1 in any::<u32>(), b2 in any::<u32>()) {
        let u1 = subset(&g, Side::Left, b1);
        let u2 = subset(&g, Side::Right, b2);
        let oracle = Oracle::default();
        let expected = if u1.is_empty() || u2.is_empty() { 0 } else { naive_hitting(&g, &u1, &u2) };
        prop_assert_eq!(oracle.count_mis_hitting(&g, &u1, &u2).unwrap(), BigCount::from(expected));
        let m1 = subset_mask(&g, &u1);
        let avoiding = naive_mis(&g).into_iter().filter(|s| s & m1 == 0).count() as u64;
        prop_assert_eq!(oracle.count_mis_avoiding(&g, &[&u1]).unwrap(), BigCount::from(avoiding));
    }

    #[test]
    fn formats_round_trip(g in graph(8)) {
        prop_assert_eq!(&from_json(&to_json(&g)).unwrap(), &g);
        prop_assert_eq!(&from_dimacs(&to_dimacs(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_any(&to_dimacs(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_any(&to_json(&g)).unwrap(), &g);
    }

    #[test]
    fn flipping_preserves_counts(g in graph(6)) {
        let oracle = Oracle::default();
        prop_assert_eq!(oracle.count_mis(&g.flipped()).unwrap(), oracle.count_mis(&g).unwrap());
    }
}

#[test]
fn empty_graph_has_one_maximal_independent_set() {
    let g = BipartiteGraph::empty();
    assert_eq!(Oracle::default().count_mis(&g).unwrap(), BigCount::from(1u32));
    assert_eq!(naive_count_mis(&g), 1);
}
