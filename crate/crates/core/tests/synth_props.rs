use mis_synth::oracle::Oracle;
use mis_synth::pattern::BinaryPattern;
use mis_synth::search::{enumerate_marked_gadgets, find_covering_families};
use mis_synth::synth::Synthesizer;
use mis_synth::BigCount;
use proptest::prelude::*;

fn big(n: u64) -> BigCount {
    BigCount::from(n)
}

#[test]
fn searched_families_drive_the_synthesizer() {
    let pool = enumerate_marked_gadgets(7, 14).unwrap();
    let families = find_covering_families(&pool, 52).unwrap();
    assert!(!families.is_empty());
    let oracle = Oracle::default();
    for family in families.into_iter().take(2) {
        let synth = Synthesizer::with_family(family).unwrap();
        for n in 1..=300u64 {
            let r = synth.realize(&big(n)).unwrap();
            assert_eq!(oracle.count_mis(&r.graph).unwrap(), big(n), "n = {n}");
        }
    }
}

#[test]
fn compact_is_exact_and_never_larger_than_greedy() {
    let synth = Synthesizer::new().unwrap();
    let oracle = Oracle::default();
    for n in 1..=300u64 {
        let c = synth.realize_compact(&big(n)).unwrap();
        assert_eq!(oracle.count_mis(&c.graph).unwrap(), big(n), "n = {n}");
    }
    for n in 1..=20_000u64 {
        let greedy = synth.realize(&big(n)).unwrap().vertex_count();
        let compact = synth.compact_vertex_count(&big(n)).unwrap();
        assert!(compact <= greedy, "n = {n}: {compact} > {greedy}");
    }
}

#[test]
fn realizations_are_deterministic_and_replayable() {
    let synth = Synthesizer::new().unwrap();
    let other = Synthesizer::new().unwrap();
    let oracle = Oracle::default();
    for n in [1u64, 2, 3, 52, 53, 236, 1000, 99_991, 1 << 40] {
        let a = synth.realize(&big(n)).unwrap();
        let b = other.realize(&big(n)).unwrap();
        assert_eq!(a, b);
        a.replay(&oracle).unwrap();
    }
    let huge = BigCount::parse_bytes(b"123456789012345678901234567890123456789012345678901234567890", 10).unwrap();
    let r = synth.realize(&huge).unwrap();
    assert_eq!(r.ledger_count(), Some(&huge));
    assert!((r.vertex_count() as f64) <= r.certificate.budget);
    r.replay(&oracle).unwrap();
}

fn pattern() -> impl Strategy<Value = BinaryPattern> {
    proptest::collection::vec(("[01]{1,4}", 1u64..40), 1..5).prop_map(|mut blocks| {
        blocks[0].0.replace_range(0..1, "1");
        let parts: Vec<String> = blocks.iter().map(|(w, q)| format!("{w}^{q}")).collect();
        parts.join(",").parse().unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pattern_ledgers_spell_the_expansion(p in pattern()) {
        let synth = Synthesizer::new().unwrap();
        let r = synth.realize_pattern(&p).unwrap();
        prop_assert_eq!(r.ledger_count().unwrap().to_str_radix(2), p.expand().to_string());
        prop_assert!(!r.graph.has_isolated_vertices() || p.bit_len() == 1);
        r.replay(&Oracle::default()).unwrap();
    }
}
