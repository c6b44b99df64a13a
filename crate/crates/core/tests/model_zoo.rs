mod common;

use proptest::prelude::*;
use skc_core::zoo::{self, edge_connectivity_by_cuts, edge_connectivity_by_flow, FamilySpec};
use skc_core::{club, parse_model, serialize_model, SkcError, Source, TerminalSet, Value};

#[test]
fn harary_is_regular_and_k_connected() {
    for m in 3..=9 {
        for k in 2..m {
            match zoo::gen_harary(m, k) {
                Ok(p) => {
                    let g = p.graph();
                    assert!((1..=m).all(|i| g.degree(i) == k as u64), "m={m} k={k}");
                    assert_eq!(g.total_multiplicity() as usize, k * m / 2);
                    assert_eq!(edge_connectivity_by_flow(g).unwrap(), k as u64);
                }
                Err(e) => assert!(k * m % 2 == 1, "m={m} k={k}: {e}"),
            }
        }
    }
}

#[test]
fn sts_covers_every_pair_once() {
    for m in [3, 7, 9, 13, 15] {
        let g = zoo::gen_sts(m).unwrap();
        assert_eq!(g.graph().total_multiplicity() as usize, m * (m - 1) / 6);
        for a in 1..=m {
            for b in a + 1..=m {
                let pair = TerminalSet::from_terminals(m, &[a, b]).unwrap();
                let n = g
                    .graph()
                    .edges()
                    .iter()
                    .filter(|e| pair.is_subset(e.members))
                    .count();
                assert_eq!(n, 1, "pair {a},{b} in STS({m})");
            }
        }
    }
    let e = zoo::gen_sts(8).unwrap_err();
    assert!(e.to_string().contains("gcd(m-2,6)=1"));
}

#[test]
fn chan_joint_entropy() {
    assert!(zoo::gen_chan(3).is_err());
    for m in 4..=7 {
        let s = Source::from(zoo::gen_chan(m).unwrap());
        let h = s.entropy(TerminalSet::full(m)).unwrap();
        assert_eq!(h, Value::int((m * (m - 2) + 1) as i64));
    }
}

#[test]
fn omni_example_entropies() {
    let p = 0.3;
    let s = Source::from(zoo::gen_omni_example(4, p).unwrap());
    let hp = skc_core::value::binary_entropy(p);
    for a in TerminalSet::all_nonempty(4) {
        let h = s.entropy(a).unwrap().to_f64();
        assert!((h - (a.len() as f64 + hp)).abs() < 1e-9, "{a}");
    }
}

#[test]
fn family_parse_errors() {
    assert!(FamilySpec::parse("cycle", &[]).is_err());
    assert!(FamilySpec::parse("nope", &["3"]).is_err());
    let s = FamilySpec::parse("harary", &["6", "3"])
        .unwrap()
        .generate()
        .unwrap();
    assert_eq!(s.m(), 6);
}

#[test]
fn parse_errors_are_located() {
    let bad = "{\n  \"type\": \"pin\",\n  \"m\": 3,\n  \"edges\": [{\"members\": []}]\n}";
    assert!(matches!(
        parse_model(bad),
        Err(SkcError::EmptyHyperedge { line: 4 })
    ));
    let syntax = "{\n  \"type\": \"pin\",\n  \"m\": 3,\n";
    assert!(matches!(parse_model(syntax), Err(SkcError::Syntax { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pin_documents_round_trip(seed in any::<u64>(), m in 2usize..=6, edges in 1usize..=6) {
        let mut r = common::rng(seed);
        let pin = common::random_pin(&mut r, m, edges, m);
        let s = Source::from(pin);
        let text = serialize_model(&s).unwrap();
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(back.entropy_table().value(TerminalSet::full(m)), s.entropy_table().value(TerminalSet::full(m)));
        prop_assert_eq!(serialize_model(&back).unwrap(), text);
    }

    #[test]
    fn pmf_documents_round_trip(seed in any::<u64>(), m in 2usize..=4) {
        let mut r = common::rng(seed);
        let s = Source::from(common::random_pmf(&mut r, m, 3, 0.3));
        let back = parse_model(&serialize_model(&s).unwrap()).unwrap();
        for a in TerminalSet::all_nonempty(m) {
            prop_assert!((back.entropy(a).unwrap().to_f64() - s.entropy(a).unwrap().to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn pin_entropy_matches_expanded_pmf(seed in any::<u64>(), m in 2usize..=4, edges in 1usize..=4) {
        let mut r = common::rng(seed);
        let pin = common::random_pin(&mut r, m, edges, m);
        let pmf = Source::from(pin.to_pmf().unwrap());
        let s = Source::from(pin);
        for a in TerminalSet::all_nonempty(m) {
            prop_assert!((s.entropy(a).unwrap().to_f64() - pmf.entropy(a).unwrap().to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn clubbed_entropy_is_additive(seed in any::<u64>(), m in 2usize..=5) {
        let mut r = common::rng(seed);
        let x = Source::from(common::random_pin(&mut r, m, 3, m));
        let y = Source::from(common::random_pin(&mut r, m, 3, m));
        let z = Source::from(club(x.clone(), y.clone()).unwrap());
        for a in TerminalSet::all_nonempty(m) {
            prop_assert_eq!(z.entropy(a).unwrap(), &x.entropy(a).unwrap() + &y.entropy(a).unwrap());
        }
    }

    #[test]
    fn cut_and_flow_connectivity_agree(seed in any::<u64>(), m in 2usize..=7, extra in 0usize..=6) {
        let mut r = common::rng(seed);
        let g = common::random_connected_graph(&mut r, m, extra);
        prop_assert_eq!(edge_connectivity_by_cuts(&g).unwrap(), edge_connectivity_by_flow(&g).unwrap());
    }
}
