mod common;

use proptest::prelude::*;
use skc_core::partition::multipartite_info;
use skc_core::rates::{
    club_additivity, graph_rsk_report, r_co, r_co_lp, r_sk_exact_uniform_pin, rsk_report,
    sk_capacity, strict_split_witness, Maximality,
};
use skc_core::tree::sigma_rate;
use skc_core::{club, zoo, Execution, Hypergraph, PinSource, Source, TerminalSet, Value};

const SEQ: Execution = Execution::Sequential;

#[test]
fn reference_values() {
    let c4 = Source::from(zoo::gen_cycle(4).unwrap());
    assert_eq!(sk_capacity(&c4, SEQ).unwrap(), Value::ratio(4, 3));
    assert_eq!(r_co(&c4, SEQ).unwrap(), Value::ratio(8, 3));
    let k42 = Source::from(zoo::gen_complete_uniform(4, 2).unwrap());
    assert_eq!(r_co_lp(&k42).unwrap(), Value::int(4));
    let chan4 = Source::from(zoo::gen_chan(4).unwrap());
    assert_eq!(r_co_lp(&chan4).unwrap(), Value::int(6));
    let chan5 = Source::from(zoo::gen_chan(5).unwrap());
    assert_eq!(sk_capacity(&chan5, SEQ).unwrap(), Value::int(4));
    let omni = Source::from(zoo::gen_omni_example(5, 0.5).unwrap());
    assert!((sk_capacity(&omni, SEQ).unwrap().to_f64() - 1.0).abs() < 1e-9);
}

#[test]
fn closed_form_values() {
    let k53 = zoo::gen_complete_uniform(5, 3).unwrap();
    assert_eq!(r_sk_exact_uniform_pin(&k53, SEQ).unwrap(), Value::int(5));
    let sts7 = zoo::gen_sts(7).unwrap();
    assert_eq!(
        r_sk_exact_uniform_pin(&sts7, SEQ).unwrap(),
        Value::ratio(14, 3)
    );
    let mixed = PinSource::new(Hypergraph::from_lists(3, &[&[1, 2], &[1, 2, 3]]).unwrap());
    assert!(r_sk_exact_uniform_pin(&mixed, SEQ).is_err());
}

#[test]
fn chan4_graph_report() {
    let r = graph_rsk_report(&zoo::gen_chan(4).unwrap(), SEQ).unwrap();
    assert_eq!(r.capacity, Value::int(3));
    assert_eq!(r.r_co, Value::int(6));
    assert!(r
        .upper_bounds
        .iter()
        .any(|b| b.origin.contains("tree") && b.value == Value::int(6)));
    assert_eq!(r.maximality, Maximality::Maximal);
}

#[test]
fn two_terminal_report() {
    let g = Hypergraph::new(
        2,
        [
            (TerminalSet::from_terminals(2, &[1, 2]).unwrap(), 2),
            (TerminalSet::from_terminals(2, &[1]).unwrap(), 1),
        ],
    )
    .unwrap();
    let r = rsk_report(&Source::from(PinSource::new(g)), SEQ).unwrap();
    let e = r.r_sk_exact.clone().unwrap();
    assert_eq!(e.origin, "two-terminal one-way protocol");
    assert_eq!(e.value, Value::int(0));
    assert!(r.is_consistent());
}

#[test]
fn split_protocol_beats_omniscience() {
    let x = Source::from(zoo::gen_omni_example(4, 0.5).unwrap());
    let y = Source::from(zoo::gen_harary(4, 3).unwrap());
    let w = strict_split_witness(&club(x, y).unwrap(), SEQ).unwrap();
    assert!(w.below_r_co, "{w:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn omniscience_lp_matches_closed_form(seed in any::<u64>(), m in 2usize..=6, edges in 1usize..=7) {
        let mut r = common::rng(seed);
        let s = Source::from(common::random_pin(&mut r, m, edges, m));
        prop_assert_eq!(r_co_lp(&s).unwrap(), r_co(&s, SEQ).unwrap());
    }

    #[test]
    fn omniscience_lp_matches_on_pmf(seed in any::<u64>(), m in 2usize..=4) {
        let mut r = common::rng(seed);
        let s = Source::from(common::random_pmf(&mut r, m, 3, 0.3));
        let a = r_co_lp(&s).unwrap().to_f64();
        let b = r_co(&s, SEQ).unwrap().to_f64();
        prop_assert!((a - b).abs() < 1e-7, "{} vs {}", a, b);
    }

    #[test]
    fn graph_capacity_is_packing_rate(seed in any::<u64>(), m in 2usize..=8, extra in 0usize..=8) {
        let mut r = common::rng(seed);
        let g = common::random_connected_graph(&mut r, m, extra);
        let s = Source::from(PinSource::new(g.clone()));
        prop_assert_eq!(sk_capacity(&s, SEQ).unwrap(), sigma_rate(&g, SEQ).unwrap());
    }

    #[test]
    fn type_s_closed_form_equals_r_co(seed in any::<u64>(), m in 3usize..=7, t in 2usize..=4, edges in 1usize..=8) {
        let mut r = common::rng(seed);
        let pin = common::random_uniform_pin(&mut r, m, t.min(m), edges);
        if let Ok(v) = r_sk_exact_uniform_pin(&pin, SEQ) {
            prop_assert_eq!(v, r_co(&Source::from(pin), SEQ).unwrap());
        }
    }

    #[test]
    fn reports_are_consistent(seed in any::<u64>(), m in 2usize..=5) {
        let mut r = common::rng(seed);
        let s = if seed % 2 == 0 {
            Source::from(common::random_pin(&mut r, m, 4, m))
        } else {
            Source::from(common::random_pmf(&mut r, m, 3, 0.3))
        };
        let rep = rsk_report(&s, SEQ).unwrap();
        prop_assert!(rep.is_consistent());
        prop_assert!(rep.r_co.to_f64() >= -1e-9);
        let singles: f64 = (1..=m).map(|i| s.entropy(TerminalSet::singleton(i)).unwrap().to_f64()).sum();
        prop_assert!(rep.r_co.to_f64() <= singles + 1e-9);
    }

    #[test]
    fn clubbing_is_superadditive(seed in any::<u64>(), m in 2usize..=5) {
        let mut r = common::rng(seed);
        let x = Source::from(common::random_pin(&mut r, m, 3, m));
        let y = Source::from(common::random_pin(&mut r, m, 3, m));
        let z = club(x.clone(), y.clone()).unwrap();
        let a = club_additivity(&z, SEQ).unwrap();
        prop_assert!(a.consistent, "{:?}", a);
        let ix = multipartite_info(&x, SEQ).unwrap().value;
        prop_assert_eq!(a.split.capacity_left, ix);
    }
}
