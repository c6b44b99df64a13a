mod common;

use num_rational::BigRational;
use proptest::prelude::*;
use skc_core::lp::{simplex_min, LinearProgram};
use skc_core::partition::{classify_type_s, TypeSClass};
use skc_core::rates::sk_capacity;
use skc_core::silent::{
    delta_t_singleton, omnivocality_report, rt_constraints, rt_min, rt_min_lower_bound,
    silent_capacity, OmnivocalityVerdict,
};
use skc_core::{zoo, Execution, SkcError, Source, TerminalSet, Value};

fn set(m: usize, v: &[usize]) -> TerminalSet {
    TerminalSet::from_terminals(m, v).unwrap()
}

#[test]
fn small_programs() {
    let mut lp = LinearProgram::new(vec![Value::int(1), Value::int(1)]);
    lp.add_row(vec![Value::int(1), Value::int(0)], Value::int(1))
        .unwrap();
    lp.add_row(vec![Value::int(0), Value::int(1)], Value::int(1))
        .unwrap();
    lp.add_row(vec![Value::int(1), Value::int(1)], Value::int(3))
        .unwrap();
    let s = simplex_min(&lp).unwrap();
    assert_eq!(s.optimum, Value::int(3));
    let w: Vec<BigRational> = s
        .witness
        .iter()
        .map(|v| v.as_rational().unwrap().clone())
        .collect();
    assert!(lp.is_feasible_exact(&w));

    let mut bad = LinearProgram::new(vec![Value::int(1)]);
    bad.add_row(vec![Value::int(-1)], Value::int(1)).unwrap();
    assert_eq!(simplex_min(&bad).unwrap_err(), SkcError::Infeasible);
    let mut open = LinearProgram::new(vec![Value::int(-1)]);
    open.add_row(vec![Value::int(1)], Value::int(0)).unwrap();
    assert_eq!(simplex_min(&open).unwrap_err(), SkcError::Unbounded);
}

#[test]
fn chan4_silent_region() {
    let s = Source::from(zoo::gen_chan(4).unwrap());
    let t = set(4, &[2, 3, 4]);
    let r = rt_constraints(&s, t, false).unwrap();
    assert_eq!(r.bound(set(4, &[2, 3])).unwrap(), &Value::int(4));
    assert_eq!(r.bound(set(4, &[4])).unwrap(), &Value::int(3));
    assert_eq!(silent_capacity(&s, t).unwrap(), Value::int(2));
    assert_eq!(rt_min_lower_bound(&s, t).unwrap(), Value::int(7));
    assert_eq!(delta_t_singleton(&s, t).unwrap(), Value::int(2));
}

#[test]
fn complete_graph_lower_bound() {
    // every edge of K_4 meets {1,2,3}: H(X_T) = 6, H(X_j) = 3, so (3·3)/2
    let s = Source::from(zoo::gen_complete_uniform(4, 2).unwrap());
    let t = set(4, &[1, 2, 3]);
    assert_eq!(rt_min_lower_bound(&s, t).unwrap(), Value::ratio(9, 2));
    assert!(rt_min_lower_bound(&s, t)
        .unwrap()
        .cmp_tol(&rt_min(&s, t, false).unwrap().optimum)
        .is_le());
}

#[test]
fn omni_example_lone_talker() {
    let s = Source::from(zoo::gen_omni_example(3, 0.5).unwrap());
    let c = silent_capacity(&s, set(3, &[1])).unwrap();
    assert!((c.to_f64() - 1.0).abs() < 1e-9);
    let r = omnivocality_report(&s, Execution::Sequential).unwrap();
    assert!(matches!(r.verdict, OmnivocalityVerdict::SilencePossible(_)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn full_and_reduced_regions_agree_on_pin(seed in any::<u64>(), m in 3usize..=5, edges in 1usize..=6) {
        let mut r = common::rng(seed);
        let s = Source::from(common::random_pin(&mut r, m, edges, m));
        let full = TerminalSet::full(m);
        let cap = sk_capacity(&s, Execution::Sequential).unwrap();
        for u in 1..=m {
            let t = full.difference(TerminalSet::singleton(u));
            let a = rt_min(&s, t, false).unwrap().optimum;
            let b = rt_min(&s, t, true).unwrap().optimum;
            prop_assert_eq!(&a, &b);
            prop_assert!(rt_min_lower_bound(&s, t).unwrap().cmp_tol(&a).is_le());
            let it = silent_capacity(&s, t).unwrap();
            prop_assert!(it.cmp_tol(&cap).is_le());
            prop_assert!(delta_t_singleton(&s, t).unwrap().cmp_tol(&it).is_ge());
        }
    }

    #[test]
    fn full_and_reduced_regions_agree_on_pmf(seed in any::<u64>(), m in 3usize..=4) {
        let mut r = common::rng(seed);
        let s = Source::from(common::random_pmf(&mut r, m, 3, 0.3));
        let full = TerminalSet::full(m);
        for u in 1..=m {
            let t = full.difference(TerminalSet::singleton(u));
            let a = rt_min(&s, t, false).unwrap().optimum.to_f64();
            let b = rt_min(&s, t, true).unwrap().optimum.to_f64();
            prop_assert!((a - b).abs() < 1e-7);
        }
    }

    #[test]
    fn strict_type_s_forces_omnivocality(seed in any::<u64>(), m in 3usize..=5, edges in 2usize..=6) {
        let mut r = common::rng(seed);
        let s = Source::from(common::random_pin(&mut r, m, edges, m));
        let rep = omnivocality_report(&s, Execution::Sequential).unwrap();
        prop_assert!(rep.strict_implies_required);
        if let Some(iff) = rep.three_terminal_iff {
            prop_assert!(iff);
        }
        if classify_type_s(&s, Execution::Sequential).unwrap().class == TypeSClass::StrictTypeS {
            for e in &rep.entries {
                prop_assert!(e.delta_t.cmp_tol(&rep.type_s.delta_singleton).is_lt());
            }
        }
    }
}
