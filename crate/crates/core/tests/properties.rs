//! Invariants over random codes, including odd characteristic and towers
//! with e > 1.

use std::collections::BTreeSet;

use grw::galois::{is_frobenius_invariant, star_closure_space};
use grw::theorems::{self, CheckKind, Scope, Verdict};
use grw::weights::{d_hierarchy, weight_hierarchy, weight_values_independent, InnerMax};
use grw::{io, zoo, FieldTower, LinearCode, Settings};
use proptest::prelude::*;

fn tower() -> impl Strategy<Value = FieldTower> {
    prop_oneof![
        Just((2, 1, 2)),
        Just((2, 1, 3)),
        Just((3, 1, 2)),
        Just((2, 2, 2)),
        Just((5, 1, 2)),
    ]
    .prop_map(|(p, e, m)| FieldTower::with_defaults(p, e, m).unwrap())
}

fn code() -> impl Strategy<Value = LinearCode> {
    (tower(), 1usize..=3, any::<u64>())
        .prop_flat_map(|(t, n, seed)| (Just(t), Just(n), 1..=n, Just(seed)))
        .prop_map(|(t, n, k, seed)| zoo::random_code(&t, n, k, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_an_involution(c in code()) {
        match c.dual() {
            Some(d) => {
                prop_assert_eq!(c.k() + d.k(), c.n());
                prop_assert_eq!(d.dual().unwrap(), c);
            }
            None => prop_assert_eq!(c.k(), c.n()),
        }
    }

    #[test]
    fn hierarchy_is_strict_bounded_and_partitions_with_dual(c in code()) {
        let s = Settings::default();
        let h = weight_hierarchy(&c, &s).unwrap();
        prop_assert_eq!(h.values().to_vec(), weight_values_independent(&c, &s).unwrap());
        prop_assert!(h.values().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(h.values()[0] >= 1 && *h.values().last().unwrap() <= c.n());
        let dual: Vec<usize> = c.dual().map_or(Vec::new(), |d| weight_hierarchy(&d, &s).unwrap().values().to_vec());
        let mut all: BTreeSet<usize> = h.values().iter().copied().collect();
        for v in dual {
            prop_assert!(all.insert(c.n() + 1 - v));
        }
        prop_assert_eq!(all, (1..=c.n()).collect::<BTreeSet<_>>());
    }

    #[test]
    fn witnesses_are_minimal_invariant_subspaces(c in code()) {
        let s = Settings::default();
        let t = c.tower();
        let h = weight_hierarchy(&c, &s).unwrap();
        for (i, w) in h.witnesses().iter().enumerate() {
            prop_assert!(is_frobenius_invariant(t, w.space()));
            prop_assert_eq!(star_closure_space(t, w.space()), w.space().clone());
            prop_assert_eq!(w.dim(), h.get(i + 1));
            let meet = c.generator().intersection(t, w.space()).unwrap();
            prop_assert!(meet.dim() > i);
        }
    }

    #[test]
    fn every_code_check_passes_or_skips(c in code()) {
        let s = Settings::default();
        for kind in CheckKind::ALL.into_iter().filter(|k| k.scope() == Scope::Code) {
            let rep = theorems::run_code_check(kind, &c, &s).unwrap();
            prop_assert_ne!(rep.verdict, Verdict::Fail, "{:?}", rep);
        }
    }

    #[test]
    fn code_files_round_trip(c in code()) {
        let text = io::code_to_json(&c).to_string();
        prop_assert_eq!(io::parse_code_file(&text).unwrap(), c);
    }

    #[test]
    fn checks_are_reproducible(c in code()) {
        let s = Settings::default();
        for kind in [CheckKind::Duality, CheckKind::MrdDual, CheckKind::DualBounds] {
            let a = theorems::run_code_check(kind, &c, &s).unwrap();
            let b = theorems::run_code_check(kind, &c, &Settings::sequential()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn parameter_checks_over_small_towers() {
    let s = Settings::default();
    for (p, e, m, n) in [(2, 1, 2, 3), (2, 1, 3, 3), (3, 1, 2, 2), (2, 2, 2, 2), (2, 1, 4, 3)] {
        let t = FieldTower::with_defaults(p, e, m).unwrap();
        for kind in CheckKind::ALL.into_iter().filter(|k| k.scope() == Scope::Parameters) {
            let rep = theorems::run_parameter_check(kind, &t, n, &s).unwrap();
            assert_ne!(rep.verdict, Verdict::Fail, "{rep:?}");
        }
    }
}

/// Beyond n <= m the two definitions part ways: rank weights never exceed m.
#[test]
fn definitions_differ_when_n_exceeds_m() {
    let s = Settings::default();
    let t = FieldTower::with_defaults(2, 1, 2).unwrap();
    let full = LinearCode::full(&t, 3).unwrap();
    assert_eq!(weight_hierarchy(&full, &s).unwrap().values(), &[1, 2, 3]);
    assert_eq!(d_hierarchy(&full, InnerMax::Auto, &s).unwrap(), vec![1, 2, 2]);
    assert_eq!(theorems::equivalence(&full, &s).verdict, Verdict::Skip);
}

#[test]
fn weight_ratio_uses_exact_integers_for_large_powers() {
    let t = FieldTower::with_defaults(2, 1, 8).unwrap();
    let c = zoo::gabidulin_code(&t, 2, 2).unwrap();
    let rep = theorems::weight_ratio(&c, &Settings::default());
    assert_eq!(rep.verdict, Verdict::Pass);
    assert_eq!(rep.detail["hierarchy"], serde_json::json!([1, 2]));
}
