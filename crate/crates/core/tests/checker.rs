use std::time::Duration;

use placid::checker::{
    check_plactic, check_rho_consistency, check_tropical, PlacticStrategy, TropSearchConfig, TropWitness,
    DEFAULT_BUDGET,
};
use placid::forge::{build_identity, rank_three_identity, IdentityWords, QMode};
use placid::tropical::TropMatrix;

fn frozen_witness() -> TropWitness {
    serde_json::from_str(placid::bench::UT3_WITNESS_FIXTURE).unwrap()
}

#[test]
fn frozen_witness_reverifies() {
    let w = frozen_witness();
    assert_eq!(w.identity, build_identity(2, true, QMode::Minimal).unwrap().identity());
    assert!(w.reverify().is_ok());
    assert_eq!((w.differing_entry.row, w.differing_entry.col), (0, 2));
}

#[test]
fn tampered_witness_is_rejected() {
    let mut w = frozen_witness();
    w.differing_entry.lhs = w.differing_entry.rhs;
    assert!(w.reverify().is_err());
    let lower = TropMatrix::from_options(&[&[Some(0), None], &[Some(1), Some(0)]]).unwrap();
    assert!(TropWitness::new(&w.identity, lower.clone(), lower).is_err());
}

#[test]
fn rank_two_identity_separated_by_ut3() {
    let id = build_identity(2, true, QMode::Minimal).unwrap().identity();
    let report = check_tropical(
        &id,
        3,
        TropSearchConfig {
            seed: 1,
            ..Default::default()
        },
        DEFAULT_BUDGET,
    )
    .unwrap();
    let w = report.witness.expect("witness within the default sample count");
    assert!(w.reverify().is_ok());
}

#[test]
fn no_witness_in_small_dimensions() {
    let id = build_identity(2, true, QMode::Minimal).unwrap().identity();
    let config = TropSearchConfig {
        samples: 3000,
        seed: 2,
        ..Default::default()
    };
    for k in 1..=2 {
        let report = check_tropical(&id, k, config, DEFAULT_BUDGET).unwrap();
        assert!(report.witness.is_none(), "k={k}");
        assert_eq!(report.samples_run, 3000);
    }
    assert!(check_tropical(&id, 0, config, DEFAULT_BUDGET).is_err());
}

#[test]
fn built_identities_hold_at_their_rank() {
    for n in 2..=4 {
        for constrained in [false, true] {
            let id = build_identity(n, constrained, QMode::Minimal).unwrap().identity();
            let strategy = PlacticStrategy::Random {
                samples: 3000,
                max_len: 8,
                seed: 5,
            };
            let report = check_plactic(&id, n, strategy, DEFAULT_BUDGET).unwrap();
            assert!(report.passed(), "n={n}: {:?}", report.counterexample);
        }
    }
}

#[test]
fn exhaustive_small_ranks() {
    let id = build_identity(2, true, QMode::Minimal).unwrap().identity();
    let report = check_plactic(&id, 2, PlacticStrategy::Exhaustive { max_len: 4 }, DEFAULT_BUDGET).unwrap();
    assert!(report.passed());
    assert_eq!(report.samples_run, 31 * 31);
    let ko = rank_three_identity();
    let report = check_plactic(&ko, 3, PlacticStrategy::Exhaustive { max_len: 3 }, DEFAULT_BUDGET).unwrap();
    assert!(report.passed());
}

#[test]
fn counterexamples_are_genuine() {
    let id = build_identity(2, true, QMode::Minimal).unwrap().identity();
    let strategy = PlacticStrategy::Random {
        samples: 100_000,
        max_len: 8,
        seed: 7,
    };
    let report = check_plactic(&id, 3, strategy, DEFAULT_BUDGET).unwrap();
    let cx = report.counterexample.expect("the rank-2 identity fails at rank 3");
    assert_ne!(cx.lhs_tableau, cx.rhs_tableau);
    let lhs = placid::word::Word::new(placid::abword::substitute(&id.lhs, cx.x.letters(), cx.y.letters()));
    assert_eq!(placid::word::tableau_of_word(&lhs), cx.lhs_tableau);

    let trivial = IdentityWords::parse("ab = ba").unwrap();
    let report = check_plactic(&trivial, 2, PlacticStrategy::Exhaustive { max_len: 1 }, DEFAULT_BUDGET).unwrap();
    assert!(report.counterexample.is_some());
}

#[test]
fn first_counterexample_is_independent_of_scheduling() {
    let id = build_identity(2, true, QMode::Minimal).unwrap().identity();
    let strategy = PlacticStrategy::Random {
        samples: 20_000,
        max_len: 8,
        seed: 3,
    };
    let a = check_plactic(&id, 3, strategy, DEFAULT_BUDGET).unwrap();
    let b = check_plactic(&id, 3, strategy, DEFAULT_BUDGET).unwrap();
    assert_eq!(a.counterexample, b.counterexample);
    let index = a.counterexample.unwrap().sample_index;
    for i in 0..index {
        let (x, y) = placid::checker::sample_pair(3, 8, 3, i);
        let l = placid::word::Word::new(placid::abword::substitute(&id.lhs, x.letters(), y.letters()));
        let r = placid::word::Word::new(placid::abword::substitute(&id.rhs, x.letters(), y.letters()));
        assert!(placid::word::plactic_equal(&l, &r), "earlier sample {i} also fails");
    }
}

#[test]
fn matrices_and_tableaux_agree() {
    for n in 2..=3 {
        for constrained in [false, true] {
            let id = build_identity(n, constrained, QMode::Minimal).unwrap().identity();
            let report = check_rho_consistency(&id, n, 300, 6, 9).unwrap();
            assert!(report.consistent(), "n={n}: {:?}", report.verdict_disagreements);
            assert!(report.matrix_mismatches.is_empty());
        }
    }
    // At rank 3 the rank-2 identity fails, and both views see the same failures.
    let id = build_identity(2, true, QMode::Minimal).unwrap().identity();
    let report = check_rho_consistency(&id, 3, 2000, 8, 4).unwrap();
    assert!(report.consistent());
    assert!(check_rho_consistency(&id, 5, 1, 1, 0).is_err());
}

#[test]
fn budget_exhaustion_is_reported() {
    let id = build_identity(3, false, QMode::Minimal).unwrap().identity();
    let strategy = PlacticStrategy::Random {
        samples: 1000,
        max_len: 8,
        seed: 0,
    };
    let report = check_plactic(&id, 3, strategy, Duration::ZERO).unwrap();
    assert!(report.budget_exhausted && !report.passed());
}
