use placid::bench::knuth_instances;
use placid::oracle::max_readable_brute;
use placid::rep::{
    all_words, faithfulness_check, max_readable_length, rho_generator, rho_identity, rho_word, FaithfulnessStrategy,
    PlacticRep,
};
use placid::subset::{all_subsets, SubsetOfN, WordCounts};
use placid::tropical::TropScalar;
use placid::word::{Letter, Word};
use proptest::prelude::*;

fn comparable(n: usize) -> Vec<(SubsetOfN, SubsetOfN)> {
    let subsets = all_subsets(n);
    let mut out = Vec::new();
    for &s in &subsets {
        for &t in &subsets {
            if s.len() == t.len() && s.leq(t) {
                out.push((s, t));
            }
        }
    }
    out
}

#[test]
fn knuth_relations_hold_in_context() {
    for n in 2..=4 {
        let rep = PlacticRep::new(n).unwrap();
        let context = [Word::empty(), Word::new(vec![1]), Word::new(vec![n as Letter, 1])];
        for (l, r) in knuth_instances(n) {
            for p in &context {
                for q in &context {
                    let a = rep.word(&p.concat(&l).concat(q)).unwrap();
                    let b = rep.word(&p.concat(&r).concat(q)).unwrap();
                    assert!(a.same_entries(&b), "n={n}: {p}|{l}|{q} vs {p}|{r}|{q}");
                }
            }
        }
    }
}

#[test]
fn entries_match_brute_force_readability() {
    for (n, max_len) in [(1, 6), (2, 6), (3, 4)] {
        let rep = PlacticRep::new(n).unwrap();
        let pairs = comparable(n);
        for w in all_words(n, max_len) {
            let m = rep.word(&w).unwrap();
            for &(s, t) in &pairs {
                let brute = max_readable_brute(n, &w, s, t);
                assert_eq!(max_readable_length(&w, s, t).unwrap(), brute, "n={n} w={w} [{s},{t}]");
                assert_eq!(
                    rep.entry(&m, s, t),
                    Some(TropScalar::Fin(brute as i64)),
                    "n={n} w={w} [{s},{t}]"
                );
            }
        }
    }
}

#[test]
fn readability_uses_weak_steps() {
    // Consecutive letters may be read from the same subset.
    let w = Word::from_digits("1111").unwrap();
    let s: SubsetOfN = "{1}".parse().unwrap();
    assert_eq!(max_readable_length(&w, s, s).unwrap(), 4);
    let w = Word::from_digits("1212").unwrap();
    assert_eq!(max_readable_length(&w, s, "{2}".parse().unwrap()).unwrap(), 3);
}

#[test]
fn generator_and_identity_shapes() {
    for n in 1..=4 {
        let id = rho_identity(n).unwrap();
        let subsets = all_subsets(n);
        assert_eq!(id.dim(), 1 << n);
        for (i, &s) in subsets.iter().enumerate() {
            for (j, &t) in subsets.iter().enumerate() {
                let supported = s.len() == t.len() && s.leq(t);
                assert_eq!(id.get(i, j).is_neg_inf(), !supported, "identity at ({s},{t})");
                if supported {
                    assert_eq!(id.get(i, j), TropScalar::Fin(0));
                }
                for x in 1..=n as Letter {
                    let g = rho_generator(n, x).unwrap();
                    assert_eq!(g.get(i, j).is_neg_inf(), !supported);
                }
            }
        }
        assert!(rho_generator(n, 0).is_err());
        assert!(rho_generator(n, n as Letter + 1).is_err());
    }
    assert!(rho_word(0, &Word::empty()).is_err());
}

#[test]
fn rank_two_generator_example() {
    let m = rho_generator(2, 1).unwrap();
    let rep = PlacticRep::new(2).unwrap();
    let one: SubsetOfN = "{1}".parse().unwrap();
    let two: SubsetOfN = "{2}".parse().unwrap();
    assert_eq!(rep.entry(&m, one, two), Some(TropScalar::Fin(1)));
    assert_eq!(rep.entry(&m, two, two), Some(TropScalar::Fin(0)));
    assert_eq!(rep.entry(&m, two, one), Some(TropScalar::NegInf));
}

#[test]
fn faithfulness_exhaustive_and_sampled() {
    for n in 1..=3 {
        let report = faithfulness_check(n, 5, FaithfulnessStrategy::Exhaustive).unwrap();
        assert!(report.passed(), "n={n}: {:?}", report.violations);
    }
    let report = faithfulness_check(4, 7, FaithfulnessStrategy::Sampled { samples: 4000, seed: 3 }).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
}

fn arb_word(n: Letter, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len).prop_map(Word::new)
}

proptest! {
    #[test]
    fn diagonal_counts_letters(w in arb_word(4, 12)) {
        let rep = PlacticRep::new(4).unwrap();
        let m = rep.word(&w).unwrap();
        let counts = WordCounts::from_word(4, &w).unwrap();
        for &s in rep.subsets() {
            prop_assert_eq!(rep.entry(&m, s, s), Some(TropScalar::Fin(counts.count_of_set(s) as i64)));
        }
    }

    #[test]
    fn rho_is_a_homomorphism(u in arb_word(3, 8), v in arb_word(3, 8)) {
        let rep = PlacticRep::new(3).unwrap();
        let joint = rep.word(&u.concat(&v)).unwrap();
        let split = rep.word(&u).unwrap().mul(&rep.word(&v).unwrap()).unwrap();
        prop_assert!(joint.same_entries(&split));
    }
}
