use std::collections::HashMap;

use placid::oracle::knuth_closure;
use placid::rep::all_words;
use placid::word::{plactic_equal, tableau_of_word, Letter, Tableau, Word};
use proptest::prelude::*;

/// Labels every word of length at most `max_len` over `[n]` by its Knuth
/// class, found by breadth-first closure.
fn knuth_classes(n: usize, max_len: usize) -> (Vec<Word>, HashMap<Word, usize>) {
    let words = all_words(n, max_len);
    let mut class = HashMap::new();
    let mut next = 0;
    for w in &words {
        if class.contains_key(w) {
            continue;
        }
        for v in knuth_closure(w) {
            class.insert(v, next);
        }
        next += 1;
    }
    (words, class)
}

#[test]
fn tableau_equality_matches_knuth_closure() {
    for (n, max_len) in [(2, 6), (3, 6), (4, 5)] {
        let (words, class) = knuth_classes(n, max_len);
        let mut by_tableau: HashMap<Tableau, usize> = HashMap::new();
        for w in &words {
            let c = class[w];
            let seen = *by_tableau.entry(tableau_of_word(w)).or_insert(c);
            assert_eq!(seen, c, "n={n}: {w} shares a tableau with another Knuth class");
        }
        let classes: std::collections::HashSet<_> = class.values().collect();
        assert_eq!(by_tableau.len(), classes.len(), "n={n}");
    }
}

#[test]
fn length_six_rank_four_spot_checks() {
    // Full n=4, |w|=6 comparison pairs a sample of words with their whole class.
    for digits in ["432143", "121212", "441133", "312413"] {
        let w = Word::from_digits(digits).unwrap();
        let t = tableau_of_word(&w);
        for v in knuth_closure(&w) {
            assert_eq!(tableau_of_word(&v), t, "{w} ~ {v}");
        }
    }
}

#[test]
fn display_examples() {
    let rows = [vec![1, 1, 4], vec![3]];
    for s in ["1314", "1341", "3114"] {
        assert_eq!(tableau_of_word(&Word::from_digits(s).unwrap()).rows(), &rows[..]);
    }
    assert!(plactic_equal(
        &Word::from_digits("1314").unwrap(),
        &Word::from_digits("3114").unwrap()
    ));
    assert!(!plactic_equal(
        &Word::from_digits("12").unwrap(),
        &Word::from_digits("21").unwrap()
    ));
}

fn arb_word(n: Letter, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len).prop_map(Word::new)
}

proptest! {
    #[test]
    fn tableau_invariants(w in arb_word(6, 30)) {
        let t = tableau_of_word(&w);
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.num_boxes(), w.len());
        let reading = t.reading_word();
        prop_assert_eq!(tableau_of_word(&reading), t.clone());
        for x in 1..=6 {
            prop_assert_eq!(reading.count(x), w.count(x));
        }
    }

    #[test]
    fn plactic_equality_is_a_congruence(u in arb_word(4, 10), v in arb_word(4, 6), p in arb_word(4, 6)) {
        let u2 = tableau_of_word(&u).reading_word();
        prop_assert!(plactic_equal(&u, &u2));
        prop_assert!(plactic_equal(&p.concat(&u).concat(&v), &p.concat(&u2).concat(&v)));
    }

    #[test]
    fn knuth_neighbours_share_a_tableau(w in arb_word(4, 12)) {
        let t = tableau_of_word(&w);
        for v in placid::word::knuth_neighbors(&w) {
            prop_assert_eq!(tableau_of_word(&v), t.clone());
        }
    }
}
