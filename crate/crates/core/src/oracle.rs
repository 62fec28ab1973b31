//! Brute-force reference implementations used to cross-check the fast
//! paths. Each one works directly from a definition by exhaustive search
//! and shares no code with the routine it checks.

use std::collections::{BTreeSet, VecDeque};

use crate::abword::{AbLetter, AbWord};
use crate::subset::SubsetOfN;
use crate::tropical::{TropMatrix, TropScalar};
use crate::word::{knuth_neighbors, Word};

/// All `2^n` subsets of `[n]`, in bitmask order.
fn power_set(n: usize) -> Vec<SubsetOfN> {
    (0..1u32 << n).map(SubsetOfN::from_bits).collect()
}

/// The greatest lower bound of `s` and `t` among all subsets of `[n]`.
pub fn glb(n: usize, s: SubsetOfN, t: SubsetOfN) -> Option<SubsetOfN> {
    let lower: Vec<SubsetOfN> = power_set(n).into_iter().filter(|m| m.leq(s) && m.leq(t)).collect();
    lower.iter().copied().find(|&c| lower.iter().all(|m| m.leq(c)))
}

/// The least upper bound of `s` and `t` among all subsets of `[n]`.
pub fn lub(n: usize, s: SubsetOfN, t: SubsetOfN) -> Option<SubsetOfN> {
    let upper: Vec<SubsetOfN> = power_set(n).into_iter().filter(|m| s.leq(*m) && t.leq(*m)).collect();
    upper.iter().copied().find(|&c| upper.iter().all(|m| c.leq(*m)))
}

/// Longest strictly increasing chain from `s` to `t` by depth-first search
/// over all subsets of `[n]`.
pub fn longest_chain(n: usize, s: SubsetOfN, t: SubsetOfN) -> Option<usize> {
    if !s.leq(t) {
        return None;
    }
    let between: Vec<SubsetOfN> = power_set(n).into_iter().filter(|m| s.leq(*m) && m.leq(t)).collect();
    fn dfs(at: SubsetOfN, t: SubsetOfN, between: &[SubsetOfN]) -> usize {
        if at == t {
            return 1;
        }
        between
            .iter()
            .filter(|&&m| at.lt(m))
            .map(|&m| 1 + dfs(m, t, between))
            .max()
            .unwrap_or(0)
    }
    Some(dfs(s, t, &between))
}

/// Every word reachable from `w` by repeated Knuth rewrites.
pub fn knuth_closure(w: &Word) -> BTreeSet<Word> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for nb in knuth_neighbors(&cur) {
            if seen.insert(nb.clone()) {
                queue.push_back(nb);
            }
        }
    }
    seen
}

/// Whether `u` can be read from `s` to `t`: some `s <= P_1 <= ... <= P_|u| <= t`
/// inside `2^[n]` has `u_i ∈ P_i`.
pub fn readable(n: usize, u: &[u16], s: SubsetOfN, t: SubsetOfN) -> bool {
    fn go(n: usize, u: &[u16], prev: SubsetOfN, t: SubsetOfN) -> bool {
        match u.split_first() {
            None => prev.leq(t),
            Some((&x, rest)) => (0..1u32 << n)
                .map(SubsetOfN::from_bits)
                .filter(|p| prev.leq(*p) && p.leq(t) && p.contains(x as u32))
                .any(|p| go(n, rest, p, t)),
        }
    }
    s.leq(t) && go(n, u, s, t)
}

/// Longest scattered subword of `w` readable from `s` to `t`, over all
/// `2^|w|` subwords.
pub fn max_readable_brute(n: usize, w: &Word, s: SubsetOfN, t: SubsetOfN) -> usize {
    let letters = w.letters();
    (0..1u32 << letters.len())
        .filter_map(|mask| {
            let u: Vec<u16> = (0..letters.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| letters[i])
                .collect();
            readable(n, &u, s, t).then_some(u.len())
        })
        .max()
        .unwrap_or(0)
}

/// Heaviest path from `i` to `j` labelled by `word`, over every vertex
/// sequence.
pub fn max_path_brute(x: &TropMatrix, y: &TropMatrix, word: &AbWord, i: usize, j: usize) -> TropScalar {
    let d = x.dim();
    let len = word.len();
    let mut best = TropScalar::NegInf;
    let mut inner = vec![0usize; len.saturating_sub(1)];
    loop {
        let mut at = i;
        let mut weight = TropScalar::ONE;
        for (k, &l) in word.letters().iter().enumerate() {
            let next = if k + 1 == len { j } else { inner[k] };
            let m = if l == AbLetter::A { x } else { y };
            weight = weight * m.get(at, next);
            at = next;
        }
        best = best.max(weight);
        // odometer over intermediate vertices
        let mut pos = 0;
        loop {
            if pos == inner.len() {
                return best;
            }
            inner[pos] += 1;
            if inner[pos] < d {
                break;
            }
            inner[pos] = 0;
            pos += 1;
        }
    }
}

/// Shortest word over `{a, b}` satisfying `accept`, searching all words of
/// length up to `max_len` in order of length.
pub fn shortest_word(max_len: usize, accept: impl Fn(&AbWord) -> bool) -> Option<AbWord> {
    (0..=max_len).find_map(|len| AbWord::all_of_length(len).into_iter().find(|w| accept(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> SubsetOfN {
        s.parse().unwrap()
    }

    #[test]
    fn glb_lub_examples() {
        assert_eq!(glb(4, set("{1,4}"), set("{2,3}")), Some(set("{1,3}")));
        assert_eq!(lub(4, set("{1,4}"), set("{2,3}")), Some(set("{2,4}")));
        assert_eq!(glb(5, set("{2,5}"), set("{1,3,4}")), Some(set("{1,3,4}")));
        assert_eq!(lub(5, set("{2,5}"), set("{1,3,4}")), Some(set("{2,5}")));
    }

    #[test]
    fn chain_examples() {
        assert_eq!(longest_chain(3, set("{1}"), set("{3}")), Some(3));
        assert_eq!(longest_chain(4, set("{1,2}"), set("{3,4}")), Some(5));
    }

    #[test]
    fn readable_example() {
        let w = Word::from_digits("121").unwrap();
        assert_eq!(max_readable_brute(2, &w, set("{1}"), set("{2}")), 2);
    }

    #[test]
    fn closure_of_display_word() {
        let c = knuth_closure(&Word::from_digits("1314").unwrap());
        assert!(c.contains(&Word::from_digits("3114").unwrap()));
        assert!(c.contains(&Word::from_digits("1341").unwrap()));
    }

    #[test]
    fn shortest_constrained_q_for_rank_three() {
        let q = shortest_word(8, |w| crate::forge::verify_q(w, 3, true).passed()).unwrap();
        assert_eq!(q.len(), 6);
    }
}
