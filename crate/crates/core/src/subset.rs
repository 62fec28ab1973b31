//! The poset `(2^[n], <=)` on subsets of `[n]`, its lattice operations,
//! order intervals and chain lengths, and the constructive splitting steps
//! that pick a heavy subset inside an interval.
//!
//! For subsets `S` and `T`, `S <= T` holds when `|S| >= |T|` and the `i`-th
//! smallest element of `S` is at most the `i`-th smallest element of `T` for
//! every `i <= |T|`. Under this order the empty set is the top element and
//! `[n]` is the bottom.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Largest rank representable by the bitmask.
pub const MAX_RANK: usize = 31;

/// A subset of `[n]`, stored as a bitmask with bit `i - 1` for element `i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SubsetOfN {
    bits: u32,
}

impl SubsetOfN {
    pub const EMPTY: SubsetOfN = SubsetOfN { bits: 0 };

    pub fn from_bits(bits: u32) -> Self {
        SubsetOfN { bits }
    }

    /// Builds a subset from its elements. Panics on 0 or an element above
    /// [`MAX_RANK`].
    pub fn from_elements(elems: &[u32]) -> Self {
        let mut bits = 0u32;
        for &e in elems {
            assert!(e >= 1 && e as usize <= MAX_RANK, "subset element {e} out of range");
            bits |= 1 << (e - 1);
        }
        SubsetOfN { bits }
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_RANK);
        SubsetOfN { bits: (1u32 << n) - 1 }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, x: u32) -> bool {
        (1..=32).contains(&x) && self.bits >> (x - 1) & 1 == 1
    }

    pub fn insert(&mut self, x: u32) {
        self.bits |= 1 << (x - 1);
    }

    pub fn remove(&mut self, x: u32) {
        self.bits &= !(1 << (x - 1));
    }

    pub fn union(self, other: SubsetOfN) -> SubsetOfN {
        SubsetOfN {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: SubsetOfN) -> SubsetOfN {
        SubsetOfN {
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(self, other: SubsetOfN) -> SubsetOfN {
        SubsetOfN {
            bits: self.bits & !other.bits,
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let low = bits.trailing_zeros();
                bits &= bits - 1;
                Some(low + 1)
            }
        })
    }

    pub fn elements(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// `S^i`, the `i`-th smallest element, 1-based.
    pub fn ith(self, i: usize) -> Option<u32> {
        if i == 0 {
            return None;
        }
        self.iter().nth(i - 1)
    }

    /// Largest element, 0 for the empty set.
    pub fn max_element(self) -> u32 {
        32 - self.bits.leading_zeros()
    }

    fn element_sum(self) -> u32 {
        self.iter().sum()
    }

    /// `S <= T` in the order on `2^[n]`.
    pub fn leq(self, other: SubsetOfN) -> bool {
        self.len() >= other.len() && self.iter().zip(other.iter()).all(|(s, t)| s <= t)
    }

    /// `S < T`.
    pub fn lt(self, other: SubsetOfN) -> bool {
        self != other && self.leq(other)
    }

    /// Greatest lower bound: elementwise minima over the common length, then
    /// the tail of the larger set.
    pub fn meet(self, other: SubsetOfN) -> SubsetOfN {
        let (long, short) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let k = short.len();
        let mut out = SubsetOfN::EMPTY;
        for (s, t) in long.iter().zip(short.iter()) {
            out.insert(s.min(t));
        }
        for s in long.iter().skip(k) {
            out.insert(s);
        }
        out
    }

    /// Least upper bound: elementwise maxima over the common length.
    pub fn join(self, other: SubsetOfN) -> SubsetOfN {
        let mut out = SubsetOfN::EMPTY;
        for (s, t) in self.iter().zip(other.iter()) {
            out.insert(s.max(t));
        }
        out
    }

    /// Canonical order used for matrix indexing: cardinality ascending, then
    /// lexicographic on the sorted element lists.
    pub fn canonical_cmp(&self, other: &SubsetOfN) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Display for SubsetOfN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for SubsetOfN {
    type Err = Error;

    /// Parses `"{1,3,4}"`; braces are optional.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = SubsetOfN::EMPTY;
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.parse::<u32>() {
                Ok(x) if x >= 1 && x as usize <= MAX_RANK => out.insert(x),
                _ => return Err(Error::ParseSubset(format!("bad element '{tok}' in '{s}'"))),
            }
        }
        Ok(out)
    }
}

impl Serialize for SubsetOfN {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SubsetOfN {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<u32>::deserialize(de)?;
        if let Some(&bad) = elems.iter().find(|&&e| e == 0 || e as usize > MAX_RANK) {
            return Err(serde::de::Error::custom(format!("subset element {bad} out of range")));
        }
        Ok(SubsetOfN::from_elements(&elems))
    }
}

/// All `2^n` subsets of `[n]` in canonical order.
pub fn all_subsets(n: usize) -> Vec<SubsetOfN> {
    assert!(n <= 20, "refusing to enumerate 2^{n} subsets");
    let mut v: Vec<SubsetOfN> = (0..1u32 << n).map(SubsetOfN::from_bits).collect();
    v.sort_by(SubsetOfN::canonical_cmp);
    v
}

/// Position of every subset of `[n]` in the canonical order.
pub fn canonical_index(n: usize) -> HashMap<SubsetOfN, usize> {
    all_subsets(n).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

fn check_ordered(lo: SubsetOfN, hi: SubsetOfN) -> Result<()> {
    if lo.leq(hi) {
        Ok(())
    } else {
        Err(Error::NotOrdered {
            lo: lo.to_string(),
            hi: hi.to_string(),
        })
    }
}

fn check_same_size(s: SubsetOfN, t: SubsetOfN) -> Result<()> {
    if s.len() == t.len() {
        Ok(())
    } else {
        Err(Error::SizeMismatch(s.to_string(), t.to_string()))
    }
}

/// An order interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderInterval {
    lo: SubsetOfN,
    hi: SubsetOfN,
}

impl OrderInterval {
    pub fn new(lo: SubsetOfN, hi: SubsetOfN) -> Result<Self> {
        check_ordered(lo, hi)?;
        Ok(OrderInterval { lo, hi })
    }

    pub fn lo(&self) -> SubsetOfN {
        self.lo
    }

    pub fn hi(&self) -> SubsetOfN {
        self.hi
    }

    pub fn contains(&self, m: SubsetOfN) -> bool {
        self.lo.leq(m) && m.leq(self.hi)
    }

    /// Members of the interval inside `2^[n]`, in canonical order.
    pub fn members(&self, n: usize) -> Vec<SubsetOfN> {
        all_subsets(n).into_iter().filter(|&m| self.contains(m)).collect()
    }
}

/// All `M` in `2^[n]` with `lo <= M <= hi`, in canonical order.
pub fn enumerate_interval(n: usize, lo: SubsetOfN, hi: SubsetOfN) -> Result<Vec<SubsetOfN>> {
    Ok(OrderInterval::new(lo, hi)?.members(n))
}

/// Members of an equal-size interval. Every member has the size of its
/// endpoints and elements bounded by `hi`, so no ambient rank is needed.
fn equal_size_interval(lo: SubsetOfN, hi: SubsetOfN) -> Vec<SubsetOfN> {
    let k = hi.len() as u32;
    let m = hi.max_element();
    (0..1u32 << m)
        .filter(|b| b.count_ones() == k)
        .map(SubsetOfN::from_bits)
        .filter(|&x| lo.leq(x) && x.leq(hi))
        .collect()
}

/// Longest strictly increasing chain `S = P_1 < ... < P_t = T`, counted in
/// sets. Requires `|S| = |T|` and `S <= T`.
pub fn chain_length(s: SubsetOfN, t: SubsetOfN) -> Result<usize> {
    check_same_size(s, t)?;
    check_ordered(s, t)?;
    let mut members = equal_size_interval(s, t);
    // For equal sizes, P < Q forces a strictly smaller element sum, so this
    // sort is a linear extension of the order.
    members.sort_by_key(|m| (m.element_sum(), m.bits()));
    let mut longest: Vec<usize> = vec![0; members.len()];
    for j in 0..members.len() {
        let best = (0..j)
            .filter(|&i| longest[i] > 0 && members[i].lt(members[j]))
            .map(|i| longest[i] + 1)
            .max();
        longest[j] = if members[j] == s { 1 } else { best.unwrap_or(0) };
    }
    let pos = members.iter().position(|&m| m == t).expect("hi is in its own interval");
    Ok(longest[pos])
}

/// Letter counts `|w|_x` of a word over `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordCounts {
    counts: Vec<u64>,
}

impl WordCounts {
    /// Counts from an explicit vector, `counts[i]` being `|w|_{i+1}`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        WordCounts { counts }
    }

    pub fn from_word(n: usize, w: &Word) -> Result<Self> {
        w.check_rank(n)?;
        let mut counts = vec![0; n];
        for &x in w.letters() {
            counts[x as usize - 1] += 1;
        }
        Ok(WordCounts { counts })
    }

    pub fn rank(&self) -> usize {
        self.counts.len()
    }

    /// `|w|_x`; zero outside `[n]`.
    pub fn count(&self, x: Letter) -> u64 {
        self.counts.get((x as usize).wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `|w|_N`, the total count of the letters of `N`.
    pub fn count_of_set(&self, set: SubsetOfN) -> u64 {
        set.iter().map(|x| self.count(x as Letter)).sum()
    }
}

fn check_split_inputs(w: &WordCounts, s: SubsetOfN, t: SubsetOfN) -> Result<()> {
    check_same_size(s, t)?;
    if !s.lt(t) {
        return Err(Error::NotOrdered {
            lo: s.to_string(),
            hi: t.to_string(),
        });
    }
    let n = w.rank();
    if (t.max_element() as usize) > n || (s.max_element() as usize) > n {
        return Err(Error::Precondition(format!("{s} or {t} is not a subset of [{n}]")));
    }
    Ok(())
}

/// Finds `N` in `[S, T]` with `N != S`, `|w|_N >= min(|w|_S, |w|_T)` and
/// chain length of `[S, N]` at most `n`.
///
/// When `[S, T]` is already short, `T` is returned. Otherwise one element of
/// `S \ T` is exchanged for its partner in `T \ S`, using the least index
/// whose count difference is at least `min(0, |w|_T - |w|_S)`.
pub fn split(w: &WordCounts, s: SubsetOfN, t: SubsetOfN) -> Result<SubsetOfN> {
    check_split_inputs(w, s, t)?;
    let n = w.rank();
    if chain_length(s, t)? <= n {
        return Ok(t);
    }
    let s_only = s.difference(t).elements();
    let t_only = t.difference(s).elements();
    let threshold = (w.count_of_set(t) as i64 - w.count_of_set(s) as i64).min(0);
    let (si, ti) = s_only
        .iter()
        .zip(&t_only)
        .find(|&(&si, &ti)| w.count(ti as Letter) as i64 - w.count(si as Letter) as i64 >= threshold)
        .map(|(&si, &ti)| (si, ti))
        .expect("an exchange index always exists");
    let mut out = s;
    out.remove(si);
    out.insert(ti);
    Ok(out)
}

/// Picks a deterministic minimal (`want_max = false`) or maximal element of
/// `candidates` under `<=`, breaking ties by canonical order.
fn extremal(candidates: &[SubsetOfN], want_max: bool) -> Option<SubsetOfN> {
    let mut sorted = candidates.to_vec();
    sorted.sort_by(SubsetOfN::canonical_cmp);
    sorted
        .into_iter()
        .find(|&c| !candidates.iter().any(|&d| if want_max { c.lt(d) } else { d.lt(c) }))
}

/// For `|w|_S <= |w|_T`: returns `N` in `[S, T]`, `N != S`, with `[S, N]` of
/// chain length at most `n` and `|w|_M <= |w|_N` for every `M` in `[S, N]`.
pub fn split_apply_increasing(w: &WordCounts, s: SubsetOfN, t: SubsetOfN) -> Result<SubsetOfN> {
    check_split_inputs(w, s, t)?;
    if w.count_of_set(s) > w.count_of_set(t) {
        return Err(Error::Precondition(format!("|w|_{s} > |w|_{t}")));
    }
    let first = split(w, s, t)?;
    let target = w.count_of_set(first);
    let candidates: Vec<SubsetOfN> = equal_size_interval(s, first)
        .into_iter()
        .filter(|&m| m != s && w.count_of_set(m) >= target)
        .collect();
    Ok(extremal(&candidates, false).expect("the split result is itself a candidate"))
}

/// For `|w|_T <= |w|_S`: returns `N` in `[S, T]`, `N != T`, with `[N, T]` of
/// chain length at most `n` and `|w|_M <= |w|_N` for every `M` in `[N, T]`.
pub fn split_apply_decreasing(w: &WordCounts, s: SubsetOfN, t: SubsetOfN) -> Result<SubsetOfN> {
    check_split_inputs(w, s, t)?;
    if w.count_of_set(t) > w.count_of_set(s) {
        return Err(Error::Precondition(format!("|w|_{t} > |w|_{s}")));
    }
    let n = w.rank();
    let mut base = s;
    let mut remaining = chain_length(base, t)?;
    while remaining > n {
        let next = split(w, base, t)?;
        let next_remaining = chain_length(next, t)?;
        assert!(
            next_remaining < remaining,
            "splitting {base} towards {t} did not shorten the interval"
        );
        base = next;
        remaining = next_remaining;
    }
    let target = w.count_of_set(base);
    let candidates: Vec<SubsetOfN> = equal_size_interval(base, t)
        .into_iter()
        .filter(|&m| m != t && w.count_of_set(m) >= target)
        .collect();
    Ok(extremal(&candidates, true).expect("the last split base is itself a candidate"))
}
