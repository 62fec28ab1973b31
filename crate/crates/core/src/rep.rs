//! The tropical representation of the plactic monoid of rank `n` by
//! `2^n x 2^n` max-plus matrices indexed by subsets of `[n]`.
//!
//! The image of a generator `x` has entry `(P, Q)`:
//!
//! * `-inf` when `|P| != |Q|` or `P` is not below `Q`,
//! * `1` when `x` lies in the union of all sets of the interval `[P, Q]`,
//! * `0` otherwise.
//!
//! Entry `(S, T)` of the image of a word `w` is the length of the longest
//! scattered subword of `w` readable from `S` to `T`: a subword `u` is
//! readable when there are sets `S <= P_1 <= ... <= P_|u| <= T` with
//! `u_i ∈ P_i`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{all_subsets, enumerate_interval, SubsetOfN};
use crate::tropical::{TropMatrix, TropScalar};
use crate::word::{tableau_of_word, Letter, Tableau, Word};

/// Largest rank for which the representation is materialised.
pub const MAX_REP_RANK: usize = 8;

/// Precomputed generator images for one rank, shared read-only.
#[derive(Debug, Clone)]
pub struct PlacticRep {
    rank: usize,
    subsets: Vec<SubsetOfN>,
    index: HashMap<SubsetOfN, usize>,
    identity: TropMatrix,
    generators: Vec<TropMatrix>,
}

impl PlacticRep {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_REP_RANK {
            return Err(Error::RankOutOfRange(rank));
        }
        let subsets = all_subsets(rank);
        let index = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let identity = build_identity(&subsets);
        let generators = (1..=rank as Letter)
            .map(|x| build_generator(rank, &subsets, x))
            .collect();
        Ok(PlacticRep {
            rank,
            subsets,
            index,
            identity,
            generators,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    /// Row/column labels in canonical order.
    pub fn subsets(&self) -> &[SubsetOfN] {
        &self.subsets
    }

    /// Matrix index of a subset of `[n]`.
    pub fn index_of(&self, s: SubsetOfN) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn identity(&self) -> &TropMatrix {
        &self.identity
    }

    pub fn generator(&self, x: Letter) -> Result<&TropMatrix> {
        if x == 0 || x as usize > self.rank {
            return Err(Error::LetterOutOfRange {
                letter: x as u32,
                rank: self.rank,
            });
        }
        Ok(&self.generators[x as usize - 1])
    }

    /// Image of a word; the empty word maps to the identity image.
    pub fn word(&self, w: &Word) -> Result<TropMatrix> {
        w.check_rank(self.rank)?;
        let mut letters = w.letters().iter();
        let Some(&first) = letters.next() else {
            return Ok(self.identity.clone());
        };
        letters.try_fold(self.generators[first as usize - 1].clone(), |acc, &x| {
            acc.mul(&self.generators[x as usize - 1])
        })
    }

    /// Entry `(S, T)` of a matrix indexed by this rank's subsets.
    pub fn entry(&self, m: &TropMatrix, s: SubsetOfN, t: SubsetOfN) -> Option<TropScalar> {
        Some(m.get(self.index_of(s)?, self.index_of(t)?))
    }
}

fn in_support(p: SubsetOfN, q: SubsetOfN) -> bool {
    p.len() == q.len() && p.leq(q)
}

fn build_identity(subsets: &[SubsetOfN]) -> TropMatrix {
    let d = subsets.len();
    let mut m = TropMatrix::filled(d, TropScalar::NegInf);
    for (i, &p) in subsets.iter().enumerate() {
        for (j, &q) in subsets.iter().enumerate() {
            if in_support(p, q) {
                m.set(i, j, TropScalar::ONE);
            }
        }
    }
    m.with_labels(subsets.to_vec()).expect("one label per subset")
}

fn interval_union(rank: usize, p: SubsetOfN, q: SubsetOfN) -> SubsetOfN {
    enumerate_interval(rank, p, q)
        .expect("caller checked p <= q")
        .into_iter()
        .fold(SubsetOfN::EMPTY, SubsetOfN::union)
}

fn build_generator(rank: usize, subsets: &[SubsetOfN], x: Letter) -> TropMatrix {
    let d = subsets.len();
    let mut m = TropMatrix::filled(d, TropScalar::NegInf);
    for (i, &p) in subsets.iter().enumerate() {
        for (j, &q) in subsets.iter().enumerate() {
            if in_support(p, q) {
                let hit = interval_union(rank, p, q).contains(x as u32);
                m.set(i, j, TropScalar::Fin(hit as i64));
            }
        }
    }
    m.with_labels(subsets.to_vec()).expect("one label per subset")
}

/// Image of the generator `x` in rank `n`.
pub fn rho_generator(n: usize, x: Letter) -> Result<TropMatrix> {
    if x == 0 || x as usize > n {
        return Err(Error::LetterOutOfRange {
            letter: x as u32,
            rank: n,
        });
    }
    if n > MAX_REP_RANK {
        return Err(Error::RankOutOfRange(n));
    }
    Ok(build_generator(n, &all_subsets(n), x))
}

/// Image of the empty word in rank `n`.
pub fn rho_identity(n: usize) -> Result<TropMatrix> {
    if n > MAX_REP_RANK {
        return Err(Error::RankOutOfRange(n));
    }
    Ok(build_identity(&all_subsets(n)))
}

/// Image of a word in rank `n`.
pub fn rho_word(n: usize, w: &Word) -> Result<TropMatrix> {
    w.check_rank(n)?;
    PlacticRep::new(n)?.word(w)
}

/// Length of the longest scattered subword of `w` readable from `S` to `T`,
/// by dynamic programming over the interval `[S, T]` with weak steps.
pub fn max_readable_length(w: &Word, s: SubsetOfN, t: SubsetOfN) -> Result<usize> {
    if s.len() != t.len() {
        return Err(Error::SizeMismatch(s.to_string(), t.to_string()));
    }
    if !s.leq(t) {
        return Err(Error::NotOrdered {
            lo: s.to_string(),
            hi: t.to_string(),
        });
    }
    let rank = t.max_element().max(1) as usize;
    let members = enumerate_interval(rank, s, t)?;
    // below[j]: indices i with members[i] <= members[j]
    let below: Vec<Vec<usize>> = members
        .iter()
        .map(|&m| (0..members.len()).filter(|&i| members[i].leq(m)).collect())
        .collect();
    // best[j]: most letters read so far with the current set at or below members[j]
    let mut best = vec![0usize; members.len()];
    for &x in w.letters() {
        let next: Vec<usize> = below
            .iter()
            .map(|lower| {
                lower
                    .iter()
                    .map(|&i| best[i] + members[i].contains(x as u32) as usize)
                    .max()
                    .expect("every set is below itself")
            })
            .collect();
        best = next;
    }
    let top = members.iter().position(|&m| m == t).expect("t is in [s, t]");
    Ok(best[top])
}

/// How [`faithfulness_check`] chooses words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FaithfulnessStrategy {
    /// Every word of length at most `max_len`.
    Exhaustive,
    /// `samples` uniformly random words of length at most `max_len`.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithfulnessReport {
    pub rank: usize,
    pub max_len: usize,
    pub strategy: FaithfulnessStrategy,
    pub words_checked: usize,
    /// Number of distinct plactic classes seen.
    pub classes: usize,
    /// Word pairs on which matrix equality and tableau equality disagree.
    pub violations: Vec<(Word, Word)>,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All words over `[n]` of length at most `max_len`, shortest first.
pub fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                (1..=n as Letter).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A uniformly random word whose length is uniform in `[0, max_len]`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=n as Letter)).collect())
}

/// Checks that two words have equal images exactly when they have equal
/// tableaux, over the words chosen by `strategy`.
pub fn faithfulness_check(n: usize, max_len: usize, strategy: FaithfulnessStrategy) -> Result<FaithfulnessReport> {
    let rep = PlacticRep::new(n)?;
    let words = match strategy {
        FaithfulnessStrategy::Exhaustive => all_words(n, max_len),
        FaithfulnessStrategy::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| random_word(&mut rng, n, max_len)).collect()
        }
    };
    // Group by tableau and by matrix; the two partitions must coincide, so
    // each tableau class maps to one matrix class and vice versa.
    let mut by_tableau: HashMap<Tableau, Word> = HashMap::new();
    let mut by_matrix: HashMap<TropMatrix, Word> = HashMap::new();
    let mut violations = Vec::new();
    for w in &words {
        let t_rep = by_tableau.entry(tableau_of_word(w)).or_insert_with(|| w.clone());
        let m_rep = by_matrix.entry(rep.word(w)?).or_insert_with(|| w.clone());
        // Differing first representatives mean one side identifies words
        // the other separates.
        if t_rep != m_rep {
            violations.push((t_rep.clone(), m_rep.clone()));
        }
    }
    violations.sort();
    violations.dedup();
    Ok(FaithfulnessReport {
        rank: n,
        max_len,
        strategy,
        words_checked: words.len(),
        classes: by_tableau.len(),
        violations,
    })
}
