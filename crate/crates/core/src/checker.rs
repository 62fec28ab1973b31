//! Verdicts on candidate identities: searching for plactic counterexamples
//! by substitution, and for upper-triangular tropical witnesses.
//!
//! Every sample owns its own generator, seeded from `(seed, sample index)`,
//! so parallel runs are reproducible and the reported counterexample is
//! always the one with the smallest sample index.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abword::{substitute, AbLetter, AbWord};
use crate::error::{Error, Result};
use crate::forge::IdentityWords;
use crate::rep::{all_words, random_word, PlacticRep};
use crate::tropical::{eval_word, TropMatrix, TropScalar, UtSampler};
use crate::word::{plactic_equal, Letter, Tableau, Word};

/// Default wall-clock budget for one check.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);

const CHUNK: usize = 512;

/// The generator owned by sample `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The substitution pair `(x, y)` drawn for sample `index`: each word has a
/// length uniform in `[0, max_len]` and i.i.d. uniform letters.
pub fn sample_pair(n: usize, max_len: usize, seed: u64, index: u64) -> (Word, Word) {
    let mut rng = sample_rng(seed, index);
    let x = random_word(&mut rng, n, max_len);
    let y = random_word(&mut rng, n, max_len);
    (x, y)
}

/// How substitution pairs are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PlacticStrategy {
    /// Every pair of words of length at most `max_len`.
    Exhaustive { max_len: usize },
    /// `samples` seeded random pairs of length at most `max_len`.
    Random { samples: usize, max_len: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacticCounterexample {
    pub x: Word,
    pub y: Word,
    pub sample_index: u64,
    pub lhs_tableau: Tableau,
    pub rhs_tableau: Tableau,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacticCheckReport {
    pub identity: IdentityWords,
    pub rank: usize,
    pub strategy: PlacticStrategy,
    pub counterexample: Option<PlacticCounterexample>,
    pub samples_run: u64,
    pub budget_exhausted: bool,
}

impl PlacticCheckReport {
    /// No counterexample and the full strategy ran.
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && !self.budget_exhausted
    }
}

/// Builds the tableau of `side[a -> x, b -> y]` without materialising the word.
fn substituted_tableau(side: &AbWord, x: &[Letter], y: &[Letter]) -> Tableau {
    let mut t = Tableau::empty();
    for &l in side.letters() {
        let image = if l == AbLetter::A { x } else { y };
        for &c in image {
            t.insert(c);
        }
    }
    t
}

fn violates(identity: &IdentityWords, x: &Word, y: &Word) -> bool {
    substituted_tableau(&identity.lhs, x.letters(), y.letters())
        != substituted_tableau(&identity.rhs, x.letters(), y.letters())
}

impl PlacticCounterexample {
    /// Re-derives the counterexample from scratch and rejects it unless the
    /// two substituted words really are plactic-distinct.
    fn verified(identity: &IdentityWords, x: Word, y: Word, sample_index: u64) -> Result<Self> {
        let lhs = Word::new(substitute(&identity.lhs, x.letters(), y.letters()));
        let rhs = Word::new(substitute(&identity.rhs, x.letters(), y.letters()));
        if plactic_equal(&lhs, &rhs) {
            return Err(Error::Precondition(format!(
                "({x}) / ({y}) does not violate {identity}"
            )));
        }
        Ok(PlacticCounterexample {
            lhs_tableau: crate::word::tableau_of_word(&lhs),
            rhs_tableau: crate::word::tableau_of_word(&rhs),
            x,
            y,
            sample_index,
        })
    }
}

/// Runs `test` over sample indices `0..total` in parallel chunks and
/// returns the smallest failing index, the number of samples examined, and
/// whether the budget ran out first.
fn first_failure<F>(total: u64, budget: Duration, test: F) -> (Option<u64>, u64, bool)
where
    F: Fn(u64) -> bool + Sync,
{
    let start = Instant::now();
    let mut done = 0u64;
    while done < total {
        if start.elapsed() > budget {
            return (None, done, true);
        }
        let end = (done + CHUNK as u64).min(total);
        let hit = (done..end).into_par_iter().filter(|&i| test(i)).min();
        if let Some(i) = hit {
            return (Some(i), i + 1, false);
        }
        done = end;
    }
    (None, done, false)
}

/// Searches for `(x, y)` over `[n]` with `lhs[a -> x, b -> y]` and
/// `rhs[a -> x, b -> y]` plactic-distinct.
pub fn check_plactic(
    identity: &IdentityWords,
    n: usize,
    strategy: PlacticStrategy,
    budget: Duration,
) -> Result<PlacticCheckReport> {
    if n == 0 || n > Letter::MAX as usize {
        return Err(Error::RankOutOfRange(n));
    }
    let (found, samples_run, budget_exhausted) = match strategy {
        PlacticStrategy::Exhaustive { max_len } => {
            let words = all_words(n, max_len);
            let m = words.len() as u64;
            let (hit, run, out) = first_failure(m * m, budget, |i| {
                violates(identity, &words[(i / m) as usize], &words[(i % m) as usize])
            });
            let pair = hit.map(|i| (words[(i / m) as usize].clone(), words[(i % m) as usize].clone(), i));
            (pair, run, out)
        }
        PlacticStrategy::Random { samples, max_len, seed } => {
            let (hit, run, out) = first_failure(samples as u64, budget, |i| {
                let (x, y) = sample_pair(n, max_len, seed, i);
                violates(identity, &x, &y)
            });
            let pair = hit.map(|i| {
                let (x, y) = sample_pair(n, max_len, seed, i);
                (x, y, i)
            });
            (pair, run, out)
        }
    };
    let counterexample = found
        .map(|(x, y, i)| PlacticCounterexample::verified(identity, x, y, i))
        .transpose()?;
    Ok(PlacticCheckReport {
        identity: identity.clone(),
        rank: n,
        strategy,
        counterexample,
        samples_run,
        budget_exhausted,
    })
}

/// Parameters of the upper-triangular witness search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TropSearchConfig {
    pub sampler: UtSampler,
    pub samples: usize,
    pub seed: u64,
    /// Fraction of samples drawn from the structured generator.
    pub structured_fraction: f64,
}

impl Default for TropSearchConfig {
    fn default() -> Self {
        TropSearchConfig {
            sampler: UtSampler::default(),
            samples: 100_000,
            seed: 0,
            structured_fraction: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferingEntry {
    pub row: usize,
    pub col: usize,
    pub lhs: TropScalar,
    pub rhs: TropScalar,
}

/// Upper-triangular matrices on which the two sides of an identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropWitness {
    pub identity: IdentityWords,
    pub dim: usize,
    pub x: TropMatrix,
    pub y: TropMatrix,
    pub differing_entry: DifferingEntry,
}

impl TropWitness {
    /// Evaluates both sides at `(x, y)` and returns a witness only when the
    /// matrices are upper triangular and the results differ.
    pub fn new(identity: &IdentityWords, x: TropMatrix, y: TropMatrix) -> Result<Self> {
        if !x.is_upper_triangular() || !y.is_upper_triangular() {
            return Err(Error::Precondition("witness matrices must be upper triangular".into()));
        }
        let l = eval_word(&identity.lhs, &x, &y)?;
        let r = eval_word(&identity.rhs, &x, &y)?;
        let (row, col) = l
            .first_difference(&r)
            .ok_or_else(|| Error::Precondition(format!("the matrices satisfy {identity}")))?;
        Ok(TropWitness {
            identity: identity.clone(),
            dim: x.dim(),
            differing_entry: DifferingEntry {
                row,
                col,
                lhs: l.get(row, col),
                rhs: r.get(row, col),
            },
            x,
            y,
        })
    }

    /// Re-evaluates the stored matrices from scratch.
    pub fn reverify(&self) -> Result<()> {
        let again = TropWitness::new(&self.identity, self.x.clone(), self.y.clone())?;
        if again.differing_entry != self.differing_entry {
            return Err(Error::Precondition("recorded differing entry does not match".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TropSearchReport {
    pub identity: IdentityWords,
    pub dim: usize,
    pub config: TropSearchConfig,
    pub witness: Option<TropWitness>,
    pub samples_run: u64,
    pub budget_exhausted: bool,
}

/// A structured candidate: finite diagonals and superdiagonal, strictly
/// upper entries far from the diagonal left at `-inf` with high
/// probability. Powers of such matrices reward staying on one diagonal
/// vertex, which separates words by their long single-letter runs.
fn structured_ut<R: Rng + ?Sized>(dim: usize, sampler: &UtSampler, rng: &mut R) -> TropMatrix {
    let mut m = TropMatrix::filled(dim, TropScalar::NegInf);
    for i in 0..dim {
        m.set(i, i, TropScalar::Fin(rng.gen_range(sampler.lo..=sampler.hi)));
        if i + 1 < dim {
            m.set(i, i + 1, TropScalar::Fin(rng.gen_range(sampler.lo..=sampler.hi)));
        }
        for j in i + 2..dim {
            if rng.gen_bool(0.25) {
                m.set(i, j, TropScalar::Fin(rng.gen_range(sampler.lo..=sampler.hi)));
            }
        }
    }
    m
}

/// The matrix pair drawn for sample `index` of a witness search.
pub fn sample_ut_pair(dim: usize, config: &TropSearchConfig, index: u64) -> (TropMatrix, TropMatrix) {
    let mut rng = sample_rng(config.seed, index);
    if rng.gen_bool(config.structured_fraction.clamp(0.0, 1.0)) {
        (
            structured_ut(dim, &config.sampler, &mut rng),
            structured_ut(dim, &config.sampler, &mut rng),
        )
    } else {
        (
            config.sampler.sample(dim, &mut rng),
            config.sampler.sample(dim, &mut rng),
        )
    }
}

/// Seeded search for upper-triangular `k x k` matrices separating the two
/// sides of `identity`. A missing witness is not a proof of satisfaction.
pub fn check_tropical(
    identity: &IdentityWords,
    k: usize,
    config: TropSearchConfig,
    budget: Duration,
) -> Result<TropSearchReport> {
    if k == 0 {
        return Err(Error::Precondition("matrix dimension must be positive".into()));
    }
    let (hit, samples_run, budget_exhausted) = first_failure(config.samples as u64, budget, |i| {
        let (x, y) = sample_ut_pair(k, &config, i);
        let l = eval_word(&identity.lhs, &x, &y).expect("equal dimensions");
        let r = eval_word(&identity.rhs, &x, &y).expect("equal dimensions");
        !l.same_entries(&r)
    });
    let witness = hit
        .map(|i| {
            let (x, y) = sample_ut_pair(k, &config, i);
            TropWitness::new(identity, x, y)
        })
        .transpose()?;
    Ok(TropSearchReport {
        identity: identity.clone(),
        dim: k,
        config,
        witness,
        samples_run,
        budget_exhausted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoConsistencyReport {
    pub identity: IdentityWords,
    pub rank: usize,
    pub samples_run: u64,
    pub seed: u64,
    /// Samples where the two sides evaluate to different matrices.
    pub matrix_mismatches: Vec<(Word, Word)>,
    /// Samples where matrix equality and tableau equality disagree.
    pub verdict_disagreements: Vec<(Word, Word)>,
}

impl RhoConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.verdict_disagreements.is_empty()
    }
}

/// Evaluates both sides at `(rho(x), rho(y))` for the same pairs
/// [`check_plactic`] draws and compares with the tableau verdict.
pub fn check_rho_consistency(
    identity: &IdentityWords,
    n: usize,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Result<RhoConsistencyReport> {
    if n > 4 {
        return Err(Error::RankOutOfRange(n));
    }
    let rep = PlacticRep::new(n)?;
    let results: Vec<Result<(Word, Word, bool, bool)>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let (x, y) = sample_pair(n, max_len, seed, i);
            let (mx, my) = (rep.word(&x)?, rep.word(&y)?);
            let matrices_equal = eval_word(&identity.lhs, &mx, &my)?.same_entries(&eval_word(&identity.rhs, &mx, &my)?);
            let tableaux_equal = !violates(identity, &x, &y);
            Ok((x, y, matrices_equal, tableaux_equal))
        })
        .collect();
    let mut matrix_mismatches = Vec::new();
    let mut verdict_disagreements = Vec::new();
    for r in results {
        let (x, y, m_eq, t_eq) = r?;
        if !m_eq {
            matrix_mismatches.push((x.clone(), y.clone()));
        }
        if m_eq != t_eq {
            verdict_disagreements.push((x, y));
        }
    }
    Ok(RhoConsistencyReport {
        identity: identity.clone(),
        rank: n,
        samples_run: samples as u64,
        seed,
        matrix_mismatches,
        verdict_disagreements,
    })
}
