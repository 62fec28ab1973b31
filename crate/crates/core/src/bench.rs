//! Timed verification suites. Each suite checks one family of properties
//! at desk scale and reports a pass/fail verdict with a one-line summary.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::checker::{
    check_plactic, check_rho_consistency, check_tropical, PlacticStrategy, TropSearchConfig, TropWitness,
};
use crate::error::Result;
use crate::forge::{build_identity, exponent_for_rank, QMode};
use crate::oracle;
use crate::paths::{max_weight_path, rep_digraph, splitting_paths, Edge, EdgeLabel, Path};
use crate::rep::{all_words, faithfulness_check, max_readable_length, random_word, FaithfulnessStrategy, PlacticRep};
use crate::subset::{
    all_subsets, chain_length, enumerate_interval, split, split_apply_decreasing, split_apply_increasing, SubsetOfN,
    WordCounts,
};
use crate::tropical::TropScalar;
use crate::word::{tableau_of_word, Letter, Tableau, Word};

/// The frozen upper-triangular `3 x 3` witness for the constrained rank-2
/// identity.
pub const UT3_WITNESS_FIXTURE: &str = include_str!("../fixtures/ut3_witness.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Built identity lengths.
    IdentityLength,
    /// Tableaux of the words 1314, 1341 and 3114.
    Examples,
    /// The representation identifies both sides of every Knuth relation.
    Knuth,
    /// Matrix equality agrees with tableau equality on all short words.
    Faithfulness,
    /// Matrix entries equal longest readable subwords.
    Readability,
    /// Meet and join against brute-force bounds, plus lattice laws.
    Lattice,
    /// Longest chains between equal-size subsets.
    Chain,
    /// Postconditions of the splitting steps.
    Split,
    /// The splitting-paths inequality.
    Paths,
    /// Built identities hold in the plactic monoid of their rank.
    Plactic,
    /// Matrix and tableau verdicts agree on substitution samples.
    Consistency,
    /// Upper-triangular witnesses against constrained identities.
    Tropical,
    /// The constrained rank-2 identity fails at rank 3.
    Echo,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::IdentityLength,
        Suite::Examples,
        Suite::Knuth,
        Suite::Faithfulness,
        Suite::Readability,
        Suite::Lattice,
        Suite::Chain,
        Suite::Split,
        Suite::Paths,
        Suite::Plactic,
        Suite::Consistency,
        Suite::Tropical,
        Suite::Echo,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

/// Knobs shared by all suites. `rank` narrows a suite to one rank where
/// that makes sense; `samples` overrides the default sample count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub rank: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    #[serde(with = "secs")]
    pub budget: Duration,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            rank: None,
            samples: None,
            seed: 0,
            budget: crate::checker::DEFAULT_BUDGET,
        }
    }
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    /// Number of individual cases checked.
    pub cases: u64,
    pub summary: String,
    pub elapsed_ms: u64,
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<16} {:>9} cases {:>8} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite.to_string(),
            self.cases,
            self.elapsed_ms,
            self.summary
        )
    }
}

struct Tally {
    cases: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, suite: Suite, note: String) -> (Suite, bool, u64, String) {
        let passed = self.failures.is_empty();
        let summary = match self.failures.first() {
            None => note,
            Some(first) => format!("{} failures, first: {first}", self.failures.len()),
        };
        (suite, passed, self.cases, summary)
    }
}

fn ranks(params: &SuiteParams, default: &[usize]) -> Vec<usize> {
    params.rank.map_or_else(|| default.to_vec(), |n| vec![n])
}

/// Runs one suite and times it.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let (suite, passed, cases, summary) = match suite {
        Suite::IdentityLength => identity_length(params)?,
        Suite::Examples => examples(),
        Suite::Knuth => knuth(params)?,
        Suite::Faithfulness => faithfulness(params)?,
        Suite::Readability => readability(params)?,
        Suite::Lattice => lattice(params),
        Suite::Chain => chain(params)?,
        Suite::Split => split_suite(params)?,
        Suite::Paths => paths(params)?,
        Suite::Plactic => plactic(params)?,
        Suite::Consistency => consistency(params)?,
        Suite::Tropical => tropical(params)?,
        Suite::Echo => echo(params)?,
    };
    Ok(SuiteOutcome {
        suite,
        passed,
        cases,
        summary,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

type Verdict = (Suite, bool, u64, String);

fn identity_length(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let mut lengths = Vec::new();
    for n in ranks(params, &[6]) {
        let built = build_identity(n, false, QMode::Minimal)?;
        let q_len = (1usize << (n - 1)) + n - 2;
        let expected = 2 * (2 * exponent_for_rank(n) * q_len + 1);
        tally.check(built.length == expected, || {
            format!("n={n}: length {} != {expected}", built.length)
        });
        lengths.push(format!("n={n}: {}", built.length));
    }
    Ok(tally.finish(
        Suite::IdentityLength,
        format!("substituted length {}", lengths.join(", ")),
    ))
}

fn examples() -> Verdict {
    let mut tally = Tally::new();
    let expected = Tableau::from_rows(vec![vec![1, 1, 4], vec![3]]).expect("valid tableau");
    for s in ["1314", "1341", "3114"] {
        let t = tableau_of_word(&Word::from_digits(s).expect("literal"));
        tally.check(t == expected, || format!("{s} gives {:?}", t.rows()));
    }
    tally.finish(Suite::Examples, "all three give rows [[1,1,4],[3]]".into())
}

/// Every `(lhs, rhs)` instance of the two Knuth relation schemas over `[n]`.
pub fn knuth_instances(n: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for a in 1..=n as Letter {
        for b in a..=n as Letter {
            for c in b..=n as Letter {
                if a < b {
                    out.push((Word::new(vec![b, c, a]), Word::new(vec![b, a, c])));
                }
                if b < c {
                    out.push((Word::new(vec![c, a, b]), Word::new(vec![a, c, b])));
                }
            }
        }
    }
    out
}

fn knuth(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let rs = ranks(params, &[2, 3, 4]);
    for &n in &rs {
        let rep = PlacticRep::new(n)?;
        for (l, r) in knuth_instances(n) {
            let ok = rep.word(&l)?.same_entries(&rep.word(&r)?);
            tally.check(ok, || format!("n={n}: {l} vs {r}"));
        }
    }
    Ok(tally.finish(Suite::Knuth, format!("ranks {rs:?}")))
}

fn faithfulness(params: &SuiteParams) -> Result<Verdict> {
    let n = params.rank.unwrap_or(3);
    let max_len = 5;
    let report = faithfulness_check(n, max_len, FaithfulnessStrategy::Exhaustive)?;
    let mut tally = Tally::new();
    tally.cases = report.words_checked as u64;
    for (u, v) in &report.violations {
        tally.failures.push(format!("{u} vs {v}"));
    }
    Ok(tally.finish(
        Suite::Faithfulness,
        format!(
            "n={n}, |w|<={max_len}: {} words in {} classes",
            report.words_checked, report.classes
        ),
    ))
}

/// Pairs `S <= T` of equal size among subsets of `[n]`.
fn comparable_pairs(n: usize) -> Vec<(SubsetOfN, SubsetOfN)> {
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

fn readability(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let exhaustive: Vec<usize> = ranks(params, &[1, 2, 3]).into_iter().filter(|&n| n <= 3).collect();
    for &n in &exhaustive {
        let rep = PlacticRep::new(n)?;
        let pairs = comparable_pairs(n);
        for w in all_words(n, 6) {
            let m = rep.word(&w)?;
            for &(s, t) in &pairs {
                let entry = rep.entry(&m, s, t).expect("subsets of [n]");
                let len = max_readable_length(&w, s, t)?;
                tally.check(entry == TropScalar::Fin(len as i64), || {
                    format!("n={n} w={w} [{s},{t}]: entry {entry}, readable {len}")
                });
            }
        }
    }
    let mut note = format!("exhaustive n in {exhaustive:?} |w|<=6");
    if let Some(n) = params.rank.map_or(Some(4), |n| (n > 3).then_some(n)) {
        let samples = params.samples.unwrap_or(2000);
        let rep = PlacticRep::new(n)?;
        let pairs = comparable_pairs(n);
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..samples {
            let w = random_word(&mut rng, n, 8);
            let &(s, t) = pairs.choose(&mut rng).expect("non-empty");
            let entry = rep.entry(&rep.word(&w)?, s, t).expect("subsets of [n]");
            let len = max_readable_length(&w, s, t)?;
            tally.check(entry == TropScalar::Fin(len as i64), || {
                format!("n={n} w={w} [{s},{t}]: entry {entry}, readable {len}")
            });
        }
        note.push_str(&format!(", {samples} samples at n={n} |w|<=8"));
    }
    Ok(tally.finish(Suite::Readability, note))
}

fn lattice(params: &SuiteParams) -> Verdict {
    let mut tally = Tally::new();
    let rs = ranks(params, &[1, 2, 3, 4, 5]);
    for &n in &rs {
        let subsets = all_subsets(n);
        for &s in &subsets {
            for &t in &subsets {
                let (m, j) = (s.meet(t), s.join(t));
                tally.check(Some(m) == oracle::glb(n, s, t), || format!("meet({s},{t}) = {m}"));
                tally.check(Some(j) == oracle::lub(n, s, t), || format!("join({s},{t}) = {j}"));
                tally.check(m == t.meet(s) && j == t.join(s), || {
                    format!("commutativity at ({s},{t})")
                });
                tally.check(s.meet(j) == s && s.join(m) == s, || format!("absorption at ({s},{t})"));
                for &u in &subsets {
                    let ok = m.meet(u) == s.meet(t.meet(u)) && j.join(u) == s.join(t.join(u));
                    tally.check(ok, || format!("associativity at ({s},{t},{u})"));
                }
            }
            tally.check(s.meet(s) == s && s.join(s) == s, || format!("idempotence at {s}"));
        }
    }
    tally.finish(Suite::Lattice, format!("ranks {rs:?}"))
}

fn chain(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let rs = ranks(params, &[2, 3, 4, 5]);
    let mut maxima = Vec::new();
    for &n in &rs {
        let mut best = 0;
        for (s, t) in comparable_pairs(n) {
            let c = chain_length(s, t)?;
            // Each cover step raises the element sum by exactly one.
            let by_sum = 1 + t.iter().sum::<u32>() as usize - s.iter().sum::<u32>() as usize;
            tally.check(c == by_sum, || format!("chain({s},{t}) = {c}, sum formula {by_sum}"));
            if n <= 4 {
                let brute = oracle::longest_chain(n, s, t);
                tally.check(brute == Some(c), || {
                    format!("chain({s},{t}) = {c}, brute force {brute:?}")
                });
            }
            best = best.max(c);
        }
        let bound = n * n / 4 + 1;
        tally.check(best == bound, || format!("n={n}: max chain {best} != {bound}"));
        maxima.push(format!("n={n}: {best}"));
    }
    Ok(tally.finish(Suite::Chain, format!("max chain {}", maxima.join(", "))))
}

/// A random instance for the splitting steps: counts over `[n]` and
/// equal-size subsets `S < T`.
pub fn random_split_instance<R: Rng + ?Sized>(rng: &mut R, max_rank: usize) -> (WordCounts, SubsetOfN, SubsetOfN) {
    loop {
        let n = rng.gen_range(2..=max_rank);
        let k = rng.gen_range(1..n);
        let pick = |rng: &mut R| {
            let mut elems: Vec<u32> = (1..=n as u32).collect();
            elems.shuffle(rng);
            SubsetOfN::from_elements(&elems[..k])
        };
        let (a, b) = (pick(rng), pick(rng));
        let (s, t) = if a.lt(b) {
            (a, b)
        } else if b.lt(a) {
            (b, a)
        } else {
            continue;
        };
        let counts = (0..n).map(|_| rng.gen_range(0..=6)).collect();
        return (WordCounts::from_counts(counts), s, t);
    }
}

fn split_suite(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let max_rank = params.rank.unwrap_or(6);
    let samples = params.samples.unwrap_or(10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..samples {
        let (w, s, t) = random_split_instance(&mut rng, max_rank);
        let n = w.rank();
        let (cs, ct) = (w.count_of_set(s), w.count_of_set(t));
        let interval = enumerate_interval(n, s, t)?;
        let ctx = || {
            format!(
                "counts {:?}, S={s}, T={t}",
                (1..=n as Letter).map(|x| w.count(x)).collect::<Vec<_>>()
            )
        };

        let m = split(&w, s, t)?;
        tally.check(interval.contains(&m) && m != s, || {
            format!("split outside (S,T]: {m}; {}", ctx())
        });
        tally.check(w.count_of_set(m) >= cs.min(ct), || {
            format!("split too light: {m}; {}", ctx())
        });
        tally.check(chain_length(s, m)? <= n, || {
            format!("split interval too long: {m}; {}", ctx())
        });

        if cs <= ct {
            let m = split_apply_increasing(&w, s, t)?;
            let below = enumerate_interval(n, s, m)?;
            tally.check(interval.contains(&m) && m != s, || {
                format!("increasing outside (S,T]: {m}; {}", ctx())
            });
            tally.check(chain_length(s, m)? <= n, || {
                format!("increasing interval too long: {m}; {}", ctx())
            });
            let heaviest = below.iter().all(|&x| w.count_of_set(x) <= w.count_of_set(m));
            tally.check(heaviest, || format!("increasing not heaviest: {m}; {}", ctx()));
        }
        if ct <= cs {
            let m = split_apply_decreasing(&w, s, t)?;
            let above = enumerate_interval(n, m, t)?;
            tally.check(interval.contains(&m) && m != t, || {
                format!("decreasing outside [S,T): {m}; {}", ctx())
            });
            tally.check(chain_length(m, t)? <= n, || {
                format!("decreasing interval too long: {m}; {}", ctx())
            });
            let heaviest = above.iter().all(|&x| w.count_of_set(x) <= w.count_of_set(m));
            tally.check(heaviest, || format!("decreasing not heaviest: {m}; {}", ctx()));
        }
    }
    Ok(tally.finish(
        Suite::Split,
        format!("{samples} instances, n<={max_rank}, seed {}", params.seed),
    ))
}

/// A uniformly random path from `src` to `dst` reading `labels`, if any.
pub fn random_path<R: Rng + ?Sized>(
    rng: &mut R,
    g: &crate::paths::LabeledDigraph,
    labels: &[EdgeLabel],
    src: usize,
    dst: usize,
) -> Option<Path> {
    let d = g.num_vertices();
    // reach[k][v]: some path from v reads labels[k..] and ends at dst
    let mut reach = vec![vec![false; d]; labels.len() + 1];
    reach[labels.len()][dst] = true;
    for k in (0..labels.len()).rev() {
        for v in 0..d {
            reach[k][v] = (0..d).any(|u| reach[k + 1][u] && g.edge(v, u, labels[k]).is_some());
        }
    }
    if !reach[0][src] {
        return None;
    }
    let mut at = src;
    let mut edges: Vec<Edge> = Vec::with_capacity(labels.len());
    for (k, &l) in labels.iter().enumerate() {
        let options: Vec<Edge> = (0..d)
            .filter(|&u| reach[k + 1][u])
            .filter_map(|u| g.edge(at, u, l))
            .collect();
        let e = *options.choose(rng).expect("reachable");
        at = e.dst;
        edges.push(e);
    }
    Path::new(edges).ok()
}

fn paths(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let max_rank = params.rank.unwrap_or(4);
    let samples = params.samples.unwrap_or(2000);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let reps: Vec<PlacticRep> = (1..=max_rank).map(PlacticRep::new).collect::<Result<_>>()?;
    let mut skipped = 0u64;
    while tally.cases < samples as u64 {
        let n = rng.gen_range(1..=max_rank);
        let rep = &reps[n - 1];
        let (x, y) = (random_word(&mut rng, n, 4), random_word(&mut rng, n, 4));
        let g = rep_digraph(rep, &x, &y)?;
        let pairs = comparable_pairs(n);
        let &(s, t) = pairs.choose(&mut rng).expect("non-empty");
        let labels: Vec<EdgeLabel> = (0..rng.gen_range(1..=6))
            .map(|_| if rng.gen_bool(0.5) { EdgeLabel::X } else { EdgeLabel::Y })
            .collect();
        let (src, dst) = (g.vertex_of(s).expect("vertex"), g.vertex_of(t).expect("vertex"));
        let gamma = if rng.gen_bool(0.5) {
            max_weight_path(&g, &labels, src, dst)?.1
        } else {
            random_path(&mut rng, &g, &labels, src, dst)
        };
        let Some(gamma) = gamma else {
            skipped += 1;
            continue;
        };
        let interval = enumerate_interval(n, s, t)?;
        let &mid = interval.choose(&mut rng).expect("contains S");
        let sp = splitting_paths(&g, &gamma, mid)?;
        let ends_ok = sp.sigma.start() == src
            && sp.sigma.end() == g.vertex_of(mid).expect("vertex")
            && sp.tau.end() == dst
            && sp.sigma.labels() == gamma.labels()
            && sp.tau.labels() == gamma.labels();
        tally.check(ends_ok && sp.inequality_holds(&gamma), || {
            format!(
                "x={x} y={y} S={s} T={t} N={mid}: w(gamma)={} w(lambda)={} w(sigma)={} w(tau)={}",
                gamma.weight(),
                sp.lambda.weight(),
                sp.sigma.weight(),
                sp.tau.weight()
            )
        });
    }
    Ok(tally.finish(
        Suite::Paths,
        format!(
            "{samples} instances, n<={max_rank}, {skipped} pathless draws skipped, seed {}",
            params.seed
        ),
    ))
}

fn plactic(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let samples = params.samples.unwrap_or(10_000);
    let rs = ranks(params, &[3, 4]);
    for &n in &rs {
        let id = build_identity(n, false, QMode::Minimal)?.identity();
        let strategy = PlacticStrategy::Random {
            samples,
            max_len: 8,
            seed: params.seed,
        };
        let report = check_plactic(&id, n, strategy, params.budget)?;
        tally.cases += report.samples_run;
        if let Some(cx) = &report.counterexample {
            tally.failures.push(format!("n={n}: x={} y={}", cx.x, cx.y));
        } else if report.budget_exhausted {
            tally
                .failures
                .push(format!("n={n}: budget exhausted after {} samples", report.samples_run));
        }
    }
    Ok(tally.finish(
        Suite::Plactic,
        format!("ranks {rs:?}, {samples} pairs each, |x|,|y|<=8, no counterexample"),
    ))
}

fn consistency(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let samples = params.samples.unwrap_or(500);
    let rs = ranks(params, &[2, 3]);
    let mut mismatched = 0;
    for &n in &rs {
        for constrained in [false, true] {
            let id = build_identity(n, constrained, QMode::Minimal)?.identity();
            let report = check_rho_consistency(&id, n, samples, 6, params.seed)?;
            tally.cases += report.samples_run;
            mismatched += report.matrix_mismatches.len();
            for (x, y) in &report.verdict_disagreements {
                tally.failures.push(format!("n={n}: x={x} y={y}"));
            }
        }
    }
    Ok(tally.finish(
        Suite::Consistency,
        format!("ranks {rs:?}, {samples} pairs per identity, {mismatched} matrix mismatches"),
    ))
}

fn tropical(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let fixture: TropWitness = serde_json::from_str(UT3_WITNESS_FIXTURE)
        .map_err(|e| crate::Error::InvalidMatrix(format!("witness fixture: {e}")))?;
    let expected_identity = build_identity(2, true, QMode::Minimal)?.identity();
    tally.check(
        fixture.identity == expected_identity && fixture.reverify().is_ok(),
        || "frozen UT_3 witness no longer verifies".into(),
    );

    let samples = params.samples.unwrap_or(100_000);
    let mut notes = Vec::new();
    for n in ranks(params, &[2, 3]) {
        let id = build_identity(n, true, QMode::Minimal)?.identity();
        let config = TropSearchConfig {
            samples,
            seed: params.seed,
            ..TropSearchConfig::default()
        };
        let report = check_tropical(&id, n + 1, config, params.budget)?;
        match &report.witness {
            Some(w) => notes.push(format!(
                "n={n}: UT_{} witness within {} samples (entry ({},{}): {} vs {})",
                n + 1,
                report.samples_run,
                w.differing_entry.row,
                w.differing_entry.col,
                w.differing_entry.lhs,
                w.differing_entry.rhs
            )),
            None => notes.push(format!(
                "n={n}: no UT_{} witness in {} samples",
                n + 1,
                report.samples_run
            )),
        }
        // Only the rank-2 search is required to succeed.
        if n == 2 {
            tally.check(report.witness.is_some(), || {
                format!("n=2: no UT_3 witness in {} samples", report.samples_run)
            });
        }
    }
    Ok(tally.finish(Suite::Tropical, format!("fixture re-verified; {}", notes.join("; "))))
}

fn echo(params: &SuiteParams) -> Result<Verdict> {
    let mut tally = Tally::new();
    let samples = params.samples.unwrap_or(100_000);
    let id = build_identity(2, true, QMode::Minimal)?.identity();
    let strategy = PlacticStrategy::Random {
        samples,
        max_len: 8,
        seed: params.seed,
    };
    let report = check_plactic(&id, 3, strategy, params.budget)?;
    tally.cases = report.samples_run;
    let note = match &report.counterexample {
        Some(cx) => format!(
            "rank-2 identity fails at rank 3: x={} y={} (sample {})",
            cx.x, cx.y, cx.sample_index
        ),
        None => {
            tally
                .failures
                .push(format!("no rank-3 counterexample in {} samples", report.samples_run));
            String::new()
        }
    };
    Ok(tally.finish(Suite::Echo, note))
}
