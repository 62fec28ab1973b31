//! Construction of two-variable identities for plactic monoids.
//!
//! Given a word `q` over `{a, b}` containing every length-`(n - 1)` word as
//! a factor and `h = floor(n^2 / 4)`, the pair
//!
//! ```text
//! u = q^h a q^h,   v = q^h b q^h
//! ```
//!
//! is turned into an identity by the substitution `a -> ab`, `b -> ba`.
//! The constrained variant of `q` also begins with `b`, ends in `a^(n-1)`
//! and avoids `a^n`, so `a^n` is a factor of `u` but not of `v`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abword::{substitute_ab, AbLetter, AbWord};
use crate::error::{Error, Result};

/// Largest rank accepted by the forge; `q` has length about `2^(n-1)`.
pub const MAX_FORGE_RANK: usize = 24;

/// A two-variable identity `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdentityWords {
    pub lhs: AbWord,
    pub rhs: AbWord,
}

impl IdentityWords {
    pub fn new(lhs: AbWord, rhs: AbWord) -> Result<Self> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::Precondition(
                "both sides of an identity must be non-empty".into(),
            ));
        }
        Ok(IdentityWords { lhs, rhs })
    }

    /// Parses `"lhs = rhs"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('=')
            .ok_or_else(|| Error::ParseWord(format!("'{s}' has no '='")))?;
        IdentityWords::new(l.trim().parse()?, r.trim().parse()?)
    }
}

impl fmt::Display for IdentityWords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A known identity of the rank-3 plactic monoid, `UVVUVU = UVUVVU` with
/// `U = abbaababba` and `V = abbabaabba` (the two sides of a shorter
/// identity satisfied by the bicyclic monoid).
pub fn rank_three_identity() -> IdentityWords {
    let u: AbWord = "abbaababba".parse().expect("literal");
    let v: AbWord = "abbabaabba".parse().expect("literal");
    let cat = |ws: &[&AbWord]| ws.iter().fold(AbWord::default(), |acc, w| acc.concat(w));
    IdentityWords {
        lhs: cat(&[&u, &v, &v, &u, &v, &u]),
        rhs: cat(&[&u, &v, &u, &v, &v, &u]),
    }
}

/// Which superstring to use for `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum QMode {
    /// Shortest possible `q` (from a de Bruijn cycle).
    Minimal,
    /// A simple valid `q`: every length-`(n - 1)` word written out in turn.
    Any,
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QMode::Minimal => "minimal",
            QMode::Any => "any",
        })
    }
}

/// A verified `q` word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QWord {
    pub letters: AbWord,
    pub rank: usize,
    pub constrained: bool,
    pub mode: QMode,
}

/// Outcome of [`verify_q`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QCheck {
    pub violations: Vec<String>,
}

impl QCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Binary de Bruijn cycle of order `k` (`a < b`), via the FKM algorithm:
/// concatenate, in lexicographic order, the Lyndon words whose length
/// divides `k`.
pub fn de_bruijn_cycle(k: usize) -> AbWord {
    if k == 0 {
        return AbWord::default();
    }
    let mut seq: Vec<u8> = Vec::with_capacity(1 << k);
    let mut a = vec![0u8; k + 1];
    fkm(1, 1, k, &mut a, &mut seq);
    AbWord::new(
        seq.into_iter()
            .map(|d| if d == 0 { AbLetter::A } else { AbLetter::B })
            .collect(),
    )
}

fn fkm(t: usize, p: usize, k: usize, a: &mut [u8], seq: &mut Vec<u8>) {
    if t > k {
        if k.is_multiple_of(p) {
            seq.extend_from_slice(&a[1..=p]);
        }
        return;
    }
    a[t] = a[t - p];
    fkm(t + 1, p, k, a, seq);
    for j in (a[t - p] + 1)..2 {
        a[t] = j;
        fkm(t + 1, t, k, a, seq);
    }
}

/// Checks the `q` invariants by direct scans: every length-`(n - 1)` word
/// is a factor and, when `constrained`, `q` begins with `b`, ends in
/// `a^(n-1)` and has no `a^n` factor.
pub fn verify_q(q: &AbWord, n: usize, constrained: bool) -> QCheck {
    let mut violations = Vec::new();
    let k = n.saturating_sub(1);
    for f in AbWord::all_of_length(k) {
        if !q.contains_factor(&f) {
            violations.push(format!("missing factor {f}"));
        }
    }
    if constrained {
        if !q.letters().first().is_some_and(|&l| l == AbLetter::B) {
            violations.push("does not begin with b".into());
        }
        if !q.ends_with(&AbWord::power(AbLetter::A, k)) {
            violations.push(format!("does not end in a^{k}"));
        }
        if q.contains_factor(&AbWord::power(AbLetter::A, n)) {
            violations.push(format!("contains a^{n}"));
        }
    }
    QCheck { violations }
}

fn check_rank(n: usize) -> Result<()> {
    if (2..=MAX_FORGE_RANK).contains(&n) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange(n))
    }
}

fn raw_q(n: usize, constrained: bool, mode: QMode) -> AbWord {
    let k = n - 1;
    let a_run = AbWord::power(AbLetter::A, k);
    match (constrained, mode) {
        (false, QMode::Minimal) => {
            // linearise the cycle by repeating its first k - 1 letters
            let cycle = de_bruijn_cycle(k);
            let wrap = AbWord::new(cycle.letters()[..k - 1].to_vec());
            cycle.concat(&wrap)
        }
        (false, QMode::Any) => AbWord::all_of_length(k)
            .iter()
            .fold(AbWord::default(), |acc, w| acc.concat(w)),
        (true, QMode::Minimal) => {
            // rotate so the unique a^k run is terminal, then prefix the
            // wrapped-around a^(k-1) and a leading b when needed
            let cycle = de_bruijn_cycle(k);
            let len = cycle.len();
            let letters = cycle.letters();
            let start = (0..len)
                .find(|&i| (0..k).all(|j| letters[(i + j) % len] == AbLetter::A))
                .expect("a de Bruijn cycle contains a^k");
            let rotated: Vec<AbLetter> = (0..len).map(|j| letters[(start + k + j) % len]).collect();
            let mut q = AbWord::power(AbLetter::A, k - 1).concat(&AbWord::new(rotated));
            if q.letters()[0] != AbLetter::B {
                q = AbWord::power(AbLetter::B, 1).concat(&q);
            }
            q
        }
        (true, QMode::Any) => {
            // b w_1 b w_2 ... b a^k over all w != a^k keeps every a-run below k
            let b = AbWord::power(AbLetter::B, 1);
            let mut q = AbWord::default();
            for w in AbWord::all_of_length(k).into_iter().filter(|w| *w != a_run) {
                q = q.concat(&b).concat(&w);
            }
            q.concat(&b).concat(&a_run)
        }
    }
}

/// Builds `q` for rank `n`. Every result passes [`verify_q`]; a failure is
/// reported as a construction error.
pub fn build_q(n: usize, constrained: bool, mode: QMode) -> Result<QWord> {
    check_rank(n)?;
    let letters = raw_q(n, constrained, mode);
    let check = verify_q(&letters, n, constrained);
    if !check.passed() {
        return Err(Error::Construction(check.violations.join("; ")));
    }
    Ok(QWord {
        letters,
        rank: n,
        constrained,
        mode,
    })
}

/// `floor(n^2 / 4)`.
pub fn exponent_for_rank(n: usize) -> usize {
    n * n / 4
}

/// An identity built from `q`, together with everything needed to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuiltIdentity {
    pub lhs: AbWord,
    pub rhs: AbWord,
    pub q: AbWord,
    pub h: usize,
    /// Length of each side after substitution.
    pub length: usize,
    pub rank: usize,
    pub constrained: bool,
    pub mode: QMode,
    /// `q^h a q^h`, before substitution.
    pub pre_lhs: AbWord,
    /// `q^h b q^h`, before substitution.
    pub pre_rhs: AbWord,
}

impl BuiltIdentity {
    pub fn identity(&self) -> IdentityWords {
        IdentityWords {
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
        }
    }
}

/// `u[a -> ab, b -> ba] = v[a -> ab, b -> ba]` with `u = q^h a q^h`,
/// `v = q^h b q^h` and `h = floor(n^2 / 4)`.
pub fn build_identity(n: usize, constrained: bool, mode: QMode) -> Result<BuiltIdentity> {
    let q = build_q(n, constrained, mode)?.letters;
    let h = exponent_for_rank(n);
    let side = q.repeat(h);
    let pre_lhs = side.concat(&AbWord::power(AbLetter::A, 1)).concat(&side);
    let pre_rhs = side.concat(&AbWord::power(AbLetter::B, 1)).concat(&side);
    let ab: AbWord = "ab".parse().expect("literal");
    let ba: AbWord = "ba".parse().expect("literal");
    let lhs = substitute_ab(&pre_lhs, &ab, &ba);
    let rhs = substitute_ab(&pre_rhs, &ab, &ba);
    Ok(BuiltIdentity {
        length: lhs.len(),
        lhs,
        rhs,
        q,
        h,
        rank: n,
        constrained,
        mode,
        pre_lhs,
        pre_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> AbWord {
        s.parse().unwrap()
    }

    #[test]
    fn de_bruijn_small_orders() {
        assert_eq!(de_bruijn_cycle(1), ab("ab"));
        assert_eq!(de_bruijn_cycle(2), ab("aabb"));
        assert_eq!(de_bruijn_cycle(3), ab("aaababbb"));
    }

    #[test]
    fn constrained_examples() {
        assert_eq!(build_q(2, true, QMode::Minimal).unwrap().letters, ab("ba"));
        let q3 = build_q(3, true, QMode::Minimal).unwrap().letters;
        assert_eq!(q3, ab("babbaa"));
        assert!(q3.len() <= 7);
    }

    #[test]
    fn unconstrained_length() {
        assert_eq!(build_q(6, false, QMode::Minimal).unwrap().letters.len(), 36);
    }

    #[test]
    fn verify_examples() {
        assert!(verify_q(&ab("ba"), 2, true).passed());
        assert!(!verify_q(&ab("ab"), 2, true).passed());
        let r = verify_q(&ab("bbaa"), 3, false);
        assert_eq!(r.violations, vec!["missing factor ab".to_string()]);
        assert!(!verify_q(&ab("baaa"), 3, true).passed());
    }

    #[test]
    fn every_mode_verifies() {
        for n in 2..=8 {
            for constrained in [false, true] {
                for mode in [QMode::Minimal, QMode::Any] {
                    let q = build_q(n, constrained, mode).unwrap();
                    assert!(verify_q(&q.letters, n, constrained).passed());
                }
            }
        }
    }

    #[test]
    fn rank_bounds() {
        assert_eq!(build_q(1, false, QMode::Minimal), Err(Error::RankOutOfRange(1)));
        assert!(build_identity(1, true, QMode::Minimal).is_err());
    }

    #[test]
    fn rank_two_constrained_identity() {
        let id = build_identity(2, true, QMode::Minimal).unwrap();
        assert_eq!(id.h, 1);
        assert_eq!(id.pre_lhs, ab("baaba"));
        assert_eq!(id.pre_rhs, ab("babba"));
        assert_eq!(id.lhs.len(), 10);
        assert_eq!(id.rhs.len(), 10);
        assert!(id.pre_lhs.contains_factor(&ab("aa")));
        assert!(!id.pre_rhs.contains_factor(&ab("aa")));
    }

    #[test]
    fn length_formula() {
        for n in 2..=8 {
            let id = build_identity(n, false, QMode::Minimal).unwrap();
            assert_eq!(id.length, 2 * (2 * id.h * id.q.len() + 1));
        }
        assert_eq!(build_identity(6, false, QMode::Minimal).unwrap().length, 1298);
    }

    #[test]
    fn sides_differ_only_in_the_middle() {
        let id = build_identity(4, true, QMode::Minimal).unwrap();
        let diffs: Vec<usize> = id
            .pre_lhs
            .letters()
            .iter()
            .zip(id.pre_rhs.letters())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(diffs, vec![id.pre_lhs.len() / 2]);
    }

    #[test]
    fn identity_json_fields() {
        let id = build_identity(2, true, QMode::Minimal).unwrap();
        let v: serde_json::Value = serde_json::to_value(&id).unwrap();
        assert_eq!(v["lhs"], "baababbaab");
        assert_eq!(v["rhs"], "baabbabaab");
        assert_eq!(v["q"], "ba");
        assert_eq!(v["h"], 1);
        assert_eq!(v["length"], 10);
        let back: BuiltIdentity = serde_json::from_value(v).unwrap();
        assert_eq!(back, id);
    }

    #[test]
    fn identity_text_parse() {
        let id = IdentityWords::parse("ab = ba").unwrap();
        assert_eq!(id.lhs, ab("ab"));
        assert!(IdentityWords::parse("ab").is_err());
        assert!(IdentityWords::parse(" = ba").is_err());
    }

    #[test]
    fn rank_three_fixture_shape() {
        let id = rank_three_identity();
        assert_eq!(id.lhs.len(), 60);
        assert_ne!(id.lhs, id.rhs);
    }
}
