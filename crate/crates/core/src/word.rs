//! Words over the ordered alphabet `[n] = {1, ..., n}`, Schensted row
//! insertion, and plactic equality through tableau canonical forms.
//!
//! A [`Tableau`] stores its rows bottom-first: `rows[0]` is the longest row
//! and the one new letters are inserted into.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of `[n]`. The rank `n` is ambient and checked where it matters.
pub type Letter = u16;

/// A finite word over `[n]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from a compact digit string such as `"1314"`.
    /// Only usable for ranks up to 9.
    pub fn from_digits(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d > 0 => Ok(d as Letter),
                _ => Err(Error::ParseWord(format!("'{c}' is not a letter in 1..=9"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// Largest letter occurring in the word, 0 for the empty word.
    pub fn max_letter(&self) -> Letter {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Rejects the word if some letter lies outside `[1, rank]`.
    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&x| x == 0 || x as usize > rank) {
            Some(&x) => Err(Error::LetterOutOfRange { letter: x as u32, rank }),
            None => Ok(()),
        }
    }

    /// `|w|_x`, the number of occurrences of `x`.
    pub fn count(&self, x: Letter) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses integers separated by spaces and/or commas. The empty string
    /// is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<Letter>()
                    .ok()
                    .filter(|&x| x > 0)
                    .ok_or_else(|| Error::ParseWord(format!("'{tok}' is not a positive integer letter")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A semistandard Young tableau, bottom row first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
}

#[derive(Deserialize)]
struct RawTableau {
    rows: Vec<Vec<Letter>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;

    fn try_from(raw: RawTableau) -> Result<Self> {
        Tableau::from_rows(raw.rows)
    }
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    /// Builds a tableau from explicit rows, validating every invariant.
    pub fn from_rows(rows: Vec<Vec<Letter>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Checks row weak increase, the Young-diagram shape, and strict column
    /// increase going upward.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return bad(format!("row {r} is empty"));
            }
            if row.windows(2).any(|p| p[0] > p[1]) {
                return bad(format!("row {r} is not weakly increasing"));
            }
            if r > 0 {
                let below = &self.rows[r - 1];
                if row.len() > below.len() {
                    return bad(format!("row {r} is longer than the row below it"));
                }
                if row.iter().zip(below).any(|(up, down)| up <= down) {
                    return bad(format!("a column through row {r} is not strictly increasing upward"));
                }
            }
        }
        Ok(())
    }

    /// Schensted row insertion of `x` into the bottom row.
    pub fn insert(&mut self, x: Letter) {
        let mut carry = x;
        for row in self.rows.iter_mut() {
            let pos = row.partition_point(|&e| e <= carry);
            if pos == row.len() {
                row.push(carry);
                return;
            }
            carry = std::mem::replace(&mut row[pos], carry);
        }
        self.rows.push(vec![carry]);
    }

    /// Returns a copy with `x` inserted.
    pub fn inserted(&self, x: Letter) -> Tableau {
        let mut t = self.clone();
        t.insert(x);
        t
    }

    /// The row reading word (top row first), which is plactic-equal to every
    /// word producing this tableau.
    pub fn reading_word(&self) -> Word {
        Word(self.rows.iter().rev().flatten().copied().collect())
    }
}

impl fmt::Display for Tableau {
    /// Draws the tableau top row first, as it is usually displayed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().rev().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Left fold of [`Tableau::insert`] over `w`.
pub fn tableau_of_word(w: &Word) -> Tableau {
    let mut t = Tableau::empty();
    for &x in w.letters() {
        t.insert(x);
    }
    t
}

/// Equality in the plactic monoid, decided through canonical tableaux.
pub fn plactic_equal(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && tableau_of_word(u) == tableau_of_word(v)
}

/// All words reachable from `w` by a single application of a Knuth relation,
/// in either direction, at a single position:
///
/// * `bca <-> bac` for `a < b <= c`
/// * `cab <-> acb` for `a <= b < c`
///
/// This is a brute-force reference for plactic equality on short words.
pub fn knuth_neighbors(w: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let letters = w.letters();
    for i in 0..letters.len().saturating_sub(2) {
        let (p, q, r) = (letters[i], letters[i + 1], letters[i + 2]);
        let mut emit = |a: Letter, b: Letter, c: Letter| {
            let mut v = letters.to_vec();
            v[i] = a;
            v[i + 1] = b;
            v[i + 2] = c;
            out.insert(Word(v));
        };
        // bca -> bac: (p, q, r) = (b, c, a)
        if r < p && p <= q {
            emit(p, r, q);
        }
        // bac -> bca: (p, q, r) = (b, a, c)
        if q < p && p <= r {
            emit(p, r, q);
        }
        // cab -> acb: (p, q, r) = (c, a, b)
        if q <= r && r < p {
            emit(q, p, r);
        }
        // acb -> cab: (p, q, r) = (a, c, b)
        if p <= r && r < q {
            emit(q, p, r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    #[test]
    fn insert_into_empty() {
        let t = Tableau::empty().inserted(1);
        assert_eq!(t.rows(), &[vec![1]]);
    }

    #[test]
    fn insert_bumps_into_next_row() {
        let t = Tableau::from_rows(vec![vec![1, 3]]).unwrap().inserted(1);
        assert_eq!(t.rows(), &[vec![1, 1], vec![3]]);
        assert_eq!(t, tableau_of_word(&w("131")));
    }

    #[test]
    fn display_tableau_from_three_words() {
        for s in ["1314", "1341", "3114"] {
            assert_eq!(tableau_of_word(&w(s)).rows(), &[vec![1, 1, 4], vec![3]], "word {s}");
        }
    }

    #[test]
    fn empty_word_gives_empty_tableau() {
        assert_eq!(tableau_of_word(&Word::empty()), Tableau::empty());
    }

    #[test]
    fn plactic_equality_examples() {
        assert!(plactic_equal(&w("1314"), &w("3114")));
        assert!(!plactic_equal(&w("1"), &w("2")));
        for nb in knuth_neighbors(&w("21221")) {
            assert!(plactic_equal(&w("21221"), &nb));
        }
    }

    #[test]
    fn knuth_neighbor_scan() {
        assert!(knuth_neighbors(&w("111")).is_empty());
        assert_eq!(knuth_neighbors(&w("213")), BTreeSet::from([w("231")]));
        assert_eq!(knuth_neighbors(&w("132")), BTreeSet::from([w("312")]));
    }

    #[test]
    fn word_text_round_trip() {
        let word: Word = "1 3 1 4".parse().unwrap();
        assert_eq!(word, w("1314"));
        assert_eq!(word.to_string(), "1 3 1 4");
        let big: Word = "10,2 11".parse().unwrap();
        assert_eq!(big.letters(), &[10, 2, 11]);
        assert!("1 0".parse::<Word>().is_err());
        assert!("1 x".parse::<Word>().is_err());
    }

    #[test]
    fn rank_check() {
        assert!(w("1314").check_rank(4).is_ok());
        assert_eq!(
            w("1314").check_rank(3),
            Err(Error::LetterOutOfRange { letter: 4, rank: 3 })
        );
    }

    #[test]
    fn invalid_tableaux_rejected() {
        assert!(Tableau::from_rows(vec![vec![2, 1]]).is_err());
        assert!(Tableau::from_rows(vec![vec![1], vec![2, 3]]).is_err());
        assert!(Tableau::from_rows(vec![vec![1, 2], vec![1]]).is_err());
        assert!(Tableau::from_rows(vec![vec![1, 1, 4], vec![3]]).is_ok());
    }

    #[test]
    fn tableau_json_shape() {
        let t = tableau_of_word(&w("1314"));
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"rows":[[1,1,4],[3]]}"#);
    }

    #[test]
    fn reading_word_recovers_tableau() {
        let t = tableau_of_word(&w("3214231"));
        assert_eq!(tableau_of_word(&t.reading_word()), t);
    }
}
