//! Two-letter words over `{a, b}`, the alphabet of semigroup identities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AbLetter {
    A,
    B,
}

impl AbLetter {
    pub fn as_char(self) -> char {
        match self {
            AbLetter::A => 'a',
            AbLetter::B => 'b',
        }
    }
}

/// A word over `{a, b}`, written as a plain string of `a`s and `b`s.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbWord(Vec<AbLetter>);

impl AbWord {
    pub fn new(letters: Vec<AbLetter>) -> Self {
        AbWord(letters)
    }

    pub fn letters(&self) -> &[AbLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, x: AbLetter) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }

    pub fn concat(&self, other: &AbWord) -> AbWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        AbWord(v)
    }

    pub fn repeat(&self, times: usize) -> AbWord {
        AbWord(self.0.repeat(times))
    }

    /// Whether `factor` occurs contiguously in this word.
    pub fn contains_factor(&self, factor: &AbWord) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|win| win == factor.letters())
    }

    pub fn starts_with(&self, prefix: &AbWord) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &AbWord) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// `x^k` for a single letter.
    pub fn power(x: AbLetter, k: usize) -> AbWord {
        AbWord(vec![x; k])
    }

    /// All `2^len` words of length `len`, in lexicographic order with `a < b`.
    pub fn all_of_length(len: usize) -> Vec<AbWord> {
        (0..1usize << len)
            .map(|code| {
                AbWord(
                    (0..len)
                        .rev()
                        .map(|bit| if code >> bit & 1 == 0 { AbLetter::A } else { AbLetter::B })
                        .collect(),
                )
            })
            .collect()
    }
}

impl From<Vec<AbLetter>> for AbWord {
    fn from(v: Vec<AbLetter>) -> Self {
        AbWord(v)
    }
}

impl fmt::Display for AbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|x| x.as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for AbWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'a' => Ok(AbLetter::A),
                'b' => Ok(AbLetter::B),
                other => Err(Error::ParseWord(format!("'{other}' is not one of a, b"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(AbWord)
    }
}

impl Serialize for AbWord {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AbWord {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The homomorphic image `w[a -> image_a, b -> image_b]`.
pub fn substitute<T: Clone>(w: &AbWord, image_a: &[T], image_b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(w.count(AbLetter::A) * image_a.len() + w.count(AbLetter::B) * image_b.len());
    for &x in w.letters() {
        match x {
            AbLetter::A => out.extend_from_slice(image_a),
            AbLetter::B => out.extend_from_slice(image_b),
        }
    }
    out
}

/// [`substitute`] specialised to images that are themselves `{a, b}` words.
pub fn substitute_ab(w: &AbWord, image_a: &AbWord, image_b: &AbWord) -> AbWord {
    AbWord(substitute(w, image_a.letters(), image_b.letters()))
}
