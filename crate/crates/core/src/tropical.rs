//! Integer max-plus arithmetic: scalars, square matrices, and evaluation of
//! `{a, b}` words at a pair of matrices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abword::{AbLetter, AbWord};
use crate::error::{Error, Result};
use crate::subset::SubsetOfN;

/// An element of the integer tropical semiring `Z ∪ {-inf}`.
///
/// `+` is tropical addition (max) and `*` is tropical multiplication
/// (ordinary addition). The derived order puts `NegInf` below every finite
/// value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropScalar {
    NegInf,
    Fin(i64),
}

impl TropScalar {
    pub const ZERO: TropScalar = TropScalar::NegInf;
    pub const ONE: TropScalar = TropScalar::Fin(0);

    pub fn is_neg_inf(self) -> bool {
        matches!(self, TropScalar::NegInf)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            TropScalar::Fin(v) => Some(v),
            TropScalar::NegInf => None,
        }
    }
}

impl From<i64> for TropScalar {
    fn from(v: i64) -> Self {
        TropScalar::Fin(v)
    }
}

impl Add for TropScalar {
    type Output = TropScalar;

    fn add(self, rhs: TropScalar) -> TropScalar {
        self.max(rhs)
    }
}

/// Tropical product: ordinary addition.
impl Mul for TropScalar {
    type Output = TropScalar;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: TropScalar) -> TropScalar {
        match (self, rhs) {
            (TropScalar::Fin(a), TropScalar::Fin(b)) => TropScalar::Fin(a + b),
            _ => TropScalar::NegInf,
        }
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::NegInf => f.write_str("-inf"),
            TropScalar::Fin(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for TropScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TropScalar::NegInf => ser.serialize_str("-inf"),
            TropScalar::Fin(v) => ser.serialize_i64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for TropScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Int(v) => Ok(TropScalar::Fin(v)),
            Raw::Str(s) if s == "-inf" => Ok(TropScalar::NegInf),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected an integer or \"-inf\", got \"{s}\""
            ))),
        }
    }
}

/// A dense square matrix over the tropical semiring, optionally indexed by
/// subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    dim: usize,
    entries: Vec<TropScalar>,
    labels: Option<Vec<SubsetOfN>>,
}

impl TropMatrix {
    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix(format!(
                "row of length {} in a {dim}x{dim} matrix",
                bad.len()
            )));
        }
        Ok(TropMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
            labels: None,
        })
    }

    /// Convenience constructor from `Option<i64>` rows, `None` meaning `-inf`.
    pub fn from_options(rows: &[&[Option<i64>]]) -> Result<Self> {
        TropMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|e| e.map_or(TropScalar::NegInf, TropScalar::Fin))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn filled(dim: usize, value: TropScalar) -> Self {
        assert!(dim > 0);
        TropMatrix {
            dim,
            entries: vec![value; dim * dim],
            labels: None,
        }
    }

    /// The multiplicative identity: 0 on the diagonal, `-inf` elsewhere.
    pub fn identity(dim: usize) -> Self {
        let mut m = TropMatrix::filled(dim, TropScalar::NegInf);
        for i in 0..dim {
            m.set(i, i, TropScalar::ONE);
        }
        m
    }

    /// Attaches subset labels to rows and columns.
    pub fn with_labels(mut self, labels: Vec<SubsetOfN>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::InvalidMatrix(format!(
                "{} labels for dimension {}",
                labels.len(),
                self.dim
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[SubsetOfN]> {
        self.labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> TropScalar {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TropScalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[TropScalar] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<TropScalar>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    /// Max-plus product `C_ij = max_k (A_ik + B_kj)`. Labels of `self` carry
    /// over when present.
    pub fn mul(&self, rhs: &TropMatrix) -> Result<TropMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let d = self.dim;
        let mut out = vec![TropScalar::NegInf; d * d];
        for i in 0..d {
            let out_row = &mut out[i * d..(i + 1) * d];
            for k in 0..d {
                let Some(aik) = self.entries[i * d + k].finite() else {
                    continue;
                };
                for (j, slot) in out_row.iter_mut().enumerate() {
                    if let TropScalar::Fin(bkj) = rhs.entries[k * d + j] {
                        let cand = TropScalar::Fin(aik + bkj);
                        if cand > *slot {
                            *slot = cand;
                        }
                    }
                }
            }
        }
        Ok(TropMatrix {
            dim: d,
            entries: out,
            labels: self.labels.clone().or_else(|| rhs.labels.clone()),
        })
    }

    /// Whether every entry below the diagonal is `-inf`.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).is_neg_inf()))
    }

    /// First position (row-major) where the two matrices disagree.
    pub fn first_difference(&self, other: &TropMatrix) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.dim, p % self.dim))
    }

    /// Entrywise comparison ignoring labels.
    pub fn same_entries(&self, other: &TropMatrix) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.dim {
            if i > 0 {
                writeln!(f)?;
            }
            if let Some(labels) = &self.labels {
                write!(f, "{:>10} ", labels[i].to_string())?;
            }
            let row: Vec<String> = cells[i * self.dim..(i + 1) * self.dim]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    rows: Vec<Vec<TropScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<SubsetOfN>>,
}

impl Serialize for TropMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim,
            rows: self.rows(),
            labels: self.labels.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TropMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(de)?;
        if raw.rows.len() != raw.dim {
            return Err(serde::de::Error::custom(format!(
                "dim {} but {} rows",
                raw.dim,
                raw.rows.len()
            )));
        }
        let m = TropMatrix::from_rows(raw.rows).map_err(serde::de::Error::custom)?;
        match raw.labels {
            Some(l) => m.with_labels(l).map_err(serde::de::Error::custom),
            None => Ok(m),
        }
    }
}

/// Max-plus matrix product, as a free function.
pub fn trop_mul(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    a.mul(b)
}

/// `w(a -> X, b -> Y)`, the product of `X`s and `Y`s spelled by `w`.
pub fn eval_word(w: &AbWord, x: &TropMatrix, y: &TropMatrix) -> Result<TropMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    let pick = |l: AbLetter| if l == AbLetter::A { x } else { y };
    let mut letters = w.letters().iter();
    let first = letters.next().ok_or(Error::EmptyWord)?;
    letters.try_fold(pick(*first).clone(), |acc, &l| acc.mul(pick(l)))
}

/// Sampler for random upper-triangular integer matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtSampler {
    /// Smallest finite entry.
    pub lo: i64,
    /// Largest finite entry.
    pub hi: i64,
    /// Probability that an entry on or above the diagonal is `-inf`.
    pub neg_inf_density: f64,
}

impl Default for UtSampler {
    fn default() -> Self {
        UtSampler {
            lo: -3,
            hi: 3,
            neg_inf_density: 0.2,
        }
    }
}

impl UtSampler {
    pub fn sample<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> TropMatrix {
        let mut m = TropMatrix::filled(dim, TropScalar::NegInf);
        for i in 0..dim {
            for j in i..dim {
                if !rng.gen_bool(self.neg_inf_density.clamp(0.0, 1.0)) {
                    m.set(i, j, TropScalar::Fin(rng.gen_range(self.lo..=self.hi)));
                }
            }
        }
        m
    }
}

/// A seeded random upper-triangular matrix with finite entries in `range`
/// and no `-inf` above the diagonal.
pub fn random_ut(dim: usize, range: (i64, i64), seed: u64) -> TropMatrix {
    let sampler = UtSampler {
        lo: range.0,
        hi: range.1,
        neg_inf_density: 0.0,
    };
    sampler.sample(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

impl PartialOrd for TropMatrix {
    /// Entrywise partial order on equal-dimension matrices.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.dim != other.dim {
            return None;
        }
        let le = self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b);
        let ge = self.entries.iter().zip(&other.entries).all(|(a, b)| a >= b);
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const NI: Option<i64> = None;

    fn m(rows: &[&[Option<i64>]]) -> TropMatrix {
        TropMatrix::from_options(rows).unwrap()
    }

    #[test]
    fn scalar_laws() {
        let a = TropScalar::Fin(3);
        assert_eq!(a + TropScalar::NegInf, a);
        assert_eq!(a * TropScalar::NegInf, TropScalar::NegInf);
        assert_eq!(a * TropScalar::ONE, a);
        assert_eq!(TropScalar::Fin(2) * TropScalar::Fin(5), TropScalar::Fin(7));
        assert!(TropScalar::NegInf < TropScalar::Fin(i64::MIN));
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[&[Some(1), Some(-2)], &[NI, Some(4)]]);
        let id = TropMatrix::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn two_by_two_product() {
        let a = m(&[&[Some(0), Some(1)], &[NI, Some(0)]]);
        let p = a.mul(&a).unwrap();
        assert_eq!(p, a);
        assert_eq!(p.get(0, 1), TropScalar::Fin(1));
    }

    #[test]
    fn neg_inf_matrix_annihilates() {
        let z = TropMatrix::filled(3, TropScalar::NegInf);
        let a = random_ut(3, (-3, 3), 1);
        assert_eq!(a.mul(&z).unwrap(), z);
        assert_eq!(z.mul(&a).unwrap(), z);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            TropMatrix::identity(2).mul(&TropMatrix::identity(3)),
            Err(Error::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn eval_basic_words() {
        let x = random_ut(3, (-3, 3), 5);
        let y = random_ut(3, (-3, 3), 6);
        assert_eq!(eval_word(&"a".parse().unwrap(), &x, &y).unwrap(), x);
        assert_eq!(eval_word(&"ab".parse().unwrap(), &x, &y).unwrap(), x.mul(&y).unwrap());
        assert_eq!(eval_word(&AbWord::default(), &x, &y), Err(Error::EmptyWord));
    }

    #[test]
    fn upper_triangular_detection() {
        assert!(TropMatrix::identity(3).is_upper_triangular());
        assert!(!m(&[&[Some(0), NI], &[Some(0), Some(0)]]).is_upper_triangular());
    }

    #[test]
    fn random_ut_is_reproducible() {
        let a = random_ut(3, (-3, 3), 42);
        assert_eq!(a, random_ut(3, (-3, 3), 42));
        assert!(a.is_upper_triangular());
        // frozen on first run
        let expected = m(&[
            &[Some(3), Some(1), Some(-2)],
            &[NI, Some(2), Some(-2)],
            &[NI, NI, Some(3)],
        ]);
        assert_eq!(a, expected);
    }

    #[test]
    fn json_uses_neg_inf_string() {
        let a = m(&[&[Some(0), NI], &[NI, Some(2)]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"dim":2,"rows":[[0,"-inf"],["-inf",2]]}"#);
        let back: TropMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<TropMatrix>(r#"{"dim":2,"rows":[[0,"inf"],["-inf",2]]}"#).is_err());
        assert!(serde_json::from_str::<TropMatrix>(r#"{"dim":3,"rows":[[0,1],[1,2]]}"#).is_err());
    }

    fn arb_ut(dim: usize) -> impl Strategy<Value = TropMatrix> {
        any::<u64>().prop_map(move |seed| {
            UtSampler {
                lo: -5,
                hi: 5,
                neg_inf_density: 0.3,
            }
            .sample(dim, &mut ChaCha8Rng::seed_from_u64(seed))
        })
    }

    fn arb_full(dim: usize) -> impl Strategy<Value = TropMatrix> {
        prop::collection::vec(prop::option::weighted(0.8, -6i64..6), dim * dim).prop_map(move |v| {
            TropMatrix::from_rows(
                v.chunks(dim)
                    .map(|r| {
                        r.iter()
                            .map(|e| e.map_or(TropScalar::NegInf, TropScalar::Fin))
                            .collect()
                    })
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb_full(4), b in arb_full(4), c in arb_full(4)) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn upper_triangular_closed(a in arb_ut(5), b in arb_ut(5)) {
            prop_assert!(a.mul(&b).unwrap().is_upper_triangular());
        }

        #[test]
        fn eval_is_a_homomorphism(
            u in "[ab]{1,8}", v in "[ab]{1,8}", x in arb_full(3), y in arb_full(3)
        ) {
            let u: AbWord = u.parse().unwrap();
            let v: AbWord = v.parse().unwrap();
            let whole = eval_word(&u.concat(&v), &x, &y).unwrap();
            let split = eval_word(&u, &x, &y).unwrap().mul(&eval_word(&v, &x, &y).unwrap()).unwrap();
            prop_assert_eq!(whole, split);
        }
    }
}
