//! Labelled weighted digraphs of matrix pairs, explicit paths, and the
//! meet/join transforms of paths on subset-labelled digraphs.
//!
//! For matrices `X` and `Y`, the digraph has an edge `i -> j` labelled `X`
//! with weight `X_ij` whenever `X_ij` is finite, and likewise for `Y`. Entry
//! `(i, j)` of a word evaluated at `(X, Y)` is the heaviest path from `i` to
//! `j` whose labels spell that word.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abword::{AbLetter, AbWord};
use crate::error::{Error, Result};
use crate::rep::PlacticRep;
use crate::subset::SubsetOfN;
use crate::tropical::{TropMatrix, TropScalar};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    X,
    Y,
}

impl From<AbLetter> for EdgeLabel {
    fn from(l: AbLetter) -> Self {
        match l {
            AbLetter::A => EdgeLabel::X,
            AbLetter::B => EdgeLabel::Y,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::X => "X",
            EdgeLabel::Y => "Y",
        })
    }
}

/// Label sequence of an `{a, b}` word with `a -> X`, `b -> Y`.
pub fn labels_of(w: &AbWord) -> Vec<EdgeLabel> {
    w.letters().iter().map(|&l| l.into()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: EdgeLabel,
    pub weight: i64,
}

/// A non-empty sequence of edges with matching endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<Edge>,
}

impl Path {
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidPath("a path needs at least one edge".into()));
        }
        if let Some(k) = edges.windows(2).position(|p| p[0].dst != p[1].src) {
            return Err(Error::InvalidPath(format!(
                "edge {k} ends where edge {} does not start",
                k + 1
            )));
        }
        Ok(Path { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> usize {
        self.edges[0].src
    }

    pub fn end(&self) -> usize {
        self.edges[self.edges.len() - 1].dst
    }

    /// The `len + 1` visited vertices.
    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(self.start())
            .chain(self.edges.iter().map(|e| e.dst))
            .collect()
    }

    pub fn labels(&self) -> Vec<EdgeLabel> {
        self.edges.iter().map(|e| e.label).collect()
    }

    pub fn weight(&self) -> i64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Number of edges that are not loops.
    pub fn non_loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.src != e.dst).count()
    }
}

/// Weight of a path as a tropical scalar.
pub fn path_weight(p: &Path) -> TropScalar {
    TropScalar::Fin(p.weight())
}

/// A vertex in serialized paths: a plain index or a subset label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Subset(SubsetOfN),
}

/// Serialized form `{"vertices": [...], "labels": "XYX", "weight": k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub vertices: Vec<VertexRef>,
    pub labels: String,
    pub weight: i64,
}

/// The labelled weighted digraph of a matrix pair `(X, Y)`.
#[derive(Debug, Clone)]
pub struct LabeledDigraph {
    x: TropMatrix,
    y: TropMatrix,
    labels: Option<Vec<SubsetOfN>>,
    index: HashMap<SubsetOfN, usize>,
    edges: Vec<Edge>,
}

impl LabeledDigraph {
    pub fn matrix(&self, label: EdgeLabel) -> &TropMatrix {
        match label {
            EdgeLabel::X => &self.x,
            EdgeLabel::Y => &self.y,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.x.dim()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_labels(&self) -> Option<&[SubsetOfN]> {
        self.labels.as_deref()
    }

    pub fn vertex_of(&self, s: SubsetOfN) -> Option<usize> {
        self.index.get(&s).copied()
    }

    fn subset_of(&self, v: usize) -> Result<SubsetOfN> {
        self.labels.as_ref().map(|l| l[v]).ok_or(Error::UnlabelledDigraph)
    }

    /// The edge `src -> dst` with the given label, if the entry is finite.
    pub fn edge(&self, src: usize, dst: usize, label: EdgeLabel) -> Option<Edge> {
        self.matrix(label).get(src, dst).finite().map(|weight| Edge {
            src,
            dst,
            label,
            weight,
        })
    }

    pub fn to_json(&self, p: &Path) -> PathJson {
        let vertices = p
            .vertices()
            .into_iter()
            .map(|v| match &self.labels {
                Some(l) => VertexRef::Subset(l[v]),
                None => VertexRef::Index(v),
            })
            .collect();
        PathJson {
            vertices,
            labels: p.labels().iter().map(|l| l.to_string()).collect(),
            weight: p.weight(),
        }
    }

    /// Rebuilds a path from its serialized form, checking every edge and the
    /// recorded weight.
    pub fn from_json(&self, json: &PathJson) -> Result<Path> {
        let vertices: Vec<usize> = json
            .vertices
            .iter()
            .map(|v| match v {
                VertexRef::Index(i) if *i < self.num_vertices() => Ok(*i),
                VertexRef::Subset(s) => self.vertex_of(*s).ok_or(Error::UnlabelledDigraph),
                VertexRef::Index(i) => Err(Error::InvalidPath(format!("vertex {i} out of range"))),
            })
            .collect::<Result<_>>()?;
        let labels: Vec<EdgeLabel> = json
            .labels
            .chars()
            .map(|c| match c {
                'X' => Ok(EdgeLabel::X),
                'Y' => Ok(EdgeLabel::Y),
                other => Err(Error::InvalidPath(format!("unknown label '{other}'"))),
            })
            .collect::<Result<_>>()?;
        if vertices.len() != labels.len() + 1 {
            return Err(Error::InvalidPath("vertex count must be label count + 1".into()));
        }
        let edges = labels
            .iter()
            .enumerate()
            .map(|(k, &l)| {
                self.edge(vertices[k], vertices[k + 1], l)
                    .ok_or_else(|| Error::InvalidPath(format!("edge {k} is not in the digraph")))
            })
            .collect::<Result<Vec<_>>>()?;
        let path = Path::new(edges)?;
        if path.weight() != json.weight {
            return Err(Error::InvalidPath(format!(
                "recorded weight {} but edges sum to {}",
                json.weight,
                path.weight()
            )));
        }
        Ok(path)
    }
}

/// Builds the labelled digraph of `(X, Y)`; subset labels are taken from
/// `X` when present.
pub fn build_digraph(x: &TropMatrix, y: &TropMatrix) -> Result<LabeledDigraph> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    let labels = x.labels().or(y.labels()).map(<[_]>::to_vec);
    let index = labels.iter().flatten().enumerate().map(|(i, &s)| (s, i)).collect();
    let d = x.dim();
    let mut edges = Vec::new();
    for (label, m) in [(EdgeLabel::X, x), (EdgeLabel::Y, y)] {
        for i in 0..d {
            for j in 0..d {
                if let Some(weight) = m.get(i, j).finite() {
                    edges.push(Edge {
                        src: i,
                        dst: j,
                        label,
                        weight,
                    });
                }
            }
        }
    }
    Ok(LabeledDigraph {
        x: x.clone(),
        y: y.clone(),
        labels,
        index,
        edges,
    })
}

/// The subset-labelled digraph of `(rho(x), rho(y))`.
pub fn rep_digraph(rep: &PlacticRep, x: &Word, y: &Word) -> Result<LabeledDigraph> {
    build_digraph(&rep.word(x)?, &rep.word(y)?)
}

/// Heaviest path from `src` to `dst` labelled by `word`, with the witness
/// whose vertex sequence is lexicographically smallest among the heaviest.
/// Returns `-inf` and no witness when no such path exists.
pub fn max_weight_path(
    g: &LabeledDigraph,
    word: &[EdgeLabel],
    src: usize,
    dst: usize,
) -> Result<(TropScalar, Option<Path>)> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let d = g.num_vertices();
    if src >= d || dst >= d {
        return Err(Error::InvalidPath(format!("vertex out of range for {d} vertices")));
    }
    // to_go[k][v]: heaviest completion from v reading word[k..] and ending at dst
    let mut to_go = vec![vec![TropScalar::NegInf; d]; word.len() + 1];
    to_go[word.len()][dst] = TropScalar::ONE;
    for k in (0..word.len()).rev() {
        let m = g.matrix(word[k]);
        for v in 0..d {
            to_go[k][v] = (0..d).map(|u| m.get(v, u) * to_go[k + 1][u]).max().expect("d > 0");
        }
    }
    let best = to_go[0][src];
    if best.is_neg_inf() {
        return Ok((best, None));
    }
    let mut edges = Vec::with_capacity(word.len());
    let mut at = src;
    for (k, &label) in word.iter().enumerate() {
        let m = g.matrix(label);
        let next = (0..d)
            .find(|&u| m.get(at, u) * to_go[k + 1][u] == to_go[k][at])
            .expect("an optimal successor exists");
        edges.push(g.edge(at, next, label).expect("finite on an optimal path"));
        at = next;
    }
    Ok((best, Some(Path::new(edges)?)))
}

fn map_path(g: &LabeledDigraph, p: &Path, f: impl Fn(SubsetOfN) -> SubsetOfN) -> Result<Path> {
    let edges = p
        .edges()
        .iter()
        .map(|e| {
            let src = g.vertex_of(f(g.subset_of(e.src)?)).ok_or(Error::UnlabelledDigraph)?;
            let dst = g.vertex_of(f(g.subset_of(e.dst)?)).ok_or(Error::UnlabelledDigraph)?;
            g.edge(src, dst, e.label)
                .ok_or_else(|| Error::InvalidPath(format!("image edge {src} -> {dst} is missing")))
        })
        .collect::<Result<Vec<_>>>()?;
    Path::new(edges)
}

/// Applies `S -> S ∧ N` to every vertex of `p`, keeping labels.
pub fn phi_path(g: &LabeledDigraph, p: &Path, n_set: SubsetOfN) -> Result<Path> {
    map_path(g, p, |s| s.meet(n_set))
}

/// Applies `S -> S ∨ N` to every vertex of `p`, keeping labels.
pub fn psi_path(g: &LabeledDigraph, p: &Path, n_set: SubsetOfN) -> Result<Path> {
    map_path(g, p, |s| s.join(n_set))
}

/// The three paths obtained by splitting a path `S -> T` at `N ∈ [S, T]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPaths {
    /// Meet image, from `S` to `N`.
    pub sigma: Path,
    /// Join image, from `N` to `T`.
    pub tau: Path,
    /// Loops at `N` with the original labelling.
    pub lambda: Path,
}

impl SplitPaths {
    /// `w(gamma) + w(lambda) <= w(sigma) + w(tau)`.
    pub fn inequality_holds(&self, gamma: &Path) -> bool {
        gamma.weight() + self.lambda.weight() <= self.sigma.weight() + self.tau.weight()
    }
}

/// Splits `gamma` at `n_set`. `gamma` must run between two subsets of
/// equal size `S <= T` on a subset-labelled digraph, with `S <= N <= T`.
pub fn splitting_paths(g: &LabeledDigraph, gamma: &Path, n_set: SubsetOfN) -> Result<SplitPaths> {
    let s = g.subset_of(gamma.start())?;
    let t = g.subset_of(gamma.end())?;
    if s.len() != t.len() {
        return Err(Error::SizeMismatch(s.to_string(), t.to_string()));
    }
    if !(s.leq(n_set) && n_set.leq(t)) {
        return Err(Error::Precondition(format!("{n_set} is not in [{s}, {t}]")));
    }
    let sigma = phi_path(g, gamma, n_set)?;
    let tau = psi_path(g, gamma, n_set)?;
    let at = g.vertex_of(n_set).ok_or(Error::UnlabelledDigraph)?;
    let lambda = Path::new(
        gamma
            .labels()
            .into_iter()
            .map(|l| {
                g.edge(at, at, l)
                    .ok_or_else(|| Error::InvalidPath(format!("no {l} loop at {n_set}")))
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    debug_assert_eq!(sigma.start(), gamma.start());
    debug_assert_eq!(tau.end(), gamma.end());
    Ok(SplitPaths { sigma, tau, lambda })
}
