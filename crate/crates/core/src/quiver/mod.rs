//! Quivers without loops or 2-cycles, stored as skew-symmetric exchange matrices.
//!
//! Sign convention: `b[i][j] = #{arrows j -> i} - #{arrows i -> j}`. With this
//! choice the grading `deg(y_j) = -sum_i b_ij e_i` makes every cluster variable
//! homogeneous (see `cluster::gvector`).

mod canonical;
pub mod catalog;
mod class;
mod classify;

pub use canonical::{canonical_key, canonicalize, CanonicalForm};
pub use class::{mutation_class, ClassStatus, MutationClassResult, DEFAULT_MAX_WEIGHT};
pub use classify::{classify, classify_with_class, Classification, DiagramName};

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("vertex {vertex} out of range 1..={n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("quiver is disconnected")]
    Disconnected,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("2-cycle between vertices {0} and {1}")]
    TwoCycle(usize, usize),
    #[error("quiver must have at least one vertex")]
    Empty,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A finite quiver without loops or 2-cycles.
///
/// Vertices are `0..n` internally; every public operation that takes a vertex
/// from a user (CLI, codecs) is 1-based and converted at the boundary.
#[derive(Clone, Debug)]
pub struct Quiver {
    n: usize,
    b: Vec<i64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.b == other.b
    }
}

impl Eq for Quiver {}

impl Hash for Quiver {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.b.hash(state);
    }
}

impl Quiver {
    /// Quiver with `n` vertices and no arrows.
    pub fn empty(n: usize) -> Self {
        Quiver { n, b: vec![0; n * n], labels: None }
    }

    /// Builds a quiver from 0-based arrow bundles `(tail, head, multiplicity)`.
    ///
    /// Parallel bundles accumulate; opposite bundles are rejected rather than cancelled.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, u32)]) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        let mut count = vec![0i64; n * n];
        for &(i, j, m) in arrows {
            if i >= n {
                return Err(QuiverError::InvalidVertex { vertex: i + 1, n });
            }
            if j >= n {
                return Err(QuiverError::InvalidVertex { vertex: j + 1, n });
            }
            if i == j {
                return Err(QuiverError::Loop(i + 1));
            }
            count[i * n + j] += m as i64;
        }
        let mut q = Quiver::empty(n);
        for i in 0..n {
            for j in 0..n {
                let (ij, ji) = (count[i * n + j], count[j * n + i]);
                if ij > 0 && ji > 0 {
                    return Err(QuiverError::TwoCycle(i.min(j) + 1, i.max(j) + 1));
                }
                q.b[i * n + j] = ji - ij;
            }
        }
        Ok(q)
    }

    pub fn from_b_matrix(b: &[Vec<i64>]) -> Result<Self, QuiverError> {
        let n = b.len();
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        if b.iter().any(|row| row.len() != n) {
            return Err(QuiverError::NotSquare);
        }
        for i in 0..n {
            for j in i..n {
                if b[i][j] != -b[j][i] {
                    return Err(QuiverError::NotSkewSymmetric(i + 1, j + 1));
                }
            }
        }
        Ok(Quiver { n, b: b.iter().flatten().copied().collect(), labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `b_ij` (0-based).
    #[inline]
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    /// Number of arrows `i -> j` (0-based).
    #[inline]
    pub fn arrows_between(&self, i: usize, j: usize) -> u32 {
        self.b(j, i).max(0) as u32
    }

    pub fn b_matrix(&self) -> Vec<Vec<i64>> {
        self.b.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Arrow bundles `(tail, head, multiplicity)`, 0-based, sorted.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let m = self.arrows_between(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> u64 {
        self.arrows().iter().map(|a| a.2 as u64).sum()
    }

    /// Largest arrow multiplicity between any pair of vertices.
    pub fn max_weight(&self) -> u32 {
        self.b.iter().map(|v| v.unsigned_abs() as u32).max().unwrap_or(0)
    }

    fn check_vertex(&self, k: usize) -> Result<(), QuiverError> {
        if k >= self.n {
            Err(QuiverError::InvalidVertex { vertex: k + 1, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Mutation at `k` (0-based) by the three-step procedure: add a composite
    /// arrow for every path through `k`, reverse the arrows at `k`, cancel 2-cycles.
    pub fn mutate(&self, k: usize) -> Result<Quiver, QuiverError> {
        self.check_vertex(k)?;
        let n = self.n;
        // arrow counts a[i][j] = #{i -> j}
        let mut a: Vec<i64> = (0..n * n).map(|x| self.arrows_between(x / n, x % n) as i64).collect();
        let into_k: Vec<i64> = (0..n).map(|i| a[i * n + k]).collect();
        let out_of_k: Vec<i64> = (0..n).map(|j| a[k * n + j]).collect();
        for i in 0..n {
            for j in 0..n {
                if i != k && j != k && i != j {
                    a[i * n + j] += into_k[i] * out_of_k[j];
                }
            }
        }
        for i in 0..n {
            a[i * n + k] = out_of_k[i];
            a[k * n + i] = into_k[i];
        }
        let mut out = Quiver::empty(n);
        out.labels = self.labels.clone();
        for i in 0..n {
            for j in 0..n {
                out.b[i * n + j] = a[j * n + i] - a[i * n + j];
            }
        }
        Ok(out)
    }

    /// Mutation along a sequence of 0-based vertices.
    pub fn mutate_path(&self, path: &[usize]) -> Result<Quiver, QuiverError> {
        path.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// Full subquiver on the 0-based vertex set `vertices` (kept in the given order).
    pub fn restrict(&self, vertices: &[usize]) -> Result<Quiver, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::EmptySubset);
        }
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let m = vertices.len();
        let mut out = Quiver::empty(m);
        for (a, &i) in vertices.iter().enumerate() {
            for (c, &j) in vertices.iter().enumerate() {
                out.b[a * m + c] = self.b(i, j);
            }
        }
        out.labels = self.labels.as_ref().map(|l| vertices.iter().map(|&v| l[v].clone()).collect());
        Ok(out)
    }

    /// Relabel: vertex `v` of `self` becomes vertex `perm[v]` of the result.
    pub fn permute(&self, perm: &[usize]) -> Quiver {
        let n = self.n;
        let mut out = Quiver::empty(n);
        for i in 0..n {
            for j in 0..n {
                out.b[perm[i] * n + perm[j]] = self.b(i, j);
            }
        }
        out
    }

    pub fn opposite(&self) -> Quiver {
        Quiver { n: self.n, b: self.b.iter().map(|v| -v).collect(), labels: self.labels.clone() }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if !seen[w] && self.b(v, w) != 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `true` when the quiver has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n;
        let mut indeg: Vec<u32> =
            (0..n).map(|j| (0..n).filter(|&i| self.arrows_between(i, j) > 0).count() as u32).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = ready.pop() {
            done += 1;
            for w in 0..n {
                if self.arrows_between(v, w) > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        done == n
    }

    /// Framed quiver with principal coefficients: vertices `n..2n` are frozen
    /// copies and every mutable `i` gets an arrow `i -> i + n`.
    pub fn framed(&self) -> Quiver {
        let n = self.n;
        let mut out = Quiver::empty(2 * n);
        for i in 0..n {
            for j in 0..n {
                out.b[i * 2 * n + j] = self.b(i, j);
            }
            out.b[(i + n) * 2 * n + i] = 1;
            out.b[i * 2 * n + i + n] = -1;
        }
        out
    }

    /// Parses the `.quiver` text format: line 1 `n`, then `i j m` per arrow bundle (1-based).
    pub fn from_text(text: &str) -> Result<Quiver, QuiverError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| QuiverError::Parse("missing vertex count".into()))?
            .parse()
            .map_err(|e| QuiverError::Parse(format!("vertex count: {e}")))?;
        let mut arrows = Vec::new();
        for line in lines {
            let nums: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| QuiverError::Parse(format!("{line:?}: {e}"))))
                .collect::<Result<_, _>>()?;
            let [i, j, m] = nums[..] else {
                return Err(QuiverError::Parse(format!("expected `i j m`, got {line:?}")));
            };
            if i < 1 || j < 1 || m < 1 {
                return Err(QuiverError::Parse(format!("indices and multiplicity must be positive: {line:?}")));
            }
            arrows.push((i as usize - 1, j as usize - 1, m as u32));
        }
        Quiver::from_arrows(n, &arrows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, j, m) in self.arrows() {
            s.push_str(&format!("{} {} {}\n", i + 1, j + 1, m));
        }
        s
    }

    pub fn to_json_value(&self) -> QuiverJson {
        QuiverJson {
            n: self.n,
            arrows: self.arrows().into_iter().map(|(i, j, m)| [i + 1, j + 1, m as usize]).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Canonical compact JSON `{"n":..,"arrows":[[i,j,m],..]}` (1-based, sorted).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("quiver json")
    }

    pub fn from_json(text: &str) -> Result<Quiver, QuiverError> {
        let j: QuiverJson = serde_json::from_str(text).map_err(|e| QuiverError::Parse(e.to_string()))?;
        Quiver::try_from(j)
    }

    /// Accepts either the text or the JSON form.
    pub fn parse_any(text: &str) -> Result<Quiver, QuiverError> {
        if text.trim_start().starts_with('{') {
            Quiver::from_json(text)
        } else {
            Quiver::from_text(text)
        }
    }
}

/// JSON mirror of the `.quiver` format.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverJson {
    pub n: usize,
    pub arrows: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = QuiverError;

    fn try_from(j: QuiverJson) -> Result<Self, Self::Error> {
        let mut arrows = Vec::with_capacity(j.arrows.len());
        for [i, j2, m] in j.arrows {
            if i < 1 || j2 < 1 || m < 1 {
                return Err(QuiverError::Parse("indices and multiplicity must be positive".into()));
            }
            arrows.push((i - 1, j2 - 1, m as u32));
        }
        let q = Quiver::from_arrows(j.n, &arrows)?;
        match j.labels {
            Some(l) if l.len() == q.n => Ok(q.with_labels(l)),
            Some(_) => Err(QuiverError::Parse("label count does not match n".into())),
            None => Ok(q),
        }
    }
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = QuiverJson::deserialize(d)?;
        Quiver::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows = self.arrows();
        write!(f, "Quiver(n={}", self.n)?;
        for (i, j, m) in arrows {
            if m == 1 {
                write!(f, ", {}->{}", i + 1, j + 1)?;
            } else {
                write!(f, ", {}-{}->{}", i + 1, m, j + 1)?;
            }
        }
        write!(f, ")")
    }
}
