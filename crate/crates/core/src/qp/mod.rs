//! Quivers with potentials.
//!
//! Paths are stored as arrow-id sequences in the order they are traversed:
//! `[a, b]` means first `a`, then `b`. Potentials are finite sums of cycles
//! up to a working precision `trunc`; every cycle is stored as its
//! lexicographically least rotation.

pub mod catalog;
mod jacobian;
mod mutation;

pub use jacobian::{jacobian_dim_truncated, jacobian_dim_with_order, DimProfile, DimVerdict, PathOrder};
pub use mutation::{
    premutate, probe_nondegenerate, qp_mutate, reduce, reduce_with_order, Nondegeneracy, ReductionOrder,
};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::quiver::{Quiver, QuiverError};
use crate::scalar::Scalar;

pub const DEFAULT_TRUNCATION: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QpError {
    #[error("unknown arrow {0}")]
    UnknownArrow(usize),
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("arrow sequence {0:?} is not a cycle")]
    NotACycle(Vec<usize>),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {0} lies on a 2-cycle")]
    VertexOnTwoCycle(usize),
    #[error("reduced quiver still has a 2-cycle between {0} and {1}")]
    TwoCycleInOutput(usize, usize),
    #[error("substitution did not settle below degree {0}")]
    PrecisionExhausted(usize),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("truncation degree must be positive")]
    ZeroTruncation,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub name: String,
}

/// A quiver with individually named arrows; 2-cycles are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowQuiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl ArrowQuiver {
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<ArrowQuiver, QpError> {
        for a in &arrows {
            if a.tail >= n || a.head >= n {
                return Err(QpError::InvalidVertex(a.tail.max(a.head)));
            }
            if a.tail == a.head {
                return Err(QpError::Loop(a.tail));
            }
        }
        Ok(ArrowQuiver { n, arrows })
    }

    /// Expands every `(i, j, m)` of [`Quiver::arrows`] into `m` arrows `a1, a2, ...`, in that order.
    pub fn from_quiver(q: &Quiver) -> ArrowQuiver {
        let mut arrows = Vec::new();
        for (i, j, m) in q.arrows() {
            for _ in 0..m {
                arrows.push(Arrow { tail: i, head: j, name: format!("a{}", arrows.len() + 1) });
            }
        }
        ArrowQuiver { n: q.n(), arrows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> Option<&Arrow> {
        self.arrows.get(id)
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Ids of the arrows named, in the given order.
    pub fn path(&self, names: &[&str]) -> Result<Vec<usize>, QpError> {
        names.iter().map(|s| self.arrow_id(s).ok_or_else(|| QpError::Parse(format!("no arrow named {s}")))).collect()
    }

    /// Unordered vertex pairs joined by arrows in both directions.
    pub fn two_cycles(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let fwd = self.arrows.iter().any(|a| a.tail == i && a.head == j);
                let back = self.arrows.iter().any(|a| a.tail == j && a.head == i);
                if fwd && back {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The underlying 2-acyclic quiver; fails on 2-cycles.
    pub fn to_quiver(&self) -> Result<Quiver, QpError> {
        if let Some(&(i, j)) = self.two_cycles().first() {
            return Err(QpError::TwoCycleInOutput(i, j));
        }
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for a in &self.arrows {
            *counts.entry((a.tail, a.head)).or_default() += 1;
        }
        let arrows: Vec<(usize, usize, u32)> = counts.into_iter().map(|((i, j), m)| (i, j, m)).collect();
        Ok(Quiver::from_arrows(self.n, &arrows)?)
    }

    pub fn is_cycle(&self, word: &[usize]) -> bool {
        !word.is_empty()
            && word.iter().all(|&a| a < self.arrows.len())
            && (0..word.len()).all(|i| self.arrows[word[i]].head == self.arrows[word[(i + 1) % word.len()]].tail)
    }
}

/// Noncommutative polynomial: arrow words with coefficients.
pub type PathPoly<T> = BTreeMap<Vec<usize>, T>;

pub(crate) fn add_to<T: Scalar>(p: &mut PathPoly<T>, word: Vec<usize>, c: T) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&word) {
        Some(v) => {
            *v = v.clone() + c;
            if v.is_zero() {
                p.remove(&word);
            }
        }
        None => {
            p.insert(word, c);
        }
    }
}

/// Lexicographically least rotation of a cycle.
pub fn canonical_rotation(word: &[usize]) -> Vec<usize> {
    (0..word.len().max(1))
        .map(|s| word[s..].iter().chain(&word[..s]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// A potential up to cyclic equivalence, truncated above degree `trunc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Potential<T: Scalar> {
    terms: BTreeMap<Vec<usize>, T>,
    trunc: usize,
}

impl<T: Scalar> Potential<T> {
    pub fn zero(trunc: usize) -> Potential<T> {
        Potential { terms: BTreeMap::new(), trunc }
    }

    pub fn from_terms(trunc: usize, terms: impl IntoIterator<Item = (T, Vec<usize>)>) -> Potential<T> {
        let mut p = Potential::zero(trunc);
        for (c, w) in terms {
            p.add_term(c, &w);
        }
        p
    }

    /// Adds `c` times the cycle `word`; cycles longer than the truncation degree are dropped.
    pub fn add_term(&mut self, c: T, word: &[usize]) {
        if word.is_empty() || word.len() > self.trunc {
            return;
        }
        add_to(&mut self.terms, canonical_rotation(word), c);
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum over occurrences c = u a v of v u`.
    pub fn cyclic_derivative(&self, a: usize) -> PathPoly<T> {
        let mut out = PathPoly::new();
        for (w, c) in &self.terms {
            for (i, &x) in w.iter().enumerate() {
                if x == a {
                    let vu: Vec<usize> = w[i + 1..].iter().chain(&w[..i]).copied().collect();
                    add_to(&mut out, vu, c.clone());
                }
            }
        }
        out
    }

    /// Replaces arrows by path polynomials parallel to them, dropping terms above `trunc`.
    pub fn substitute(&self, subs: &HashMap<usize, PathPoly<T>>) -> Potential<T> {
        let mut out = Potential::zero(self.trunc);
        for (w, c) in &self.terms {
            let mut acc: PathPoly<T> = PathPoly::from([(Vec::new(), c.clone())]);
            for &x in w {
                let single;
                let repl = match subs.get(&x) {
                    Some(r) => r,
                    None => {
                        single = PathPoly::from([(vec![x], T::one())]);
                        &single
                    }
                };
                let mut next = PathPoly::new();
                for (p, cp) in &acc {
                    for (r, cr) in repl {
                        if p.len() + r.len() > self.trunc {
                            continue;
                        }
                        let mut word = p.clone();
                        word.extend(r);
                        add_to(&mut next, word, cp.clone() * cr.clone());
                    }
                }
                acc = next;
            }
            for (word, coeff) in acc {
                out.add_term(coeff, &word);
            }
        }
        out
    }

    /// Renames arrows by `map`; terms using an arrow without an image are dropped.
    pub fn relabel(&self, map: &HashMap<usize, usize>) -> Potential<T> {
        let mut out = Potential::zero(self.trunc);
        for (w, c) in &self.terms {
            if let Some(word) = w.iter().map(|a| map.get(a).copied()).collect::<Option<Vec<_>>>() {
                out.add_term(c.clone(), &word);
            }
        }
        out
    }
}

/// A quiver with potential.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Qp<T: Scalar> {
    quiver: ArrowQuiver,
    potential: Potential<T>,
}

impl<T: Scalar> Qp<T> {
    pub fn new(quiver: ArrowQuiver, potential: Potential<T>) -> Result<Qp<T>, QpError> {
        if potential.trunc == 0 {
            return Err(QpError::ZeroTruncation);
        }
        for w in potential.terms.keys() {
            if !quiver.is_cycle(w) {
                return Err(QpError::NotACycle(w.clone()));
            }
        }
        Ok(Qp { quiver, potential })
    }

    /// `(Q, 0)` with arrows numbered as in [`ArrowQuiver::from_quiver`].
    pub fn zero(q: &Quiver, trunc: usize) -> Qp<T> {
        Qp { quiver: ArrowQuiver::from_quiver(q), potential: Potential::zero(trunc) }
    }

    pub fn quiver(&self) -> &ArrowQuiver {
        &self.quiver
    }

    pub fn potential(&self) -> &Potential<T> {
        &self.potential
    }

    pub fn trunc(&self) -> usize {
        self.potential.trunc
    }

    pub fn cyclic_derivative(&self, a: usize) -> Result<PathPoly<T>, QpError> {
        if a >= self.quiver.arrows.len() {
            return Err(QpError::UnknownArrow(a));
        }
        Ok(self.potential.cyclic_derivative(a))
    }

    /// Same QP at another working precision.
    pub fn with_trunc(&self, trunc: usize) -> Qp<T> {
        let mut p = Potential::zero(trunc);
        for (w, c) in &self.potential.terms {
            p.add_term(c.clone(), w);
        }
        Qp { quiver: self.quiver.clone(), potential: p }
    }

    pub fn to_json_value(&self) -> QpJson {
        let mut runs: Vec<[usize; 3]> = Vec::new();
        for a in &self.quiver.arrows {
            match runs.last_mut() {
                Some(r) if r[0] == a.tail + 1 && r[1] == a.head + 1 => r[2] += 1,
                _ => runs.push([a.tail + 1, a.head + 1, 1]),
            }
        }
        QpJson {
            quiver: QpQuiverJson {
                n: self.quiver.n,
                arrows: runs,
                names: Some(self.quiver.arrows.iter().map(|a| a.name.clone()).collect()),
            },
            terms: self
                .potential
                .terms
                .iter()
                .map(|(w, c)| TermJson { coeff: c.to_string(), cycle: w.clone() })
                .collect(),
            trunc: self.potential.trunc,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("qp json")
    }

    pub fn from_json(text: &str) -> Result<Qp<T>, QpError> {
        let j: QpJson = serde_json::from_str(text).map_err(|e| QpError::Parse(e.to_string()))?;
        Qp::try_from(j)
    }
}

/// Full subquiver on `vertices` with the terms whose cycles stay inside it.
/// Vertices are renumbered in increasing order.
pub fn restrict_qp<T: Scalar>(qp: &Qp<T>, vertices: &[usize]) -> Result<Qp<T>, QpError> {
    if vertices.is_empty() {
        return Err(QpError::EmptySubset);
    }
    let mut keep: Vec<usize> = vertices.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&v) = keep.iter().find(|&&v| v >= qp.quiver.n) {
        return Err(QpError::InvalidVertex(v));
    }
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut arrows = Vec::new();
    let mut map = HashMap::new();
    for (id, a) in qp.quiver.arrows.iter().enumerate() {
        if let (Some(&t), Some(&h)) = (pos.get(&a.tail), pos.get(&a.head)) {
            map.insert(id, arrows.len());
            arrows.push(Arrow { tail: t, head: h, name: a.name.clone() });
        }
    }
    Ok(Qp { quiver: ArrowQuiver { n: keep.len(), arrows }, potential: qp.potential.relabel(&map) })
}

/// `.qp` JSON. Vertices are 1-based; arrow ids are 0-based positions in the
/// expanded arrow list (each `[i, j, m]` contributes `m` consecutive ids).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QpJson {
    pub quiver: QpQuiverJson,
    pub terms: Vec<TermJson>,
    pub trunc: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QpQuiverJson {
    pub n: usize,
    pub arrows: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub cycle: Vec<usize>,
}

impl<T: Scalar> TryFrom<QpJson> for Qp<T> {
    type Error = QpError;

    fn try_from(j: QpJson) -> Result<Qp<T>, QpError> {
        let mut arrows = Vec::new();
        for [i, h, m] in j.quiver.arrows {
            if i == 0 || h == 0 {
                return Err(QpError::Parse("vertices are 1-based".into()));
            }
            for _ in 0..m {
                arrows.push(Arrow { tail: i - 1, head: h - 1, name: format!("a{}", arrows.len() + 1) });
            }
        }
        if let Some(names) = j.quiver.names {
            if names.len() != arrows.len() {
                return Err(QpError::Parse(format!("{} names for {} arrows", names.len(), arrows.len())));
            }
            for (a, s) in arrows.iter_mut().zip(names) {
                a.name = s;
            }
        }
        let quiver = ArrowQuiver::new(j.quiver.n, arrows)?;
        let mut p = Potential::zero(j.trunc);
        for t in j.terms {
            let c = T::parse(&t.coeff).ok_or_else(|| QpError::Parse(format!("coefficient {:?}", t.coeff)))?;
            if !quiver.is_cycle(&t.cycle) {
                return Err(QpError::NotACycle(t.cycle));
            }
            p.add_term(c, &t.cycle);
        }
        Qp::new(quiver, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn rotation_and_merging() {
        assert_eq!(canonical_rotation(&[2, 0, 1]), vec![0, 1, 2]);
        let p = Potential::from_terms(5, [(r(1), vec![1, 2, 0]), (r(2), vec![0, 1, 2]), (r(-3), vec![2, 0, 1])]);
        assert!(p.is_zero());
    }

    #[test]
    fn derivative_examples() {
        // arrows 0 = alpha, 1 = beta, 2 = gamma; words as written
        let p = Potential::from_terms(6, [(r(1), vec![0, 1, 2])]);
        assert_eq!(p.cyclic_derivative(0), PathPoly::from([(vec![1, 2], r(1))]));
        assert!(Potential::<Rational>::zero(4).cyclic_derivative(0).is_empty());
        let p = Potential::from_terms(6, [(r(1), vec![0, 1, 0, 2])]);
        assert_eq!(p.cyclic_derivative(0), PathPoly::from([(vec![1, 0, 2], r(1)), (vec![2, 0, 1], r(1))]));
    }

    #[test]
    fn truncation_drops_long_cycles() {
        let p = Potential::from_terms(2, [(r(1), vec![0, 1, 2])]);
        assert!(p.is_zero());
    }
}
