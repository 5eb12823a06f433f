use serde::{Deserialize, Serialize};

use super::laurent::{LaurentError, LaurentJson, LaurentPoly};
use crate::quiver::{Quiver, QuiverError, QuiverJson};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClusterError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("variable is not homogeneous: terms of degree {0:?} and {1:?}")]
    NotHomogeneous(Vec<i64>, Vec<i64>),
    #[error("zero has no degree")]
    ZeroPolynomial,
    #[error("arrows between frozen vertices {0} and {1}")]
    FrozenArrows(usize, usize),
}

/// A seed with principal coefficients.
///
/// `framed` has the mutable vertices `0..n` and frozen vertices `n..2n`; the
/// cluster is expressed in the initial variables `x_1..x_n` and coefficients
/// `y_1..y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed<T: Scalar> {
    initial: Quiver,
    framed: Quiver,
    cluster: Vec<LaurentPoly<T>>,
    history: Vec<usize>,
}

impl<T: Scalar> Seed<T> {
    pub fn initial(q: &Quiver) -> Self {
        let n = q.n();
        Seed {
            initial: q.clone(),
            framed: q.framed(),
            cluster: (0..n).map(|i| LaurentPoly::x(n, i)).collect(),
            history: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.initial.n()
    }

    pub fn initial_quiver(&self) -> &Quiver {
        &self.initial
    }

    pub fn framed_quiver(&self) -> &Quiver {
        &self.framed
    }

    /// The mutable part of the framed quiver.
    pub fn quiver(&self) -> Quiver {
        self.framed.restrict(&(0..self.rank()).collect::<Vec<_>>()).expect("nonempty")
    }

    pub fn cluster(&self) -> &[LaurentPoly<T>] {
        &self.cluster
    }

    /// Mutation sequence from the initial seed, with immediate repeats cancelled.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// Seed mutation at the mutable vertex `k` (0-based):
    /// `x'_k = (prod_{j -> k} x_j + prod_{k -> j} x_j) / x_k`, where a frozen
    /// vertex `j' = n + j` contributes `y_j`.
    pub fn mutate(&self, k: usize) -> Result<Seed<T>, ClusterError> {
        let n = self.rank();
        if k >= n {
            return Err(QuiverError::InvalidVertex { vertex: k + 1, n }.into());
        }
        let value = |j: usize| if j < n { self.cluster[j].clone() } else { LaurentPoly::y(n, j - n) };
        let mut incoming = LaurentPoly::one(n);
        let mut outgoing = LaurentPoly::one(n);
        for j in 0..2 * n {
            let into_k = self.framed.arrows_between(j, k);
            if into_k > 0 {
                incoming = incoming.mul(&value(j).pow(into_k));
            }
            let out_of_k = self.framed.arrows_between(k, j);
            if out_of_k > 0 {
                outgoing = outgoing.mul(&value(j).pow(out_of_k));
            }
        }
        let fresh = incoming.add(&outgoing).div_exact(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = fresh;
        let mut history = self.history.clone();
        if history.last() == Some(&k) {
            history.pop();
        } else {
            history.push(k);
        }
        Ok(Seed { initial: self.initial.clone(), framed: self.framed.mutate(k)?, cluster, history })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed<T>, ClusterError> {
        path.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Pairs of frozen vertices joined by arrows (none arise from mutating at mutable vertices).
    pub fn frozen_arrows(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in n..2 * n {
            for j in i + 1..2 * n {
                if self.framed.b(i, j) != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json_value(&self) -> SeedJson {
        SeedJson {
            quiver: self.initial.to_json_value(),
            framed: self.framed.b_matrix(),
            history: self.history.iter().map(|k| k + 1).collect(),
            cluster: self.cluster.iter().map(|p| p.to_json_value()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("seed json")
    }

    /// Rebuilds a seed from JSON and checks it against a replay of its history.
    pub fn from_json(text: &str) -> Result<Seed<T>, ClusterError> {
        let j: SeedJson = serde_json::from_str(text).map_err(|e| QuiverError::Parse(e.to_string()))?;
        let q = Quiver::try_from(j.quiver)?;
        let path: Vec<usize> = j
            .history
            .iter()
            .map(|&k| k.checked_sub(1).ok_or_else(|| QuiverError::Parse("history is 1-based".into())))
            .collect::<Result<_, _>>()?;
        let seed = Seed::initial(&q).mutate_path(&path)?;
        let cluster: Vec<LaurentPoly<T>> =
            j.cluster.iter().map(LaurentPoly::from_json_value).collect::<Result<_, _>>()?;
        if cluster != seed.cluster || j.framed != seed.framed.b_matrix() {
            return Err(QuiverError::Parse("seed data does not match its history".into()).into());
        }
        Ok(seed)
    }
}

pub fn initial_seed<T: Scalar>(q: &Quiver) -> Seed<T> {
    Seed::initial(q)
}

pub fn mutate_seed<T: Scalar>(s: &Seed<T>, k: usize) -> Result<Seed<T>, ClusterError> {
    s.mutate(k)
}

/// `.seed` JSON. Vertex indices in `history` are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeedJson {
    pub quiver: QuiverJson,
    pub framed: Vec<Vec<i64>>,
    pub history: Vec<usize>,
    pub cluster: Vec<LaurentJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rank_one_and_two_examples() {
        let a1 = Quiver::empty(1);
        let s: Seed<Rational> = Seed::initial(&a1);
        assert_eq!(s.framed_quiver().arrows(), vec![(0, 1, 1)]);
        assert_eq!(s.mutate(0).unwrap().cluster()[0].to_string(), "(1 + y1)/x1");

        let a2 = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let s: Seed<Rational> = Seed::initial(&a2);
        assert_eq!(s.mutate(0).unwrap().cluster()[0].to_string(), "(1 + x2*y1)/x1");
    }

    #[test]
    fn double_mutation_is_identity() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let s: Seed<Rational> = Seed::initial(&q).mutate_path(&[0, 2, 1]).unwrap();
        assert_eq!(s.mutate(1).unwrap().mutate(1).unwrap(), s);
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let s: Seed<Rational> = Seed::initial(&q).mutate_path(&[0, 1]).unwrap();
        assert_eq!(Seed::<Rational>::from_json(&s.to_json()).unwrap(), s);
    }
}
