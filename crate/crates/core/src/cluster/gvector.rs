//! The `Z^n`-grading with `deg x_i = e_i` and `deg y_j = -sum_i b_ij e_i`,
//! and the g-vector recurrences it induces.

use super::laurent::LaurentPoly;
use super::seed::ClusterError;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

pub type GVector = Vec<i64>;

/// Degree of `y_j` (0-based) for the initial exchange matrix `b0`.
pub fn y_degree(b0: &Quiver, j: usize) -> GVector {
    (0..b0.n()).map(|i| -b0.b(i, j)).collect()
}

/// Common degree of all terms of `p`.
pub fn g_vector_of<T: Scalar>(p: &LaurentPoly<T>, b0: &Quiver) -> Result<GVector, ClusterError> {
    let n = b0.n();
    let ydeg: Vec<GVector> = (0..n).map(|j| y_degree(b0, j)).collect();
    let mut found: Option<GVector> = None;
    for (e, _) in p.terms() {
        let mut d: GVector = e[..n].iter().map(|&v| v as i64).collect();
        for (j, yd) in ydeg.iter().enumerate() {
            let k = e[n + j] as i64;
            if k != 0 {
                for i in 0..n {
                    d[i] += k * yd[i];
                }
            }
        }
        match &found {
            None => found = Some(d),
            Some(g) if *g != d => return Err(ClusterError::NotHomogeneous(g.clone(), d)),
            _ => {}
        }
    }
    found.ok_or(ClusterError::ZeroPolynomial)
}

/// How g-vectors with respect to an initial seed with exchange matrix `b`
/// change when the initial seed is mutated at `k`:
/// `g'_k = -g_k`, `g'_i = g_i + [b_ik]_+ g_k - b_ik min(g_k, 0)`.
pub fn mutate_gvector(g: &[i64], k: usize, b: &Quiver) -> GVector {
    let gk = g[k];
    (0..g.len()).map(|i| if i == k { -gk } else { g[i] + b.b(i, k).max(0) * gk - b.b(i, k) * gk.min(0) }).collect()
}

/// Seed data without Laurent polynomials: the framed quiver and the g-vectors
/// of the current cluster, updated through the degree of the exchange monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalSeed {
    initial: Quiver,
    framed: Quiver,
    /// `g[i]` is the g-vector of the `i`-th cluster variable.
    g: Vec<GVector>,
}

impl TropicalSeed {
    pub fn initial(q: &Quiver) -> Self {
        let n = q.n();
        let g = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        TropicalSeed { initial: q.clone(), framed: q.framed(), g }
    }

    pub fn rank(&self) -> usize {
        self.initial.n()
    }

    pub fn framed_quiver(&self) -> &Quiver {
        &self.framed
    }

    pub fn quiver(&self) -> Quiver {
        self.framed.restrict(&(0..self.rank()).collect::<Vec<_>>()).expect("nonempty")
    }

    pub fn gvectors(&self) -> &[GVector] {
        &self.g
    }

    /// `c`-vector of vertex `k`: the arrows from `k` to the frozen vertices.
    pub fn c_vector(&self, k: usize) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| self.framed.b(n + j, k)).collect()
    }

    /// `x'_k x_k` equals the monomial over the arrows into `k`, so
    /// `g'_k = deg(prod_{j -> k}) - g_k`.
    ///
    /// Panics if an entry leaves the range of `i64`; see [`TropicalSeed::checked_mutate`].
    pub fn mutate(&self, k: usize) -> TropicalSeed {
        self.checked_mutate(k).expect("g-vector entry out of i64 range")
    }

    /// As [`TropicalSeed::mutate`], or `None` on integer overflow.
    pub fn checked_mutate(&self, k: usize) -> Option<TropicalSeed> {
        let n = self.rank();
        let mut d = vec![0i64; n];
        for j in 0..2 * n {
            let m = self.framed.arrows_between(j, k) as i64;
            if m == 0 {
                continue;
            }
            let dj = if j < n { self.g[j].clone() } else { y_degree(&self.initial, j - n) };
            for i in 0..n {
                d[i] = d[i].checked_add(m.checked_mul(dj[i])?)?;
            }
        }
        let mut g = self.g.clone();
        g[k] = d.iter().zip(&self.g[k]).map(|(a, b)| a.checked_sub(*b)).collect::<Option<_>>()?;
        Some(TropicalSeed { initial: self.initial.clone(), framed: self.framed.mutate(k).expect("vertex in range"), g })
    }

    pub fn mutate_path(&self, path: &[usize]) -> TropicalSeed {
        path.iter().fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Sorted list of g-vectors; identifies the cluster.
    pub fn key(&self) -> Vec<GVector> {
        let mut k = self.g.clone();
        k.sort();
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::Seed;
    use crate::Rational;

    #[test]
    fn a2_degrees() {
        let a2 = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        assert_eq!(y_degree(&a2, 0), vec![0, -1]);
        let s: Seed<Rational> = Seed::initial(&a2);
        assert_eq!(g_vector_of(&s.cluster()[0], &a2).unwrap(), vec![1, 0]);
        let m = s.mutate(0).unwrap();
        assert_eq!(g_vector_of(&m.cluster()[0], &a2).unwrap(), vec![-1, 0]);
    }

    #[test]
    fn rank_one() {
        let a1 = Quiver::empty(1);
        let s: Seed<Rational> = Seed::initial(&a1).mutate(0).unwrap();
        assert_eq!(g_vector_of(&s.cluster()[0], &a1).unwrap(), vec![-1]);
    }

    #[test]
    fn inhomogeneous_is_rejected() {
        let a2 = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let p = LaurentPoly::<Rational>::one(2).add(&LaurentPoly::x(2, 0));
        assert!(matches!(g_vector_of(&p, &a2), Err(ClusterError::NotHomogeneous(..))));
    }

    #[test]
    fn transition_rule_basics() {
        let a3 = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(mutate_gvector(&[0, 2, -1], 0, &a3), vec![0, 2, -1]);
        // g = e_k gives -e_k + sum_i [b_ik]_+ e_i
        assert_eq!(mutate_gvector(&[0, 1, 0], 1, &a3), vec![0, -1, 1]);
    }

    #[test]
    fn tropical_matches_laurent_in_a2() {
        let a2 = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let mut s: Seed<Rational> = Seed::initial(&a2);
        let mut t = TropicalSeed::initial(&a2);
        for step in 0..10 {
            let k = step % 2;
            s = s.mutate(k).unwrap();
            t = t.mutate(k);
            for i in 0..2 {
                assert_eq!(g_vector_of(&s.cluster()[i], &a2).unwrap(), t.gvectors()[i]);
            }
        }
        // the pentagon closes up after 5 steps up to swapping
        assert_eq!(t.key(), TropicalSeed::initial(&a2).key());
    }
}
