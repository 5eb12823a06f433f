//! g-vector fans: simplicial cones spanned by the g-vectors of clusters.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cluster::{enumerate_clusters_to_depth, mutate_gvector, EnumerationStatus, GVector, TropicalSeed};
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GFanError {
    #[error("the zero vector spans no direction")]
    ZeroVector,
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("g-matrix of cluster {history:?} is singular")]
    SingularBasis { history: Vec<usize> },
    #[error("g-vector entries exceed the i64 range after {0} mutations")]
    Overflow(usize),
    #[error("invalid fan: {0}")]
    Invalid(String),
}

/// Cone spanned by linearly independent integer vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cone {
    pub generators: Vec<GVector>,
}

impl Cone {
    pub fn new(mut generators: Vec<GVector>) -> Cone {
        generators.sort();
        Cone { generators }
    }

    pub fn dimension(&self) -> usize {
        rank_of(&self.generators)
    }

    /// Coordinates of `v` in the generators, when they form a basis and `v` lies in their span.
    pub fn coordinates<T: Scalar>(&self, v: &[T]) -> Option<Vec<T>> {
        solve(&self.generators, v)
    }

    pub fn contains<T: Scalar>(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FanStatus {
    Exhausted,
    /// Only the clusters within this many mutations of the initial one were collected.
    Truncated(usize),
}

/// Maximal cones of a g-vector fan with their facet incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFan {
    rank: usize,
    rays: Vec<GVector>,
    /// Sorted ray indices of each maximal cone.
    cones: Vec<Vec<usize>>,
    /// Facet (sorted ray indices) to the maximal cones containing it.
    adjacency: BTreeMap<Vec<usize>, BTreeSet<usize>>,
    status: FanStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Completeness {
    Complete,
    /// `witness` is an integer vector outside every cone.
    Incomplete {
        witness: GVector,
    },
    Unknown,
    /// The cones do not form a simplicial fan of full-dimensional cones.
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Membership<T> {
    /// The cluster reached by `history` (0-based vertices) has `v` in its cone, with these coordinates.
    InCone {
        history: Vec<usize>,
        coordinates: Vec<T>,
    },
    NotFoundWithin(usize),
}

impl<T> Membership<T> {
    pub fn is_in_cone(&self) -> bool {
        matches!(self, Membership::InCone { .. })
    }
}

/// `.fan` JSON; ray indices are 0-based positions in `rays`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanJson {
    pub rays: Vec<GVector>,
    pub cones: Vec<Vec<usize>>,
    pub status: FanStatus,
}

impl GFan {
    /// Fan from maximal cones given by their generators.
    pub fn from_cones(rank: usize, cones: &[Vec<GVector>], status: FanStatus) -> GFan {
        let mut rays: Vec<GVector> = cones.iter().flatten().cloned().collect();
        rays.sort();
        rays.dedup();
        let idx: BTreeMap<&GVector, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let cones: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|r| idx[r]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        GFan::from_indexed(rank, rays.clone(), cones, status)
    }

    fn from_indexed(rank: usize, rays: Vec<GVector>, cones: Vec<Vec<usize>>, status: FanStatus) -> GFan {
        let mut adjacency: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
        for (ci, c) in cones.iter().enumerate() {
            for skip in 0..c.len() {
                let facet: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect();
                adjacency.entry(facet).or_default().insert(ci);
            }
        }
        GFan { rank, rays, cones, adjacency, status }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn status(&self) -> FanStatus {
        self.status
    }

    pub fn rays(&self) -> &[GVector] {
        &self.rays
    }

    pub fn cone_indices(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones.iter().map(|c| Cone::new(c.iter().map(|&r| self.rays[r].clone()).collect())).collect()
    }

    pub fn adjacency(&self) -> &BTreeMap<Vec<usize>, BTreeSet<usize>> {
        &self.adjacency
    }

    /// Pairs of maximal cones sharing a facet.
    pub fn facet_pairs(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .values()
            .filter(|s| s.len() == 2)
            .map(|s| {
                let v: Vec<usize> = s.iter().copied().collect();
                (v[0], v[1])
            })
            .collect()
    }

    /// Determinant of the generator matrix of each maximal cone.
    pub fn determinants(&self) -> Vec<BigInt> {
        self.maximal_cones().iter().map(|c| determinant(&c.generators)).collect()
    }

    /// Set of maximal cones, each as its sorted generators.
    pub fn cone_set(&self) -> BTreeSet<Cone> {
        self.maximal_cones().into_iter().collect()
    }

    pub fn contains<T: Scalar>(&self, v: &[T]) -> bool {
        self.maximal_cones().iter().any(|c| c.contains(v))
    }

    pub fn to_json_value(&self) -> FanJson {
        FanJson { rays: self.rays.clone(), cones: self.cones.clone(), status: self.status }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("fan json")
    }

    pub fn from_json(text: &str) -> Result<GFan, GFanError> {
        let j: FanJson = serde_json::from_str(text).map_err(|e| GFanError::Invalid(e.to_string()))?;
        GFan::try_from(j)
    }
}

impl TryFrom<FanJson> for GFan {
    type Error = GFanError;

    fn try_from(j: FanJson) -> Result<GFan, GFanError> {
        let rank = j.rays.first().map(Vec::len).ok_or_else(|| GFanError::Invalid("no rays".into()))?;
        if j.rays.iter().any(|r| r.len() != rank) {
            return Err(GFanError::Invalid("rays of different lengths".into()));
        }
        let mut cones = Vec::new();
        for c in j.cones {
            if c.iter().any(|&r| r >= j.rays.len()) {
                return Err(GFanError::Invalid(format!("cone {c:?} refers to a missing ray")));
            }
            cones.push(c.iter().map(|&r| j.rays[r].clone()).collect::<Vec<_>>());
        }
        Ok(GFan::from_cones(rank, &cones, j.status))
    }
}

/// Cones of all clusters found by a breadth-first search with at most `budget` clusters.
pub fn build_gfan(q: &Quiver, budget: usize) -> GFan {
    build_gfan_to_depth(q, budget, usize::MAX)
}

/// As [`build_gfan`], stopping after `max_depth` mutations.
pub fn build_gfan_to_depth(q: &Quiver, budget: usize, max_depth: usize) -> GFan {
    let e = enumerate_clusters_to_depth(q, budget, max_depth);
    let status = match e.status {
        EnumerationStatus::Exhausted => FanStatus::Exhausted,
        _ => FanStatus::Truncated(e.clusters.iter().map(|c| c.history.len()).max().unwrap_or(0)),
    };
    let cones: Vec<Vec<GVector>> = e.clusters.iter().map(|c| c.gmatrix.clone()).collect();
    GFan::from_cones(q.n(), &cones, status)
}

/// Facet-pairing test for finite simplicial fans.
pub fn is_complete(f: &GFan) -> Completeness {
    if let FanStatus::Truncated(_) = f.status {
        return Completeness::Unknown;
    }
    let n = f.rank;
    let cones = f.maximal_cones();
    if cones.is_empty() {
        return Completeness::Invalid("no cones".into());
    }
    for c in &cones {
        if c.generators.len() != n || c.dimension() != n {
            return Completeness::Invalid(format!("cone {:?} is not full-dimensional", c.generators));
        }
    }
    if let Some((facet, s)) = f.adjacency.iter().find(|(_, s)| s.len() > 2) {
        return Completeness::Invalid(format!("facet {facet:?} lies in {} cones", s.len()));
    }
    let unmatched: Vec<(&Vec<usize>, usize)> =
        f.adjacency.iter().filter(|(_, s)| s.len() == 1).map(|(k, s)| (k, *s.iter().next().unwrap())).collect();
    if unmatched.is_empty() {
        if facet_connected(f) {
            return Completeness::Complete;
        }
        return Completeness::Invalid("facet graph is disconnected".into());
    }
    let outside = |v: &GVector| {
        let r: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
        !cones.iter().any(|c| c.contains(&r))
    };
    let minus_sum: GVector = (0..n).map(|i| -f.rays.iter().map(|r| r[i]).sum::<i64>()).collect();
    if minus_sum.iter().any(|&x| x != 0) && outside(&minus_sum) {
        return Completeness::Incomplete { witness: minus_sum };
    }
    for (facet, cone) in unmatched {
        let rays: Vec<GVector> = facet.iter().map(|&r| f.rays[r].clone()).collect();
        let apex = f.cones[cone].iter().find(|r| !facet.contains(r)).map(|&r| &f.rays[r]).expect("simplicial cone");
        let mut normal = facet_normal(&rays, n);
        if dot(&normal, apex) > 0 {
            normal.iter_mut().for_each(|x| *x = -*x);
        }
        let sum: GVector = (0..n).map(|i| rays.iter().map(|r| r[i]).sum()).collect();
        for scale in (0..24).map(|e| 1i64 << e) {
            let w: GVector = (0..n).map(|i| scale * sum[i] + normal[i]).collect();
            if outside(&w) {
                return Completeness::Incomplete { witness: w };
            }
        }
    }
    Completeness::Invalid("unmatched facet without an exterior point near it".into())
}

fn facet_connected(f: &GFan) -> bool {
    let mut seen = vec![false; f.cones.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut neighbours = vec![Vec::new(); f.cones.len()];
    for (a, b) in f.facet_pairs() {
        neighbours[a].push(b);
        neighbours[b].push(a);
    }
    while let Some(c) = queue.pop_front() {
        for &d in &neighbours[c] {
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Greedy walk from the initial cluster towards `v`: while some coordinate of
/// `v` in the current g-vectors is negative, mutate at the first such vertex.
pub fn contains_point<T: Scalar>(q: &Quiver, v: &[T], depth: usize) -> Result<Membership<T>, GFanError> {
    let n = q.n();
    if v.len() != n {
        return Err(GFanError::DimensionMismatch { expected: n, got: v.len() });
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(GFanError::ZeroVector);
    }
    let mut seed = TropicalSeed::initial(q);
    let mut history = Vec::new();
    loop {
        let coords = solve(seed.gvectors(), v).ok_or_else(|| GFanError::SingularBasis { history: history.clone() })?;
        match coords.iter().position(|c| c.is_negative()) {
            None => return Ok(Membership::InCone { history, coordinates: coords }),
            Some(_) if history.len() == depth => return Ok(Membership::NotFoundWithin(depth)),
            Some(k) => {
                seed = seed.checked_mutate(k).ok_or(GFanError::Overflow(history.len()))?;
                history.push(k);
            }
        }
    }
}

/// Fraction of `samples` integer vectors drawn uniformly from `[-1000, 1000]^n \ {0}`
/// that [`contains_point`] places in a cone within `depth` mutations.
pub fn density_estimate(q: &Quiver, samples: usize, depth: usize, rng_seed: u64) -> Result<f64, GFanError> {
    let n = q.n();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let points: Vec<GVector> = (0..samples)
        .map(|_| loop {
            let p: GVector = (0..n).map(|_| rng.gen_range(-1000..=1000)).collect();
            if p.iter().any(|&x| x != 0) {
                break p;
            }
        })
        .collect();
    let hits = points
        .par_iter()
        .map(|p| {
            let r: Vec<Rational> = p.iter().map(|&x| Rational::from_integer(x.into())).collect();
            contains_point(q, &r, depth).map(|m| m.is_in_cone() as usize)
        })
        .collect::<Result<Vec<usize>, GFanError>>()?;
    Ok(hits.iter().sum::<usize>() as f64 / samples.max(1) as f64)
}

/// `true` iff no row has both a positive and a negative entry.
pub fn check_sign_coherence(gmatrix: &[GVector]) -> bool {
    let rows = gmatrix.first().map_or(0, Vec::len);
    (0..rows).all(|i| {
        let pos = gmatrix.iter().any(|g| g[i] > 0);
        let neg = gmatrix.iter().any(|g| g[i] < 0);
        !(pos && neg)
    })
}

/// Applies the transition rule for mutation of the initial seed at `k` to every ray.
pub fn fan_transition(f: &GFan, k: usize, b: &Quiver) -> GFan {
    let cones: Vec<Vec<GVector>> =
        f.maximal_cones().iter().map(|c| c.generators.iter().map(|g| mutate_gvector(g, k, b)).collect()).collect();
    GFan::from_cones(f.rank, &cones, f.status)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integer vector orthogonal to the `n - 1` given vectors (generalized cross product).
fn facet_normal(rays: &[GVector], n: usize) -> GVector {
    (0..n)
        .map(|i| {
            let minor: Vec<GVector> =
                rays.iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()).collect();
            let d = determinant(&minor);
            let d: i64 = d.try_into().expect("normal fits i64");
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Determinant of the square matrix with the given columns (Bareiss elimination).
pub fn determinant(cols: &[GVector]) -> BigInt {
    let n = cols.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| cols.iter().map(|c| BigInt::from(c[i])).collect()).collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn rank_of(vectors: &[GVector]) -> usize {
    let Some(n) = vectors.first().map(Vec::len) else { return 0 };
    let mut rows: Vec<Vec<Rational>> =
        vectors.iter().map(|v| v.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                for c in col..n {
                    let t = &f * &rows[rank][c];
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `sum_j x_j cols[j] = v` for square, invertible `cols`.
fn solve<T: Scalar>(cols: &[GVector], v: &[T]) -> Option<Vec<T>> {
    let n = v.len();
    if cols.len() != n || cols.iter().any(|c| c.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<T>> =
        (0..n).map(|i| cols.iter().map(|c| T::from_i64(c[i])).chain(std::iter::once(v[i].clone())).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone() / a[col][col].clone();
                for c in col..=n {
                    let t = f.clone() * a[col][c].clone();
                    a[r][c] = a[r][c].clone() - t;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n].clone() / a[i][i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[vec![1, 0], vec![0, 1]]), BigInt::from(1));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]), BigInt::from(18));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn rank_one_fan() {
        let f = build_gfan(&catalog::a(1), 10);
        assert_eq!(f.rays(), &[vec![-1], vec![1]]);
        assert_eq!(is_complete(&f), Completeness::Complete);
    }

    #[test]
    fn positive_quadrant_is_incomplete() {
        let f = GFan::from_cones(2, &[vec![vec![1, 0], vec![0, 1]]], FanStatus::Exhausted);
        assert_eq!(is_complete(&f), Completeness::Incomplete { witness: vec![-1, -1] });
    }

    #[test]
    fn facet_push_witness() {
        // two cones covering the upper half plane: -(sum of rays) lies in the fan
        let f =
            GFan::from_cones(2, &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![-1, 0]]], FanStatus::Exhausted);
        match is_complete(&f) {
            Completeness::Incomplete { witness } => {
                assert!(!f.contains(&witness.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>()))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sign_coherence_examples() {
        assert!(check_sign_coherence(&[vec![1, 0], vec![0, 1]]));
        // columns (1, 0) and (-1, 1): row 0 is mixed
        assert!(!check_sign_coherence(&[vec![1, 0], vec![-1, 1]]));
    }

    #[test]
    fn json_round_trip() {
        let f = build_gfan(&catalog::a(2), 100);
        assert_eq!(GFan::from_json(&f.to_json()).unwrap(), f);
    }
}
