use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::gvector::{GVector, TropicalSeed};
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnumerationStatus {
    Exhausted,
    /// More than the allowed number of clusters exist.
    BudgetExceeded,
    /// Every cluster within this many mutations was found, and more lie beyond.
    DepthReached(usize),
    /// A g-vector entry left the range of `i64` at this depth.
    Overflow(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterRecord {
    /// g-vectors of the cluster variables, in the order of the seed's vertices.
    pub gmatrix: Vec<GVector>,
    /// A shortest mutation sequence (0-based) from the initial seed.
    pub history: Vec<usize>,
    #[serde(skip)]
    pub seed: TropicalSeed,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterEnumeration {
    pub rank: usize,
    pub clusters: Vec<ClusterRecord>,
    /// `(i, k, j)`: mutating cluster `i` at its vertex `k` gives cluster `j`.
    pub edges: Vec<(usize, usize, usize)>,
    pub status: EnumerationStatus,
}

impl ClusterEnumeration {
    /// Distinct g-vectors of cluster variables, sorted.
    pub fn variables(&self) -> Vec<GVector> {
        let mut v: Vec<GVector> = self.clusters.iter().flat_map(|c| c.gmatrix.iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Breadth-first search over clusters, identified by their sets of g-vectors.
pub fn enumerate_clusters(q: &Quiver, budget: usize) -> ClusterEnumeration {
    enumerate_clusters_to_depth(q, budget, usize::MAX)
}

/// As [`enumerate_clusters`], but never going further than `max_depth` mutations.
pub fn enumerate_clusters_to_depth(q: &Quiver, budget: usize, max_depth: usize) -> ClusterEnumeration {
    let n = q.n();
    let start = TropicalSeed::initial(q);
    let mut index: HashMap<Vec<GVector>, usize> = HashMap::new();
    index.insert(start.key(), 0);
    let mut clusters = vec![ClusterRecord { gmatrix: start.gvectors().to_vec(), history: vec![], seed: start }];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == max_depth {
            return ClusterEnumeration { rank: n, clusters, edges, status: EnumerationStatus::DepthReached(depth) };
        }
        let expanded: Vec<(usize, usize, Option<TropicalSeed>)> = frontier
            .par_iter()
            .flat_map_iter(|&c| {
                let seed = &clusters[c].seed;
                (0..n).map(move |k| (c, k, seed.checked_mutate(k)))
            })
            .collect();
        let mut next = Vec::new();
        for (c, k, seed) in expanded {
            let Some(seed) = seed else {
                return ClusterEnumeration { rank: n, clusters, edges, status: EnumerationStatus::Overflow(depth) };
            };
            let key = seed.key();
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if clusters.len() >= budget {
                        return ClusterEnumeration {
                            rank: n,
                            clusters,
                            edges,
                            status: EnumerationStatus::BudgetExceeded,
                        };
                    }
                    let mut history = clusters[c].history.clone();
                    history.push(k);
                    clusters.push(ClusterRecord { gmatrix: seed.gvectors().to_vec(), history, seed });
                    let t = clusters.len() - 1;
                    index.insert(key, t);
                    next.push(t);
                    t
                }
            };
            edges.push((c, k, target));
        }
        frontier = next;
        depth += 1;
    }
    ClusterEnumeration { rank: n, clusters, edges, status: EnumerationStatus::Exhausted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::catalog;

    #[test]
    fn small_counts() {
        let e = enumerate_clusters(&catalog::a(2), 100);
        assert_eq!(e.status, EnumerationStatus::Exhausted);
        assert_eq!(e.clusters.len(), 5);
        assert_eq!(e.variables().len(), 5);
        let e = enumerate_clusters(&catalog::a(3), 100);
        assert_eq!((e.clusters.len(), e.variables().len()), (14, 9));
    }

    #[test]
    fn kronecker_never_exhausts() {
        for budget in [1, 10, 200] {
            assert_eq!(enumerate_clusters(&catalog::kronecker(2), budget).status, EnumerationStatus::BudgetExceeded);
        }
        let e = enumerate_clusters_to_depth(&catalog::kronecker(2), 1000, 5);
        assert_eq!(e.status, EnumerationStatus::DepthReached(5));
        assert_eq!(e.clusters.len(), 11);
    }
}
