use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{canonical_key, canonicalize, Quiver};

/// Arrow multiplicity at which a connected quiver with at least three
/// vertices is known to be of infinite mutation type.
pub const DEFAULT_MAX_WEIGHT: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClassStatus {
    Exhausted,
    BudgetExceeded,
    /// A quiver with an arrow bundle of the given weight between the given
    /// (0-based, canonical) vertices was reached.
    MultiplicityBlowup {
        pair: (usize, usize),
        weight: u32,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationClassResult {
    /// Canonical representatives in discovery (breadth-first) order.
    pub representatives: Vec<Quiver>,
    pub status: ClassStatus,
    /// `(from, vertex, to)`: mutating representative `from` at canonical vertex
    /// `vertex` (0-based) gives a quiver isomorphic to representative `to`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl MutationClassResult {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn contains(&self, q: &Quiver) -> bool {
        let key = canonical_key(q);
        self.representatives.iter().any(|r| canonical_key(r) == key)
    }
}

fn blowup(q: &Quiver, max_weight: u32) -> Option<ClassStatus> {
    if q.n() < 3 {
        return None;
    }
    q.arrows()
        .into_iter()
        .find(|&(_, _, m)| m >= max_weight)
        .map(|(i, j, m)| ClassStatus::MultiplicityBlowup { pair: (i, j), weight: m })
}

/// Breadth-first closure of `q` under mutation, deduplicated by canonical form.
///
/// Stops early with [`ClassStatus::MultiplicityBlowup`] as soon as a quiver
/// with `n >= 3` and an arrow bundle of weight `>= max_weight` appears, and
/// with [`ClassStatus::BudgetExceeded`] once more than `max_quivers`
/// representatives would be needed. Frontier expansion runs in parallel; the
/// merge is sequential, so the output does not depend on scheduling.
pub fn mutation_class(q: &Quiver, max_quivers: usize, max_weight: u32) -> MutationClassResult {
    let max_quivers = max_quivers.max(1);
    let start = canonicalize(q).quiver;
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(canonical_key(&start), 0);
    let mut reps = vec![start.clone()];
    let mut edges = Vec::new();
    if let Some(status) = blowup(&start, max_weight) {
        return MutationClassResult { representatives: reps, status, edges };
    }
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let expanded: Vec<Vec<(usize, usize, Quiver, Vec<i64>)>> = frontier
            .par_iter()
            .map(|&r| {
                let q = &reps[r];
                (0..q.n())
                    .map(|k| {
                        let m = q.mutate(k).expect("vertex in range");
                        let c = canonicalize(&m).quiver;
                        let key = canonical_key(&c);
                        (r, k, c, key)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (r, k, c, key) in expanded.into_iter().flatten() {
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if let Some(status) = blowup(&c, max_weight) {
                        reps.push(c);
                        edges.push((r, k, reps.len() - 1));
                        return MutationClassResult { representatives: reps, status, edges };
                    }
                    if reps.len() >= max_quivers {
                        return MutationClassResult {
                            representatives: reps,
                            status: ClassStatus::BudgetExceeded,
                            edges,
                        };
                    }
                    reps.push(c);
                    let t = reps.len() - 1;
                    index.insert(key, t);
                    next.push(t);
                    t
                }
            };
            edges.push((r, k, target));
        }
        frontier = next;
    }
    MutationClassResult { representatives: reps, status: ClassStatus::Exhausted, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_class_is_a_single_quiver() {
        let k3 = Quiver::from_arrows(2, &[(0, 1, 3)]).unwrap();
        let r = mutation_class(&k3, 100, DEFAULT_MAX_WEIGHT);
        assert_eq!(r.status, ClassStatus::Exhausted);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn budget_is_respected() {
        let a4 = Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let r = mutation_class(&a4, 2, DEFAULT_MAX_WEIGHT);
        assert_eq!(r.status, ClassStatus::BudgetExceeded);
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn wild_rank_three_blows_up() {
        let q = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 1)]).unwrap();
        let r = mutation_class(&q, 1000, DEFAULT_MAX_WEIGHT);
        assert!(matches!(r.status, ClassStatus::MultiplicityBlowup { weight, .. } if weight >= 3));
    }
}
