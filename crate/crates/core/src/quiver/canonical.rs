//! Canonical labelling of quivers.
//!
//! The canonical form is the minimum, over all vertex orders compatible with
//! the refined colour partition, of the upper triangle of `B` read column by
//! column. Colours are isomorphism invariant, so two quivers are isomorphic
//! iff their canonical forms agree.

use super::Quiver;

/// A quiver relabelled into canonical position, plus the relabelling used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub quiver: Quiver,
    /// `perm[v]` is the canonical position of original vertex `v`.
    pub perm: Vec<usize>,
}

pub fn canonicalize(q: &Quiver) -> CanonicalForm {
    let n = q.n();
    let initial = refine(q, vec![(0..n).collect()]);
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    search(q, initial, &mut best);
    let (_, order) = best.expect("at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    CanonicalForm { quiver: q.permute(&perm), perm }
}

/// The canonical key alone; equal keys iff isomorphic quivers.
pub fn canonical_key(q: &Quiver) -> Vec<i64> {
    let c = canonicalize(q);
    let mut key = vec![c.quiver.n() as i64];
    key.extend(column_key(&c.quiver, &(0..q.n()).collect::<Vec<_>>(), q.n()));
    key
}

/// Upper-triangle entries of the first `cols` columns when vertices are laid
/// out in `order`.
fn column_key(q: &Quiver, order: &[usize], cols: usize) -> Vec<i64> {
    let mut key = Vec::with_capacity(cols * cols.saturating_sub(1) / 2);
    for j in 0..cols {
        for i in 0..j {
            key.push(q.b(order[i], order[j]));
        }
    }
    key
}

fn search(q: &Quiver, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<i64>, Vec<usize>)>) {
    let fixed = cells.iter().take_while(|c| c.len() == 1).count();
    if let Some((best_key, _)) = best.as_ref() {
        let prefix: Vec<usize> = cells[..fixed].iter().map(|c| c[0]).collect();
        let partial = column_key(q, &prefix, fixed);
        if partial.as_slice() > &best_key[..partial.len()] {
            return;
        }
    }
    if fixed == cells.len() {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let key = column_key(q, &order, order.len());
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            *best = Some((key, order));
        }
        return;
    }
    let target = fixed + cells[fixed..].iter().position(|c| c.len() > 1).unwrap();
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        // twins are swapped by an automorphism, so one branch covers both
        if tried.iter().any(|&u| are_twins(q, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        search(q, refine(q, next), best);
    }
}

fn are_twins(q: &Quiver, u: usize, v: usize) -> bool {
    q.b(u, v) == 0 && (0..q.n()).all(|w| w == u || w == v || q.b(u, w) == q.b(v, w))
}

/// Splits cells by neighbourhood signatures until the partition is equitable.
/// Sub-cells are ordered by signature, so the result is label independent.
fn refine(q: &Quiver, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = q.n();
    loop {
        let mut cell_of = vec![0usize; n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let signature = |v: usize| {
            let mut s: Vec<(usize, i64)> =
                (0..n).filter(|&w| q.b(v, w) != 0).map(|w| (cell_of[w], q.b(v, w))).collect();
            s.sort_unstable();
            s
        };
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut tagged: Vec<(Vec<(usize, i64)>, usize)> = cell.iter().map(|&v| (signature(v), v)).collect();
            tagged.sort();
            let mut start = 0;
            for i in 1..=tagged.len() {
                if i == tagged.len() || tagged[i].0 != tagged[start].0 {
                    next.push(tagged[start..i].iter().map(|t| t.1).collect());
                    start = i;
                }
            }
        }
        let split = next.len() != cells.len();
        cells = next;
        if !split {
            return cells;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_a3_orientations() {
        let fwd = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let back = Quiver::from_arrows(3, &[(2, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(canonicalize(&fwd).quiver, canonicalize(&back).quiver);
        let sink = Quiver::from_arrows(3, &[(0, 1, 1), (2, 1, 1)]).unwrap();
        let source = Quiver::from_arrows(3, &[(1, 0, 1), (1, 2, 1)]).unwrap();
        assert_ne!(canonicalize(&sink).quiver, canonicalize(&source).quiver);
    }

    #[test]
    fn idempotent_and_consistent_permutation() {
        let q = Quiver::from_arrows(4, &[(0, 1, 2), (1, 2, 1), (2, 0, 1), (3, 2, 1)]).unwrap();
        let c = canonicalize(&q);
        assert_eq!(q.permute(&c.perm), c.quiver);
        assert_eq!(canonicalize(&c.quiver).quiver, c.quiver);
    }

    #[test]
    fn symmetric_quivers_stay_cheap() {
        let q = Quiver::empty(12);
        assert_eq!(canonicalize(&q).quiver, q);
    }
}
