use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{add_to, canonical_rotation, Arrow, ArrowQuiver, PathPoly, Potential, Qp, QpError};
use crate::scalar::Scalar;

/// Order in which the 2-cycle arrow pairs are eliminated by [`reduce`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReductionOrder {
    #[default]
    Lex,
    ReverseLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Nondegeneracy {
    NoTwoCyclesUpTo(usize),
    /// Mutating along this sequence (0-based vertices) produced a 2-cycle.
    TwoCycleAt(Vec<usize>),
}

/// Premutation at `k`: composite arrows `[ba]` for paths `a: i -> k`, `b: k -> j`,
/// starred arrows reversing those at `k`, and `W~ = [W] + sum [ba] a* b*`.
///
/// Arrow ids are kept (the arrows at `k` are replaced by their stars in place)
/// and composites are appended in the order of `(a, b)`.
pub fn premutate<T: Scalar>(qp: &Qp<T>, k: usize) -> Result<Qp<T>, QpError> {
    let q = &qp.quiver;
    if k >= q.n {
        return Err(QpError::InvalidVertex(k));
    }
    if q.two_cycles().iter().any(|&(i, j)| i == k || j == k) {
        return Err(QpError::VertexOnTwoCycle(k));
    }
    let into: Vec<usize> = (0..q.arrows.len()).filter(|&a| q.arrows[a].head == k).collect();
    let out: Vec<usize> = (0..q.arrows.len()).filter(|&b| q.arrows[b].tail == k).collect();
    let mut arrows = q.arrows.clone();
    for &a in &into {
        let old = &q.arrows[a];
        arrows[a] = Arrow { tail: k, head: old.tail, name: format!("{}*", old.name) };
    }
    for &b in &out {
        let old = &q.arrows[b];
        arrows[b] = Arrow { tail: old.head, head: k, name: format!("{}*", old.name) };
    }
    let mut composite = HashMap::new();
    for &a in &into {
        for &b in &out {
            composite.insert((a, b), arrows.len());
            arrows.push(Arrow {
                tail: q.arrows[a].tail,
                head: q.arrows[b].head,
                name: format!("[{}{}]", q.arrows[b].name, q.arrows[a].name),
            });
        }
    }
    let mut w = Potential::zero(qp.potential.trunc);
    for (word, c) in &qp.potential.terms {
        let start = (0..word.len()).find(|&s| q.arrows[word[s]].tail != k).ok_or(QpError::Loop(k))?;
        let rotated: Vec<usize> = word[start..].iter().chain(&word[..start]).copied().collect();
        let mut new_word = Vec::with_capacity(rotated.len());
        let mut i = 0;
        while i < rotated.len() {
            let x = rotated[i];
            if q.arrows[x].head == k {
                new_word.push(composite[&(x, rotated[i + 1])]);
                i += 2;
            } else {
                new_word.push(x);
                i += 1;
            }
        }
        w.add_term(c.clone(), &new_word);
    }
    for (&(a, b), &ba) in &composite {
        w.add_term(T::one(), &[ba, b, a]);
    }
    Ok(Qp { quiver: ArrowQuiver { n: q.n, arrows }, potential: w })
}

pub fn reduce<T: Scalar>(qp: &Qp<T>) -> Result<Qp<T>, QpError> {
    reduce_with_order(qp, ReductionOrder::Lex)
}

/// Splits off the trivial part: the quadratic terms are brought to the form
/// `sum a_p b_p` by a linear change of arrows, then each pair `(a, b)` is
/// removed by the substitutions `a -> a - U_b`, `b -> b - U_a` degree by degree
/// up to the working precision.
pub fn reduce_with_order<T: Scalar>(qp: &Qp<T>, order: ReductionOrder) -> Result<Qp<T>, QpError> {
    let q = &qp.quiver;
    let trunc = qp.potential.trunc;
    let mut w = qp.potential.clone();
    let mut pairs = Vec::new();
    for i in 0..q.n {
        for j in i + 1..q.n {
            let fwd: Vec<usize> =
                (0..q.arrows.len()).filter(|&a| q.arrows[a].tail == i && q.arrows[a].head == j).collect();
            let back: Vec<usize> =
                (0..q.arrows.len()).filter(|&a| q.arrows[a].tail == j && q.arrows[a].head == i).collect();
            if fwd.is_empty() || back.is_empty() {
                continue;
            }
            let (subs, found) = diagonalize(&w, &fwd, &back, order);
            if !found.is_empty() {
                w = w.substitute(&subs);
                pairs.extend(found);
            }
        }
    }
    pairs.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
    if order == ReductionOrder::ReverseLex {
        pairs.reverse();
    }
    let mut removed = HashSet::new();
    for &(a, b) in &pairs {
        let quad = canonical_rotation(&[a, b]);
        let c = w.terms.get(&quad).cloned().ok_or(QpError::PrecisionExhausted(2))?;
        for d in 3..=trunc {
            let mut u_a = PathPoly::new();
            let mut u_b = PathPoly::new();
            for (word, ct) in w.terms.iter().filter(|(x, _)| x.len() == d) {
                let coeff = ct.clone() / c.clone();
                if let Some(p) = word.iter().position(|&x| x == b) {
                    add_to(&mut u_b, word[p + 1..].iter().chain(&word[..p]).copied().collect(), coeff);
                } else if let Some(p) = word.iter().position(|&x| x == a) {
                    add_to(&mut u_a, word[p + 1..].iter().chain(&word[..p]).copied().collect(), coeff);
                }
            }
            if u_a.is_empty() && u_b.is_empty() {
                continue;
            }
            let mut sub_a = PathPoly::from([(vec![a], T::one())]);
            for (word, ct) in u_b {
                add_to(&mut sub_a, word, -ct);
            }
            let mut sub_b = PathPoly::from([(vec![b], T::one())]);
            for (word, ct) in u_a {
                add_to(&mut sub_b, word, -ct);
            }
            w = w.substitute(&HashMap::from([(a, sub_a), (b, sub_b)]));
            if w.terms.keys().any(|x| x.len() == d && x.iter().any(|&y| y == a || y == b)) {
                return Err(QpError::PrecisionExhausted(d));
            }
        }
        w.terms.remove(&quad);
        if w.terms.keys().any(|x| x.iter().any(|&y| y == a || y == b)) {
            return Err(QpError::PrecisionExhausted(trunc));
        }
        removed.insert(a);
        removed.insert(b);
    }
    let mut arrows = Vec::new();
    let mut map = HashMap::new();
    for (id, arrow) in q.arrows.iter().enumerate() {
        if !removed.contains(&id) {
            map.insert(id, arrows.len());
            arrows.push(arrow.clone());
        }
    }
    Ok(Qp { quiver: ArrowQuiver { n: q.n, arrows }, potential: w.relabel(&map) })
}

/// Linear change of the arrows `fwd` (i -> j) and `back` (j -> i) making the
/// quadratic part between them `sum_p a_p b_p`; returns the substitution and the pairs.
fn diagonalize<T: Scalar>(
    w: &Potential<T>,
    fwd: &[usize],
    back: &[usize],
    order: ReductionOrder,
) -> (HashMap<usize, PathPoly<T>>, Vec<(usize, usize)>) {
    let (r, s) = (fwd.len(), back.len());
    let mut m: Vec<Vec<T>> = fwd
        .iter()
        .map(|&a| {
            back.iter().map(|&b| w.terms.get(&canonical_rotation(&[a, b])).cloned().unwrap_or_else(T::zero)).collect()
        })
        .collect();
    let mut pt: Vec<Vec<T>> =
        (0..r).map(|i| (0..r).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let mut qm: Vec<Vec<T>> =
        (0..s).map(|i| (0..s).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let mut candidates: Vec<(usize, usize)> = (0..r).flat_map(|p| (0..s).map(move |q| (p, q))).collect();
    if order == ReductionOrder::ReverseLex {
        candidates.reverse();
    }
    let (mut used_r, mut used_c) = (vec![false; r], vec![false; s]);
    let mut pivots = Vec::new();
    while let Some(&(p, q)) = candidates.iter().find(|&&(p, q)| !used_r[p] && !used_c[q] && !m[p][q].is_zero()) {
        let inv = T::one() / m[p][q].clone();
        for x in 0..s {
            m[p][x] = m[p][x].clone() * inv.clone();
        }
        for x in 0..r {
            pt[p][x] = pt[p][x].clone() * inv.clone();
        }
        for row in 0..r {
            if row != p && !m[row][q].is_zero() {
                let f = m[row][q].clone();
                for x in 0..s {
                    m[row][x] = m[row][x].clone() - f.clone() * m[p][x].clone();
                }
                for x in 0..r {
                    pt[row][x] = pt[row][x].clone() - f.clone() * pt[p][x].clone();
                }
            }
        }
        for col in 0..s {
            if col != q && !m[p][col].is_zero() {
                let f = m[p][col].clone();
                for x in 0..r {
                    m[x][col] = m[x][col].clone() - f.clone() * m[x][q].clone();
                }
                for x in 0..s {
                    qm[x][col] = qm[x][col].clone() - f.clone() * qm[x][q].clone();
                }
            }
        }
        used_r[p] = true;
        used_c[q] = true;
        pivots.push((fwd[p], back[q]));
    }
    let mut subs = HashMap::new();
    if pivots.is_empty() {
        return (subs, pivots);
    }
    // a_p = sum_s pt[s][p] a'_s and b_q = sum_t qm[q][t] b'_t
    for (p, &a) in fwd.iter().enumerate() {
        let mut poly = PathPoly::new();
        for (x, &a2) in fwd.iter().enumerate() {
            add_to(&mut poly, vec![a2], pt[x][p].clone());
        }
        subs.insert(a, poly);
    }
    for (q, &b) in back.iter().enumerate() {
        let mut poly = PathPoly::new();
        for (x, &b2) in back.iter().enumerate() {
            add_to(&mut poly, vec![b2], qm[q][x].clone());
        }
        subs.insert(b, poly);
    }
    (subs, pivots)
}

/// Reduced part of the premutation; fails with [`QpError::TwoCycleInOutput`]
/// when a 2-cycle survives the reduction.
pub fn qp_mutate<T: Scalar>(qp: &Qp<T>, k: usize) -> Result<Qp<T>, QpError> {
    let r = reduce(&premutate(qp, k)?)?;
    if let Some(&(i, j)) = r.quiver.two_cycles().first() {
        return Err(QpError::TwoCycleInOutput(i, j));
    }
    Ok(r)
}

/// Mutates along every sequence of length `<= depth` without immediate
/// repetitions, identical QPs at the same depth explored once.
pub fn probe_nondegenerate<T: Scalar>(qp: &Qp<T>, depth: usize) -> Result<Nondegeneracy, QpError> {
    if !qp.quiver.two_cycles().is_empty() {
        return Ok(Nondegeneracy::TwoCycleAt(Vec::new()));
    }
    let n = qp.quiver.n;
    let mut frontier: Vec<(Vec<usize>, Qp<T>)> = vec![(Vec::new(), qp.clone())];
    for _ in 0..depth {
        let expanded: Vec<(Vec<usize>, Result<Qp<T>, QpError>)> = frontier
            .par_iter()
            .flat_map_iter(|(path, cur)| {
                (0..n).filter(move |&k| path.last() != Some(&k)).map(move |k| {
                    let mut p = path.clone();
                    p.push(k);
                    (p, qp_mutate(cur, k))
                })
            })
            .collect();
        let mut next: Vec<(Vec<usize>, Qp<T>)> = Vec::new();
        for (path, res) in expanded {
            match res {
                Ok(m) => {
                    if !next.iter().any(|(_, x)| *x == m) {
                        next.push((path, m));
                    }
                }
                Err(QpError::TwoCycleInOutput(..)) => return Ok(Nondegeneracy::TwoCycleAt(path)),
                Err(e) => return Err(e),
            }
        }
        frontier = next;
    }
    Ok(Nondegeneracy::NoTwoCyclesUpTo(depth))
}
