use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::Qp;
use crate::scalar::Scalar;

/// Order among paths of equal length; shorter paths always lead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PathOrder {
    /// Lexicographic in arrow ids.
    #[default]
    DegLex,
    /// Lexicographic in reversed arrow ids.
    DegRevLex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DimVerdict {
    StabilizedAt(usize),
    GrowingAtBound,
}

/// `dims[l]` is the dimension of the Jacobian algebra modulo paths of length `> l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimProfile {
    pub dims: Vec<usize>,
    pub verdict: DimVerdict,
}

impl DimProfile {
    fn from_dims(dims: Vec<usize>) -> DimProfile {
        let verdict = (0..dims.len().saturating_sub(1))
            .find(|&l| dims[l] == dims[l + 1])
            .map_or(DimVerdict::GrowingAtBound, DimVerdict::StabilizedAt);
        DimProfile { dims, verdict }
    }

    /// Dimension of the Jacobian algebra when the profile has stabilized.
    pub fn dimension(&self) -> Option<usize> {
        match self.verdict {
            DimVerdict::StabilizedAt(l) => Some(self.dims[l]),
            DimVerdict::GrowingAtBound => None,
        }
    }
}

pub fn jacobian_dim_truncated<T: Scalar>(qp: &Qp<T>, n: usize) -> DimProfile {
    jacobian_dim_with_order(qp, n, PathOrder::DegLex)
}

/// Profile `d_0, ..., d_{n-1}` from a standard basis of the Jacobian ideal
/// modulo paths of length `>= n`, under an order in which lower degree leads.
pub fn jacobian_dim_with_order<T: Scalar>(qp: &Qp<T>, n: usize, order: PathOrder) -> DimProfile {
    if n == 0 {
        return DimProfile::from_dims(Vec::new());
    }
    let arrows = qp.quiver().arrows();
    let m = arrows.len();
    let relabel = |id: usize| match order {
        PathOrder::DegLex => id,
        PathOrder::DegRevLex => m - 1 - id,
    };
    // arrow endpoints indexed by relabelled id
    let mut ends = vec![(0, 0); m];
    for (id, a) in arrows.iter().enumerate() {
        ends[relabel(id)] = (a.tail, a.head);
    }
    let max_len = n - 1;
    let relations: Vec<Poly<T>> = (0..m)
        .map(|a| {
            let mut p = Poly::new();
            for (w, c) in qp.potential().cyclic_derivative(a) {
                if w.len() <= max_len {
                    p.insert(Key::new(w.iter().map(|&x| relabel(x)).collect()), c);
                }
            }
            p
        })
        .collect();
    let basis = StandardBasis::build(relations, max_len);
    let mut counts = vec![0usize; n];
    counts[0] = qp.quiver().n();
    let mut word = Vec::new();
    for v in 0..qp.quiver().n() {
        basis.count_normal(&ends, v, &mut word, max_len, &mut counts);
    }
    let mut dims = Vec::with_capacity(n);
    let mut acc = 0;
    for c in counts {
        acc += c;
        dims.push(acc);
    }
    DimProfile::from_dims(dims)
}

/// Path ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    len: usize,
    word: Vec<usize>,
}

impl Key {
    fn new(word: Vec<usize>) -> Key {
        Key { len: word.len(), word }
    }
}

type Poly<T> = BTreeMap<Key, T>;

struct StandardBasis<T: Scalar> {
    elements: Vec<Option<Poly<T>>>,
    leading: HashMap<Vec<usize>, usize>,
    max_len: usize,
}

impl<T: Scalar> StandardBasis<T> {
    fn build(relations: Vec<Poly<T>>, max_len: usize) -> StandardBasis<T> {
        let mut sb = StandardBasis { elements: Vec::new(), leading: HashMap::new(), max_len };
        let mut queue: BTreeMap<(Key, usize), Poly<T>> = BTreeMap::new();
        let mut seq = 0;
        let mut push = |queue: &mut BTreeMap<(Key, usize), Poly<T>>, p: Poly<T>| {
            if let Some(k) = p.keys().next().cloned() {
                queue.insert((k, seq), p);
                seq += 1;
            }
        };
        for r in relations {
            push(&mut queue, r);
        }
        while let Some((_, f)) = queue.pop_first() {
            let h = sb.reduce(f);
            let Some((lead, lc)) = h.iter().next().map(|(k, c)| (k.clone(), c.clone())) else { continue };
            let h: Poly<T> = h.into_iter().map(|(k, c)| (k, c / lc.clone())).collect();
            let lw = lead.word.clone();
            let stale: Vec<usize> =
                sb.leading.iter().filter(|(w, _)| contains_subword(w, &lw)).map(|(_, &i)| i).collect();
            for i in stale {
                let g = sb.elements[i].take().expect("live element");
                sb.leading.remove(&g.keys().next().expect("nonzero").word);
                push(&mut queue, g);
            }
            let idx = sb.elements.len();
            sb.leading.insert(lw, idx);
            sb.elements.push(Some(h));
            for j in 0..sb.elements.len() {
                if sb.elements[j].is_none() {
                    continue;
                }
                for s in sb.overlaps(idx, j).into_iter().chain(sb.overlaps(j, idx)) {
                    push(&mut queue, s);
                }
            }
        }
        sb
    }

    fn lead(&self, i: usize) -> &[usize] {
        &self.elements[i].as_ref().expect("live element").keys().next().expect("nonzero").word
    }

    /// `g_i * q - p * g_j` for every proper overlap `lead_i = p s`, `lead_j = s q`.
    fn overlaps(&self, i: usize, j: usize) -> Vec<Poly<T>> {
        let (l1, l2) = (self.lead(i), self.lead(j));
        let mut out = Vec::new();
        for s in 1..l1.len().min(l2.len()) {
            if l1.len() + l2.len() - s > self.max_len || l1[l1.len() - s..] != l2[..s] {
                continue;
            }
            let p = &l1[..l1.len() - s];
            let q = &l2[s..];
            let mut f = Poly::new();
            for (k, c) in self.elements[i].as_ref().expect("live") {
                add(&mut f, [&k.word[..], q].concat(), c.clone(), self.max_len);
            }
            for (k, c) in self.elements[j].as_ref().expect("live") {
                add(&mut f, [p, &k.word[..]].concat(), -c.clone(), self.max_len);
            }
            out.push(f);
        }
        out
    }

    fn divisor(&self, word: &[usize]) -> Option<(usize, usize, usize)> {
        for start in 0..word.len() {
            for end in start + 1..=word.len() {
                if let Some(&g) = self.leading.get(&word[start..end]) {
                    return Some((g, start, end));
                }
            }
        }
        None
    }

    fn reduce(&self, mut f: Poly<T>) -> Poly<T> {
        let mut out = Poly::new();
        while let Some((k, c)) = f.pop_first() {
            match self.divisor(&k.word) {
                Some((g, start, end)) => {
                    let (u, v) = (&k.word[..start], &k.word[end..]);
                    for (gk, gc) in self.elements[g].as_ref().expect("live").iter().skip(1) {
                        add(&mut f, [u, &gk.word[..], v].concat(), -(c.clone() * gc.clone()), self.max_len);
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    fn count_normal(
        &self,
        ends: &[(usize, usize)],
        at: usize,
        word: &mut Vec<usize>,
        max_len: usize,
        counts: &mut [usize],
    ) {
        if word.len() == max_len {
            return;
        }
        for (x, &(tail, head)) in ends.iter().enumerate() {
            if tail != at {
                continue;
            }
            word.push(x);
            if !(0..word.len()).any(|s| self.leading.contains_key(&word[s..])) {
                counts[word.len()] += 1;
                self.count_normal(ends, head, word, max_len, counts);
            }
            word.pop();
        }
    }
}

fn add<T: Scalar>(p: &mut Poly<T>, word: Vec<usize>, c: T, max_len: usize) {
    if word.len() > max_len || c.is_zero() {
        return;
    }
    let key = Key::new(word);
    match p.get_mut(&key) {
        Some(v) => {
            *v = v.clone() + c;
            if v.is_zero() {
                p.remove(&key);
            }
        }
        None => {
            p.insert(key, c);
        }
    }
}

fn contains_subword(word: &[usize], sub: &[usize]) -> bool {
    sub.len() <= word.len() && word.windows(sub.len()).any(|w| w == sub)
}
