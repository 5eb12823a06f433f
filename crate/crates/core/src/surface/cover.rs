//! Arcs and laminates lifted to the universal cover of the surface, where the
//! boundary becomes a totally ordered set of positions and crossings reduce to
//! interleaving endpoints.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::MarkedSurface;

/// A point of the lifted boundary. Positions compare in cyclic boundary order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Pos(pub u8, pub i64);

pub(crate) const INF: Pos = Pos(1, 0);
/// Spiral ending counterclockwise into the puncture.
pub(crate) const INF_BEFORE: Pos = Pos(1, -1);
/// Spiral ending clockwise into the puncture.
pub(crate) const INF_AFTER: Pos = Pos(1, 1);
pub(crate) const END_PLUS: Pos = Pos(1, 0);
pub(crate) const END_MINUS: Pos = Pos(3, 0);

pub(crate) type Chord = (Pos, Pos);

pub(crate) fn chord(a: Pos, b: Pos) -> Chord {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Chords cross when their endpoints strictly interleave.
pub(crate) fn interleave(a: Chord, b: Chord) -> bool {
    if b.0 == a.0 || b.0 == a.1 || b.1 == a.0 || b.1 == a.1 {
        return false;
    }
    let inside = |p: Pos| a.0 < p && p < a.1;
    inside(b.0) != inside(b.1)
}

pub(crate) fn reverse_spirals(c: Chord) -> Chord {
    let flip = |p: Pos| match p {
        INF_AFTER => INF_BEFORE,
        INF_BEFORE => INF_AFTER,
        p => p,
    };
    chord(flip(c.0), flip(c.1))
}

pub(crate) fn is_closed(c: Chord) -> bool {
    c == (END_PLUS, END_MINUS)
}

/// Deck group and boundary of the cover.
#[derive(Clone, Debug)]
pub(crate) struct Model {
    period: Option<i64>,
    boundary: Vec<Chord>,
}

impl Model {
    pub fn of(s: &MarkedSurface) -> Model {
        match *s {
            MarkedSurface::Disc { marks: m } => {
                let m = m as i64;
                let mut boundary: Vec<Chord> = (0..m - 1).map(|i| (Pos(0, 2 * i), Pos(0, 2 * i + 2))).collect();
                boundary.push((Pos(0, 0), Pos(0, 2 * m - 2)));
                Model { period: None, boundary }
            }
            MarkedSurface::PuncturedDisc { marks: m } => {
                let m = m as i64;
                Model { period: Some(2 * m), boundary: (0..m).map(|i| (Pos(0, 2 * i), Pos(0, 2 * i + 2))).collect() }
            }
            MarkedSurface::Annulus { outer: p, inner: q } => {
                let (p, q) = (p as i64, q as i64);
                let mut boundary: Vec<Chord> = (0..p).map(|i| (Pos(0, 2 * q * i), Pos(0, 2 * q * (i + 1)))).collect();
                boundary.extend((0..q).map(|j| chord(Pos(2, -2 * p * j), Pos(2, -2 * p * (j + 1)))));
                Model { period: Some(2 * p * q), boundary }
            }
        }
    }

    pub fn x(p: Pos) -> Option<i64> {
        match p.0 {
            0 => Some(p.1),
            2 => Some(-p.1),
            _ => None,
        }
    }

    fn shift(&self, p: Pos, k: i64) -> Pos {
        let t = self.period.unwrap_or(0) * k;
        match p.0 {
            0 => Pos(0, p.1 + t),
            2 => Pos(2, p.1 - t),
            _ => p,
        }
    }

    fn shift_chord(&self, c: Chord, k: i64) -> Chord {
        chord(self.shift(c.0, k), self.shift(c.1, k))
    }

    pub fn extent(c: Chord) -> i64 {
        [c.0, c.1].iter().filter_map(|&p| Self::x(p)).map(i64::abs).max().unwrap_or(0)
    }

    /// Whether some lifts of the two curves cross.
    pub fn cross(&self, a: Chord, b: Chord) -> bool {
        match self.period {
            None => interleave(a, b),
            Some(p) => {
                let r = 2 * Self::extent(a).max(Self::extent(b)) / p + 3;
                (-r..=r).any(|k| interleave(a, self.shift_chord(b, k)))
            }
        }
    }
}

/// Lifts of an ideal triangulation covering a window around the origin.
pub(crate) struct Lifted {
    model: Model,
    labels: HashMap<Chord, Option<usize>>,
    nbrs: HashMap<Pos, HashSet<Pos>>,
    bound: i64,
    n: usize,
}

impl Lifted {
    /// `reach` bounds the finite coordinates of the laminates to be measured.
    pub fn build(model: &Model, arcs: &[Chord], reach: i64) -> Lifted {
        let mut labels = HashMap::new();
        let (ks, bound) = match model.period {
            None => (0..=0, i64::MAX),
            Some(p) => {
                let e = arcs.iter().map(|&c| Model::extent(c)).max().unwrap_or(0).max(reach) + p;
                let r = 4 * e / p + 2;
                (-r..=r, 2 * e)
            }
        };
        for k in ks {
            for &c in &model.boundary {
                labels.insert(model.shift_chord(c, k), None);
            }
            for (i, &c) in arcs.iter().enumerate() {
                labels.insert(model.shift_chord(c, k), Some(i));
            }
        }
        let mut nbrs: HashMap<Pos, HashSet<Pos>> = HashMap::new();
        for &(a, b) in labels.keys() {
            nbrs.entry(a).or_default().insert(b);
            nbrs.entry(b).or_default().insert(a);
        }
        Lifted { model: model.clone(), labels, nbrs, bound, n: arcs.len() }
    }

    fn in_window(&self, e: Chord) -> bool {
        [e.0, e.1].iter().filter_map(|&p| Model::x(p)).all(|x| x.abs() <= self.bound)
    }

    fn representative(&self, pts: &[Pos]) -> bool {
        match self.model.period {
            None => true,
            Some(p) => pts.iter().filter_map(|&q| Model::x(q)).min().is_some_and(|x| (0..p).contains(&x)),
        }
    }

    /// The third vertices of the triangles on either side of `e`.
    fn apexes(&self, e: Chord) -> Vec<Pos> {
        let (Some(na), Some(nb)) = (self.nbrs.get(&e.0), self.nbrs.get(&e.1)) else { return Vec::new() };
        let mut v: Vec<Pos> = na.iter().filter(|c| **c != e.1 && nb.contains(c)).copied().collect();
        v.sort();
        v
    }

    fn sides(mut t: [Pos; 3]) -> [Chord; 3] {
        t.sort();
        [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
    }

    /// +1 if `lam` leaves the triangle through the side preceding `e`
    /// counterclockwise, -1 through the side following it.
    fn turn(&self, lam: Chord, e: Chord, apex: Pos) -> i64 {
        let s = Self::sides([e.0, e.1, apex]);
        let i = s.iter().position(|&c| c == e).expect("edge is a side");
        let pred = s[(i + 2) % 3];
        let succ = s[(i + 1) % 3];
        match (interleave(lam, pred), interleave(lam, succ)) {
            (true, false) => 1,
            (false, true) => -1,
            _ => unreachable!("a crossing curve leaves a triangle through exactly one other side"),
        }
    }

    /// Shear coordinates of the curve with lift `lam`; spirals already resolved.
    pub fn shear(&self, lam: Chord) -> Vec<i64> {
        let mut out = vec![0i64; self.n];
        let closed = is_closed(lam);
        for (&e, label) in &self.labels {
            let Some(i) = *label else { continue };
            let counted = if closed { self.representative(&[e.0, e.1]) } else { self.in_window(e) };
            if !counted || !interleave(lam, e) {
                continue;
            }
            let ap = self.apexes(e);
            debug_assert_eq!(ap.len(), 2, "arc {e:?} borders two triangles");
            let t: Vec<i64> = ap.iter().map(|&c| self.turn(lam, e, c)).collect();
            if t.iter().all(|&x| x == t[0]) {
                out[i] += t[0];
            }
        }
        out
    }

    /// Signed adjacency of the ideal triangulation: an arrow from each arc to
    /// the arc following it counterclockwise in a common triangle.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let mut tris = BTreeSet::new();
        for (&e, label) in &self.labels {
            if label.is_none() || !self.in_window(e) {
                continue;
            }
            for c in self.apexes(e) {
                let mut t = [e.0, e.1, c];
                t.sort();
                if self.representative(&t) {
                    tris.insert(t);
                }
            }
        }
        let mut b = vec![vec![0i64; self.n]; self.n];
        for t in tris {
            let l: Vec<Option<usize>> = Self::sides(t).iter().map(|c| self.labels.get(c).copied().flatten()).collect();
            for i in 0..3 {
                if let (Some(x), Some(y)) = (l[i], l[(i + 1) % 3]) {
                    if x != y {
                        b[y][x] += 1;
                        b[x][y] -= 1;
                    }
                }
            }
        }
        b
    }
}
