use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cover::{
    chord, reverse_spirals, Chord, Lifted, Model, Pos, END_MINUS, END_PLUS, INF, INF_AFTER, INF_BEFORE,
};
use super::{IdealModel, MarkedSurface, SurfaceError, Tag, TaggedArc, TaggedTriangulation};
use crate::{BigInt, Rational};

/// A curve in an integral lamination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Laminate {
    /// The curve running alongside a tagged arc, its ends moved just past the
    /// marks and spiralling clockwise into the puncture for a plain tag.
    Elementary { arc: TaggedArc },
    /// Both ends on the boundary segment after mark `segment`, enclosing the puncture.
    Exceptional { segment: usize },
    /// The core curve of the annulus.
    ClosedCore,
}

impl Laminate {
    pub fn elementary(arc: TaggedArc) -> Laminate {
        Laminate::Elementary { arc }
    }

    pub fn lies_on(&self, s: &MarkedSurface) -> bool {
        match (*self, *s) {
            (Laminate::Elementary { arc }, _) => s.contains_arc(&arc),
            (Laminate::Exceptional { segment }, MarkedSurface::PuncturedDisc { marks }) => segment < marks,
            (Laminate::ClosedCore, MarkedSurface::Annulus { .. }) => true,
            _ => false,
        }
    }

    fn check(&self, s: &MarkedSurface) -> Result<(), SurfaceError> {
        if self.lies_on(s) {
            Ok(())
        } else {
            Err(SurfaceError::DifferentSurface(format!("{self:?}"), *s))
        }
    }

    pub(crate) fn lift(&self, s: &MarkedSurface) -> Chord {
        match (*self, *s) {
            (Laminate::Elementary { arc }, _) => {
                let (a, b) = s.lift(&arc);
                let end = |p: Pos| match p {
                    INF if arc.puncture_tag() == Some(Tag::Notched) => INF_BEFORE,
                    INF => INF_AFTER,
                    Pos(r, v) => Pos(r, v + s.half_step(r)),
                };
                chord(end(a), end(b))
            }
            (Laminate::Exceptional { segment }, MarkedSurface::PuncturedDisc { marks }) => {
                let a = 2 * segment as i64 + 1;
                (Pos(0, a), Pos(0, a + 2 * marks as i64))
            }
            (Laminate::ClosedCore, _) => chord(END_PLUS, END_MINUS),
            _ => unreachable!("laminate checked against surface"),
        }
    }

    /// Laminates are compatible when they can be drawn disjointly.
    pub fn compatible(&self, other: &Laminate, s: &MarkedSurface) -> Result<bool, SurfaceError> {
        self.check(s)?;
        other.check(s)?;
        Ok(self == other || !s.model().cross(self.lift(s), other.lift(s)))
    }
}

/// All laminates, bridging ones with `|winding| <= max_winding`.
pub fn enumerate_laminates(s: &MarkedSurface, max_winding: i64) -> Vec<Laminate> {
    let mut v: Vec<Laminate> = s.enumerate_tagged_arcs(max_winding).into_iter().map(Laminate::elementary).collect();
    match *s {
        MarkedSurface::PuncturedDisc { marks } => v.extend((0..marks).map(|segment| Laminate::Exceptional { segment })),
        MarkedSurface::Annulus { .. } => v.push(Laminate::ClosedCore),
        MarkedSurface::Disc { .. } => {}
    }
    v
}

/// A finite multiset of pairwise compatible laminates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lamination {
    parts: Vec<(Laminate, u32)>,
}

impl Lamination {
    pub fn new(parts: impl IntoIterator<Item = (Laminate, u32)>) -> Lamination {
        let mut map = std::collections::BTreeMap::new();
        for (l, c) in parts {
            *map.entry(l).or_insert(0) += c;
        }
        Lamination { parts: map.into_iter().filter(|&(_, c)| c > 0).collect() }
    }

    pub fn parts(&self) -> &[(Laminate, u32)] {
        &self.parts
    }

    pub fn is_compatible(&self, s: &MarkedSurface) -> Result<bool, SurfaceError> {
        for (i, (a, _)) in self.parts.iter().enumerate() {
            for (b, _) in &self.parts[i..] {
                if !a.compatible(b, s)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn shear_coordinates(&self, t: &TaggedTriangulation) -> Result<Vec<i64>, SurfaceError> {
        let mut out = vec![0; t.arcs().len()];
        let ls: Vec<Laminate> = self.parts.iter().map(|p| p.0).collect();
        for (v, (_, c)) in Shear::new(t, &ls)?.all(&ls).iter().zip(&self.parts) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += *c as i64 * x;
            }
        }
        Ok(out)
    }
}

struct Shear<'a> {
    surface: MarkedSurface,
    ideal: IdealModel,
    lifted: Lifted,
    _t: &'a TaggedTriangulation,
}

impl<'a> Shear<'a> {
    fn new(t: &'a TaggedTriangulation, ls: &[Laminate]) -> Result<Self, SurfaceError> {
        let s = t.surface();
        for l in ls {
            l.check(&s)?;
        }
        let reach = ls.iter().map(|l| Model::extent(l.lift(&s))).max().unwrap_or(0);
        let ideal = t.ideal_model();
        let lifted = Lifted::build(&s.model(), &ideal.chords, reach);
        Ok(Shear { surface: s, ideal, lifted, _t: t })
    }

    fn of(&self, l: &Laminate) -> Vec<i64> {
        let mut lam = l.lift(&self.surface);
        if self.ideal.reversed {
            lam = reverse_spirals(lam);
        }
        let mut v = self.lifted.shear(lam);
        if self.ideal.folded.iter().any(Option::is_some) {
            let r = self.lifted.shear(reverse_spirals(lam));
            for (j, l) in self.ideal.folded.iter().enumerate() {
                if let Some(l) = *l {
                    v[j] = r[l];
                }
            }
        }
        v
    }

    fn all(&self, ls: &[Laminate]) -> Vec<Vec<i64>> {
        ls.iter().map(|l| self.of(l)).collect()
    }
}

/// Shear coordinates `b_T(l)` of a laminate with respect to a tagged triangulation.
pub fn shear_coordinates(t: &TaggedTriangulation, l: &Laminate) -> Result<Vec<i64>, SurfaceError> {
    Ok(Shear::new(t, std::slice::from_ref(l))?.of(l))
}

/// Splits an exceptional laminate into the clockwise and counterclockwise
/// spirals from its segment, so that `b_T(E) = b_T(l_p) + b_T(l_q)`.
pub fn pq_split(l: &Laminate) -> Result<(Laminate, Laminate), SurfaceError> {
    match *l {
        Laminate::Exceptional { segment } => Ok((
            Laminate::elementary(TaggedArc::radius(segment, Tag::Plain)),
            Laminate::elementary(TaggedArc::radius(segment, Tag::Notched)),
        )),
        _ => Err(SurfaceError::NotExceptional(*l)),
    }
}

const MAX_WINDING: i64 = 64;

/// A lamination with shear coordinates `v`, searching over maximal compatible
/// sets of laminates with growing winding bounds.
pub fn laminate_of_vector(t: &TaggedTriangulation, v: &[i64]) -> Result<Lamination, SurfaceError> {
    let s = t.surface();
    if v.len() != t.arcs().len() {
        return Err(SurfaceError::DimensionMismatch { expected: t.arcs().len(), got: v.len() });
    }
    let annulus = matches!(s, MarkedSurface::Annulus { .. });
    let start =
        t.arcs().iter().map(|a| a.winding().abs()).max().unwrap_or(0) + v.iter().map(|x| x.abs()).sum::<i64>() + 1;
    let mut bound = if annulus { start.min(MAX_WINDING) } else { 0 };
    loop {
        let ls = enumerate_laminates(&s, bound);
        let sh = Shear::new(t, &ls)?;
        let vecs = sh.all(&ls);
        let model = s.model();
        let lifts: Vec<Chord> = ls.iter().map(|l| l.lift(&s)).collect();
        let adj: Vec<Vec<bool>> = (0..ls.len())
            .map(|i| (0..ls.len()).map(|j| i != j && !model.cross(lifts[i], lifts[j])).collect())
            .collect();
        for clique in maximal_cliques(&adj) {
            let cols: Vec<&Vec<i64>> = clique.iter().map(|&i| &vecs[i]).collect();
            if let Some(c) = solve_nonnegative(&cols, v) {
                return Ok(Lamination::new(clique.iter().zip(c).map(|(&i, c)| (ls[i], c))));
            }
        }
        if !annulus || bound >= MAX_WINDING {
            return Err(SurfaceError::SearchExhausted(bound));
        }
        bound = (bound * 2).min(MAX_WINDING);
    }
}

fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bk(adj: &[Vec<bool>], r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot =
            p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&w| adj[u][w]).count()).expect("nonempty");
        let mut p2 = p.clone();
        for v in p.into_iter().filter(|&v| !adj[pivot][v]) {
            r.push(v);
            let np = p2.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            bk(adj, r, np, nx, out);
            r.pop();
            p2.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut out);
    out
}

/// The unique solution of `sum c_j cols_j = v` in nonnegative integers, if any.
fn solve_nonnegative(cols: &[&Vec<i64>], v: &[i64]) -> Option<Vec<u32>> {
    let (n, k) = (v.len(), cols.len());
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..k).map(|j| cols[j][i]).chain([v[i]]).map(|x| Rational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=k {
                    let d = &m[row][c] * &f;
                    m[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < k || m[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut sol = vec![0u32; k];
    for (r, &c) in pivots.iter().enumerate() {
        let x = &m[r][k];
        if !x.is_integer() || x.is_negative() {
            return None;
        }
        sol[c] = u32::try_from(x.to_integer()).ok()?;
    }
    Some(sol)
}
