//! Tagged arcs, triangulations and laminations on the disc, the once-punctured
//! disc and the annulus.
//!
//! Marks are numbered counterclockwise from 0 on each boundary component.

mod cover;
mod lamination;
mod verify;

use serde::{Deserialize, Serialize};

use crate::quiver::Quiver;
use cover::{chord, Chord, Lifted, Model, Pos, INF};

pub use lamination::{enumerate_laminates, laminate_of_vector, pq_split, shear_coordinates, Laminate, Lamination};
pub use verify::{verify_arc_gvector_correspondence, CorrespondenceReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),
    #[error("{0:?} does not lie on {1:?}")]
    DifferentSurface(String, MarkedSurface),
    #[error("not a tagged triangulation: {0}")]
    NotATriangulation(String),
    #[error("arc {0:?} is not in the triangulation")]
    ArcNotInTriangulation(TaggedArc),
    #[error("laminate {0:?} is not exceptional")]
    NotExceptional(Laminate),
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no lamination found with windings up to {0}")]
    SearchExhausted(i64),
    #[error("g-vector entries left the range of i64")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum MarkedSurface {
    Disc { marks: usize },
    PuncturedDisc { marks: usize },
    Annulus { outer: usize, inner: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Plain,
    Notched,
}

impl Tag {
    pub fn flipped(self) -> Tag {
        match self {
            Tag::Plain => Tag::Notched,
            Tag::Notched => Tag::Plain,
        }
    }
}

/// An arc up to isotopy together with its tag at the puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TaggedArc {
    /// From mark `from` counterclockwise to mark `from + span`, with the marks
    /// in between on the side away from the puncture. On the disc `from + span < m`.
    Chord { from: usize, span: usize },
    /// From a boundary mark to the puncture.
    Radius { mark: usize, tag: Tag },
    /// Outer mark to inner mark; the lift starting at outer mark `outer` ends
    /// at the lift of inner mark `inner + q * winding`.
    Bridge { outer: usize, inner: usize, winding: i64 },
    /// Both ends on one boundary component of the annulus, cutting off `span - 1` marks.
    Peripheral { inner: bool, from: usize, span: usize },
}

impl TaggedArc {
    /// The disc chord between two marks.
    pub fn disc_chord(i: usize, j: usize) -> TaggedArc {
        let (a, b) = (i.min(j), i.max(j));
        TaggedArc::Chord { from: a, span: b - a }
    }

    pub fn radius(mark: usize, tag: Tag) -> TaggedArc {
        TaggedArc::Radius { mark, tag }
    }

    pub fn bridge(outer: usize, inner: usize, winding: i64) -> TaggedArc {
        TaggedArc::Bridge { outer, inner, winding }
    }

    /// The same arc with the tag at the puncture changed.
    pub fn conjugate(&self) -> Option<TaggedArc> {
        match *self {
            TaggedArc::Radius { mark, tag } => Some(TaggedArc::Radius { mark, tag: tag.flipped() }),
            _ => None,
        }
    }

    pub fn puncture_tag(&self) -> Option<Tag> {
        match *self {
            TaggedArc::Radius { tag, .. } => Some(tag),
            _ => None,
        }
    }

    fn untagged(&self) -> TaggedArc {
        match *self {
            TaggedArc::Radius { mark, .. } => TaggedArc::Radius { mark, tag: Tag::Plain },
            a => a,
        }
    }

    pub fn winding(&self) -> i64 {
        match *self {
            TaggedArc::Bridge { winding, .. } => winding,
            _ => 0,
        }
    }
}

impl MarkedSurface {
    pub fn disc(marks: usize) -> Result<Self, SurfaceError> {
        MarkedSurface::Disc { marks }.validated()
    }

    pub fn punctured_disc(marks: usize) -> Result<Self, SurfaceError> {
        MarkedSurface::PuncturedDisc { marks }.validated()
    }

    pub fn annulus(outer: usize, inner: usize) -> Result<Self, SurfaceError> {
        MarkedSurface::Annulus { outer, inner }.validated()
    }

    /// Rejects surfaces without arcs and the once-punctured monogon.
    pub fn validated(self) -> Result<Self, SurfaceError> {
        let ok = match self {
            MarkedSurface::Disc { marks } => marks >= 4,
            MarkedSurface::PuncturedDisc { marks } => marks >= 2,
            MarkedSurface::Annulus { outer, inner } => outer >= 1 && inner >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(SurfaceError::UnsupportedSurface(format!("{self:?}")))
        }
    }

    /// Number of arcs in a triangulation.
    pub fn rank(&self) -> usize {
        match *self {
            MarkedSurface::Disc { marks } => marks - 3,
            MarkedSurface::PuncturedDisc { marks } => marks,
            MarkedSurface::Annulus { outer, inner } => outer + inner,
        }
    }

    pub fn has_puncture(&self) -> bool {
        matches!(self, MarkedSurface::PuncturedDisc { .. })
    }

    pub fn contains_arc(&self, a: &TaggedArc) -> bool {
        match (*self, *a) {
            (MarkedSurface::Disc { marks: m }, TaggedArc::Chord { from, span }) => {
                span >= 2 && from + span < m && span <= m - 2
            }
            (MarkedSurface::PuncturedDisc { marks: m }, TaggedArc::Chord { from, span }) => {
                from < m && (2..m).contains(&span)
            }
            (MarkedSurface::PuncturedDisc { marks: m }, TaggedArc::Radius { mark, .. }) => mark < m,
            (MarkedSurface::Annulus { outer, inner }, TaggedArc::Bridge { outer: i, inner: j, .. }) => {
                i < outer && j < inner
            }
            (MarkedSurface::Annulus { outer, inner }, TaggedArc::Peripheral { inner: top, from, span }) => {
                let n = if top { inner } else { outer };
                from < n && (2..=n).contains(&span)
            }
            _ => false,
        }
    }

    fn check_arc(&self, a: &TaggedArc) -> Result<(), SurfaceError> {
        if self.contains_arc(a) {
            Ok(())
        } else {
            Err(SurfaceError::DifferentSurface(format!("{a:?}"), *self))
        }
    }

    /// Lift of an arc starting in the fundamental domain.
    pub(crate) fn lift(&self, a: &TaggedArc) -> Chord {
        match (*self, *a) {
            (_, TaggedArc::Chord { from, span }) => chord(Pos(0, 2 * from as i64), Pos(0, 2 * (from + span) as i64)),
            (_, TaggedArc::Radius { mark, .. }) => chord(Pos(0, 2 * mark as i64), INF),
            (MarkedSurface::Annulus { outer: p, inner: q }, TaggedArc::Bridge { outer, inner, winding }) => {
                let (p, q) = (p as i64, q as i64);
                chord(Pos(0, 2 * q * outer as i64), Pos(2, -2 * p * (inner as i64 + q * winding)))
            }
            (MarkedSurface::Annulus { outer: p, inner: q }, TaggedArc::Peripheral { inner: top, from, span }) => {
                let (from, to) = (from as i64, (from + span) as i64);
                if top {
                    chord(Pos(2, -2 * p as i64 * from), Pos(2, -2 * p as i64 * to))
                } else {
                    chord(Pos(0, 2 * q as i64 * from), Pos(0, 2 * q as i64 * to))
                }
            }
            _ => unreachable!("arc checked against surface"),
        }
    }

    /// Distance from a mark to the point just after it on its boundary component.
    pub(crate) fn half_step(&self, region: u8) -> i64 {
        match (*self, region) {
            (MarkedSurface::Annulus { inner, .. }, 0) => inner as i64,
            (MarkedSurface::Annulus { outer, .. }, _) => outer as i64,
            _ => 1,
        }
    }

    pub(crate) fn model(&self) -> Model {
        Model::of(self)
    }

    /// All tagged arcs, bridging arcs of the annulus with `|winding| <= max_winding`.
    pub fn enumerate_tagged_arcs(&self, max_winding: i64) -> Vec<TaggedArc> {
        let mut v = Vec::new();
        match *self {
            MarkedSurface::Disc { marks: m } => {
                for i in 0..m {
                    for j in i + 2..m {
                        if !(i == 0 && j == m - 1) {
                            v.push(TaggedArc::disc_chord(i, j));
                        }
                    }
                }
            }
            MarkedSurface::PuncturedDisc { marks: m } => {
                for from in 0..m {
                    v.extend((2..m).map(|span| TaggedArc::Chord { from, span }));
                    v.push(TaggedArc::radius(from, Tag::Plain));
                    v.push(TaggedArc::radius(from, Tag::Notched));
                }
            }
            MarkedSurface::Annulus { outer: p, inner: q } => {
                for i in 0..p {
                    for j in 0..q {
                        v.extend((-max_winding..=max_winding).map(|w| TaggedArc::bridge(i, j, w)));
                    }
                }
                for (top, n) in [(false, p), (true, q)] {
                    for from in 0..n {
                        v.extend((2..=n).map(|span| TaggedArc::Peripheral { inner: top, from, span }));
                    }
                }
            }
        }
        v.sort();
        v
    }

    /// Tagged compatibility: no crossing, conjugates allowed, and arcs sharing
    /// the puncture carry the same tag there.
    pub fn compatible(&self, a: &TaggedArc, b: &TaggedArc) -> Result<bool, SurfaceError> {
        self.check_arc(a)?;
        self.check_arc(b)?;
        Ok(self.compatible_unchecked(a, b))
    }

    fn compatible_unchecked(&self, a: &TaggedArc, b: &TaggedArc) -> bool {
        if a.untagged() == b.untagged() {
            return true;
        }
        if let (Some(s), Some(t)) = (a.puncture_tag(), b.puncture_tag()) {
            if s != t {
                return false;
            }
        }
        !self.model().cross(self.lift(a), self.lift(b))
    }
}

/// A maximal set of pairwise compatible tagged arcs. The order of the arcs
/// fixes the vertex order of the associated quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedTriangulation {
    surface: MarkedSurface,
    arcs: Vec<TaggedArc>,
}

#[derive(Deserialize)]
struct TriangulationJson {
    surface: MarkedSurface,
    arcs: Vec<TaggedArc>,
}

impl<'de> Deserialize<'de> for TaggedTriangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TriangulationJson::deserialize(d)?;
        TaggedTriangulation::new(raw.surface, raw.arcs).map_err(serde::de::Error::custom)
    }
}

impl TaggedTriangulation {
    pub fn new(surface: MarkedSurface, arcs: Vec<TaggedArc>) -> Result<Self, SurfaceError> {
        let surface = surface.validated()?;
        for a in &arcs {
            surface.check_arc(a)?;
        }
        if arcs.len() != surface.rank() {
            return Err(SurfaceError::NotATriangulation(format!("{} arcs, expected {}", arcs.len(), surface.rank())));
        }
        for (i, a) in arcs.iter().enumerate() {
            for b in &arcs[i + 1..] {
                if a == b {
                    return Err(SurfaceError::NotATriangulation(format!("{a:?} repeated")));
                }
                if !surface.compatible_unchecked(a, b) {
                    return Err(SurfaceError::NotATriangulation(format!("{a:?} and {b:?} are not compatible")));
                }
            }
        }
        Ok(TaggedTriangulation { surface, arcs })
    }

    /// The fan at mark 0, all plain radii, or the staircase of bridging arcs.
    pub fn standard(surface: MarkedSurface) -> Result<Self, SurfaceError> {
        let arcs = match surface.validated()? {
            MarkedSurface::Disc { marks: m } => (2..m - 1).map(|j| TaggedArc::disc_chord(0, j)).collect(),
            MarkedSurface::PuncturedDisc { marks: m } => (0..m).map(|i| TaggedArc::radius(i, Tag::Plain)).collect(),
            MarkedSurface::Annulus { outer: p, inner: q } => {
                let (p, q) = (p as i64, q as i64);
                let steps = (0..p).map(|i| (i, 0)).chain((0..q).map(|j| (p, j)));
                steps
                    .map(|(i, j)| {
                        let (i, shift) = (i.rem_euclid(p), i.div_euclid(p));
                        let jj = j - shift * q;
                        TaggedArc::bridge(i as usize, jj.rem_euclid(q) as usize, jj.div_euclid(q))
                    })
                    .collect()
            }
        };
        TaggedTriangulation::new(surface, arcs)
    }

    /// The zigzag triangulation of a disc: chords alternate between the two
    /// ends, so its quiver is an alternating orientation of type A.
    pub fn snake(marks: usize) -> Result<Self, SurfaceError> {
        let surface = MarkedSurface::disc(marks)?;
        let (mut lo, mut hi) = (0usize, 2usize);
        let mut arcs = vec![TaggedArc::disc_chord(lo, hi)];
        let mut left = true;
        while arcs.len() < surface.rank() {
            if left {
                lo = if lo == 0 { marks - 1 } else { lo - 1 };
            } else {
                hi += 1;
            }
            left = !left;
            arcs.push(TaggedArc::disc_chord(lo, hi));
        }
        TaggedTriangulation::new(surface, arcs)
    }

    pub fn surface(&self) -> MarkedSurface {
        self.surface
    }

    pub fn arcs(&self) -> &[TaggedArc] {
        &self.arcs
    }

    pub fn position(&self, a: &TaggedArc) -> Option<usize> {
        self.arcs.iter().position(|b| b == a)
    }

    /// Replaces the arc at `k` by the unique other arc completing the rest.
    pub fn flip_at(&self, k: usize) -> Result<TaggedTriangulation, SurfaceError> {
        let gamma = *self.arcs.get(k).ok_or_else(|| SurfaceError::NotATriangulation(format!("no arc at {k}")))?;
        let bound = self.arcs.iter().map(|a| a.winding().abs()).max().unwrap_or(0) + 2;
        let rest: Vec<&TaggedArc> = self.arcs.iter().filter(|a| **a != gamma).collect();
        let found: Vec<TaggedArc> = self
            .surface
            .enumerate_tagged_arcs(bound)
            .into_iter()
            .filter(|c| *c != gamma && rest.iter().all(|a| *a != c && self.surface.compatible_unchecked(a, c)))
            .collect();
        match found.as_slice() {
            [c] => {
                let mut arcs = self.arcs.clone();
                arcs[k] = *c;
                Ok(TaggedTriangulation { surface: self.surface, arcs })
            }
            _ => Err(SurfaceError::NotATriangulation(format!("{} completions after removing {gamma:?}", found.len()))),
        }
    }

    pub fn flip(&self, gamma: &TaggedArc) -> Result<TaggedTriangulation, SurfaceError> {
        let k = self.position(gamma).ok_or(SurfaceError::ArcNotInTriangulation(*gamma))?;
        self.flip_at(k)
    }

    /// Ideal triangulation carrying the same data, see [`IdealModel`].
    pub(crate) fn ideal_model(&self) -> IdealModel {
        let mut chords: Vec<Chord> = self.arcs.iter().map(|a| self.surface.lift(a)).collect();
        let mut folded = vec![None; self.arcs.len()];
        let mut reversed = false;
        if let MarkedSurface::PuncturedDisc { marks: m } = self.surface {
            let tags: Vec<(usize, usize, Tag)> = self
                .arcs
                .iter()
                .enumerate()
                .filter_map(|(i, a)| match *a {
                    TaggedArc::Radius { mark, tag } => Some((i, mark, tag)),
                    _ => None,
                })
                .collect();
            let pair = tags.iter().find_map(|&(i, r, t)| {
                (t == Tag::Notched)
                    .then_some(())
                    .and(tags.iter().find(|&&(_, s, u)| s == r && u == Tag::Plain).map(|&(j, ..)| (i, j, r)))
            });
            if let Some((notched, plain, r)) = pair {
                chords[notched] = chord(Pos(0, 2 * r as i64), Pos(0, 2 * (r + m) as i64));
                folded[plain] = Some(notched);
            } else {
                reversed = tags.iter().all(|&(.., t)| t == Tag::Notched);
            }
        }
        IdealModel { chords, folded, reversed }
    }

    /// The quiver with one vertex per arc.
    pub fn quiver(&self) -> Quiver {
        let m = self.ideal_model();
        let mut b = Lifted::build(&self.surface.model(), &m.chords, 0).exchange_matrix();
        let n = b.len();
        for (r, l) in m.folded.iter().enumerate().filter_map(|(r, l)| l.map(|l| (r, l))) {
            for x in 0..n {
                if x != r && x != l {
                    b[r][x] = b[l][x];
                    b[x][r] = b[x][l];
                }
            }
            b[r][l] = 0;
            b[l][r] = 0;
        }
        Quiver::from_b_matrix(&b).expect("triangulation quivers are skew-symmetric")
    }
}

pub fn quiver_of_triangulation(t: &TaggedTriangulation) -> Quiver {
    t.quiver()
}

/// An ideal triangulation standing in for a tagged one. With all radii notched
/// the plain triangulation is used and spirals reverse; a conjugate pair at `r`
/// becomes a self-folded triangle whose loop takes the notched slot.
pub(crate) struct IdealModel {
    pub chords: Vec<Chord>,
    /// For the plain radius inside a self-folded triangle, the slot of its loop.
    pub folded: Vec<Option<usize>>,
    pub reversed: bool,
}
