use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::lamination::{shear_coordinates, Laminate};
use super::{SurfaceError, TaggedArc, TaggedTriangulation};
use crate::cluster::{GVector, TropicalSeed};

/// Outcome of walking the flip graph alongside seed mutation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub triangulations: usize,
    pub arcs: usize,
    /// Triangulations whose quiver differs from the mutated exchange matrix.
    pub quiver_mismatches: usize,
    /// Arcs whose g-vector is not `-b_T(e(arc))`.
    pub gvector_mismatches: usize,
    /// Arcs reached with two g-vectors, or g-vectors shared by two arcs.
    pub inconsistencies: usize,
    /// Whether the walk ran out of new triangulations before the depth bound.
    pub exhausted: bool,
}

impl CorrespondenceReport {
    pub fn ok(&self) -> bool {
        self.quiver_mismatches == 0 && self.gvector_mismatches == 0 && self.inconsistencies == 0
    }
}

/// Flips every arc of every triangulation within `depth` flips of `t`, mutating
/// the tropical seed of `t` in step, and checks that the g-vector of each arc
/// is minus the shear coordinates of its elementary laminate.
pub fn verify_arc_gvector_correspondence(
    t: &TaggedTriangulation,
    depth: usize,
) -> Result<CorrespondenceReport, SurfaceError> {
    let start = TropicalSeed::initial(&t.quiver());
    let key = |t: &TaggedTriangulation| {
        let mut a = t.arcs().to_vec();
        a.sort();
        a
    };
    let mut seen: HashSet<Vec<TaggedArc>> = HashSet::from([key(t)]);
    let mut frontier = vec![(t.clone(), start)];
    let mut report = CorrespondenceReport::default();
    let mut arc_g: HashMap<TaggedArc, GVector> = HashMap::new();
    let mut g_arc: HashMap<GVector, TaggedArc> = HashMap::new();
    let mut shear: HashMap<TaggedArc, Vec<i64>> = HashMap::new();
    for level in 0..=depth {
        let fresh: Vec<TaggedArc> = {
            let mut f: Vec<TaggedArc> = frontier
                .iter()
                .flat_map(|(t, _)| t.arcs().iter().copied())
                .filter(|a| !shear.contains_key(a))
                .collect();
            f.sort();
            f.dedup();
            f
        };
        let computed: Vec<(TaggedArc, Vec<i64>)> = fresh
            .par_iter()
            .map(|a| shear_coordinates(t, &Laminate::elementary(*a)).map(|v| (*a, v)))
            .collect::<Result<_, _>>()?;
        shear.extend(computed);
        for (tri, seed) in &frontier {
            report.triangulations += 1;
            if tri.quiver() != seed.quiver() {
                report.quiver_mismatches += 1;
            }
            for (a, g) in tri.arcs().iter().zip(seed.gvectors()) {
                if shear[a].iter().zip(g).any(|(b, g)| -b != *g) {
                    report.gvector_mismatches += 1;
                }
                match arc_g.get(a) {
                    Some(h) if h != g => report.inconsistencies += 1,
                    Some(_) => {}
                    None => {
                        arc_g.insert(*a, g.clone());
                        if g_arc.insert(g.clone(), *a).is_some_and(|b| b != *a) {
                            report.inconsistencies += 1;
                        }
                    }
                }
            }
        }
        if level == depth {
            break;
        }
        let next: Vec<(TaggedTriangulation, TropicalSeed)> = frontier
            .par_iter()
            .flat_map_iter(|(tri, seed)| {
                (0..tri.arcs().len())
                    .map(move |k| Ok((tri.flip_at(k)?, seed.checked_mutate(k).ok_or(SurfaceError::Overflow)?)))
            })
            .collect::<Result<_, SurfaceError>>()?;
        frontier = next.into_iter().filter(|(t, _)| seen.insert(key(t))).collect();
        if frontier.is_empty() {
            report.exhausted = true;
            break;
        }
    }
    report.arcs = arc_g.len();
    Ok(report)
}
