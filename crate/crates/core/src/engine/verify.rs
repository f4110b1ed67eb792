use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::inner::{Bbox, Solid};
use super::{EngineError, Tet};
use crate::exact::{tet_volume6, tets_classify, Rat, Scalar, TetContact};
use crate::surface::{enclosed_volume6, sorted3, with_points, TriMesh};

/// First failing condition of a claimed triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Defect {
    #[error("tetrahedron {tet:?} uses a vertex outside the mesh")]
    IndexOutOfRange { tet: Tet },
    #[error("tetrahedron {tet:?} is not an inner tetrahedron")]
    NotInner { tet: Tet },
    #[error("tetrahedra {a:?} and {b:?} overlap")]
    Overlap { a: Tet, b: Tet },
    #[error("tetrahedra fill volume6 {found}, the solid has {expected}")]
    VolumeMismatch { expected: Rat, found: Rat },
    #[error("boundary face {face:?} lies in {count} tetrahedra instead of one")]
    BoundaryFaceCoverage { face: [usize; 3], count: usize },
    #[error("interior face {face:?} lies in {count} tetrahedra instead of two")]
    NonConformingFace { face: [usize; 3], count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationCheck {
    pub valid: bool,
    pub tets: usize,
    pub defect: Option<Defect>,
}

fn first_overlap<S: Scalar>(solid: &Solid<'_, S>, tets: &[Tet]) -> Result<Option<Defect>, EngineError> {
    let corners: Vec<_> = tets.iter().map(|t| solid.corners(t)).collect();
    let boxes: Vec<_> = corners.iter().map(|c| Bbox::of(c)).collect();
    for i in 0..tets.len() {
        for j in i + 1..tets.len() {
            if boxes[i].interiors_apart(&boxes[j]) {
                continue;
            }
            if tets_classify(&corners[i], &corners[j])? == TetContact::ImproperOverlap {
                return Ok(Some(Defect::Overlap { a: tets[i], b: tets[j] }));
            }
        }
    }
    Ok(None)
}

fn geometric_defect<S: Scalar>(solid: &Solid<'_, S>, tets: &[Tet]) -> Result<Option<Defect>, EngineError> {
    for t in tets {
        if !solid.is_inner(t)? {
            return Ok(Some(Defect::NotInner { tet: *t }));
        }
    }
    first_overlap(solid, tets)
}

/// Checks that `tets` partition the solid bounded by `mesh` face to face:
/// every tet is inner, interiors are pairwise disjoint, volumes add up
/// exactly, every boundary face lies in exactly one tet and every other tet
/// face in exactly two.
pub fn is_valid_triangulation(mesh: &TriMesh, tets: &[Tet]) -> Result<TriangulationCheck, EngineError> {
    let coords = mesh.coords().ok_or(EngineError::AbstractMesh)?;
    let defect = 'check: {
        if let Some(t) = tets.iter().find(|t| t.vertices()[3] >= mesh.n_vertices()) {
            break 'check Some(Defect::IndexOutOfRange { tet: *t });
        }
        let emb = mesh.embedding()?;
        let geometric = with_points!(&emb, |pts| geometric_defect(&Solid::new(pts, mesh.faces()), tets)?);
        if geometric.is_some() {
            break 'check geometric;
        }
        let expected = enclosed_volume6(mesh)?;
        let found = tets.iter().fold(Rat::zero(), |acc, t| {
            let [a, b, c, d] = t.vertices().map(|v| &coords[v]);
            &acc + &tet_volume6(a, b, c, d).abs()
        });
        if found != expected {
            break 'check Some(Defect::VolumeMismatch { expected, found });
        }
        let mut count: BTreeMap<[usize; 3], usize> = BTreeMap::new();
        for t in tets {
            for (f, _) in t.faces() {
                *count.entry(f).or_default() += 1;
            }
        }
        let boundary: BTreeSet<[usize; 3]> = mesh.faces().iter().map(sorted3).collect();
        if let Some(face) = boundary.iter().find(|f| count.get(*f).copied().unwrap_or(0) != 1) {
            break 'check Some(Defect::BoundaryFaceCoverage { face: *face, count: count.get(face).copied().unwrap_or(0) });
        }
        count
            .iter()
            .find(|(f, &c)| !boundary.contains(*f) && c != 2)
            .map(|(f, &c)| Defect::NonConformingFace { face: *f, count: c })
    };
    Ok(TriangulationCheck { valid: defect.is_none(), tets: tets.len(), defect })
}
