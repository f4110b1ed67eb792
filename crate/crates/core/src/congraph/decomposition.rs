use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{contact_faces, Decomposition, GraphError, Piece};
use crate::exact::{orient3d, Point3, Rat, Sign};
use crate::surface::{enclosed_volume6, sorted3, validate, TriMesh};

/// First failing condition of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DecompositionDefect {
    #[error("piece {piece} is not a closed sphere-like surface on its own vertices")]
    MalformedPiece { piece: usize },
    #[error("piece {piece} is not convex")]
    NotConvexPiece { piece: usize },
    #[error("pieces {a} and {b} overlap")]
    OverlappingPieces { a: usize, b: usize },
    #[error("pieces fill volume6 {found}, the solid has {expected}")]
    VolumeMismatch { expected: Rat, found: Rat },
    #[error("face {face:?} is not matched: {owners} piece(s) hold it")]
    UnmatchedFace { face: [usize; 3], owners: usize },
    #[error("pieces {a} and {b} share vertex {vertex} without a chain of contact faces through it")]
    SharingRule { a: usize, b: usize, vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub valid: bool,
    pub pieces: usize,
    pub defect: Option<DecompositionDefect>,
}

/// A piece as a standalone mesh on local indices `0..vertices.len()`.
pub(crate) fn piece_mesh(mesh: &TriMesh, piece: &Piece, label: String) -> Option<TriMesh> {
    let coords = mesh.coords()?;
    let local: BTreeMap<usize, usize> = piece.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    if local.len() != piece.vertices.len() || piece.vertices.iter().any(|&v| v >= mesh.n_vertices()) {
        return None;
    }
    let faces: Option<Vec<[usize; 3]>> =
        piece.faces.iter().map(|f| Some([*local.get(&f[0])?, *local.get(&f[1])?, *local.get(&f[2])?])).collect();
    let pts = piece.vertices.iter().map(|&v| coords[v].clone()).collect();
    let m = TriMesh::normalized(label, piece.vertices.len(), Some(pts), faces?).ok()?;
    let r = validate(&m).ok()?;
    (r.genus == Some(0) && r.embedded == Some(true)).then_some(m)
}

/// Every vertex weakly inside every outward face plane.
fn is_convex(m: &TriMesh) -> bool {
    let c = m.coords().expect("piece meshes carry coordinates");
    m.faces().iter().all(|f| c.iter().all(|p| orient3d(&c[f[0]], &c[f[1]], &c[f[2]], p) != Sign::Positive))
}

fn axes(m: &TriMesh) -> (Vec<Point3>, Vec<Point3>) {
    let c = m.coords().expect("piece meshes carry coordinates");
    let normals = m.faces().iter().map(|f| c[f[1]].sub(&c[f[0]]).cross(&c[f[2]].sub(&c[f[0]]))).collect();
    let mut edges = BTreeSet::new();
    for f in m.faces() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let dirs = edges.into_iter().map(|(a, b)| c[b].sub(&c[a])).collect();
    (normals, dirs)
}

fn separated_along(n: &Point3, a: &[Point3], b: &[Point3]) -> bool {
    if n.is_zero() {
        return false;
    }
    let proj = |pts: &[Point3]| {
        let vals: Vec<Rat> = pts.iter().map(|p| n.dot(p)).collect();
        (vals.iter().min().cloned().expect("non-empty"), vals.iter().max().cloned().expect("non-empty"))
    };
    let ((alo, ahi), (blo, bhi)) = (proj(a), proj(b));
    ahi <= blo || bhi <= alo
}

/// Two convex polytopes have disjoint interiors iff some plane parallel to
/// a face of one, or to an edge of each, weakly separates them.
fn interiors_disjoint(p: &TriMesh, q: &TriMesh) -> bool {
    let (pc, qc) = (p.coords().expect("coords"), q.coords().expect("coords"));
    let (pn, pe) = axes(p);
    let (qn, qe) = axes(q);
    pn.iter().chain(qn.iter()).any(|n| separated_along(n, pc, qc))
        || pe.iter().any(|e| qe.iter().any(|f| separated_along(&e.cross(f), pc, qc)))
}

fn sharing_rule_violation(d: &Decomposition) -> Option<DecompositionDefect> {
    let contacts = contact_faces(d);
    let mut holders: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, piece) in d.pieces.iter().enumerate() {
        for &v in &piece.vertices {
            holders.entry(v).or_default().push(i);
        }
    }
    for (v, pieces) in holders {
        if pieces.len() < 2 {
            continue;
        }
        let links: Vec<[usize; 2]> = contacts.iter().filter(|(f, _)| f.contains(&v)).map(|(_, e)| *e).collect();
        // flood from the first holder over contact faces through v
        let mut reached = BTreeSet::from([pieces[0]]);
        let mut changed = true;
        while changed {
            changed = false;
            for e in &links {
                if reached.contains(&e[0]) != reached.contains(&e[1]) {
                    reached.insert(e[0]);
                    reached.insert(e[1]);
                    changed = true;
                }
            }
        }
        if let Some(&b) = pieces.iter().find(|p| !reached.contains(p)) {
            return Some(DecompositionDefect::SharingRule { a: pieces[0], b, vertex: v });
        }
    }
    None
}

/// Checks that the pieces are convex, have disjoint interiors, fill the
/// solid exactly and meet face to face: every boundary face lies in one
/// piece and every other piece face in exactly two. With `sharing_rule`,
/// pieces sharing a vertex must also be linked by contact faces through it.
pub fn validate_decomposition(
    mesh: &TriMesh,
    d: &Decomposition,
    sharing_rule: bool,
) -> Result<DecompositionCheck, GraphError> {
    mesh.require_coords()?;
    let defect = 'check: {
        let mut meshes = Vec::with_capacity(d.pieces.len());
        for (i, piece) in d.pieces.iter().enumerate() {
            let Some(m) = piece_mesh(mesh, piece, format!("{}-piece-{i}", d.mesh)) else {
                break 'check Some(DecompositionDefect::MalformedPiece { piece: i });
            };
            if !is_convex(&m) {
                break 'check Some(DecompositionDefect::NotConvexPiece { piece: i });
            }
            meshes.push(m);
        }
        for i in 0..meshes.len() {
            for j in i + 1..meshes.len() {
                if !interiors_disjoint(&meshes[i], &meshes[j]) {
                    break 'check Some(DecompositionDefect::OverlappingPieces { a: i, b: j });
                }
            }
        }
        let expected = enclosed_volume6(mesh)?;
        let mut found = Rat::zero();
        for m in &meshes {
            found = &found + &enclosed_volume6(m)?;
        }
        if found != expected {
            break 'check Some(DecompositionDefect::VolumeMismatch { expected, found });
        }
        let owners = d.face_owners();
        let boundary: BTreeSet<[usize; 3]> = mesh.faces().iter().map(sorted3).collect();
        for f in &boundary {
            let k = owners.get(f).map_or(0, Vec::len);
            if k != 1 {
                break 'check Some(DecompositionDefect::UnmatchedFace { face: *f, owners: k });
            }
        }
        if let Some((f, o)) = owners.iter().find(|(f, o)| !boundary.contains(*f) && o.len() != 2) {
            break 'check Some(DecompositionDefect::UnmatchedFace { face: *f, owners: o.len() });
        }
        if sharing_rule {
            sharing_rule_violation(d)
        } else {
            None
        }
    };
    Ok(DecompositionCheck { valid: defect.is_none(), pieces: d.pieces.len(), defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congraph::build_graph;
    use crate::exact::pt;

    /// Cube [0,2]^3 cut by the plane x = 1 into two boxes.
    fn split_box() -> (TriMesh, Decomposition) {
        let mut coords = Vec::new();
        for x in 0..3 {
            for y in 0..2 {
                for z in 0..2 {
                    coords.push(pt(x, 2 * y, 2 * z));
                }
            }
        }
        // index = 4x + 2y + z
        let id = |x: usize, y: usize, z: usize| 4 * x + 2 * y + z;
        let quad = |a, b, c, e| vec![[a, b, c], [a, c, e]];
        let mut outer = Vec::new();
        outer.extend(quad(id(0, 0, 0), id(0, 1, 0), id(0, 1, 1), id(0, 0, 1)));
        outer.extend(quad(id(2, 0, 0), id(2, 0, 1), id(2, 1, 1), id(2, 1, 0)));
        for x in 0..2 {
            outer.extend(quad(id(x, 0, 0), id(x, 0, 1), id(x + 1, 0, 1), id(x + 1, 0, 0)));
            outer.extend(quad(id(x, 1, 0), id(x + 1, 1, 0), id(x + 1, 1, 1), id(x, 1, 1)));
            outer.extend(quad(id(x, 0, 0), id(x + 1, 0, 0), id(x + 1, 1, 0), id(x, 1, 0)));
            outer.extend(quad(id(x, 0, 1), id(x, 1, 1), id(x + 1, 1, 1), id(x + 1, 0, 1)));
        }
        let mesh = TriMesh::normalized("box", 12, Some(coords), outer.clone()).unwrap();
        let mid = quad(id(1, 0, 0), id(1, 1, 0), id(1, 1, 1), id(1, 0, 1));
        let piece = |x: usize| {
            let vertices: Vec<usize> = (0..12).filter(|v| v / 4 == x || v / 4 == x + 1).collect();
            let mut faces: Vec<[usize; 3]> =
                outer.iter().filter(|f| f.iter().all(|v| vertices.contains(v))).copied().collect();
            faces.extend(mid.iter().copied());
            Piece { vertices, faces }
        };
        (mesh, Decomposition { mesh: "box".into(), pieces: vec![piece(0), piece(1)] })
    }

    #[test]
    fn two_boxes() {
        let (m, d) = split_box();
        let r = validate_decomposition(&m, &d, true).unwrap();
        assert!(r.valid, "{:?}", r.defect);
        let g = build_graph(&d);
        assert_eq!((g.nodes, g.edges.len(), g.cycle_rank), (2, 2, 1));
        let merged = super::super::build_graph_merging_coplanar(&d, &m).unwrap();
        assert_eq!((merged.edges.len(), merged.cycle_rank), (1, 0));
    }

    #[test]
    fn missing_piece_is_a_volume_mismatch() {
        let (m, mut d) = split_box();
        d.pieces.pop();
        let r = validate_decomposition(&m, &d, false).unwrap();
        assert!(matches!(r.defect, Some(DecompositionDefect::VolumeMismatch { .. })));
    }

    #[test]
    fn duplicated_piece_overlaps() {
        let (m, mut d) = split_box();
        let p = d.pieces[0].clone();
        d.pieces.push(p);
        let r = validate_decomposition(&m, &d, false).unwrap();
        assert_eq!(r.defect, Some(DecompositionDefect::OverlappingPieces { a: 0, b: 2 }));
    }

    #[test]
    fn separation_needs_edge_axes() {
        // two tetrahedra with crossed edges, only an edge-edge plane separates them
        let a = [pt(-2, 0, 0), pt(2, 0, 0), pt(0, 1, -2), pt(0, -1, -2)];
        let b = [pt(0, -2, 1), pt(0, 2, 1), pt(1, 0, 3), pt(-1, 0, 3)];
        let faces = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let ma = TriMesh::normalized("a", 4, Some(a.to_vec()), faces.clone()).unwrap();
        let mb = TriMesh::normalized("b", 4, Some(b.to_vec()), faces.clone()).unwrap();
        assert!(interiors_disjoint(&ma, &mb));
        let lowered: Vec<Point3> = b.iter().map(|p| p.sub(&pt(0, 0, 2))).collect();
        let mc = TriMesh::normalized("c", 4, Some(lowered), faces).unwrap();
        assert!(!interiors_disjoint(&ma, &mc));
    }
}
