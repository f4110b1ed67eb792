use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::topology::edge_map;
use super::{Face, SurfaceError, TriMesh};
use crate::exact::{
    det3, orient3d, segment_meets_triangle, triangles_classify, Location, Point3, Rat, Scalar, Sign,
    TriContact, Vec3, LATTICE_BOUND,
};

/// Mesh coordinates prepared for the predicate kernel: scaled by a common
/// denominator onto an integer lattice, in `i128` when they fit and in big
/// integers otherwise. The lattice carries an extra factor of 4 so
/// tetrahedron centroids stay integral.
#[derive(Clone, Debug)]
pub(crate) enum Embedding {
    Lattice(Vec<Vec3<i128>>),
    BigLattice(Vec<Vec3<BigInt>>),
}

/// Runs `$body` with `$pts` bound to the embedding's point slice, whichever
/// scalar type it uses.
macro_rules! with_points {
    ($emb:expr, |$pts:ident| $body:expr) => {
        match $emb {
            $crate::surface::Embedding::Lattice($pts) => $body,
            $crate::surface::Embedding::BigLattice($pts) => $body,
        }
    };
}
pub(crate) use with_points;

impl Embedding {
    pub(crate) fn new(coords: &[Point3]) -> Embedding {
        let lcm = coords
            .iter()
            .flat_map(|p| [p.x.denom(), p.y.denom(), p.z.denom()])
            .fold(BigInt::one(), |acc: BigInt, d| acc.lcm(d));
        let scale: BigInt = lcm * BigInt::from(4);
        let to_lattice = |r: &Rat| -> Option<i128> {
            let v: BigInt = r.numer() * &scale / r.denom();
            let v = v.to_i128()?;
            (v.abs() <= LATTICE_BOUND).then_some(v)
        };
        let lattice: Option<Vec<Vec3<i128>>> = coords
            .iter()
            .map(|p| Some(Vec3::new(to_lattice(&p.x)?, to_lattice(&p.y)?, to_lattice(&p.z)?)))
            .collect();
        match lattice {
            Some(pts) if scale.abs() <= BigInt::from(LATTICE_BOUND) => Embedding::Lattice(pts),
            _ => {
                let big = |r: &Rat| -> BigInt { r.numer() * &scale / r.denom() };
                Embedding::BigLattice(coords.iter().map(|p| Vec3::new(big(&p.x), big(&p.y), big(&p.z))).collect())
            }
        }
    }
}

pub(crate) fn tri<S: Scalar>(pts: &[Vec3<S>], f: &Face) -> [Vec3<S>; 3] {
    [pts[f[0]].clone(), pts[f[1]].clone(), pts[f[2]].clone()]
}

pub(crate) fn signed_volume6<S: Scalar>(pts: &[Vec3<S>], faces: &[Face]) -> S {
    let origin = Vec3::zero();
    faces.iter().fold(S::zero(), |acc, f| {
        acc.add_ref(&det3(&origin, &pts[f[0]], &pts[f[1]], &pts[f[2]]))
    })
}

pub(crate) fn duplicate_coordinates(coords: &[Point3]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&Point3, usize> = HashMap::new();
    for (i, p) in coords.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return Some((j, i));
        }
        seen.insert(p, i);
    }
    None
}

/// Six times the volume enclosed by the surface; the sign is normalized so
/// the result is never negative.
pub fn enclosed_volume6(mesh: &TriMesh) -> Result<Rat, SurfaceError> {
    let coords = mesh.require_coords()?;
    Ok(signed_volume6(coords, mesh.faces()).abs())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Violation {
    CoincidentVertices { a: usize, b: usize },
    Faces { f: usize, g: usize, expected: TriContact, found: TriContact },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCheck {
    pub embedded: bool,
    pub first_violation: Option<Violation>,
}

pub(crate) fn expected_contact(f: &Face, g: &Face) -> TriContact {
    match f.iter().filter(|v| g.contains(v)).count() {
        0 => TriContact::Disjoint,
        1 => TriContact::SharedVertex,
        2 => TriContact::SharedEdge,
        _ => TriContact::Identical,
    }
}

fn first_face_violation<S: Scalar>(pts: &[Vec3<S>], faces: &[Face]) -> Result<Option<Violation>, SurfaceError> {
    for (i, f) in faces.iter().enumerate() {
        let tf = tri(pts, f);
        for (j, g) in faces.iter().enumerate().skip(i + 1) {
            let expected = expected_contact(f, g);
            let found = triangles_classify(&tf, &tri(pts, g))?;
            if found != expected {
                return Ok(Some(Violation::Faces { f: i, g: j, expected, found }));
            }
        }
    }
    Ok(None)
}

/// Whether the surface is embedded: every pair of faces meets exactly in
/// what their shared indices say, and no two vertices coincide.
pub fn is_embedded(mesh: &TriMesh) -> Result<EmbeddingCheck, SurfaceError> {
    let coords = mesh.require_coords()?;
    let violation = match duplicate_coordinates(coords) {
        Some((a, b)) => Some(Violation::CoincidentVertices { a, b }),
        None => with_points!(&mesh.embedding()?, |pts| first_face_violation(pts, mesh.faces())?),
    };
    Ok(EmbeddingCheck { embedded: violation.is_none(), first_violation: violation })
}

fn on_triangle<S: Scalar>(p: &Vec3<S>, t: &[Vec3<S>; 3]) -> bool {
    orient3d(&t[0], &t[1], &t[2], p) == Sign::Zero && segment_meets_triangle(p, p, t)
}

enum RayHit {
    Miss,
    Cross,
    Degenerate,
}

fn ray_hit<S: Scalar>(p: &Vec3<S>, d: &Vec3<S>, t: &[Vec3<S>; 3]) -> RayHit {
    let [a, b, c] = t;
    let s0 = orient3d(a, b, c, p);
    let toward = orient3d(a, b, c, &a.add(d));
    if s0 == Sign::Zero {
        return if toward == Sign::Zero { RayHit::Degenerate } else { RayHit::Miss };
    }
    if toward != s0.flip() {
        return RayHit::Miss;
    }
    let q = p.add(d);
    let s = [orient3d(p, &q, a, b), orient3d(p, &q, b, c), orient3d(p, &q, c, a)];
    if s.contains(&Sign::Positive) && s.contains(&Sign::Negative) {
        RayHit::Miss
    } else if s.contains(&Sign::Zero) {
        RayHit::Degenerate
    } else {
        RayHit::Cross
    }
}

/// Ray directions on the moment curve `(1, k, k^2)`; any fixed surface rules
/// out only finitely many of them.
pub(crate) fn ray_direction<S: Scalar>(k: i64) -> Vec3<S> {
    Vec3::new(S::from_i64(1), S::from_i64(k), S::from_i64(k * k))
}

/// Point location by exact ray-casting parity along the `k`-th direction that
/// avoids every edge, vertex and face plane; `skip` valid directions are
/// passed over first (used to cross-check direction independence).
pub(crate) fn locate_point_skipping<S: Scalar>(
    pts: &[Vec3<S>],
    faces: &[Face],
    p: &Vec3<S>,
    skip: usize,
) -> Location {
    let tris: Vec<[Vec3<S>; 3]> = faces.iter().map(|f| tri(pts, f)).collect();
    locate_among(&tris, p, skip)
}

/// [`locate_point_skipping`] over precomputed face triangles.
pub(crate) fn locate_among<S: Scalar>(tris: &[[Vec3<S>; 3]], p: &Vec3<S>, skip: usize) -> Location {
    if tris.iter().any(|t| on_triangle(p, t)) {
        return Location::Boundary;
    }
    let mut skipped = 0;
    for k in 1.. {
        let d = ray_direction::<S>(k);
        let mut crossings = 0usize;
        let mut degenerate = false;
        for t in tris {
            match ray_hit(p, &d, t) {
                RayHit::Miss => {}
                RayHit::Cross => crossings += 1,
                RayHit::Degenerate => {
                    degenerate = true;
                    break;
                }
            }
        }
        if degenerate {
            continue;
        }
        if skipped < skip {
            skipped += 1;
            continue;
        }
        return if crossings % 2 == 1 { Location::Inside } else { Location::Outside };
    }
    unreachable!("moment-curve directions are exhausted only by infinitely many faces")
}

pub(crate) fn locate_point<S: Scalar>(pts: &[Vec3<S>], faces: &[Face], p: &Vec3<S>) -> Location {
    locate_point_skipping(pts, faces, p, 0)
}

/// Location of `p` relative to the closed solid bounded by an embedded mesh.
pub fn point_in_solid(mesh: &TriMesh, p: &Point3) -> Result<Location, SurfaceError> {
    let coords = mesh.require_coords()?;
    Ok(locate_point(coords, mesh.faces(), p))
}

/// Same as [`point_in_solid`] but casting along the `(skip + 1)`-th usable
/// ray direction.
pub fn point_in_solid_with_ray(mesh: &TriMesh, p: &Point3, skip: usize) -> Result<Location, SurfaceError> {
    let coords = mesh.require_coords()?;
    Ok(locate_point_skipping(coords, mesh.faces(), p, skip))
}

/// True iff every pair of vertices spans an edge of the surface.
pub fn edge_graph_is_complete(mesh: &TriMesh) -> bool {
    let n = mesh.n_vertices();
    edge_map(mesh.faces()).len() == n * (n - 1) / 2
}

/// Edges whose dihedral angle, seen from inside, exceeds 180 degrees.
/// Assumes outward orientation.
pub fn reflex_edges(mesh: &TriMesh) -> Result<Vec<[usize; 2]>, SurfaceError> {
    let coords = mesh.require_coords()?;
    let faces = mesh.faces();
    let mut out = Vec::new();
    for (e, users) in edge_map(faces) {
        if let [(f, _), (g, _)] = users[..] {
            let w = faces[g].iter().copied().find(|v| !e.contains(v)).expect("triangle has a third vertex");
            let t = tri(coords, &faces[f]);
            if orient3d(&t[0], &t[1], &t[2], &coords[w]) == Sign::Positive {
                out.push(e);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::pt;

    fn tetra() -> TriMesh {
        TriMesh::normalized(
            "tet",
            4,
            Some(vec![pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]),
            vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        )
        .unwrap()
    }

    fn cube() -> TriMesh {
        let coords = (0..8).map(|i| pt(i & 1, (i >> 1) & 1, (i >> 2) & 1)).collect();
        let quads = [[0, 2, 3, 1], [4, 5, 7, 6], [0, 1, 5, 4], [2, 6, 7, 3], [0, 4, 6, 2], [1, 3, 7, 5]];
        let faces = quads.iter().flat_map(|q| [[q[0], q[1], q[2]], [q[0], q[2], q[3]]]).collect();
        TriMesh::normalized("cube", 8, Some(coords), faces).unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(enclosed_volume6(&tetra()).unwrap(), Rat::one());
        assert_eq!(enclosed_volume6(&cube()).unwrap(), Rat::from_int(6));
        let shifted: Vec<Point3> = cube().coords().unwrap().iter().map(|p| p.add(&pt(5, -3, 11))).collect();
        let moved = TriMesh::new("c", 8, Some(shifted), cube().faces().to_vec()).unwrap();
        assert_eq!(enclosed_volume6(&moved).unwrap(), Rat::from_int(6));
    }

    #[test]
    fn normalization_makes_volume_positive() {
        let m = cube();
        let signed = signed_volume6(m.coords().unwrap(), m.faces());
        assert_eq!(signed, Rat::from_int(6));
        assert!(reflex_edges(&m).unwrap().is_empty());
    }

    #[test]
    fn point_location() {
        let t = tetra();
        let centroid = Vec3::new(Rat::new(1, 4).unwrap(), Rat::new(1, 4).unwrap(), Rat::new(1, 4).unwrap());
        assert_eq!(point_in_solid(&t, &centroid).unwrap(), Location::Inside);
        assert_eq!(point_in_solid(&t, &pt(0, 1, 0)).unwrap(), Location::Boundary);
        assert_eq!(point_in_solid(&t, &pt(2, 2, 2)).unwrap(), Location::Outside);
        // corner of the cube is hit by several faces at once
        let c = cube();
        let mid = Vec3::new(Rat::new(1, 2).unwrap(), Rat::new(1, 2).unwrap(), Rat::new(1, 2).unwrap());
        for skip in 0..4 {
            assert_eq!(point_in_solid_with_ray(&c, &mid, skip).unwrap(), Location::Inside);
        }
        assert_eq!(point_in_solid(&c, &pt(1, 1, 1)).unwrap(), Location::Boundary);
    }

    #[test]
    fn overlapping_tetrahedra_are_not_embedded() {
        let coords = vec![
            pt(0, 0, 0), pt(2, 0, 0), pt(0, 2, 0), pt(0, 0, 2),
            pt(1, 1, 1), pt(3, 1, 1), pt(1, 3, 1), pt(1, 1, -1),
        ];
        let faces = vec![
            [0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3],
            [4, 5, 6], [4, 5, 7], [4, 6, 7], [5, 6, 7],
        ];
        let m = TriMesh::new("two", 8, Some(coords), faces).unwrap();
        let check = is_embedded(&m).unwrap();
        assert!(!check.embedded);
        assert!(matches!(check.first_violation, Some(Violation::Faces { .. })));
    }

    #[test]
    fn complete_edge_graphs() {
        assert!(edge_graph_is_complete(&tetra()));
        assert!(!edge_graph_is_complete(&cube()));
    }

    #[test]
    fn abstract_mesh_refuses_geometry() {
        let m = TriMesh::new("a", 4, None, tetra().faces().to_vec()).unwrap();
        assert_eq!(is_embedded(&m), Err(SurfaceError::MissingCoordinates));
        assert_eq!(enclosed_volume6(&m), Err(SurfaceError::MissingCoordinates));
    }

    #[test]
    fn lattice_embedding_scales_denominators() {
        let coords = vec![Vec3::new(Rat::new(1, 3).unwrap(), Rat::zero(), Rat::new(-2, 5).unwrap())];
        match Embedding::new(&coords) {
            Embedding::Lattice(p) => assert_eq!(p[0], Vec3::new(20, 0, -24)),
            Embedding::BigLattice(_) => panic!("small coordinates should fit the i128 lattice"),
        }
    }

    #[test]
    fn large_denominators_use_big_lattice() {
        let k = Rat::from_big(BigInt::from(1), BigInt::from(1u64 << 40) + 1).unwrap();
        let coords: Vec<Point3> = tetra().coords().unwrap().iter().map(|p| p.scale(&k)).collect();
        assert!(matches!(Embedding::new(&coords), Embedding::BigLattice(_)));
        let m = TriMesh::new("small", 4, Some(coords.clone()), tetra().faces().to_vec()).unwrap();
        let inside = coords.iter().fold(Point3::zero(), |a, p| a.add(p)).scale(&Rat::new(1, 4).unwrap());
        assert_eq!(point_in_solid(&m, &inside).unwrap(), Location::Inside);
        assert!(is_embedded(&m).unwrap().embedded);
    }
}
