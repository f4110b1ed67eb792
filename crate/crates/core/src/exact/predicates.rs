//! Exact orientation-based predicates.
//!
//! Everything here is generic over [`Scalar`] so the same code runs on
//! rational points and on integer lattice points. Every quantity evaluated is
//! at most cubic in coordinate differences.

use serde::{Deserialize, Serialize};

use super::{ExactError, Scalar, Sign, Vec3};

/// How two closed triangles meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriContact {
    Disjoint,
    SharedVertex,
    SharedEdge,
    Identical,
    Improper,
}

/// How two closed tetrahedra meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TetContact {
    InteriorsDisjoint,
    ImproperOverlap,
}

/// Location of a point relative to a closed solid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Signed determinant `det[b - a, c - a, d - a]`, six times the signed volume
/// of the tetrahedron `abcd`.
pub fn det3<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>, d: &Vec3<S>) -> S {
    let u = b.sub(a);
    let v = c.sub(a);
    let w = d.sub(a);
    u.dot(&v.cross(&w))
}

/// Sign of `det[b - a, c - a, d - a]`; zero iff the points are coplanar.
/// Positive when `d` lies on the side the right-handed normal of `abc` points to.
pub fn orient3d<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>, d: &Vec3<S>) -> Sign {
    det3(a, b, c, d).sign()
}

/// Six times the signed volume of `abcd`.
pub fn tet_volume6<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>, d: &Vec3<S>) -> S {
    det3(a, b, c, d)
}

pub fn triangle_normal<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>) -> Vec3<S> {
    b.sub(a).cross(&c.sub(a))
}

pub fn is_degenerate_triangle<S: Scalar>(t: &[Vec3<S>; 3]) -> bool {
    triangle_normal(&t[0], &t[1], &t[2]).is_zero()
}

pub fn is_degenerate_tet<S: Scalar>(t: &[Vec3<S>; 4]) -> bool {
    orient3d(&t[0], &t[1], &t[2], &t[3]) == Sign::Zero
}

/// Coordinate axis that can be dropped to project a plane with normal `n`
/// injectively onto a coordinate plane.
fn drop_axis<S: Scalar>(n: &Vec3<S>) -> usize {
    (0..3).find(|&k| n.coord(k).sign() != Sign::Zero).unwrap_or(2)
}

/// 2D orientation of `p, q, r` after dropping `axis`.
fn orient2d<S: Scalar>(p: &Vec3<S>, q: &Vec3<S>, r: &Vec3<S>, axis: usize) -> Sign {
    let (i, j) = match axis {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    let a = q.coord(i).sub_ref(p.coord(i));
    let b = r.coord(j).sub_ref(p.coord(j));
    let c = q.coord(j).sub_ref(p.coord(j));
    let d = r.coord(i).sub_ref(p.coord(i));
    a.mul_ref(&b).sub_ref(&c.mul_ref(&d)).sign()
}

fn point_in_triangle_2d<S: Scalar>(p: &Vec3<S>, t: &[&Vec3<S>; 3], axis: usize) -> bool {
    let s = [
        orient2d(t[0], t[1], p, axis),
        orient2d(t[1], t[2], p, axis),
        orient2d(t[2], t[0], p, axis),
    ];
    !(s.contains(&Sign::Positive) && s.contains(&Sign::Negative))
}

fn on_segment_2d<S: Scalar>(p: &Vec3<S>, a: &Vec3<S>, b: &Vec3<S>, axis: usize) -> bool {
    // p is already known collinear with ab; check the bounding box on the two kept axes.
    let (i, j) = match axis {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    let within = |k: usize| {
        let (lo, hi) = if a.coord(k) <= b.coord(k) {
            (a.coord(k), b.coord(k))
        } else {
            (b.coord(k), a.coord(k))
        };
        lo <= p.coord(k) && p.coord(k) <= hi
    };
    within(i) && within(j)
}

fn segments_intersect_2d<S: Scalar>(
    p: &Vec3<S>,
    q: &Vec3<S>,
    r: &Vec3<S>,
    s: &Vec3<S>,
    axis: usize,
) -> bool {
    let o1 = orient2d(p, q, r, axis);
    let o2 = orient2d(p, q, s, axis);
    let o3 = orient2d(r, s, p, axis);
    let o4 = orient2d(r, s, q, axis);
    if o1 != o2 && o3 != o4 && o1 != Sign::Zero && o2 != Sign::Zero && o3 != Sign::Zero && o4 != Sign::Zero {
        return true;
    }
    (o1 == Sign::Zero && on_segment_2d(r, p, q, axis))
        || (o2 == Sign::Zero && on_segment_2d(s, p, q, axis))
        || (o3 == Sign::Zero && on_segment_2d(p, r, s, axis))
        || (o4 == Sign::Zero && on_segment_2d(q, r, s, axis))
}

/// Whether the closed segment `pq` meets the closed, nondegenerate triangle `abc`.
pub fn segment_meets_triangle<S: Scalar>(
    p: &Vec3<S>,
    q: &Vec3<S>,
    t: &[Vec3<S>; 3],
) -> bool {
    let [a, b, c] = t;
    let sp = orient3d(a, b, c, p);
    let sq = orient3d(a, b, c, q);
    if sp == sq && sp != Sign::Zero {
        return false;
    }
    if sp == Sign::Zero && sq == Sign::Zero {
        let axis = drop_axis(&triangle_normal(a, b, c));
        let tri = [a, b, c];
        return point_in_triangle_2d(p, &tri, axis)
            || point_in_triangle_2d(q, &tri, axis)
            || segments_intersect_2d(p, q, a, b, axis)
            || segments_intersect_2d(p, q, b, c, axis)
            || segments_intersect_2d(p, q, c, a, axis);
    }
    let s = [orient3d(p, q, a, b), orient3d(p, q, b, c), orient3d(p, q, c, a)];
    !(s.contains(&Sign::Positive) && s.contains(&Sign::Negative))
}

/// Whether the segment from the vertex `v` of triangle `(v, a, b)` towards
/// `w` stays inside that triangle for some positive length.
fn leaves_vertex_into<S: Scalar>(v: &Vec3<S>, w: &Vec3<S>, a: &Vec3<S>, b: &Vec3<S>) -> bool {
    if orient3d(v, a, b, w) != Sign::Zero {
        return false;
    }
    let axis = drop_axis(&triangle_normal(v, a, b));
    let ab = orient2d(v, a, b, axis);
    let aw = orient2d(v, a, w, axis);
    let bw = orient2d(v, b, w, axis);
    (aw == ab || aw == Sign::Zero) && (bw == ab.flip() || bw == Sign::Zero)
}

/// Exact classification of how two closed triangles intersect, decided from
/// coordinates alone.
pub fn triangles_classify<S: Scalar>(
    t1: &[Vec3<S>; 3],
    t2: &[Vec3<S>; 3],
) -> Result<TriContact, ExactError> {
    if is_degenerate_triangle(t1) || is_degenerate_triangle(t2) {
        return Err(ExactError::DegenerateTriangle);
    }
    let mut shared: Vec<(usize, usize)> = Vec::new();
    for (i, p) in t1.iter().enumerate() {
        for (j, q) in t2.iter().enumerate() {
            if p == q {
                shared.push((i, j));
            }
        }
    }
    let contact = match shared.len() {
        3 => TriContact::Identical,
        2 => {
            let u = &t1[shared[0].0];
            let v = &t1[shared[1].0];
            let o1 = &t1[3 - shared[0].0 - shared[1].0];
            let o2 = &t2[3 - shared[0].1 - shared[1].1];
            if orient3d(&t1[0], &t1[1], &t1[2], o2) != Sign::Zero {
                TriContact::SharedEdge
            } else {
                let axis = drop_axis(&triangle_normal(&t1[0], &t1[1], &t1[2]));
                if orient2d(u, v, o1, axis) == orient2d(u, v, o2, axis) {
                    TriContact::Improper
                } else {
                    TriContact::SharedEdge
                }
            }
        }
        1 => {
            let (i, j) = shared[0];
            let v = &t1[i];
            let (a1, b1) = (&t1[(i + 1) % 3], &t1[(i + 2) % 3]);
            let (a2, b2) = (&t2[(j + 1) % 3], &t2[(j + 2) % 3]);
            let improper = segment_meets_triangle(a1, b1, t2)
                || segment_meets_triangle(a2, b2, t1)
                || leaves_vertex_into(v, a1, a2, b2)
                || leaves_vertex_into(v, b1, a2, b2)
                || leaves_vertex_into(v, a2, a1, b1)
                || leaves_vertex_into(v, b2, a1, b1);
            if improper {
                TriContact::Improper
            } else {
                TriContact::SharedVertex
            }
        }
        _ => {
            let meets = (0..3).any(|k| segment_meets_triangle(&t1[k], &t1[(k + 1) % 3], t2))
                || (0..3).any(|k| segment_meets_triangle(&t2[k], &t2[(k + 1) % 3], t1));
            if meets {
                TriContact::Improper
            } else {
                TriContact::Disjoint
            }
        }
    };
    Ok(contact)
}

const TET_FACES: [[usize; 4]; 4] = [[1, 2, 3, 0], [0, 3, 2, 1], [0, 1, 3, 2], [0, 2, 1, 3]];

/// Whether some face plane of `a`, weakly, has all of `b` on its far side.
fn face_separates<S: Scalar>(a: &[Vec3<S>; 4], b: &[Vec3<S>; 4]) -> bool {
    TET_FACES.iter().any(|f| {
        let own = orient3d(&a[f[0]], &a[f[1]], &a[f[2]], &a[f[3]]);
        b.iter()
            .all(|p| orient3d(&a[f[0]], &a[f[1]], &a[f[2]], p) != own)
    })
}

const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn edge_pair_separates<S: Scalar>(a: &[Vec3<S>; 4], b: &[Vec3<S>; 4]) -> bool {
    for &(i, j) in &TET_EDGES {
        let e = a[j].sub(&a[i]);
        for &(k, l) in &TET_EDGES {
            let n = e.cross(&b[l].sub(&b[k]));
            if n.is_zero() {
                continue;
            }
            let side = |p: &Vec3<S>| n.dot(&p.sub(&a[i])).sign();
            let sa: Vec<Sign> = a.iter().map(side).collect();
            let sb: Vec<Sign> = b.iter().map(side).collect();
            let a_neg = !sa.contains(&Sign::Positive);
            let a_pos = !sa.contains(&Sign::Negative);
            let b_neg = !sb.contains(&Sign::Positive);
            let b_pos = !sb.contains(&Sign::Negative);
            if (a_neg && b_pos) || (a_pos && b_neg) {
                return true;
            }
        }
    }
    false
}

/// Whether two closed, nondegenerate tetrahedra have disjoint interiors,
/// decided by searching for a weakly separating plane among the face planes
/// and the edge-pair planes.
pub fn tets_classify<S: Scalar>(
    a: &[Vec3<S>; 4],
    b: &[Vec3<S>; 4],
) -> Result<TetContact, ExactError> {
    if is_degenerate_tet(a) || is_degenerate_tet(b) {
        return Err(ExactError::DegenerateTet);
    }
    if face_separates(a, b) || face_separates(b, a) || edge_pair_separates(a, b) {
        Ok(TetContact::InteriorsDisjoint)
    } else {
        Ok(TetContact::ImproperOverlap)
    }
}

/// Location of `p` relative to the closed tetrahedron `t`.
pub fn point_in_tet<S: Scalar>(p: &Vec3<S>, t: &[Vec3<S>; 4]) -> Result<Location, ExactError> {
    if is_degenerate_tet(t) {
        return Err(ExactError::DegenerateTet);
    }
    let mut on_face = false;
    for f in &TET_FACES {
        let own = orient3d(&t[f[0]], &t[f[1]], &t[f[2]], &t[f[3]]);
        let s = orient3d(&t[f[0]], &t[f[1]], &t[f[2]], p);
        if s == own.flip() {
            return Ok(Location::Outside);
        }
        if s == Sign::Zero {
            on_face = true;
        }
    }
    Ok(if on_face { Location::Boundary } else { Location::Inside })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pt, Point3, Rat};

    fn tri(a: Point3, b: Point3, c: Point3) -> [Point3; 3] {
        [a, b, c]
    }

    fn unit_tet() -> [Point3; 4] {
        [pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]
    }

    #[test]
    fn orient3d_examples() {
        let t = unit_tet();
        assert_eq!(orient3d(&t[0], &t[1], &t[2], &t[3]), Sign::Positive);
        assert_eq!(
            orient3d(&pt(0, 0, 0), &pt(1, 0, 0), &pt(2, 0, 0), &pt(3, 0, 0)),
            Sign::Zero
        );
        assert_eq!(orient3d(&t[1], &t[0], &t[2], &t[3]), Sign::Negative);
        assert_eq!(orient3d(&t[0], &t[1], &t[3], &t[2]), Sign::Negative);
    }

    #[test]
    fn volume_examples() {
        let t = unit_tet();
        assert_eq!(tet_volume6(&t[0], &t[1], &t[2], &t[3]), Rat::one());
        assert_eq!(
            tet_volume6(&pt(0, 0, 0), &pt(2, 0, 0), &pt(0, 2, 0), &pt(0, 0, 2)),
            Rat::from_int(8)
        );
        assert!(tet_volume6(&pt(0, 0, 0), &pt(1, 0, 0), &pt(0, 1, 0), &pt(5, 7, 0)).is_zero());
    }

    #[test]
    fn faces_of_a_tet_share_an_edge() {
        let t = unit_tet();
        let f1 = tri(t[0].clone(), t[1].clone(), t[2].clone());
        let f2 = tri(t[0].clone(), t[1].clone(), t[3].clone());
        assert_eq!(triangles_classify(&f1, &f2).unwrap(), TriContact::SharedEdge);
        assert_eq!(triangles_classify(&f1, &f1).unwrap(), TriContact::Identical);
    }

    #[test]
    fn translated_triangles_are_disjoint() {
        let f1 = tri(pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0));
        let f2 = tri(pt(5, 0, 1), pt(6, 0, 1), pt(5, 1, 1));
        assert_eq!(triangles_classify(&f1, &f2).unwrap(), TriContact::Disjoint);
    }

    #[test]
    fn rotated_copy_through_interior_is_improper() {
        // Rotate the triangle 90 degrees about the x-axis line y = 1, z = 0,
        // which passes through its interior.
        let f1 = tri(pt(0, 0, 0), pt(4, 0, 0), pt(0, 4, 0));
        let f2 = tri(pt(0, 1, -1), pt(4, 1, -1), pt(0, 1, 3));
        assert_eq!(triangles_classify(&f1, &f2).unwrap(), TriContact::Improper);
    }

    #[test]
    fn touching_at_a_common_vertex_only() {
        let f1 = tri(pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0));
        let f2 = tri(pt(0, 0, 0), pt(-1, 0, 0), pt(0, -1, 0));
        assert_eq!(triangles_classify(&f1, &f2).unwrap(), TriContact::SharedVertex);
        // coplanar, shared vertex, overlapping wedges
        let f3 = tri(pt(0, 0, 0), pt(1, 1, 0), pt(2, 1, 0));
        assert_eq!(triangles_classify(&f1, &f3).unwrap(), TriContact::Improper);
        // shared vertex, the other triangle pokes through along an edge
        let f4 = tri(pt(0, 0, 0), pt(1, 1, 1), pt(1, 1, -1));
        assert_eq!(triangles_classify(&f1, &f4).unwrap(), TriContact::Improper);
    }

    #[test]
    fn coplanar_shared_edge_folded_over_is_improper() {
        let f1 = tri(pt(0, 0, 0), pt(2, 0, 0), pt(0, 2, 0));
        let f2 = tri(pt(0, 0, 0), pt(2, 0, 0), pt(1, 1, 0));
        assert_eq!(triangles_classify(&f1, &f2).unwrap(), TriContact::Improper);
        let f3 = tri(pt(0, 0, 0), pt(2, 0, 0), pt(1, -1, 0));
        assert_eq!(triangles_classify(&f1, &f3).unwrap(), TriContact::SharedEdge);
    }

    #[test]
    fn degenerate_triangle_is_rejected() {
        let f1 = tri(pt(0, 0, 0), pt(1, 0, 0), pt(2, 0, 0));
        let f2 = tri(pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0));
        assert_eq!(triangles_classify(&f1, &f2), Err(ExactError::DegenerateTriangle));
    }

    #[test]
    fn tets_sharing_a_face() {
        let a = unit_tet();
        let b = [pt(1, 1, 1), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)];
        assert_eq!(tets_classify(&a, &b).unwrap(), TetContact::InteriorsDisjoint);
        let c = [pt(-1, -1, -1), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)];
        assert_eq!(tets_classify(&a, &c).unwrap(), TetContact::ImproperOverlap);
    }

    #[test]
    fn shrunken_copy_overlaps() {
        let big = [pt(0, 0, 0), pt(8, 0, 0), pt(0, 8, 0), pt(0, 0, 8)];
        let small = [pt(1, 1, 1), pt(3, 1, 1), pt(1, 3, 1), pt(1, 1, 3)];
        assert_eq!(tets_classify(&big, &small).unwrap(), TetContact::ImproperOverlap);
        assert_eq!(tets_classify(&small, &big).unwrap(), TetContact::ImproperOverlap);
    }

    #[test]
    fn crossed_edges_need_an_edge_pair_plane() {
        // No face plane separates these wedges; the plane through both ridge
        // directions does.
        let a = [pt(-2, 0, 0), pt(2, 0, 0), pt(0, 1, -2), pt(0, -1, -2)];
        let b = [pt(0, -2, 1), pt(0, 2, 1), pt(1, 0, 3), pt(-1, 0, 3)];
        assert!(!face_separates(&a, &b) && !face_separates(&b, &a));
        assert_eq!(tets_classify(&a, &b).unwrap(), TetContact::InteriorsDisjoint);
        let lowered = [pt(0, -2, -1), pt(0, 2, -1), pt(1, 0, 1), pt(-1, 0, 1)];
        assert_eq!(tets_classify(&a, &lowered).unwrap(), TetContact::ImproperOverlap);
    }

    #[test]
    fn point_locations() {
        let t = [pt(0, 0, 0), pt(4, 0, 0), pt(0, 4, 0), pt(0, 0, 4)];
        assert_eq!(point_in_tet(&pt(1, 1, 1), &t).unwrap(), Location::Inside);
        assert_eq!(point_in_tet(&pt(4, 0, 0), &t).unwrap(), Location::Boundary);
        assert_eq!(point_in_tet(&pt(2, 2, 0), &t).unwrap(), Location::Boundary);
        assert_eq!(point_in_tet(&pt(9, 9, 9), &t).unwrap(), Location::Outside);
        assert_eq!(point_in_tet(&pt(1, 1, -5), &t).unwrap(), Location::Outside);
    }

    #[test]
    fn lattice_and_rational_agree_on_orientation() {
        let a = Vec3::new(0i128, 0, 0);
        let b = Vec3::new(1i128, 0, 0);
        let c = Vec3::new(0i128, 1, 0);
        let d = Vec3::new(0i128, 0, 1);
        assert_eq!(orient3d(&a, &b, &c, &d), Sign::Positive);
    }
}
