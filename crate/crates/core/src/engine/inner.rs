use super::{EngineError, Tet};
use crate::exact::{
    is_degenerate_tet, point_in_tet, triangles_classify, ExactError, Location, Scalar, TriContact, Vec3,
};
use crate::surface::{expected_contact, locate_among, tri, with_points, Face, TriMesh};

/// Axis-aligned bounding box, used to skip pairs that are trivially apart.
#[derive(Clone, Debug)]
pub(crate) struct Bbox<S> {
    lo: [S; 3],
    hi: [S; 3],
}

impl<S: Scalar> Bbox<S> {
    pub(crate) fn of(pts: &[Vec3<S>]) -> Bbox<S> {
        let axis = |k: usize| pts.iter().map(move |p| p.coord(k).clone());
        let lo = [0, 1, 2].map(|k| axis(k).min().expect("non-empty point set"));
        let hi = [0, 1, 2].map(|k| axis(k).max().expect("non-empty point set"));
        Bbox { lo, hi }
    }

    /// True when the boxes do not even touch.
    pub(crate) fn apart(&self, o: &Bbox<S>) -> bool {
        (0..3).any(|k| self.hi[k] < o.lo[k] || o.hi[k] < self.lo[k])
    }

    /// True when the boxes have disjoint interiors.
    pub(crate) fn interiors_apart(&self, o: &Bbox<S>) -> bool {
        (0..3).any(|k| self.hi[k] <= o.lo[k] || o.hi[k] <= self.lo[k])
    }
}

/// The closed solid bounded by an embedded mesh, with face triangles and
/// their boxes precomputed.
pub(crate) struct Solid<'a, S> {
    pub(crate) pts: &'a [Vec3<S>],
    pub(crate) faces: &'a [Face],
    tris: Vec<[Vec3<S>; 3]>,
    boxes: Vec<Bbox<S>>,
}

impl<'a, S: Scalar> Solid<'a, S> {
    pub(crate) fn new(pts: &'a [Vec3<S>], faces: &'a [Face]) -> Self {
        let tris: Vec<_> = faces.iter().map(|f| tri(pts, f)).collect();
        let boxes = tris.iter().map(|t| Bbox::of(t)).collect();
        Solid { pts, faces, tris, boxes }
    }

    pub(crate) fn corners(&self, t: &Tet) -> [Vec3<S>; 4] {
        t.vertices().map(|v| self.pts[v].clone())
    }

    /// Whether the closed tetrahedron lies in the closed solid and meets the
    /// boundary only in faces, edges and vertices it shares with the mesh.
    pub(crate) fn is_inner(&self, t: &Tet) -> Result<bool, ExactError> {
        let q = self.corners(t);
        if is_degenerate_tet(&q) {
            return Ok(false);
        }
        let verts = t.vertices();
        for (v, p) in self.pts.iter().enumerate() {
            if !verts.contains(&v) && point_in_tet(p, &q)? == Location::Inside {
                return Ok(false);
            }
        }
        let tbox = Bbox::of(&q);
        for (face, _) in t.faces() {
            let ft = tri(self.pts, &face);
            for (i, mf) in self.faces.iter().enumerate() {
                let expected = expected_contact(&face, mf);
                if expected == TriContact::Disjoint && tbox.apart(&self.boxes[i]) {
                    continue;
                }
                if triangles_classify(&ft, &self.tris[i])? != expected {
                    return Ok(false);
                }
            }
        }
        let sum = q.iter().fold(Vec3::zero(), |acc, p| acc.add(p));
        let centroid = Vec3::new(sum.x.div_int(4), sum.y.div_int(4), sum.z.div_int(4));
        Ok(locate_among(&self.tris, &centroid, 0) != Location::Outside)
    }

    pub(crate) fn candidates(&self) -> Result<Vec<Tet>, ExactError> {
        let n = self.pts.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let t = Tet([a, b, c, d]);
                        if self.is_inner(&t)? {
                            out.push(t);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// All inner tetrahedra of an embedded closed mesh, in lexicographic order.
pub fn candidate_tets(mesh: &TriMesh) -> Result<Vec<Tet>, EngineError> {
    if !mesh.is_geometric() {
        return Err(EngineError::AbstractMesh);
    }
    let emb = mesh.embedding()?;
    Ok(with_points!(&emb, |pts| Solid::new(pts, mesh.faces()).candidates()?))
}
