//! Closed orientable triangulated surfaces: topology checks, embedding
//! checks, enclosed volume, point location and the R-OFF file format.

mod geometry;
mod off;
mod topology;

use std::collections::HashSet;

use thiserror::Error;

use crate::exact::{ExactError, Point3};

pub(crate) use geometry::{expected_contact, locate_among, signed_volume6, tri, with_points, Embedding};
pub use geometry::{
    edge_graph_is_complete, enclosed_volume6, is_embedded, point_in_solid, point_in_solid_with_ray, reflex_edges,
    EmbeddingCheck,
    Violation,
};
pub use off::{parse_off, parse_off_with, write_off, FaceImport};
pub use topology::{validate, SurfaceReport};

pub type Face = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("mesh has no faces")]
    Empty,
    #[error("face {face} references vertex {index} but the mesh has {n} vertices")]
    IndexOutOfRange { face: usize, index: usize, n: usize },
    #[error("face {face} repeats a vertex")]
    RepeatedIndex { face: usize },
    #[error("faces {0} and {1} have the same vertex set")]
    DuplicateFace(usize, usize),
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("surface is not closed: edge {0:?} lies in a single face")]
    NotClosed([usize; 2]),
    #[error("surface is not a manifold at edge {0:?}: it lies in {1} faces")]
    NotManifoldEdge([usize; 2], usize),
    #[error("surface is not a manifold at vertex {0}: its link is not a single cycle")]
    NotManifoldVertex(usize),
    #[error("surface is not consistently oriented at edge {0:?}")]
    NotOrientable([usize; 2]),
    #[error("surface is not connected")]
    Disconnected,
    #[error("vertices {0} and {1} have identical coordinates")]
    DuplicateCoordinates(usize, usize),
    #[error("face {0} is degenerate")]
    DegenerateFace(usize),
    #[error("mesh has no coordinates")]
    MissingCoordinates,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: face with {arity} vertices, only triangles are accepted")]
    NonTriangularFace { line: usize, arity: usize },
    #[error("line {line}: polygon face is not planar and convex, cannot fan-triangulate")]
    NotConvexPlanarFace { line: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A triangulated closed surface on vertices `0..n_vertices`, optionally with
/// exact coordinates. Meshes without coordinates are abstract complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMesh {
    label: String,
    n_vertices: usize,
    coords: Option<Vec<Point3>>,
    faces: Vec<Face>,
}

pub(crate) fn sorted3(f: &Face) -> Face {
    let mut s = *f;
    s.sort_unstable();
    s
}

impl TriMesh {
    /// Checks index-level well-formedness only; topology is checked by
    /// [`validate`]. Face orientation is taken as given.
    pub fn new(
        label: impl Into<String>,
        n_vertices: usize,
        coords: Option<Vec<Point3>>,
        faces: Vec<Face>,
    ) -> Result<TriMesh, SurfaceError> {
        if faces.is_empty() {
            return Err(SurfaceError::Empty);
        }
        if let Some(c) = &coords {
            if c.len() != n_vertices {
                return Err(SurfaceError::CoordinateCount { expected: n_vertices, got: c.len() });
            }
        }
        let mut seen = std::collections::HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            if let Some(&index) = f.iter().find(|&&v| v >= n_vertices) {
                return Err(SurfaceError::IndexOutOfRange { face: i, index, n: n_vertices });
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(SurfaceError::RepeatedIndex { face: i });
            }
            if let Some(j) = seen.insert(sorted3(f), i) {
                return Err(SurfaceError::DuplicateFace(j, i));
            }
        }
        Ok(TriMesh { label: label.into(), n_vertices, coords, faces })
    }

    /// Like [`TriMesh::new`], then makes the face orientation consistent and,
    /// when coordinates exist, outward (positive enclosed volume).
    pub fn normalized(
        label: impl Into<String>,
        n_vertices: usize,
        coords: Option<Vec<Point3>>,
        faces: Vec<Face>,
    ) -> Result<TriMesh, SurfaceError> {
        let mut m = TriMesh::new(label, n_vertices, coords, faces)?;
        m.normalize_orientation()?;
        Ok(m)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn coords(&self) -> Option<&[Point3]> {
        self.coords.as_deref()
    }

    pub fn is_geometric(&self) -> bool {
        self.coords.is_some()
    }

    pub fn require_coords(&self) -> Result<&[Point3], SurfaceError> {
        self.coords().ok_or(SurfaceError::MissingCoordinates)
    }

    /// Sorted vertex triples of all faces.
    pub fn face_keys(&self) -> HashSet<Face> {
        self.faces.iter().map(sorted3).collect()
    }

    /// Consistently orients faces by a breadth-first walk over shared edges,
    /// then flips everything if the enclosed signed volume is negative.
    pub fn normalize_orientation(&mut self) -> Result<(), SurfaceError> {
        topology::orient_faces(&mut self.faces)?;
        if let Some(c) = &self.coords {
            if geometry::signed_volume6(c, &self.faces).signum() < 0 {
                for f in &mut self.faces {
                    f.swap(1, 2);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn embedding(&self) -> Result<Embedding, SurfaceError> {
        Ok(Embedding::new(self.require_coords()?))
    }
}
