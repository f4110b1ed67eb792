//! Generators for the polyhedron families: simple polyhedra, the twisted
//! prism, the seven-vertex torus, a cyclic three-block torus, and toroids
//! of higher genus built by gluing.

mod combinatorial;
mod gluing;
mod simple;
mod toroids;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congraph::{ConnectionGraph, Decomposition, Piece};
use crate::engine::{EngineError, Tet, Triangulation};
use crate::exact::{orient3d, ExactError, Point3, Rat, Sign, Vec3};
use crate::surface::{SurfaceError, TriMesh, Violation};

pub use combinatorial::{chain_csaszar_shared_tet, cycle_closure, edge_count_feasible};
pub use gluing::{attach_simple, chain_csaszar, contact_placement, glue_on_face};
pub use simple::{bipyramid, pyramid, schoenhardt, Bipyramid, DEFAULT_TWIST};
pub use toroids::{csaszar, toroid_p9};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("twist is too large: {0}")]
    TwistTooLarge(String),
    #[error("placement does not map the contact face exactly onto the target face")]
    PlacementMismatch,
    #[error("glued mesh is not embedded: {0:?}")]
    NotEmbedded(Option<Violation>),
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("no usable contact face: {0}")]
    NoContactFace(String),
    #[error("operation needs coordinates but the construction is abstract")]
    AbstractMesh,
    #[error("no surface is realized for this construction, only its counts")]
    NotRealized,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A generated polyhedron with what is claimed about it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionOutput {
    pub family: String,
    /// Vertex count; also meaningful when no surface is realized.
    pub vertices: usize,
    #[serde(skip)]
    pub mesh: Option<TriMesh>,
    pub witness: Option<Triangulation>,
    pub decomposition: Option<Decomposition>,
    pub graph: Option<ConnectionGraph>,
    pub claimed_genus: usize,
    pub claimed_tmin: Option<usize>,
    /// Tetrahedra of an abstract solid, for constructions without coordinates.
    pub combinatorial_tets: Option<Vec<Tet>>,
}

impl ConstructionOutput {
    pub(crate) fn geometric(family: impl Into<String>, mesh: TriMesh, genus: usize) -> ConstructionOutput {
        ConstructionOutput {
            family: family.into(),
            vertices: mesh.n_vertices(),
            mesh: Some(mesh),
            witness: None,
            decomposition: None,
            graph: None,
            claimed_genus: genus,
            claimed_tmin: None,
            combinatorial_tets: None,
        }
    }

    pub fn mesh(&self) -> Result<&TriMesh, ConstructionError> {
        self.mesh.as_ref().ok_or(ConstructionError::NotRealized)
    }

    /// The mesh, refusing abstract ones.
    pub fn geometric_mesh(&self) -> Result<&TriMesh, ConstructionError> {
        self.mesh.as_ref().filter(|m| m.is_geometric()).ok_or(ConstructionError::AbstractMesh)
    }

    pub(crate) fn with_witness(mut self, tets: Vec<Tet>) -> Self {
        let label = self.mesh.as_ref().map_or_else(|| self.family.clone(), |m| m.label().to_string());
        self.claimed_tmin = Some(tets.len());
        self.witness = Some(Triangulation::new(label, tets));
        self
    }

    /// Sets the decomposition and the graph of connection it induces.
    pub(crate) fn with_decomposition(mut self, pieces: Vec<Piece>) -> Self {
        let label = self.mesh.as_ref().map_or_else(|| self.family.clone(), |m| m.label().to_string());
        let d = Decomposition { mesh: label, pieces };
        self.graph = Some(crate::congraph::build_graph(&d));
        self.decomposition = Some(d);
        self
    }
}

/// Decomposition whose pieces are the given tetrahedra.
pub(crate) fn tet_pieces(tets: &[Tet]) -> Vec<Piece> {
    tets.iter()
        .map(|t| Piece { vertices: t.vertices().to_vec(), faces: t.faces().iter().map(|(f, _)| *f).collect() })
        .collect()
}

/// Rational point on the unit circle near angle `2 pi k / m`, from the
/// rational parametrization with the half-angle tangent rounded to 1/64.
pub(crate) fn circle_point(k: usize, m: usize) -> (Rat, Rat) {
    if 2 * k == m {
        return (Rat::from_int(-1), Rat::zero());
    }
    let half = std::f64::consts::PI * k as f64 / m as f64;
    let half = if 2 * k > m { half - std::f64::consts::PI } else { half };
    let t = Rat::from_f64_grid(half.tan(), 64);
    let one = Rat::one();
    let tt = &t * &t;
    let d = &one + &tt;
    (&(&one - &tt) / &d, &(&t + &t) / &d)
}

fn hull_facets_where(mesh: &TriMesh, ok: impl Fn(Sign) -> bool) -> Result<Vec<usize>, ConstructionError> {
    let c = mesh.coords().ok_or(ConstructionError::AbstractMesh)?;
    Ok(mesh
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            (0..c.len()).filter(|v| !f.contains(v)).all(|v| ok(orient3d(&c[f[0]], &c[f[1]], &c[f[2]], &c[v])))
        })
        .map(|(i, _)| i)
        .collect())
}

/// Faces whose plane has every other mesh vertex strictly on the inner
/// side. Assumes outward orientation.
pub fn strict_hull_facets(mesh: &TriMesh) -> Result<Vec<usize>, ConstructionError> {
    hull_facets_where(mesh, |s| s == Sign::Negative)
}

/// Faces whose plane has no mesh vertex on the outer side. Assumes outward
/// orientation.
pub fn hull_facets(mesh: &TriMesh) -> Result<Vec<usize>, ConstructionError> {
    hull_facets_where(mesh, |s| s != Sign::Positive)
}

pub(crate) fn point(x: Rat, y: Rat, z: Rat) -> Point3 {
    Vec3::new(x, y, z)
}
