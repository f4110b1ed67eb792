//! Inner tetrahedra, triangulation checks, exhaustive search over
//! triangulations and the genus lower bound on their size.

mod inner;
mod search;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::ExactError;
use crate::surface::{validate, SurfaceError, TriMesh};

pub use inner::candidate_tets;
pub use search::{search, SearchMode, SearchResult, SearchStatus, DEFAULT_BUDGET};
pub use verify::{is_valid_triangulation, Defect, TriangulationCheck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("mesh has no coordinates; only combinatorial bookkeeping applies")]
    AbstractMesh,
    #[error("tetrahedron {0:?} repeats a vertex")]
    RepeatedTetIndex([usize; 4]),
    #[error("witness is not a valid triangulation: {0}")]
    InvalidWitness(Defect),
    #[error("mesh genus is undefined")]
    NoGenus,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A tetrahedron on mesh vertices, indices stored in increasing order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 4]", into = "[usize; 4]")]
pub struct Tet([usize; 4]);

impl Tet {
    pub fn new(v: [usize; 4]) -> Result<Tet, EngineError> {
        let mut s = v;
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(EngineError::RepeatedTetIndex(v));
        }
        Ok(Tet(s))
    }

    pub fn vertices(&self) -> [usize; 4] {
        self.0
    }

    /// The four triangles, each sorted, paired with the opposite vertex.
    pub fn faces(&self) -> [([usize; 3], usize); 4] {
        let [a, b, c, d] = self.0;
        [([b, c, d], a), ([a, c, d], b), ([a, b, d], c), ([a, b, c], d)]
    }
}

impl TryFrom<[usize; 4]> for Tet {
    type Error = EngineError;
    fn try_from(v: [usize; 4]) -> Result<Tet, EngineError> {
        Tet::new(v)
    }
}

impl From<Tet> for [usize; 4] {
    fn from(t: Tet) -> [usize; 4] {
        t.0
    }
}

impl fmt::Debug for Tet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A claimed 3-triangulation of a mesh. Tets are kept in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub mesh: String,
    pub tets: Vec<Tet>,
}

impl Triangulation {
    pub fn new(mesh: impl Into<String>, mut tets: Vec<Tet>) -> Triangulation {
        tets.sort();
        Triangulation { mesh: mesh.into(), tets }
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangulation serializes")
    }

    pub fn from_json(text: &str) -> Result<Triangulation, serde_json::Error> {
        let t: Triangulation = serde_json::from_str(text)?;
        Ok(Triangulation::new(t.mesh, t.tets))
    }
}

/// Smallest possible number of tetrahedra in a triangulation of a genus-`p`
/// polyhedron with `n` vertices: `n + 3(p - 1)`.
pub fn lower_bound(n: usize, p: usize) -> usize {
    (n + 3 * p).saturating_sub(3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalityVerdict {
    ProvenMinimal,
    ValidButUnproven,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: MinimalityVerdict,
    pub size: usize,
    pub lower_bound: usize,
    pub vertices: usize,
    pub genus: usize,
}

/// Checks the witness and compares its size with [`lower_bound`]; a witness
/// meeting the bound is a minimal triangulation.
pub fn certify_minimal(mesh: &TriMesh, witness: &Triangulation) -> Result<Certificate, EngineError> {
    let report = validate(mesh)?;
    let genus = report.genus.filter(|g| *g >= 0).ok_or(EngineError::NoGenus)? as usize;
    let check = is_valid_triangulation(mesh, &witness.tets)?;
    if let Some(d) = check.defect {
        return Err(EngineError::InvalidWitness(d));
    }
    let bound = lower_bound(mesh.n_vertices(), genus);
    let verdict = if witness.len() == bound {
        MinimalityVerdict::ProvenMinimal
    } else {
        MinimalityVerdict::ValidButUnproven
    };
    Ok(Certificate { verdict, size: witness.len(), lower_bound: bound, vertices: mesh.n_vertices(), genus })
}
