use serde::{Deserialize, Serialize};

use super::decomposition::piece_mesh;
use super::{validate_decomposition, Decomposition, GraphError};
use crate::engine::{
    is_valid_triangulation, lower_bound, search, EngineError, SearchMode, SearchStatus, Tet, Triangulation,
};
use crate::surface::{validate, TriMesh};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MDivisionVerdict {
    MDivision,
    NotMDivision,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimumSource {
    LowerBound,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MDivision {
    pub verdict: MDivisionVerdict,
    /// Exact minimum of each piece; `None` where the budget ran out.
    pub piece_minima: Vec<Option<usize>>,
    pub piece_sum: Option<usize>,
    pub whole_minimum: Option<usize>,
    pub whole_minimum_source: Option<MinimumSource>,
    /// Union of the pieces' minimal triangulations, when all were found.
    pub union_witness: Option<Triangulation>,
}

/// Decides whether minimal triangulations of the pieces together form a
/// minimal triangulation of the whole mesh. The whole minimum is taken from
/// the genus bound when the union meets it, otherwise from exhaustive search.
pub fn check_m_division(mesh: &TriMesh, d: &Decomposition, budget: u64) -> Result<MDivision, GraphError> {
    let check = validate_decomposition(mesh, d, false)?;
    if let Some(defect) = check.defect {
        return Err(GraphError::InvalidDecomposition(defect));
    }
    let mut minima = Vec::with_capacity(d.pieces.len());
    let mut union = Vec::new();
    for (i, piece) in d.pieces.iter().enumerate() {
        let local = piece_mesh(mesh, piece, format!("{}-piece-{i}", d.mesh)).expect("validated piece");
        let r = search(&local, SearchMode::Exhaustive, budget)?;
        match (r.status, r.witness_min) {
            (SearchStatus::Exhausted, Some(w)) => {
                minima.push(r.t_min);
                for t in w.tets {
                    union.push(Tet::new(t.vertices().map(|v| piece.vertices[v]))?);
                }
            }
            _ => minima.push(None),
        }
    }
    let undecided = |minima, piece_sum, union_witness| MDivision {
        verdict: MDivisionVerdict::Undecided,
        piece_minima: minima,
        piece_sum,
        whole_minimum: None,
        whole_minimum_source: None,
        union_witness,
    };
    if minima.iter().any(Option::is_none) {
        return Ok(undecided(minima, None, None));
    }
    let sum: usize = minima.iter().flatten().sum();
    let witness = Triangulation::new(d.mesh.clone(), union);
    let joined = is_valid_triangulation(mesh, &witness.tets)?;
    if let Some(defect) = joined.defect {
        return Err(EngineError::InvalidWitness(defect).into());
    }
    let genus = validate(mesh)?.genus.filter(|g| *g >= 0).ok_or(EngineError::NoGenus)? as usize;
    let (whole, source) = if sum == lower_bound(mesh.n_vertices(), genus) {
        (sum, MinimumSource::LowerBound)
    } else {
        let r = search(mesh, SearchMode::Exhaustive, budget)?;
        match (r.status, r.t_min) {
            (SearchStatus::Exhausted, Some(t)) => (t, MinimumSource::Exhaustive),
            _ => return Ok(undecided(minima, Some(sum), Some(witness))),
        }
    };
    let verdict = if whole == sum { MDivisionVerdict::MDivision } else { MDivisionVerdict::NotMDivision };
    Ok(MDivision {
        verdict,
        piece_minima: minima,
        piece_sum: Some(sum),
        whole_minimum: Some(whole),
        whole_minimum_source: Some(source),
        union_witness: Some(witness),
    })
}
