//! Toroids described only by their tetrahedra and counts.

use std::collections::{BTreeMap, BTreeSet};

use super::{csaszar, ConstructionError, ConstructionOutput};
use crate::congraph::fixtures::heptagon_ring;
use crate::congraph::ConnectionGraph;
use crate::engine::Tet;
use crate::surface::{validate, TriMesh};

/// Whether a closed orientable surface of genus `genus` can be a simplicial
/// complex on `n` vertices as far as edge counting goes:
/// `3(n - 2 + 2 genus)` edges must fit into the complete graph.
pub fn edge_count_feasible(n: usize, genus: usize) -> bool {
    3 * (n + 2 * genus) <= n * (n - 1) / 2 + 6
}

/// Faces of a tet complex with the number of tets containing each.
fn face_counts(tets: &[Tet]) -> BTreeMap<[usize; 3], usize> {
    let mut counts = BTreeMap::new();
    for t in tets {
        for (f, _) in t.faces() {
            *counts.entry(f).or_insert(0) += 1;
        }
    }
    counts
}

/// Boundary surface of a tet complex when it is a closed orientable
/// manifold of the given genus and no face lies in three or more tets.
fn boundary_surface(label: &str, n: usize, tets: &[Tet], genus: i64) -> Option<TriMesh> {
    let counts = face_counts(tets);
    if counts.values().any(|&c| c > 2) {
        return None;
    }
    let faces: Vec<[usize; 3]> = counts.into_iter().filter(|&(_, c)| c == 1).map(|(f, _)| f).collect();
    let mesh = TriMesh::normalized(label, n, None, faces).ok()?;
    let r = validate(&mesh).ok()?;
    (r.manifold && r.orientable && r.genus == Some(genus)).then_some(mesh)
}

/// Tets as nodes, joined when they share a face.
fn tet_dual(tets: &[Tet]) -> ConnectionGraph {
    let mut owners: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
    for (i, t) in tets.iter().enumerate() {
        for (f, _) in t.faces() {
            owners.entry(f).or_default().push(i);
        }
    }
    let edges = owners.values().filter(|o| o.len() == 2).map(|o| [o[0], o[1]]).collect();
    ConnectionGraph::new(tets.len(), edges)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| v[i] != v[j])) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// `p` copies of the seven-vertex torus's triangulation, each consecutive
/// pair sharing one tetrahedron: `3p + 4` vertices, `6p + 1` tets, genus `p`.
/// Only the tet complex is built; its boundary is an abstract surface.
pub fn chain_csaszar_shared_tet(p: usize) -> Result<ConstructionOutput, ConstructionError> {
    if p < 2 {
        return Err(ConstructionError::BadParams("sharing a tet needs at least two tori".into()));
    }
    let unit = csaszar()?;
    let unit_tets = unit.witness.as_ref().expect("torus comes with its triangulation").tets.clone();
    let mut tets = unit_tets.clone();
    let mut n = 7;
    let mut latest: Vec<Tet> = unit_tets.clone();
    let mut boundary = None;
    for copy in 1..p {
        let label = format!("chain-shared-tet-{}", copy + 1);
        let found = latest.iter().find_map(|host| {
            unit_tets.iter().find_map(|guest| {
                permutations4().into_iter().find_map(|perm| {
                    let (hv, gv) = (host.vertices(), guest.vertices());
                    let mut map = [usize::MAX; 7];
                    for k in 0..4 {
                        map[gv[k]] = hv[perm[k]];
                    }
                    let mut next = n;
                    for m in map.iter_mut().filter(|m| **m == usize::MAX) {
                        *m = next;
                        next += 1;
                    }
                    let copied: Vec<Tet> =
                        unit_tets.iter().map(|t| Tet::new(t.vertices().map(|v| map[v])).expect("bijection")).collect();
                    let mut union: Vec<Tet> = tets.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
                    union.extend(copied.iter().filter(|t| !tets.contains(t)));
                    if union.len() != tets.len() + 6 {
                        return None;
                    }
                    let mesh = boundary_surface(&label, next, &union, copy as i64 + 1)?;
                    Some((union, copied, mesh, next))
                })
            })
        });
        let (union, copied, mesh, next) = found.ok_or_else(|| {
            ConstructionError::NoContactFace(format!("no tet of copy {copy} can be shared with a new torus"))
        })?;
        tets = union;
        latest = copied;
        n = next;
        boundary = Some(mesh);
    }
    let mesh = boundary.expect("p >= 2");
    let graph = tet_dual(&tets);
    tets.sort_unstable();
    Ok(ConstructionOutput {
        family: "chain-shared-tet".into(),
        vertices: n,
        mesh: Some(mesh),
        witness: None,
        decomposition: None,
        graph: Some(graph),
        claimed_genus: p,
        claimed_tmin: Some(tets.len()),
        combinatorial_tets: Some(tets),
    })
}

/// The shared-tet chain closed into a ring of `p` tori: `3p` vertices, genus
/// `p + 1`, `6p` tets. Only the counts and the graph of connection are
/// produced; for `p = 3` no simplicial surface with these counts exists.
pub fn cycle_closure(p: usize) -> Result<ConstructionOutput, ConstructionError> {
    if p < 3 {
        return Err(ConstructionError::BadParams("a ring needs at least three tori".into()));
    }
    Ok(ConstructionOutput {
        family: "cycle-closure".into(),
        vertices: 3 * p,
        mesh: None,
        witness: None,
        decomposition: None,
        graph: Some(heptagon_ring(p)),
        claimed_genus: p + 1,
        claimed_tmin: Some(6 * p),
        combinatorial_tets: None,
    })
}
