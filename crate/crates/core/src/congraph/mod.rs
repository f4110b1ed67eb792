//! Convex decompositions of polyhedra and their graphs of connection.

mod decomposition;
pub mod fixtures;
mod mdivision;

use std::collections::BTreeMap;

use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::EngineError;
use crate::surface::SurfaceError;

pub use decomposition::{validate_decomposition, DecompositionCheck, DecompositionDefect};
pub use mdivision::{check_m_division, MDivision, MDivisionVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("decomposition is invalid: {0}")]
    InvalidDecomposition(DecompositionDefect),
    #[error("piece {0} is not a closed surface: {1}")]
    BadPiece(usize, SurfaceError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// One convex piece: its vertices (mesh indices) and its boundary triangles,
/// contact faces included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub vertices: Vec<usize>,
    pub faces: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub mesh: String,
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<Decomposition, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Sorted face -> pieces having it, in piece order.
    pub(crate) fn face_owners(&self) -> BTreeMap<[usize; 3], Vec<usize>> {
        let mut owners: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            for f in &piece.faces {
                owners.entry(crate::surface::sorted3(f)).or_default().push(i);
            }
        }
        owners
    }
}

/// Graph of connection: one node per piece, one edge per contact face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionGraph {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
    pub cycle_rank: usize,
}

impl ConnectionGraph {
    /// Builds a graph, computing its cycle rank. Panics on self-loops or
    /// edges to missing nodes.
    pub fn new(nodes: usize, edges: Vec<[usize; 2]>) -> ConnectionGraph {
        for e in &edges {
            assert!(e[0] != e[1] && e[0] < nodes && e[1] < nodes, "bad graph edge {e:?}");
        }
        let rank = edges.len() + components(nodes, &edges) - nodes;
        ConnectionGraph { nodes, edges, cycle_rank: rank }
    }

    pub fn is_connected(&self) -> bool {
        components(self.nodes, &self.edges) == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes];
        for e in &self.edges {
            d[e[0]] += 1;
            d[e[1]] += 1;
        }
        d
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    /// Reads graph JSON and recomputes the cycle rank, rejecting a stored
    /// value that disagrees.
    pub fn from_json(text: &str) -> Result<ConnectionGraph, String> {
        let g: ConnectionGraph = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if g.edges.iter().any(|e| e[0] == e[1] || e[0] >= g.nodes || e[1] >= g.nodes) {
            return Err("edge with a missing node or a self-loop".into());
        }
        let fresh = ConnectionGraph::new(g.nodes, g.edges.clone());
        if fresh.cycle_rank != g.cycle_rank {
            return Err(format!("stored cycle_rank {} but the graph has {}", g.cycle_rank, fresh.cycle_rank));
        }
        Ok(fresh)
    }

    fn to_petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::new_undirected();
        let ids: Vec<_> = (0..self.nodes).map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(ids[e[0]], ids[e[1]], ());
        }
        g
    }

    /// Graph isomorphism, parallel edges included.
    pub fn is_isomorphic(&self, other: &ConnectionGraph) -> bool {
        self.nodes == other.nodes
            && self.edges.len() == other.edges.len()
            && petgraph::algo::is_isomorphic(&self.to_petgraph(), &other.to_petgraph())
    }

    /// Same graph with node `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> ConnectionGraph {
        ConnectionGraph::new(self.nodes, self.edges.iter().map(|e| [perm[e[0]], perm[e[1]]]).collect())
    }
}

fn components(nodes: usize, edges: &[[usize; 2]]) -> usize {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = nodes;
    for e in edges {
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Contact faces (shared by exactly two pieces) with the pieces they join,
/// in sorted face order.
pub fn contact_faces(d: &Decomposition) -> Vec<([usize; 3], [usize; 2])> {
    d.face_owners()
        .into_iter()
        .filter_map(|(f, owners)| match owners[..] {
            [a, b] if a != b => Some((f, [a, b])),
            _ => None,
        })
        .collect()
}

/// The graph of connection of a decomposition.
pub fn build_graph(d: &Decomposition) -> ConnectionGraph {
    ConnectionGraph::new(d.pieces.len(), contact_faces(d).into_iter().map(|(_, e)| e).collect())
}

/// Like [`build_graph`], but contact triangles between the same two pieces
/// that lie in one plane and form a connected patch count as one edge, so a
/// shared polygon gives a single edge.
pub fn build_graph_merging_coplanar(d: &Decomposition, mesh: &crate::surface::TriMesh) -> Result<ConnectionGraph, GraphError> {
    let coords = mesh.require_coords()?;
    let mut groups: BTreeMap<[usize; 2], Vec<Vec<[usize; 3]>>> = BTreeMap::new();
    for (f, pair) in contact_faces(d) {
        let patches = groups.entry(pair).or_default();
        let coplanar_neighbour = |g: &[usize; 3]| {
            f.iter().filter(|v| g.contains(v)).count() == 2
                && g.iter().all(|&v| {
                    crate::exact::orient3d(&coords[f[0]], &coords[f[1]], &coords[f[2]], &coords[v]) == crate::exact::Sign::Zero
                })
        };
        let hits: Vec<usize> = (0..patches.len()).filter(|&i| patches[i].iter().any(coplanar_neighbour)).collect();
        let mut merged = vec![f];
        for &i in hits.iter().rev() {
            merged.extend(patches.remove(i));
        }
        patches.push(merged);
    }
    let edges = groups.into_iter().flat_map(|(pair, patches)| std::iter::repeat(pair).take(patches.len())).collect();
    Ok(ConnectionGraph::new(d.pieces.len(), edges))
}

/// Connected, every node of degree two, exactly one independent cycle.
pub fn is_single_cycle(g: &ConnectionGraph) -> bool {
    g.nodes > 0 && g.is_connected() && g.degrees().iter().all(|&d| d == 2) && g.cycle_rank == 1
}
