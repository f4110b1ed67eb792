use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{geometry, Face, SurfaceError, TriMesh};
use crate::exact::Rat;

/// Counts and flags for a closed surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub genus: Option<i64>,
    pub manifold: bool,
    pub orientable: bool,
    pub embedded: Option<bool>,
    pub volume6: Option<Rat>,
}

fn edge_key(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Undirected edge -> faces using it, each with the direction the face
/// traverses it (`true` when it runs from the smaller to the larger index).
pub(crate) fn edge_map(faces: &[Face]) -> BTreeMap<[usize; 2], Vec<(usize, bool)>> {
    let mut map: BTreeMap<[usize; 2], Vec<(usize, bool)>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            map.entry(edge_key(a, b)).or_default().push((fi, a < b));
        }
    }
    map
}

fn check_edges(faces: &[Face]) -> Result<BTreeMap<[usize; 2], Vec<(usize, bool)>>, SurfaceError> {
    let map = edge_map(faces);
    for (e, users) in &map {
        match users.len() {
            2 => {}
            1 => return Err(SurfaceError::NotClosed(*e)),
            k => return Err(SurfaceError::NotManifoldEdge(*e, k)),
        }
    }
    Ok(map)
}

fn check_vertex_links(n: usize, faces: &[Face]) -> Result<(), SurfaceError> {
    let mut link: Vec<Vec<[usize; 2]>> = vec![Vec::new(); n];
    for f in faces {
        for k in 0..3 {
            link[f[k]].push([f[(k + 1) % 3], f[(k + 2) % 3]]);
        }
    }
    for (v, edges) in link.iter().enumerate() {
        if edges.len() < 3 {
            return Err(SurfaceError::NotManifoldVertex(v));
        }
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &[a, b] in edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if adj.values().any(|nb| nb.len() != 2) || adj.len() != edges.len() {
            return Err(SurfaceError::NotManifoldVertex(v));
        }
        // walk the cycle from any start and make sure it covers every link vertex
        let start = edges[0][0];
        let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
        while cur != start {
            let nb = &adj[&cur];
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
            steps += 1;
            if steps > edges.len() {
                break;
            }
        }
        if steps != edges.len() {
            return Err(SurfaceError::NotManifoldVertex(v));
        }
    }
    Ok(())
}

/// Flips faces so every edge is traversed in opposite directions by its two
/// faces. Edges with more than two faces are left alone here; [`validate`]
/// reports them.
pub(crate) fn orient_faces(faces: &mut [Face]) -> Result<(), SurfaceError> {
    let map = edge_map(faces);
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for users in map.values() {
        if let [(f, _), (g, _)] = users[..] {
            neighbours[f].push(g);
            neighbours[g].push(f);
        }
    }
    let mut done = vec![false; faces.len()];
    for seed in 0..faces.len() {
        if done[seed] {
            continue;
        }
        done[seed] = true;
        let mut queue = VecDeque::from([seed]);
        while let Some(f) = queue.pop_front() {
            for &g in &neighbours[f] {
                if done[g] {
                    continue;
                }
                if !opposite_on_shared_edge(&faces[f], &faces[g]) {
                    faces[g].swap(1, 2);
                }
                done[g] = true;
                queue.push_back(g);
            }
        }
    }
    // any remaining conflict means the surface is not orientable
    for (e, users) in edge_map(faces) {
        if let [(_, d1), (_, d2)] = users[..] {
            if d1 == d2 {
                return Err(SurfaceError::NotOrientable(e));
            }
        }
    }
    Ok(())
}

fn opposite_on_shared_edge(f: &Face, g: &Face) -> bool {
    for k in 0..3 {
        let (a, b) = (f[k], f[(k + 1) % 3]);
        for l in 0..3 {
            let (c, d) = (g[l], g[(l + 1) % 3]);
            if a == c && b == d {
                return false;
            }
        }
    }
    true
}

fn is_connected(n_faces: usize, map: &BTreeMap<[usize; 2], Vec<(usize, bool)>>) -> bool {
    let mut parent: Vec<usize> = (0..n_faces).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for users in map.values() {
        let a = find(&mut parent, users[0].0);
        for &(f, _) in &users[1..] {
            let b = find(&mut parent, f);
            parent[b] = a;
        }
    }
    let root = find(&mut parent, 0);
    (0..n_faces).all(|f| find(&mut parent, f) == root)
}

/// Checks that the mesh is a closed, connected, consistently oriented
/// 2-manifold and reports its counts. Embedding and volume are filled in when
/// the mesh has coordinates.
pub fn validate(mesh: &TriMesh) -> Result<SurfaceReport, SurfaceError> {
    let faces = mesh.faces();
    if faces.is_empty() {
        return Err(SurfaceError::Empty);
    }
    let map = check_edges(faces)?;
    check_vertex_links(mesh.n_vertices(), faces)?;
    for (e, users) in &map {
        if users[0].1 == users[1].1 {
            return Err(SurfaceError::NotOrientable(*e));
        }
    }
    if !is_connected(faces.len(), &map) {
        return Err(SurfaceError::Disconnected);
    }
    let (v, e, f) = (mesh.n_vertices(), map.len(), faces.len());
    let chi = v as i64 - e as i64 + f as i64;
    let (embedded, volume6) = match mesh.coords() {
        Some(coords) => {
            for (i, fc) in faces.iter().enumerate() {
                if crate::exact::is_degenerate_triangle(&[
                    coords[fc[0]].clone(),
                    coords[fc[1]].clone(),
                    coords[fc[2]].clone(),
                ]) {
                    return Err(SurfaceError::DegenerateFace(i));
                }
            }
            if let Some((a, b)) = geometry::duplicate_coordinates(coords) {
                return Err(SurfaceError::DuplicateCoordinates(a, b));
            }
            let emb = geometry::is_embedded(mesh)?;
            (Some(emb.embedded), Some(geometry::enclosed_volume6(mesh)?))
        }
        None => (None, None),
    };
    Ok(SurfaceReport {
        vertices: v,
        edges: e,
        faces: f,
        euler_characteristic: chi,
        genus: if chi % 2 == 0 { Some((2 - chi) / 2) } else { None },
        manifold: true,
        orientable: true,
        embedded,
        volume6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::pt;

    pub(crate) fn octahedron() -> TriMesh {
        let coords = vec![pt(1, 0, 0), pt(-1, 0, 0), pt(0, 1, 0), pt(0, -1, 0), pt(0, 0, 1), pt(0, 0, -1)];
        let faces = vec![
            [0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4],
            [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5],
        ];
        TriMesh::normalized("octahedron", 6, Some(coords), faces).unwrap()
    }

    #[test]
    fn octahedron_is_a_sphere() {
        let r = validate(&octahedron()).unwrap();
        assert_eq!((r.vertices, r.edges, r.faces), (6, 12, 8));
        assert_eq!(r.euler_characteristic, 2);
        assert_eq!(r.genus, Some(0));
        assert_eq!(r.embedded, Some(true));
        assert_eq!(r.volume6, Some(Rat::from_int(8)));
    }

    #[test]
    fn open_surface_is_not_closed() {
        let m = TriMesh::new("fan", 4, None, vec![[0, 1, 2], [0, 2, 3], [0, 3, 1]]).unwrap();
        assert!(matches!(validate(&m), Err(SurfaceError::NotClosed(_))));
    }

    #[test]
    fn three_faces_on_an_edge_is_not_manifold() {
        // two tetrahedron boundaries glued along the edge 0-1 plus an extra fin
        let faces = vec![
            [0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2],
            [0, 4, 1], [0, 1, 5], [0, 5, 4], [1, 4, 5],
        ];
        let m = TriMesh::new("fin", 6, None, faces).unwrap();
        assert!(matches!(validate(&m), Err(SurfaceError::NotManifoldEdge([0, 1], 4))));
    }

    #[test]
    fn pinched_vertex_is_not_manifold() {
        // two tetrahedron boundaries sharing only vertex 0
        let faces = vec![
            [0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2],
            [0, 4, 5], [0, 6, 4], [0, 5, 6], [4, 6, 5],
        ];
        let m = TriMesh::new("pinch", 7, None, faces).unwrap();
        assert_eq!(validate(&m), Err(SurfaceError::NotManifoldVertex(0)));
    }

    #[test]
    fn inconsistent_orientation_is_reported_and_repairable() {
        let faces = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 3, 2]];
        let m = TriMesh::new("tet", 4, None, faces.clone()).unwrap();
        assert!(matches!(validate(&m), Err(SurfaceError::NotOrientable(_))));
        let fixed = TriMesh::normalized("tet", 4, None, faces).unwrap();
        assert_eq!(validate(&fixed).unwrap().genus, Some(0));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(TriMesh::new("e", 3, None, vec![]), Err(SurfaceError::Empty));
        assert_eq!(
            TriMesh::new("r", 3, None, vec![[0, 0, 1]]),
            Err(SurfaceError::RepeatedIndex { face: 0 })
        );
        assert_eq!(
            TriMesh::new("d", 3, None, vec![[0, 1, 2], [2, 1, 0]]),
            Err(SurfaceError::DuplicateFace(0, 1))
        );
        assert!(matches!(
            TriMesh::new("o", 3, None, vec![[0, 1, 3]]),
            Err(SurfaceError::IndexOutOfRange { index: 3, .. })
        ));
    }

    #[test]
    fn duplicate_coordinates_are_rejected() {
        let mut m = octahedron();
        if let Some(c) = m.coords.as_mut() {
            c[5] = c[4].clone();
        }
        assert!(validate(&m).is_err());
    }
}
