use super::{csaszar, hull_facets, pyramid, strict_hull_facets, ConstructionError, ConstructionOutput};
use crate::congraph::{Decomposition, Piece};
use crate::engine::{Tet, Triangulation};
use crate::exact::{AffineMap, Point3, Rat, Vec3};
use crate::surface::{is_embedded, sorted3, validate, TriMesh};

fn face_of(mesh: &TriMesh, face: usize) -> Result<[usize; 3], ConstructionError> {
    mesh.faces().get(face).copied().ok_or(ConstructionError::NoSuchFace(face))
}

fn centroid(points: &[&Point3]) -> Point3 {
    let n = Rat::from_int(points.len() as i64);
    let sum = points.iter().fold(Point3::zero(), |acc, p| acc.add(p));
    Vec3::new(&sum.x / &n, &sum.y / &n, &sum.z / &n)
}

/// Orientation-preserving affine map that lays face `face_b` of `b` onto face
/// `face_a` of `a` with reversed orientation, so that `b` ends up on the
/// outer side of `face_a`. Both meshes must be outward oriented.
pub fn contact_placement(a: &TriMesh, face_a: usize, b: &TriMesh, face_b: usize) -> Result<AffineMap, ConstructionError> {
    let ca = a.coords().ok_or(ConstructionError::AbstractMesh)?;
    let cb = b.coords().ok_or(ConstructionError::AbstractMesh)?;
    let [g0, g1, g2] = face_of(a, face_a)?;
    let [h0, h1, h2] = face_of(b, face_b)?;
    let normal = ca[g1].sub(&ca[g0]).cross(&ca[g2].sub(&ca[g0]));
    let beyond = centroid(&[&ca[g0], &ca[g1], &ca[g2]]).add(&normal);
    let inner = centroid(&cb.iter().collect::<Vec<_>>());
    let src = [cb[h0].clone(), cb[h1].clone(), cb[h2].clone(), inner];
    let dst = [ca[g0].clone(), ca[g2].clone(), ca[g1].clone(), beyond];
    Ok(AffineMap::from_point_pairs(&src, &dst)?)
}

fn relabel_tets(tets: &[Tet], map: &[usize]) -> Result<Vec<Tet>, ConstructionError> {
    Ok(tets.iter().map(|t| Tet::new(t.vertices().map(|v| map[v]))).collect::<Result<_, _>>()?)
}

fn relabel_piece(p: &Piece, map: &[usize]) -> Piece {
    let mut vertices: Vec<usize> = p.vertices.iter().map(|&v| map[v]).collect();
    vertices.sort_unstable();
    Piece { vertices, faces: p.faces.iter().map(|f| f.map(|v| map[v])).collect() }
}

/// Glues and also returns where each vertex of `b` went.
pub(crate) fn glue_mapped(
    a: &ConstructionOutput,
    face_a: usize,
    b: &ConstructionOutput,
    face_b: usize,
    placement: &AffineMap,
) -> Result<(ConstructionOutput, Vec<usize>), ConstructionError> {
    let (ma, mb) = (a.geometric_mesh()?, b.geometric_mesh()?);
    let fa = face_of(ma, face_a)?;
    let fb = face_of(mb, face_b)?;
    let ca = ma.coords().expect("geometric");
    let moved: Vec<Point3> = mb.coords().expect("geometric").iter().map(|p| placement.apply(p)).collect();
    let mut coords = ca.to_vec();
    let mut map = vec![usize::MAX; mb.n_vertices()];
    for &h in &fb {
        map[h] = *fa.iter().find(|&&g| ca[g] == moved[h]).ok_or(ConstructionError::PlacementMismatch)?;
    }
    if sorted3(&fb.map(|h| map[h])) != sorted3(&fa) {
        return Err(ConstructionError::PlacementMismatch);
    }
    for (v, p) in moved.into_iter().enumerate() {
        if map[v] == usize::MAX {
            map[v] = coords.len();
            coords.push(p);
        }
    }
    let faces: Vec<[usize; 3]> = ma
        .faces()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != face_a)
        .map(|(_, f)| *f)
        .chain(mb.faces().iter().enumerate().filter(|&(i, _)| i != face_b).map(|(_, f)| f.map(|v| map[v])))
        .collect();
    let label = format!("{}+{}", ma.label(), mb.label());
    let mesh = TriMesh::normalized(label.clone(), coords.len(), Some(coords), faces)?;
    validate(&mesh)?;
    let check = is_embedded(&mesh)?;
    if !check.embedded {
        return Err(ConstructionError::NotEmbedded(check.first_violation));
    }
    let family = format!("{}+{}", a.family, b.family);
    let mut out = ConstructionOutput::geometric(family, mesh, a.claimed_genus + b.claimed_genus);
    if let (Some(wa), Some(wb)) = (&a.witness, &b.witness) {
        let mut tets = wa.tets.clone();
        tets.extend(relabel_tets(&wb.tets, &map)?);
        out.witness = Some(Triangulation::new(label.clone(), tets));
    }
    out.claimed_tmin = a.claimed_tmin.zip(b.claimed_tmin).map(|(x, y)| x + y);
    if let (Some(da), Some(db)) = (&a.decomposition, &b.decomposition) {
        let mut pieces = da.pieces.clone();
        pieces.extend(db.pieces.iter().map(|p| relabel_piece(p, &map)));
        let d = Decomposition { mesh: label, pieces };
        out.graph = Some(crate::congraph::build_graph(&d));
        out.decomposition = Some(d);
    }
    Ok((out, map))
}

/// Glues `b`, moved by `placement`, onto `a` along `face_a`; the image of
/// `face_b` must coincide with `face_a`. Witnesses, decompositions, genera
/// and claimed minima are combined.
pub fn glue_on_face(
    a: &ConstructionOutput,
    face_a: usize,
    b: &ConstructionOutput,
    face_b: usize,
    placement: &AffineMap,
) -> Result<ConstructionOutput, ConstructionError> {
    glue_mapped(a, face_a, b, face_b, placement).map(|(out, _)| out)
}

fn face_index(mesh: &TriMesh, key: [usize; 3]) -> Option<usize> {
    let key = sorted3(&key);
    mesh.faces().iter().position(|f| sorted3(f) == key)
}

/// `p` seven-vertex tori in a row, each glued onto a hull facet of the
/// previous one: `4p + 3` vertices and a minimal triangulation of `7p` tets.
pub fn chain_csaszar(p: usize) -> Result<ConstructionOutput, ConstructionError> {
    if p == 0 {
        return Err(ConstructionError::BadParams("a chain needs at least one torus".into()));
    }
    let unit = csaszar()?;
    let um = unit.geometric_mesh()?;
    let facets = strict_hull_facets(um)?;
    let incoming = *facets.first().ok_or_else(|| ConstructionError::NoContactFace("no hull facet".into()))?;
    let fin = um.faces()[incoming];
    // prefer outgoing facets whose tet is far from the incoming one in the
    // ring of tets, then facets sharing few vertices with it
    let tets = &unit.witness.as_ref().expect("torus comes with its triangulation").tets;
    let owner = |f: usize| {
        let key = sorted3(&um.faces()[f]);
        tets.iter().position(|t| t.faces().iter().any(|(g, _)| *g == key)).expect("boundary face lies in a tet")
    };
    let ring = crate::congraph::build_graph(unit.decomposition.as_ref().expect("torus comes with its pieces"));
    let hops = ring_distances(&ring, owner(incoming));
    let mut outgoing: Vec<usize> = facets.iter().copied().filter(|&f| f != incoming).collect();
    outgoing.sort_by_key(|&f| {
        (std::cmp::Reverse(hops[owner(f)]), um.faces()[f].iter().filter(|v| fin.contains(v)).count())
    });
    let mut whole = unit.clone();
    let mut last_map: Vec<usize> = (0..um.n_vertices()).collect();
    for copy in 1..p {
        let wm = whole.geometric_mesh()?;
        let hull = strict_hull_facets(wm)?;
        let face_a = outgoing
            .iter()
            .filter_map(|&g| face_index(wm, um.faces()[g].map(|v| last_map[v])))
            .find(|f| hull.contains(f))
            .ok_or_else(|| ConstructionError::NoContactFace(format!("copy {copy} has no free hull facet")))?;
        let placement = contact_placement(wm, face_a, um, incoming)?;
        let (next, map) = glue_mapped(&whole, face_a, &unit, incoming, &placement)?;
        whole = next;
        last_map = map;
    }
    let mut mesh = whole.mesh.take().expect("geometric");
    let label = format!("chain-csaszar-{p}");
    mesh.set_label(label.clone());
    let mut out = ConstructionOutput { family: "chain-csaszar".into(), mesh: Some(mesh), ..whole };
    relabel_parts(&mut out, &label);
    Ok(out)
}

/// Breadth-first hop counts from `start`.
fn ring_distances(g: &crate::congraph::ConnectionGraph, start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.nodes];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for e in &g.edges {
            let v = if e[0] == u { e[1] } else if e[1] == u { e[0] } else { continue };
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn relabel_parts(out: &mut ConstructionOutput, label: &str) {
    if let Some(w) = &mut out.witness {
        w.mesh = label.to_string();
    }
    if let Some(d) = &mut out.decomposition {
        d.mesh = label.to_string();
    }
}

/// Glues a pyramid over a `(k-1)`-vertex space polygon onto a hull facet of
/// `base`, strict if there is one, adding `k - 3` vertices and `k - 3` tets and keeping the genus.
pub fn attach_simple(base: &ConstructionOutput, k: usize) -> Result<ConstructionOutput, ConstructionError> {
    let simple = pyramid(k, false)?;
    let bm = base.geometric_mesh()?;
    let sm = simple.geometric_mesh()?;
    let face_a = match strict_hull_facets(bm)?.first() {
        Some(&f) => f,
        None => *hull_facets(bm)?
            .first()
            .ok_or_else(|| ConstructionError::NoContactFace("base has no hull facet".into()))?,
    };
    let face_b = *strict_hull_facets(sm)?
        .first()
        .ok_or_else(|| ConstructionError::NoContactFace("pyramid has no hull facet".into()))?;
    let placement = contact_placement(bm, face_a, sm, face_b)?;
    let mut out = glue_on_face(base, face_a, &simple, face_b, &placement)?;
    let label = format!("{}+pyramid-{k}", bm.label());
    if let Some(m) = &mut out.mesh {
        m.set_label(label.clone());
    }
    out.family = format!("{}+pyramid", base.family);
    relabel_parts(&mut out, &label);
    Ok(out)
}
