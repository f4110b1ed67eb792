//! Test-side oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;

use toroid_core::constructions::{bipyramid, csaszar, pyramid, schoenhardt, DEFAULT_TWIST};
use toroid_core::engine::{is_valid_triangulation, Tet};
use toroid_core::exact::{
    tet_volume6, tets_classify, Location, Point3, Rat, TetContact, Vec3,
};
use toroid_core::surface::{enclosed_volume6, point_in_solid, TriMesh};

#[derive(Debug, PartialEq, Eq)]
pub struct OracleCount {
    pub count: u64,
    pub t_min: Option<usize>,
    pub t_max: Option<usize>,
}

fn centroid(q: &[Point3; 4]) -> Point3 {
    let s = q.iter().fold(Point3::zero(), |a, p| a.add(p));
    s.scale(&Rat::new(1, 4).unwrap())
}

/// Coordinates times the common denominator, as integers.
fn integer_coords(c: &[Point3]) -> Vec<Vec3<BigInt>> {
    let lcm = c
        .iter()
        .flat_map(|p| [p.x.denom(), p.y.denom(), p.z.denom()])
        .fold(BigInt::from(1), |acc, d| acc.lcm(d));
    let int = |r: &Rat| r.numer() * &lcm / r.denom();
    c.iter().map(|p| Vec3::new(int(&p.x), int(&p.y), int(&p.z))).collect()
}

/// Enumerates every set of vertex tetrahedra whose centroids lie inside the
/// solid, whose interiors are pairwise disjoint and whose volumes add up to
/// the enclosed volume, and keeps those that pass the triangulation check.
pub fn naive_triangulations(mesh: &TriMesh) -> OracleCount {
    let c = mesh.coords().expect("geometric fixture");
    let z = integer_coords(c);
    let total = enclosed_volume6(mesh).unwrap();
    let n = c.len();
    let mut tets = Vec::new();
    let mut quads = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for cc in b + 1..n {
                for d in cc + 1..n {
                    let q = [c[a].clone(), c[b].clone(), c[cc].clone(), c[d].clone()];
                    let vol = tet_volume6(&q[0], &q[1], &q[2], &q[3]).abs();
                    if vol.is_zero() || point_in_solid(mesh, &centroid(&q)).unwrap() != Location::Inside {
                        continue;
                    }
                    tets.push((Tet::new([a, b, cc, d]).unwrap(), vol));
                    quads.push([z[a].clone(), z[b].clone(), z[cc].clone(), z[d].clone()]);
                }
            }
        }
    }
    let mut disjoint = vec![vec![true; tets.len()]; tets.len()];
    for i in 0..tets.len() {
        for j in i + 1..tets.len() {
            let apart = tets_classify(&quads[i], &quads[j]) == Ok(TetContact::InteriorsDisjoint);
            disjoint[i][j] = apart;
            disjoint[j][i] = apart;
        }
    }
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    fn walk(
        i: usize,
        sum: Rat,
        total: &Rat,
        tets: &[(Tet, Rat)],
        disjoint: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<Tet>>,
        mesh: &TriMesh,
    ) {
        if &sum == total {
            let set: Vec<Tet> = chosen.iter().map(|&k| tets[k].0).collect();
            if is_valid_triangulation(mesh, &set).unwrap().valid {
                found.insert(set);
            }
            return;
        }
        for k in i..tets.len() {
            let next = &sum + &tets[k].1;
            if &next > total || chosen.iter().any(|&j| !disjoint[j][k]) {
                continue;
            }
            chosen.push(k);
            walk(k + 1, next, total, tets, disjoint, chosen, found, mesh);
            chosen.pop();
        }
    }
    walk(0, Rat::zero(), &total, &tets, &disjoint, &mut chosen, &mut found, mesh);
    OracleCount {
        count: found.len() as u64,
        t_min: found.iter().map(Vec::len).min(),
        t_max: found.iter().map(Vec::len).max(),
    }
}

pub fn default_twist() -> (Rat, Rat) {
    let (c, s, d) = DEFAULT_TWIST;
    (Rat::new(c, d).unwrap(), Rat::new(s, d).unwrap())
}

/// Unit-spaced octahedron on the coordinate axes.
pub fn octahedron() -> TriMesh {
    let p = |x, y, z| Vec3::new(Rat::from_int(x), Rat::from_int(y), Rat::from_int(z));
    let coords = vec![p(1, 0, 0), p(0, 1, 0), p(-1, 0, 0), p(0, -1, 0), p(0, 0, 1), p(0, 0, -1)];
    let faces = vec![[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4], [1, 0, 5], [2, 1, 5], [3, 2, 5], [0, 3, 5]];
    TriMesh::normalized("octahedron", 6, Some(coords), faces).unwrap()
}

/// Every fixture mesh with at most eight vertices.
pub fn small_fixtures() -> Vec<TriMesh> {
    let mut out = Vec::new();
    for n in 4..=8 {
        out.push(pyramid(n, true).unwrap().mesh.unwrap());
        out.push(pyramid(n, false).unwrap().mesh.unwrap());
    }
    for n in 5..=8 {
        out.push(bipyramid(n).unwrap().output.mesh.unwrap());
    }
    out.push(octahedron());
    let (c, s) = default_twist();
    out.push(schoenhardt(&c, &s).unwrap().mesh.unwrap());
    if let Ok(twisted) = schoenhardt(&Rat::new(3, 5).unwrap(), &Rat::new(4, 5).unwrap()) {
        out.push(twisted.mesh.unwrap());
    }
    out.push(csaszar().unwrap().mesh.unwrap());
    out
}

/// Undirected edges of a set of tetrahedra that are not edges of the mesh.
pub fn interior_edges(mesh: &TriMesh, tets: &[Tet]) -> usize {
    let boundary: BTreeSet<[usize; 2]> = mesh
        .faces()
        .iter()
        .flat_map(|f| [[f[0], f[1]], [f[1], f[2]], [f[2], f[0]]])
        .map(|[a, b]| [a.min(b), a.max(b)])
        .collect();
    let all: BTreeSet<[usize; 2]> = tets
        .iter()
        .flat_map(|t| {
            let v = t.vertices();
            [[v[0], v[1]], [v[0], v[2]], [v[0], v[3]], [v[1], v[2]], [v[1], v[3]], [v[2], v[3]]]
        })
        .collect();
    all.difference(&boundary).count()
}
