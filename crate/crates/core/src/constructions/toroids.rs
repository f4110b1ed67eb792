use super::{point, tet_pieces, ConstructionError, ConstructionOutput};
use crate::congraph::Piece;
use crate::engine::Tet;
use crate::exact::{Point3, Rat};
use crate::surface::TriMesh;

fn int_point(x: i64, y: i64, z: i64) -> Point3 {
    point(Rat::from_int(x), Rat::from_int(y), Rat::from_int(z))
}

/// The seven-vertex torus with the complete edge graph, on the integer
/// coordinates of Lutz's realization. Its only triangulation has 7 tets.
pub fn csaszar() -> Result<ConstructionOutput, ConstructionError> {
    let coords = vec![
        int_point(3, -3, 0),
        int_point(-3, 3, 0),
        int_point(-3, -3, 1),
        int_point(3, 3, 1),
        int_point(-1, -2, 3),
        int_point(1, 2, 3),
        int_point(0, 0, 15),
    ];
    let faces = vec![
        [3, 5, 2],
        [3, 2, 4],
        [5, 4, 1],
        [5, 1, 2],
        [4, 2, 6],
        [4, 6, 1],
        [2, 1, 0],
        [2, 0, 6],
        [1, 6, 3],
        [1, 3, 0],
        [6, 0, 5],
        [6, 5, 3],
        [0, 3, 4],
        [0, 4, 5],
    ];
    let mesh = TriMesh::normalized("csaszar", 7, Some(coords), faces)?;
    let tets: Vec<Tet> = [
        [0, 1, 2, 3],
        [0, 2, 3, 4],
        [0, 2, 4, 6],
        [0, 4, 5, 6],
        [1, 2, 3, 5],
        [1, 3, 5, 6],
        [1, 4, 5, 6],
    ]
    .into_iter()
    .map(Tet::new)
    .collect::<Result<_, _>>()?;
    let pieces = tet_pieces(&tets);
    Ok(ConstructionOutput::geometric("csaszar", mesh, 1).with_witness(tets).with_decomposition(pieces))
}

/// Cross-section `(r, z)` of every block end.
const SECTION: [(i64, i64); 3] = [(2, 0), (5, 1), (3, 4)];
/// Horizontal directions of the three block ends, 135, 90 and 135 degrees apart.
const DIRECTIONS: [(i64, i64); 3] = [(1, 0), (-1, 1), (-1, -1)];

/// A torus of three convex blocks arranged around the z axis. Each block is
/// the hull of two consecutive copies of a triangular cross-section, with
/// planar trapezoidal sides; the blocks meet in the cross-sections, which
/// are interior. Nine vertices, 18 faces, minimal triangulation of 9 tets.
pub fn toroid_p9() -> Result<ConstructionOutput, ConstructionError> {
    let coords: Vec<Point3> = DIRECTIONS
        .iter()
        .flat_map(|&(ux, uy)| SECTION.iter().map(move |&(r, z)| int_point(r * ux, r * uy, z)))
        .collect();
    let end = |i: usize, j: usize| 3 * (i % 3) + j;
    let mut faces = Vec::new();
    let mut tets = Vec::new();
    let mut pieces = Vec::new();
    for i in 0..3 {
        let (a, b) = (|j| end(i, j), |j| end(i + 1, j));
        let mut block = Vec::new();
        // each side trapezoid split along a_j b_k for j < k, which admits the
        // staircase triangulation below
        for (j, k) in [(0, 1), (1, 2), (0, 2)] {
            block.push([a(j), a(k), b(k)]);
            block.push([a(j), b(k), b(j)]);
        }
        faces.extend(block.iter().copied());
        block.push([a(0), a(1), a(2)]);
        block.push([b(0), b(1), b(2)]);
        let mut vertices: Vec<usize> = (0..3).map(a).chain((0..3).map(b)).collect();
        vertices.sort_unstable();
        pieces.push(Piece { vertices, faces: block });
        for t in [[a(0), a(1), a(2), b(2)], [a(0), a(1), b(1), b(2)], [a(0), b(0), b(1), b(2)]] {
            tets.push(Tet::new(t)?);
        }
    }
    let mesh = TriMesh::normalized("toroid-p9", 9, Some(coords), faces)?;
    Ok(ConstructionOutput::geometric("toroid-p9", mesh, 1).with_witness(tets).with_decomposition(pieces))
}
