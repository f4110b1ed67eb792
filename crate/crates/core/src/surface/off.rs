use std::fmt::Write as _;

use super::{Face, SurfaceError, TriMesh};
use crate::exact::{orient3d, Point3, Rat, Sign, Vec3};

/// How polygon faces with more than three vertices are treated on import.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FaceImport {
    /// Reject them with [`SurfaceError::NonTriangularFace`].
    #[default]
    Strict,
    /// Fan-triangulate from the first vertex if the polygon is planar and
    /// strictly convex.
    FanConvexPlanar,
}

const LABEL_PREFIX: &str = "# label:";

/// Parses R-OFF (or AOFF for abstract meshes), rejecting non-triangular faces.
pub fn parse_off(text: &str) -> Result<TriMesh, SurfaceError> {
    parse_off_with(text, FaceImport::Strict)
}

pub fn parse_off_with(text: &str, import: FaceImport) -> Result<TriMesh, SurfaceError> {
    let mut label = String::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix(LABEL_PREFIX) {
            label = rest.trim().to_string();
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        lines.push((i + 1, line));
    }
    let mut it = lines.into_iter();
    let err = |line: usize, msg: &str| SurfaceError::Parse { line, msg: msg.to_string() };

    let (hline, header) = it.next().ok_or_else(|| err(1, "missing header"))?;
    let geometric = match header {
        "OFF" => true,
        "AOFF" => false,
        _ => return Err(err(hline, "expected OFF or AOFF header")),
    };
    let (cline, counts) = it.next().ok_or_else(|| err(hline, "missing counts line"))?;
    let nums: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(cline, "counts must be non-negative integers")))
        .collect::<Result<_, _>>()?;
    let (nv, nf) = match nums[..] {
        [v, f] | [v, f, _] => (v, f),
        _ => return Err(err(cline, "expected \"V F E\"")),
    };

    let coords = if geometric {
        let mut pts = Vec::with_capacity(nv);
        for _ in 0..nv {
            let (l, s) = it.next().ok_or_else(|| err(cline, "fewer vertex lines than declared"))?;
            let vals: Vec<Rat> = s
                .split_whitespace()
                .map(|t| t.parse::<Rat>().map_err(|e| err(l, &format!("bad coordinate {t:?}: {e}"))))
                .collect::<Result<_, _>>()?;
            match <[Rat; 3]>::try_from(vals) {
                Ok([x, y, z]) => pts.push(Vec3::new(x, y, z)),
                Err(_) => return Err(err(l, "vertex line needs three coordinates")),
            }
        }
        Some(pts)
    } else {
        None
    };

    let mut faces: Vec<Face> = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, s) = it.next().ok_or_else(|| err(cline, "fewer face lines than declared"))?;
        let vals: Vec<usize> = s
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(l, &format!("bad face entry {t:?}"))))
            .collect::<Result<_, _>>()?;
        let (&arity, idx) = vals.split_first().ok_or_else(|| err(l, "empty face line"))?;
        if idx.len() != arity || arity < 3 {
            return Err(err(l, "face arity does not match its index count"));
        }
        if arity == 3 {
            faces.push([idx[0], idx[1], idx[2]]);
            continue;
        }
        match (import, &coords) {
            (FaceImport::FanConvexPlanar, Some(c)) => {
                if idx.iter().any(|&v| v >= nv) {
                    return Err(err(l, "face index out of range"));
                }
                let poly: Vec<&Point3> = idx.iter().map(|&v| &c[v]).collect();
                if !convex_planar(&poly) {
                    return Err(SurfaceError::NotConvexPlanarFace { line: l });
                }
                faces.extend((1..arity - 1).map(|k| [idx[0], idx[k], idx[k + 1]]));
            }
            _ => return Err(SurfaceError::NonTriangularFace { line: l, arity }),
        }
    }
    if let Some((l, _)) = it.next() {
        return Err(err(l, "unexpected trailing content"));
    }
    TriMesh::normalized(label, nv, coords, faces)
}

/// Planar polygon whose consecutive turns all go the same way, with no
/// collinear triples among consecutive vertices.
fn convex_planar(poly: &[&Point3]) -> bool {
    let k = poly.len();
    let normal = poly[1].sub(poly[0]).cross(&poly[2].sub(poly[0]));
    if normal.is_zero() {
        return false;
    }
    let apex = poly[0].add(&normal);
    if poly.iter().any(|p| orient3d(poly[0], poly[1], poly[2], p) != Sign::Zero) {
        return false;
    }
    (0..k).all(|i| orient3d(poly[i], poly[(i + 1) % k], poly[(i + 2) % k], &apex) == Sign::Positive)
}

/// Writes R-OFF, or AOFF for meshes without coordinates. The label is kept
/// in a comment line so that parsing the output gives back an equal mesh.
pub fn write_off(mesh: &TriMesh) -> String {
    let mut out = String::new();
    out.push_str(if mesh.is_geometric() { "OFF\n" } else { "AOFF\n" });
    if !mesh.label().is_empty() {
        let _ = writeln!(out, "{LABEL_PREFIX} {}", mesh.label());
    }
    let edges = mesh.faces().len() * 3 / 2;
    let _ = writeln!(out, "{} {} {}", mesh.n_vertices(), mesh.faces().len(), edges);
    for p in mesh.coords().unwrap_or_default() {
        let _ = writeln!(out, "{} {} {}", p.x, p.y, p.z);
    }
    for f in mesh.faces() {
        let _ = writeln!(out, "3 {} {} {}", f[0], f[1], f[2]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::pt;

    fn octahedron() -> TriMesh {
        let coords = vec![pt(1, 0, 0), pt(-1, 0, 0), pt(0, 1, 0), pt(0, -1, 0), pt(0, 0, 1), pt(0, 0, -1)];
        let faces = vec![
            [0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4],
            [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5],
        ];
        TriMesh::normalized("octahedron", 6, Some(coords), faces).unwrap()
    }

    #[test]
    fn round_trip() {
        let m = octahedron();
        assert_eq!(parse_off(&write_off(&m)).unwrap(), m);
        let a = TriMesh::normalized("abstract", 6, None, m.faces().to_vec()).unwrap();
        let text = write_off(&a);
        assert!(text.starts_with("AOFF\n"));
        assert_eq!(parse_off(&text).unwrap(), a);
    }

    #[test]
    fn rationals_are_exact() {
        let text = "OFF\n4 4 0\n1/3 0 -2/5\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";
        let m = parse_off(text).unwrap();
        let p = &m.coords().unwrap()[0];
        assert_eq!((p.x.clone(), p.z.clone()), (Rat::new(1, 3).unwrap(), Rat::new(-2, 5).unwrap()));
        assert!(write_off(&m).contains("1/3 0 -2/5"));
    }

    #[test]
    fn quads_are_rejected_or_fanned() {
        let cube = "OFF\n# unit cube\n8 6 12\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n1 0 1\n0 1 1\n1 1 1\n\
                    4 0 2 3 1\n4 4 5 7 6\n4 0 1 5 4\n4 2 6 7 3\n4 0 4 6 2\n4 1 3 7 5\n";
        assert_eq!(parse_off(cube), Err(SurfaceError::NonTriangularFace { line: 12, arity: 4 }));
        let m = parse_off_with(cube, FaceImport::FanConvexPlanar).unwrap();
        assert_eq!(m.faces().len(), 12);
        assert_eq!(super::super::enclosed_volume6(&m).unwrap(), Rat::from_int(6));
        let bent = cube.replace("1 1 1\n4 0", "1 1 2\n4 0");
        assert!(matches!(
            parse_off_with(&bent, FaceImport::FanConvexPlanar),
            Err(SurfaceError::NotConvexPlanarFace { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_off("PLY\n"), Err(SurfaceError::Parse { line: 1, .. })));
        let bad = "OFF\n4 4 0\n0 0 0\n1 0 x\n";
        assert!(matches!(parse_off(bad), Err(SurfaceError::Parse { line: 4, .. })));
        let short = "OFF\n1 1 0\n0 0\n";
        assert!(matches!(parse_off(short), Err(SurfaceError::Parse { line: 3, .. })));
    }
}
