use super::{circle_point, point, tet_pieces, ConstructionError, ConstructionOutput};
use crate::congraph::Piece;
use crate::engine::{candidate_tets, Tet, Triangulation};
use crate::exact::{Point3, Rat};
use crate::surface::{is_embedded, reflex_edges, validate, TriMesh};

/// Default rotation of the twisted prism's top: the rational point
/// `(24/25, 7/25)` on the unit circle, about 16 degrees.
pub const DEFAULT_TWIST: (i64, i64, i64) = (24, 7, 25);

fn tet(v: [usize; 4]) -> Tet {
    Tet::new(v).expect("construction tets have distinct vertices")
}

/// Apex over an `(n-1)`-gon; the base is planar, or with `planar_base`
/// unset, a space polygon with alternating heights. The base is triangulated
/// as a fan from its first vertex and the witness is the apex fan over it.
pub fn pyramid(n: usize, planar_base: bool) -> Result<ConstructionOutput, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::BadParams(format!("a pyramid needs at least 4 vertices, got {n}")));
    }
    let m = n - 1;
    let lift = Rat::new(1, 8)?;
    let mut coords: Vec<Point3> = (0..m)
        .map(|k| {
            let (x, y) = circle_point(k, m);
            let z = if !planar_base && k % 2 == 1 { lift.clone() } else { Rat::zero() };
            point(x, y, z)
        })
        .collect();
    coords.push(point(Rat::zero(), Rat::zero(), Rat::from_int(3)));
    let apex = m;
    let mut faces: Vec<[usize; 3]> = (0..m).map(|k| [k, (k + 1) % m, apex]).collect();
    faces.extend((1..m - 1).map(|k| [0, k + 1, k]));
    let kind = if planar_base { "pyramid" } else { "pyramid-space-base" };
    let mesh = TriMesh::normalized(format!("{kind}-{n}"), n, Some(coords), faces)?;
    let fan: Vec<Tet> = (1..m - 1).map(|k| tet([0, k, k + 1, apex])).collect();
    let pieces = if planar_base {
        vec![Piece { vertices: (0..n).collect(), faces: mesh.faces().to_vec() }]
    } else {
        tet_pieces(&fan)
    };
    Ok(ConstructionOutput::geometric(kind, mesh, 0).with_witness(fan).with_decomposition(pieces))
}

/// A bipyramid with both canonical triangulations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipyramid {
    pub output: ConstructionOutput,
    /// Split along the base into two pyramids, each fanned: `2(n-4)` tets.
    pub two_pyramids: Triangulation,
    /// Fanned around the apex-to-apex axis: `n-2` tets.
    pub around_axis: Triangulation,
}

/// Two apices over a convex `(n-2)`-gon. The witness is the smaller of the
/// two canonical triangulations; minimality is not claimed.
pub fn bipyramid(n: usize) -> Result<Bipyramid, ConstructionError> {
    if n < 5 {
        return Err(ConstructionError::BadParams(format!("a bipyramid needs at least 5 vertices, got {n}")));
    }
    let m = n - 2;
    let mut coords: Vec<Point3> = (0..m)
        .map(|k| {
            let (x, y) = circle_point(k, m);
            point(x, y, Rat::zero())
        })
        .collect();
    let (top, bottom) = (m, m + 1);
    coords.push(point(Rat::zero(), Rat::zero(), Rat::one()));
    coords.push(point(Rat::zero(), Rat::zero(), Rat::from_int(-1)));
    let mut faces: Vec<[usize; 3]> = (0..m).map(|k| [k, (k + 1) % m, top]).collect();
    faces.extend((0..m).map(|k| [(k + 1) % m, k, bottom]));
    let label = format!("bipyramid-{n}");
    let mesh = TriMesh::normalized(label.clone(), n, Some(coords), faces)?;
    let two: Vec<Tet> =
        (1..m - 1).flat_map(|k| [tet([0, k, k + 1, top]), tet([0, k, k + 1, bottom])]).collect();
    let axis: Vec<Tet> = (0..m).map(|k| tet([k, (k + 1) % m, top, bottom])).collect();
    let smaller = if two.len() <= axis.len() { two.clone() } else { axis.clone() };
    let mut output = ConstructionOutput::geometric("bipyramid", mesh, 0).with_witness(smaller);
    output.claimed_tmin = None;
    Ok(Bipyramid {
        output,
        two_pyramids: Triangulation::new(label.clone(), two),
        around_axis: Triangulation::new(label, axis),
    })
}

/// Triangular prism with lateral quads split by `A1B2`, `B1C2`, `C1A2` and
/// the top rotated by the rational unit vector `(c, s)`.
pub fn schoenhardt(c: &Rat, s: &Rat) -> Result<ConstructionOutput, ConstructionError> {
    if &(c * c) + &(s * s) != Rat::one() || s.signum() <= 0 {
        return Err(ConstructionError::BadParams(format!(
            "twist ({c}, {s}) must be a unit vector with positive sine"
        )));
    }
    let base = [(2, 0), (-1, 2), (-1, -2)];
    let height = Rat::from_int(2);
    let mut coords: Vec<Point3> =
        base.iter().map(|&(x, y)| point(Rat::from_int(x), Rat::from_int(y), Rat::zero())).collect();
    for &(x, y) in &base {
        let (x, y) = (Rat::from_int(x), Rat::from_int(y));
        coords.push(point(&(c * &x) - &(s * &y), &(s * &x) + &(c * &y), height.clone()));
    }
    // A1 B1 C1 = 0 1 2, A2 B2 C2 = 3 4 5
    let faces = vec![
        [0, 2, 1],
        [3, 4, 5],
        [0, 1, 4],
        [0, 4, 3],
        [1, 2, 5],
        [1, 5, 4],
        [2, 0, 3],
        [2, 3, 5],
    ];
    let mesh = TriMesh::normalized("schoenhardt", 6, Some(coords), faces)?;
    validate(&mesh)?;
    let check = is_embedded(&mesh)?;
    if !check.embedded {
        return Err(ConstructionError::TwistTooLarge(format!("faces collide: {:?}", check.first_violation)));
    }
    if reflex_edges(&mesh)?.is_empty() {
        return Err(ConstructionError::TwistTooLarge("the prism stays convex".into()));
    }
    let mut out = ConstructionOutput::geometric("schoenhardt", mesh, 0);
    // an inner tet would make the prism triangulable; report it rather than
    // emit a wrong object
    if let Some(t) = candidate_tets(out.mesh()?)?.first() {
        return Err(ConstructionError::TwistTooLarge(format!("inner tetrahedron {t:?} survives the twist")));
    }
    out.claimed_tmin = None;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_valid_triangulation;

    fn twist(a: i64, b: i64, d: i64) -> (Rat, Rat) {
        (Rat::new(a, d).unwrap(), Rat::new(b, d).unwrap())
    }

    #[test]
    fn pyramids_validate() {
        for n in 4..11 {
            for planar in [true, false] {
                let out = pyramid(n, planar).unwrap();
                let m = out.mesh().unwrap();
                let r = validate(m).unwrap();
                assert_eq!((r.genus, r.embedded), (Some(0), Some(true)), "n={n}");
                let w = out.witness.as_ref().unwrap();
                assert_eq!(w.len(), n - 3);
                assert!(is_valid_triangulation(m, &w.tets).unwrap().valid, "n={n} planar={planar}");
            }
        }
        assert!(pyramid(3, true).is_err());
    }

    #[test]
    fn bipyramid_canonical_sizes() {
        for n in 5..10 {
            let b = bipyramid(n).unwrap();
            let m = b.output.mesh().unwrap();
            assert_eq!(b.two_pyramids.len(), 2 * (n - 4));
            assert_eq!(b.around_axis.len(), n - 2);
            assert!(is_valid_triangulation(m, &b.two_pyramids.tets).unwrap().valid, "n={n}");
            assert!(is_valid_triangulation(m, &b.around_axis.tets).unwrap().valid, "n={n}");
        }
    }

    #[test]
    fn twisted_prism() {
        let (c, s) = twist(DEFAULT_TWIST.0, DEFAULT_TWIST.1, DEFAULT_TWIST.2);
        let out = schoenhardt(&c, &s).unwrap();
        assert_eq!(reflex_edges(out.mesh().unwrap()).unwrap().len(), 3);
        assert!(schoenhardt(&Rat::one(), &Rat::zero()).is_err());
        // a quarter-plus turn: whichever way it goes, the checks decide
        let (c, s) = twist(3, 4, 5);
        match schoenhardt(&c, &s) {
            Ok(out) => assert!(candidate_tets(out.mesh().unwrap()).unwrap().is_empty()),
            Err(e) => assert!(matches!(e, ConstructionError::TwistTooLarge(_)), "{e}"),
        }
        assert!(schoenhardt(&Rat::new(1, 2).unwrap(), &Rat::new(1, 2).unwrap()).is_err());
    }
}
