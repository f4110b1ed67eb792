//! Exact rational arithmetic and the geometric predicates built on it.

mod affine;
mod predicates;
mod rat;
mod scalar;

use thiserror::Error;

pub use affine::AffineMap;
pub use predicates::{
    det3, is_degenerate_tet, is_degenerate_triangle, orient3d, point_in_tet, segment_meets_triangle,
    tet_volume6, tets_classify, triangle_normal, triangles_classify, Location, TetContact, TriContact,
};
pub use rat::Rat;
pub use scalar::{pt, Point3, Scalar, Sign, Vec3, LATTICE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("degenerate triangle (zero area)")]
    DegenerateTriangle,
    #[error("degenerate tetrahedron (zero volume)")]
    DegenerateTet,
    #[error("affine map is singular")]
    SingularMap,
}
