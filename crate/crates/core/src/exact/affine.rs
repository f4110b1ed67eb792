use super::{ExactError, Point3, Rat, Vec3};

/// Affine map `p -> linear * p + translation` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: [[Rat; 3]; 3],
    pub translation: Point3,
}

fn det(m: &[[Rat; 3]; 3]) -> Rat {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1];
    &m[0][0] * &minor(1, 2, 1, 2) - &m[0][1] * &minor(1, 2, 0, 2) + &m[0][2] * &minor(1, 2, 0, 1)
}

fn inverse(m: &[[Rat; 3]; 3]) -> Result<[[Rat; 3]; 3], ExactError> {
    let d = det(m);
    if d.is_zero() {
        return Err(ExactError::SingularMap);
    }
    let cof = |r: usize, c: usize| {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
        &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]
    };
    let mut inv: [[Rat; 3]; 3] = Default::default();
    for (r, row) in inv.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            // adjugate is the transposed cofactor matrix
            *slot = cof(c, r).checked_div(&d)?;
        }
    }
    Ok(inv)
}

fn mat_mul(a: &[[Rat; 3]; 3], b: &[[Rat; 3]; 3]) -> [[Rat; 3]; 3] {
    let mut out: [[Rat; 3]; 3] = Default::default();
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            *slot = (0..3).fold(Rat::zero(), |acc, k| acc + &a[r][k] * &b[k][c]);
        }
    }
    out
}

fn columns(u: &Point3, v: &Point3, w: &Point3) -> [[Rat; 3]; 3] {
    [
        [u.x.clone(), v.x.clone(), w.x.clone()],
        [u.y.clone(), v.y.clone(), w.y.clone()],
        [u.z.clone(), v.z.clone(), w.z.clone()],
    ]
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap::translation(Point3::zero())
    }

    pub fn translation(t: Point3) -> Self {
        let mut linear: [[Rat; 3]; 3] = Default::default();
        for (i, row) in linear.iter_mut().enumerate() {
            row[i] = Rat::one();
        }
        AffineMap { linear, translation: t }
    }

    pub fn determinant(&self) -> Rat {
        det(&self.linear)
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        let row = |r: usize| &self.linear[r][0] * &p.x + &self.linear[r][1] * &p.y + &self.linear[r][2] * &p.z;
        Vec3::new(
            row(0) + &self.translation.x,
            row(1) + &self.translation.y,
            row(2) + &self.translation.z,
        )
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &AffineMap) -> AffineMap {
        AffineMap {
            linear: mat_mul(&self.linear, &first.linear),
            translation: self.apply(&first.translation),
        }
    }

    /// The unique affine map sending each `src[i]` to `dst[i]`. The source
    /// points must be affinely independent.
    pub fn from_point_pairs(src: &[Point3; 4], dst: &[Point3; 4]) -> Result<AffineMap, ExactError> {
        let s = columns(&src[1].sub(&src[0]), &src[2].sub(&src[0]), &src[3].sub(&src[0]));
        let d = columns(&dst[1].sub(&dst[0]), &dst[2].sub(&dst[0]), &dst[3].sub(&dst[0]));
        let linear = mat_mul(&d, &inverse(&s)?);
        let partial = AffineMap { linear, translation: Point3::zero() };
        let translation = dst[0].sub(&partial.apply(&src[0]));
        Ok(AffineMap { translation, ..partial })
    }
}
