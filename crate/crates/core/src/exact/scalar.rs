use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rat;

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Ring operations the predicate kernel needs. Implemented for [`Rat`] and
/// for `i128` lattice coordinates; both are exact as long as lattice inputs
/// stay inside [`LATTICE_BOUND`].
pub trait Scalar: Clone + Ord + fmt::Debug {
    fn zero() -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn sign(&self) -> Sign;
    fn from_i64(v: i64) -> Self;
    /// Exact division by a small positive integer; lattice callers guarantee
    /// divisibility.
    fn div_int(&self, k: i64) -> Self;
}

/// Largest absolute lattice coordinate for which every predicate in the
/// kernel (degree 3 in coordinate differences) fits in an `i128`.
pub const LATTICE_BOUND: i128 = 1 << 30;

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sign(&self) -> Sign {
        Sign::from_i8(self.signum() as i8)
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn div_int(&self, k: i64) -> Self {
        debug_assert_eq!(self % k as i128, 0);
        self / k as i128
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sign(&self) -> Sign {
        if self.is_positive() {
            Sign::Positive
        } else if self.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn div_int(&self, k: i64) -> Self {
        let (q, r) = self.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        q
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sign(&self) -> Sign {
        Sign::from_i8(self.signum())
    }
    fn from_i64(v: i64) -> Self {
        Rat::from_int(v)
    }
    fn div_int(&self, k: i64) -> Self {
        self / &Rat::from_int(k)
    }
}

/// A 3-vector over an exact scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vec3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

/// Exact rational point.
pub type Point3 = Vec3<Rat>;

impl<S: fmt::Debug> fmt::Debug for Vec3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.x, self.y, self.z)
    }
}

impl<S: Scalar> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(S::zero(), S::zero(), S::zero())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Vec3::new(self.x.sub_ref(&o.x), self.y.sub_ref(&o.y), self.z.sub_ref(&o.z))
    }

    pub fn add(&self, o: &Self) -> Self {
        Vec3::new(self.x.add_ref(&o.x), self.y.add_ref(&o.y), self.z.add_ref(&o.z))
    }

    pub fn scale(&self, k: &S) -> Self {
        Vec3::new(self.x.mul_ref(k), self.y.mul_ref(k), self.z.mul_ref(k))
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x
            .mul_ref(&o.x)
            .add_ref(&self.y.mul_ref(&o.y))
            .add_ref(&self.z.mul_ref(&o.z))
    }

    pub fn cross(&self, o: &Self) -> Self {
        Vec3::new(
            self.y.mul_ref(&o.z).sub_ref(&self.z.mul_ref(&o.y)),
            self.z.mul_ref(&o.x).sub_ref(&self.x.mul_ref(&o.z)),
            self.x.mul_ref(&o.y).sub_ref(&self.y.mul_ref(&o.x)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.sign() == Sign::Zero && self.y.sign() == Sign::Zero && self.z.sign() == Sign::Zero
    }

    pub(crate) fn coord(&self, axis: usize) -> &S {
        match axis {
            0 => &self.x,
            1 => &self.y,
            _ => &self.z,
        }
    }
}

impl Point3 {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(Rat::from_int(x), Rat::from_int(y), Rat::from_int(z))
    }
}

/// Shorthand for an integer point, mostly for tests and fixtures.
pub fn pt(x: i64, y: i64, z: i64) -> Point3 {
    Point3::from_ints(x, y, z)
}
