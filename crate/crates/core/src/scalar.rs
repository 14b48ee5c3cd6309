use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Coefficient field for symbol data: exact rationals or `f64`.
pub trait Scalar: Clone + Debug + PartialEq + Num + Signed + Send + Sync + 'static {
    const EXACT: bool;

    fn from_bigint(v: &BigInt) -> Self;
    fn from_ratio(v: &BigRational) -> Self;
    fn to_f64(&self) -> f64;

    fn from_u64(v: u64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// Whether two values agree: exactly, or to a relative 1e-9 for floats.
    fn close_to(&self, other: &Self) -> bool;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_ratio(v: &BigRational) -> Self {
        v.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_bigint(v: &BigInt) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn from_ratio(v: &BigRational) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn close_to(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-9 * self.abs().max(other.abs()).max(1.0)
    }
}
