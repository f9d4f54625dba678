//! Exact scalar types usable as matrix entries.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact number type: a field, or an integral domain whose divisions in
/// fraction-free elimination are always exact.
///
/// Floating-point types are deliberately not implemented; every claim checked
/// by this crate is an exact integer statement.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Num + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// The value as an integer, if it is one.
    fn to_bigint(&self) -> Option<BigInt>;

    fn is_integral(&self) -> bool {
        self.to_bigint().is_some()
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| BigInt::from(self.to_integer()))
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn to_bigint(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}
