//! Exact rational helpers. Every bound value in the crate is a [`Rational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `numer / denom` as an exact rational.
///
/// Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_usize(value: usize) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Smallest integer `>= value`, saturating at zero for negative values.
pub fn ceil_usize(value: &Rational) -> usize {
    let (q, r) = value.numer().div_rem(value.denom());
    let q = if r > BigInt::zero() { q + 1 } else { q };
    q.to_usize().unwrap_or(0)
}

/// Lossy decimal approximation, for human-facing output only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
