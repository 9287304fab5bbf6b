//! Coefficient scalars for exact polynomial arithmetic.
//!
//! All symbolic computation in this crate is exact: defining equations and
//! their pullbacks live over the integers, ideal reduction happens over the
//! rationals. Both coefficient types implement [`Scalar`]; the rationals
//! additionally implement [`FieldScalar`], which is what the Gröbner engine
//! requires. Concrete aliases ([`crate::IntPoly`], [`crate::RatPoly`]) are
//! exported at the crate root.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::field::PrimeField;

/// An exact coefficient ring: integers or rationals of arbitrary precision.
///
/// `Signed` brings the ring operations (`Zero`, `One`, `Neg`, `abs`) plus the
/// sign queries the polynomial printer needs.
pub trait Scalar:
    Clone + Eq + Signed + FromPrimitive + fmt::Display + fmt::Debug + Send + Sync + 'static
{
    /// Canonical residue of this scalar modulo `field.modulus()`.
    ///
    /// Returns `None` when the scalar has no image in the field (a rational
    /// whose denominator is divisible by the characteristic).
    fn to_mod_p(&self, field: PrimeField) -> Option<u64>;
}

impl Scalar for BigInt {
    fn to_mod_p(&self, field: PrimeField) -> Option<u64> {
        let p = BigInt::from(field.modulus());
        self.mod_floor(&p).to_u64()
    }
}

impl Scalar for BigRational {
    fn to_mod_p(&self, field: PrimeField) -> Option<u64> {
        let num = self.numer().to_mod_p(field)?;
        let den = self.denom().to_mod_p(field)?;
        if den == 0 {
            return None;
        }
        Some(field.mul(num, field.inv(den)))
    }
}

/// A scalar with exact division, i.e. a field. Required for monic reduction.
pub trait FieldScalar: Scalar {
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl FieldScalar for BigRational {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}
