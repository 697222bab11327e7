//! Integer scalars used by the exact linear algebra.
//!
//! Everything in [`crate::linalg`] is written against [`Scalar`], so the same
//! elimination code runs on machine integers (fast, overflow-checked) and on
//! [`BigInt`] (never overflows). Callers usually try `i64` first and fall back
//! to `BigInt` when an operation reports [`Overflow`].

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Arithmetic overflow in a fixed-width scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow")]
pub struct Overflow;

pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + ToBigInt
    + Send
    + Sync
    + 'static
{
    /// Narrowing conversion; `None` when the value does not fit.
    fn from_bigint(value: &BigInt) -> Option<Self>;

    fn to_big(&self) -> BigInt {
        self.to_bigint().expect("integer scalars always convert")
    }

    fn try_add(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(other).ok_or(Overflow)
    }

    fn try_sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(other).ok_or(Overflow)
    }

    fn try_mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(other).ok_or(Overflow)
    }

    /// `self - factor * other`, the workhorse of every elimination step.
    fn try_sub_mul(&self, factor: &Self, other: &Self) -> Result<Self, Overflow> {
        self.try_sub(&factor.try_mul(other)?)
    }

    fn is_unit(&self) -> bool {
        self.is_one() || (-self.clone()).is_one()
    }
}

impl Scalar for i64 {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }
}

impl Scalar for i128 {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i128()
    }
}

impl Scalar for BigInt {
    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Converts between scalar types, failing when the value does not fit.
pub fn convert<S: Scalar, T: Scalar>(value: &S) -> Result<T, Overflow> {
    T::from_bigint(&value.to_big()).ok_or(Overflow)
}
