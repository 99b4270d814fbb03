//! Integer scalars for exact matrix arithmetic.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::ToBigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};

use crate::error::{Error, Result};

/// An exact integer type. Every arithmetic step goes through the checked
/// helpers below, so fixed-width scalars report overflow instead of wrapping.
pub trait Scalar:
    Clone + Debug + Display + Eq + Ord + Hash + Signed + Integer + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + ToBigInt
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Eq + Ord + Hash + Signed + Integer + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + ToBigInt
{
}

pub fn add<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn sub<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub fn mul<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `a·b + c·d`.
pub fn mul_add2<T: Scalar>(a: &T, b: &T, c: &T, d: &T) -> Result<T> {
    add(&mul(a, b)?, &mul(c, d)?)
}

pub fn from_i64<T: Scalar>(v: i64) -> Result<T> {
    T::from_i64(v).ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(mul(&i64::MAX, &2i64), Err(Error::Overflow)));
        assert_eq!(mul(&BigInt::from(i64::MAX), &BigInt::from(2)).unwrap(), BigInt::from(i64::MAX) * 2);
    }

    #[test]
    fn fused_helpers() {
        assert_eq!(mul_add2(&2i64, &3, &4, &5).unwrap(), 26);
        assert_eq!(from_i64::<i128>(-7).unwrap(), -7i128);
    }
}
