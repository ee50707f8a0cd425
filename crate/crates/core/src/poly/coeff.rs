use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{AddAssign, MulAssign, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Exact integer coefficient ring for [`Poly`](super::Poly).
///
/// Anything with integer division, sign and in-place arithmetic by
/// reference qualifies. [`BigInt`] is the type every Poincaré polynomial is
/// computed with; machine integers are accepted too, but they overflow
/// silently on large inputs, so they are only useful for small tests.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + FromStr
    + Hash
    + Ord
    + Integer
    + Signed
    + FromPrimitive
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn from_u64_exact(n: u64) -> Self {
        Self::from_u64(n).expect("coefficient type too narrow")
    }

    fn from_i64_exact(n: i64) -> Self {
        Self::from_i64(n).expect("coefficient type too narrow")
    }
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + FromStr
        + Hash
        + Ord
        + Integer
        + Signed
        + FromPrimitive
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
        + for<'a> MulAssign<&'a T>
        + Send
        + Sync
        + 'static
{
}

// Compile-time check that the coefficient types we advertise qualify.
#[allow(dead_code)]
fn assert_coefficient<C: Coefficient>() {}
#[allow(dead_code)]
fn coefficient_impls() {
    assert_coefficient::<BigInt>();
    assert_coefficient::<i64>();
    assert_coefficient::<i128>();
}
