//! The integer scalar every algorithm is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integers.
///
/// Implemented for `BigInt` and the primitive signed integers. Fixed-width
/// types are fine for small inputs; antiflip sequences grow indices quickly,
/// so long braid words want `BigInt`.
pub trait Int:
    Integer
    + Signed
    + Roots
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Lift a small constant into `T`.
#[inline]
pub fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("small constant fits the scalar type")
}

/// `v mod m` in `0..m` for positive `m`.
#[inline]
pub(crate) fn modulo<T: Int>(v: &T, m: &T) -> T {
    v.mod_floor(m)
}
