//! Scalar abstractions shared by the generic elimination routines.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Num;

/// A commutative ring element usable in fraction-free elimination.
///
/// Division is only ever applied when the quotient is known to be exact, so
/// integer types (`i64`, `i128`, `BigInt`) qualify alongside fields.
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + Send + Sync {}

impl<T> Scalar for T where T: Num + Clone + Debug + Neg<Output = T> + Send + Sync {}

/// A [`Scalar`] whose division is a true field division.
pub trait Field: Scalar {}

impl Field for f32 {}
impl Field for f64 {}
impl<T> Field for Ratio<T> where T: Integer + Clone + Debug + Neg<Output = T> + Send + Sync {}
