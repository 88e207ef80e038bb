//! Scalar abstraction so the whole library works at `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the game arithmetic is generic over.
///
/// Everything the library computes is dimensionless (photon number is the
/// unit of quantity), so the only requirements are the usual float
/// operations, trig/exp constants, and conversions for diagnostics.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lift an `f64` constant into the scalar type.
    #[inline]
    fn cst(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("constant representable in scalar type")
    }

    /// Lossy conversion for error reporting and serialization.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}
