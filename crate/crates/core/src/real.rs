//! Scalar abstraction: every numeric kernel in this crate is generic over a
//! floating-point type implementing [`Real`].

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable by the geometry and quadrature kernels.
///
/// Implemented for `f32` and `f64` via the blanket impl below. The crate-root
/// type aliases fix `f64` as the default concrete choice.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + core::ops::AddAssign
    + core::ops::SubAssign
    + core::ops::MulAssign
    + core::iter::Sum
    + core::fmt::Debug
    + core::fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Shorthand for converting an `f64` literal into `Self`.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("literal conversion")
    }

    /// Converts a `usize` count into `Self`.
    #[inline]
    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("count conversion")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + core::ops::AddAssign
        + core::ops::SubAssign
        + core::ops::MulAssign
        + core::iter::Sum
        + core::fmt::Debug
        + core::fmt::Display
        + Send
        + Sync
        + 'static
{
}
