//! Floating-point abstraction shared by the weighting and statistics code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar used for term weights and correlation coefficients.
///
/// Implemented for `f32` and `f64`; everything numeric in the crate is generic
/// over it, with `f64` aliases re-exported at the crate root.
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from a count. Counts in this crate stay far below 2^53.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable as float")
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Clamp a coefficient into `[lo, hi]` to absorb rounding just past the bounds.
pub(crate) fn clamp<S: Scalar>(x: S, lo: S, hi: S) -> S {
    x.max(lo).min(hi)
}
