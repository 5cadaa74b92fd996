//! Floating-point abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the model can be evaluated in. Implemented for `f32` and `f64`.
pub trait Scalar: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Send + Sync + 'static {
    /// Converts an `f64` literal. Infallible for the supported float types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// True when `self` is a non-positive integer (a pole of Γ).
    #[inline]
    fn is_nonpositive_integer(self) -> bool {
        self <= Self::zero() && self == self.floor()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
