//! Scalar abstraction for the numerical engines.
//!
//! Everything downstream is generic over a real floating-point type so the
//! same code instantiates at `f32` and `f64`. Physics runs (and all pinned
//! tolerances) use `f64`; the `f32` instantiation exists for callers that
//! trade accuracy for memory, and as a compile-time check that no code path
//! secretly depends on double precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};

/// Real scalar underlying all amplitudes, times, and frequencies.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssignOps + Sum + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for bringing an `f64` literal into the scalar type.
    ///
    /// Panics only if the target type cannot represent *any* approximation of
    /// the value, which no IEEE float does for finite literals.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal must convert")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssignOps
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Complex amplitude over the scalar `S`.
pub type Cplx<S> = Complex<S>;

/// `i` as a complex constant.
pub fn im<S: Real>() -> Cplx<S> {
    Complex::new(S::zero(), S::one())
}

/// Real number promoted to a complex amplitude.
pub fn re<S: Real>(x: S) -> Cplx<S> {
    Complex::new(x, S::zero())
}
