//! Scalar abstraction for the numeric core.

use std::fmt::{Debug, Display};

use num_traits::float::FloatConst;
use num_traits::Float;

/// Real scalar the physics runs on: `f32` or `f64`.
///
/// Everything downstream only needs IEEE float arithmetic, the usual
/// transcendental functions and thread safety for parallel sweeps.
pub trait Scalar: Float + FloatConst + Debug + Display + Send + Sync + 'static {}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Baked-in constant, converted from `f64` once at the use site.
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from(x).expect("constant must be representable in the scalar type")
}
