use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for weights, probabilities and distances: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Lossy conversion from `f64`; every constant we feed through here is finite.
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("finite f64 converts to Real")
}

pub(crate) fn real_usize<F: Real>(k: usize) -> F {
    F::from_usize(k).expect("usize converts to Real")
}
