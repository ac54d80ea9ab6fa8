//! Scalar abstraction all numerics are generic over.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use serde::Serialize;

/// Floating-point scalar the crate is generic over: `f32` or `f64`.
///
/// `f64` is the intended working precision. `f32` works for dimensionless
/// studies but underflows on SI-scale Casimir inputs (x^4 at nanometre gaps
/// leaves the f32 normal range), so the concrete aliases at the crate root
/// are the `f64` instantiations.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Serialize
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` literal into this scalar type.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal must be representable")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + Debug
        + Display
        + LowerExp
        + FromStr
        + Serialize
        + Send
        + Sync
        + 'static
{
}

/// Lossy view of a scalar as `f64`, for error payloads and display.
pub(crate) fn to_f64_lossy<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
