//! Coordinate scalar abstraction.
//!
//! All geometric code in this crate is generic over the coordinate type.
//! In practice that means `f32` or `f64`; the concrete aliases at the crate
//! root fix `f64`, which is what the CLI uses.

use std::fmt::{Debug, Display};
use std::num::ParseFloatError;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point coordinate type: `f32` or `f64`.
///
/// `Display` is required to print the shortest decimal representation that
/// round-trips, which the point-set and edge-list file formats rely on.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + FromStr<Err = ParseFloatError>
    + Display
    + Debug
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Conversion from parameter arithmetic (always done in `f64`).
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("every finite f64 converts")
    }

    /// Widening conversion for reports and thresholds.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("every scalar converts to f64")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
