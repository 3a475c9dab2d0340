use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Auxiliary-to-main device size ratio δ.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SizeRatio<T>(T);

impl<T: Real> SizeRatio<T> {
    pub fn new(delta: T) -> Result<Self> {
        if delta >= T::zero() && delta.is_finite() {
            Ok(Self(delta))
        } else {
            Err(invalid(format!("size ratio must be finite and non-negative, got {delta}")))
        }
    }

    pub fn delta(self) -> T {
        self.0
    }
}

/// Output power back-off `-10·log10(1 + δ²)` in dB (zero or negative).
pub fn backoff_from_delta<T: Real>(r: SizeRatio<T>) -> T {
    // ln_1p keeps the round trip exact for small δ.
    T::zero() - T::lit(10.0) * (r.0 * r.0).ln_1p() / T::LN_10()
}

/// Inverse of [`backoff_from_delta`] for a positive back-off magnitude.
pub fn delta_from_backoff<T: Real>(obo_db: T) -> Result<SizeRatio<T>> {
    if !(obo_db >= T::zero() && obo_db.is_finite()) {
        return Err(invalid(format!("back-off must be finite and non-negative, got {obo_db}")));
    }
    SizeRatio::new((obo_db * T::LN_10() / T::lit(10.0)).exp_m1().sqrt())
}
