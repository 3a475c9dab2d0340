use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// A strictly positive frequency in hertz.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frequency<T>(T);

impl<T: Real> Frequency<T> {
    pub fn new(hz: T) -> Result<Self> {
        if hz.is_finite() && hz > T::zero() {
            Ok(Self(hz))
        } else {
            Err(invalid(format!("frequency must be positive and finite, got {hz}")))
        }
    }

    pub fn from_ghz(ghz: T) -> Result<Self> {
        Self::new(ghz * T::lit(1e9))
    }

    #[inline]
    pub fn hz(self) -> T {
        self.0
    }

    #[inline]
    pub fn ghz(self) -> T {
        self.0 / T::lit(1e9)
    }

    /// Angular frequency in rad/s.
    #[inline]
    pub fn omega(self) -> T {
        T::lit(2.0) * T::PI() * self.0
    }
}

/// `points` equally spaced frequencies from `start` to `stop` inclusive.
pub fn linspace<T: Real>(start: Frequency<T>, stop: Frequency<T>, points: usize) -> Result<Vec<Frequency<T>>> {
    match points {
        0 => Err(invalid("sweep needs at least one point")),
        1 => Ok(vec![start]),
        _ => {
            if stop.hz() <= start.hz() {
                return Err(invalid("sweep stop must exceed start"));
            }
            let step = (stop.hz() - start.hz()) / T::lit((points - 1) as f64);
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        Ok(stop)
                    } else {
                        Frequency::new(start.hz() + step * T::lit(i as f64))
                    }
                })
                .collect()
        }
    }
}

/// Checks that a grid is strictly increasing.
pub fn check_grid<T: Real>(freqs: &[Frequency<T>]) -> Result<()> {
    match freqs.windows(2).position(|w| w[1].hz() <= w[0].hz()) {
        Some(i) => Err(invalid(format!("frequency grid not strictly increasing at index {}", i + 1))),
        None => Ok(()),
    }
}
