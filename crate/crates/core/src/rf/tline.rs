use serde::{Deserialize, Serialize};

use super::{Frequency, Termination};
use crate::error::{invalid, Error, Result};
use crate::scalar::{cplx, deg_to_rad, Real, C};

/// Ideal lossless, dispersion-free transmission line.
///
/// The electrical length is specified at `f0` and scales linearly with
/// frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TLineSection<T> {
    pub z0: T,
    pub theta0_deg: T,
    pub f0: Frequency<T>,
}

impl<T: Real> TLineSection<T> {
    pub fn new(z0: T, theta0_deg: T, f0: Frequency<T>) -> Result<Self> {
        if !(z0 > T::zero() && z0.is_finite()) {
            return Err(invalid(format!("line impedance must be positive, got {z0}")));
        }
        if !(theta0_deg > T::zero() && theta0_deg < T::lit(180.0)) {
            return Err(invalid(format!("electrical length must lie in (0, 180) deg, got {theta0_deg}")));
        }
        Ok(Self { z0, theta0_deg, f0 })
    }

    /// Electrical length at `f` in radians.
    pub fn theta_at(&self, f: Frequency<T>) -> T {
        deg_to_rad(self.theta0_deg) * f.hz() / self.f0.hz()
    }

    /// Impedance looking into the line when terminated by `load`.
    ///
    /// Computed as `Z0·(ZL cosθ + jZ0 sinθ)/(Z0 cosθ + jZL sinθ)`. Open and
    /// short loads map onto each other at the exact singular angles; a finite
    /// load whose denominator vanishes inside the angle guard band is an error.
    pub fn input_impedance(&self, load: Termination<T>, f: Frequency<T>) -> Result<Termination<T>> {
        input_impedance(self.z0, self.theta_at(f), load)
    }
}

pub(crate) fn input_impedance<T: Real>(z0: T, theta: T, load: Termination<T>) -> Result<Termination<T>> {
    let (s, c) = theta.sin_cos();
    let guard = T::angle_guard();
    let j = cplx(T::zero(), T::one());
    match load {
        Termination::Open => {
            if s.abs() < guard {
                Ok(Termination::Open)
            } else {
                Ok(Termination::Impedance(-j * z0 * c / s))
            }
        }
        Termination::Short => {
            if c.abs() < guard {
                Ok(Termination::Open)
            } else {
                Ok(Termination::Impedance(j * z0 * s / c))
            }
        }
        Termination::Impedance(zl) => {
            let num: C<T> = zl * c + j * z0 * s;
            let den: C<T> = j * zl * s + z0 * c;
            if den.norm() <= guard * (z0 + zl.norm()) {
                return Err(Error::Singular(format!(
                    "line input impedance diverges at theta = {theta} rad for load {zl}"
                )));
            }
            Ok(Termination::Impedance(num / den * z0))
        }
    }
}
