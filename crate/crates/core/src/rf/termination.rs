use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::{creal, Real, C};

/// Load or input impedance seen at a reference plane.
///
/// Open and short circuits are explicit so that no arithmetic is carried on
/// infinities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Termination<T> {
    Impedance(C<T>),
    Open,
    Short,
}

impl<T: Real> Termination<T> {
    pub fn ohms(re: T, im: T) -> Self {
        Termination::Impedance(C::new(re, im))
    }

    pub fn resistor(r: T) -> Self {
        Termination::Impedance(creal(r))
    }

    /// Finite impedance value; `None` for an open circuit.
    pub fn impedance(&self) -> Option<C<T>> {
        match *self {
            Termination::Impedance(z) => Some(z),
            Termination::Short => Some(C::new(T::zero(), T::zero())),
            Termination::Open => None,
        }
    }

    pub fn is_passive(&self) -> bool {
        match self {
            Termination::Impedance(z) => z.re >= T::zero(),
            _ => true,
        }
    }
}

/// Γ = (Z − Z₀)/(Z + Z₀) against a real reference.
pub fn reflection_coefficient<T: Real>(z: Termination<T>, zref: T) -> Result<C<T>> {
    if !(zref > T::zero()) {
        return Err(invalid(format!("reference impedance must be positive, got {zref}")));
    }
    match z {
        Termination::Open => Ok(creal(T::one())),
        Termination::Short => Ok(creal(-T::one())),
        Termination::Impedance(z) => {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(invalid("impedance must be finite"));
            }
            let den = z + zref;
            if den.norm() <= T::epsilon() * zref {
                return Err(Error::Singular(format!("Z = -Zref ({zref} ohm)")));
            }
            Ok((z - zref) / den)
        }
    }
}
