//! Scalar abstraction shared by the numeric modules.
//!
//! Every network, synthesis and model routine is written against [`Real`],
//! implemented for `f32` and `f64`. The crate root re-exports `f64`
//! aliases for the common case.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar usable by all routines in this crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Machine-precision-relative guard used around trigonometric singularities.
    #[inline]
    fn angle_guard() -> Self {
        // 1e-9 rad for f64; f32 cannot resolve that, so it gets a looser band.
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(16.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex value over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn deg_to_rad<T: Real>(deg: T) -> T {
    deg * T::PI() / T::lit(180.0)
}

#[inline]
pub(crate) fn rad_to_deg<T: Real>(rad: T) -> T {
    rad * T::lit(180.0) / T::PI()
}

/// Wraps an angle in degrees to (-180, 180].
pub fn wrap_deg<T: Real>(deg: T) -> T {
    let full = T::lit(360.0);
    let half = T::lit(180.0);
    let mut w = deg % full;
    if w <= -half {
        w += full;
    } else if w > half {
        w -= full;
    }
    w
}

/// Power ratio to decibels.
#[inline]
pub fn db10<T: Real>(x: T) -> T {
    T::lit(10.0) * x.log10()
}

/// Amplitude ratio to decibels.
#[inline]
pub fn db20<T: Real>(x: T) -> T {
    T::lit(20.0) * x.log10()
}

/// dBm to watts.
#[inline]
pub fn dbm_to_watts<T: Real>(dbm: T) -> T {
    T::lit(10.0).powf((dbm - T::lit(30.0)) / T::lit(10.0))
}

/// Watts to dBm.
#[inline]
pub fn watts_to_dbm<T: Real>(w: T) -> T {
    db10(w) + T::lit(30.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_into_half_open_interval() {
        assert_eq!(wrap_deg(180.0_f64), 180.0);
        assert_eq!(wrap_deg(-180.0_f64), 180.0);
        assert_eq!(wrap_deg(370.0_f64), 10.0);
        assert!((wrap_deg(-190.0_f64) - 170.0).abs() < 1e-12);
        assert!((wrap_deg(725.0_f32) - 5.0).abs() < 1e-4);
    }

    #[test]
    fn dbm_watts_inverse() {
        assert!((dbm_to_watts(30.0_f64) - 1.0).abs() < 1e-15);
        assert!((watts_to_dbm(dbm_to_watts(33.0_f64)) - 33.0).abs() < 1e-12);
    }
}
