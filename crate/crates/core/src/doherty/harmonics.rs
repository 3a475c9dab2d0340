use rustfft::{num_complex::Complex, FftNum, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::{db10, Real};

/// Harmonic levels are reported no lower than this.
pub const HARMONIC_FLOOR_DBC: f64 = -300.0;

pub const REPRESENTATIVE_DRIVE: f64 = 1.0;
pub const REPRESENTATIVE_PERIODS: usize = 4;
pub const REPRESENTATIVE_SAMPLES: usize = 256;

/// Linear voltage gain followed by symmetric hard clipping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageClipper<T> {
    pub gain: T,
    pub clip_level: T,
}

impl<T: Real> StageClipper<T> {
    pub fn new(gain: T, clip_level: T) -> Result<Self> {
        let s = Self { gain, clip_level };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gain > T::zero() && self.gain.is_finite()) {
            return Err(invalid(format!("stage gain must be positive, got {}", self.gain)));
        }
        if !(self.clip_level > T::zero()) {
            return Err(invalid(format!("clip level must be positive, got {}", self.clip_level)));
        }
        Ok(())
    }

    pub fn apply(&self, x: T) -> T {
        (self.gain * x).max(-self.clip_level).min(self.clip_level)
    }
}

/// Powers are mean-square values of the corresponding sinusoid (V²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicReport<T> {
    pub fundamental_power: T,
    pub h2_power: T,
    pub h3_power: T,
    /// Always 0; kept so the three levels read alike.
    pub fundamental_dbc: T,
    pub h2_dbc: T,
    pub h3_dbc: T,
}

impl<T: Real> HarmonicReport<T> {
    /// Absolute second plus third harmonic power in dB (re 1 V²).
    pub fn h2_plus_h3_db(&self) -> T {
        db10(self.h2_power + self.h3_power)
    }
}

/// Two-sided bin powers `|X_k|²/N²`; they sum to the mean square of `x`.
pub fn power_spectrum<T: Real + FftNum>(x: &[T]) -> Vec<T> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let mut buf: Vec<Complex<T>> = x.iter().map(|&v| Complex::new(v, T::zero())).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let n2 = T::lit((n * n) as f64);
    buf.iter().map(|z| z.norm_sqr() / n2).collect()
}

/// Drives a sine of `drive_amplitude` through `stages` and reports the
/// fundamental, second and third harmonic.
pub fn harmonic_cascade<T: Real + FftNum>(
    stages: &[StageClipper<T>],
    drive_amplitude: T,
    n_periods: usize,
    samples_per_period: usize,
) -> Result<HarmonicReport<T>> {
    if stages.is_empty() {
        return Err(Error::Empty("stage list"));
    }
    for s in stages {
        s.validate()?;
    }
    if samples_per_period < 64 || !samples_per_period.is_power_of_two() {
        return Err(invalid(format!(
            "samples per period must be a power of two of at least 64, got {samples_per_period}"
        )));
    }
    if n_periods == 0 {
        return Err(invalid("need at least one period"));
    }
    if !(drive_amplitude > T::zero() && drive_amplitude.is_finite()) {
        return Err(invalid(format!("drive amplitude must be positive, got {drive_amplitude}")));
    }
    let n = n_periods * samples_per_period;
    let step = T::TAU() / T::lit(samples_per_period as f64);
    let y: Vec<T> = (0..n)
        .map(|i| {
            let phase = step * T::lit((i % samples_per_period) as f64);
            stages.iter().fold(drive_amplitude * phase.sin(), |v, s| s.apply(v))
        })
        .collect();
    let p = power_spectrum(&y);
    let one_sided = |h: usize| T::lit(2.0) * p[h * n_periods];
    let (f1, h2, h3) = (one_sided(1), one_sided(2), one_sided(3));
    let mean_square = p.iter().fold(T::zero(), |a, &b| a + b);
    if !(f1.is_finite() && f1 > mean_square * T::epsilon()) {
        return Err(Error::DegenerateSignal(format!(
            "fundamental vanished (power {f1}) after {} stage(s)",
            stages.len()
        )));
    }
    let floor = T::lit(HARMONIC_FLOOR_DBC);
    let dbc = |h: T| db10(h / f1).max(floor);
    Ok(HarmonicReport {
        fundamental_power: f1,
        h2_power: h2,
        h3_power: h3,
        fundamental_dbc: T::zero(),
        h2_dbc: dbc(h2),
        h3_dbc: dbc(h3),
    })
}

/// The three two-stage bias cases at a fixed total gain of 10: clipping in
/// the first stage only, shared between both, and in the second stage only.
/// A clip level of 1e3 is out of reach and means "no clipping".
pub fn representative_cases<T: Real>() -> [(&'static str, Vec<StageClipper<T>>); 3] {
    let st = |g: f64, c: f64| StageClipper { gain: T::lit(g), clip_level: T::lit(c) };
    [
        ("case1", vec![st(2.0, 1.6), st(5.0, 1e3)]),
        ("case2", vec![st(2.0, 1.8), st(5.0, 7.0)]),
        ("case3", vec![st(2.0, 1e3), st(5.0, 5.0)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Sine amplitude of odd harmonic `n` of a unit sine clipped at `a`.
    fn clipped_sine_coefficient(a: f64, n: usize) -> f64 {
        let al = a.asin();
        let nf = n as f64;
        let first = if n == 1 {
            al - (2.0 * al).sin() / 2.0
        } else {
            ((nf - 1.0) * al).sin() / (nf - 1.0) - ((nf + 1.0) * al).sin() / (nf + 1.0)
        };
        4.0 / PI * (0.5 * first + a * (nf * al).cos() / nf)
    }

    #[test]
    fn unclipped_chain_is_clean() {
        let r = harmonic_cascade(&[StageClipper::new(3.0, 100.0).unwrap()], 1.0_f64, 4, 256).unwrap();
        assert!(r.h2_dbc < -200.0 && r.h3_dbc < -200.0, "{r:?}");
        assert!((r.fundamental_power - 4.5).abs() < 1e-12);
    }

    #[test]
    fn clipped_sine_matches_fourier_series() {
        let r = harmonic_cascade(&[StageClipper::new(1.0, 0.5).unwrap()], 1.0_f64, 4, 1024).unwrap();
        let b1 = clipped_sine_coefficient(0.5, 1);
        let b3 = clipped_sine_coefficient(0.5, 3);
        assert!((db10(r.fundamental_power / (b1 * b1 / 2.0))).abs() < 0.01);
        assert!((db10(r.h3_power / (b3 * b3 / 2.0))).abs() < 0.1, "{} vs {}", r.h3_power, b3 * b3 / 2.0);
        assert!(r.h2_dbc < -200.0);
    }

    #[test]
    fn parseval_holds() {
        let x: Vec<f64> = (0..512).map(|i| ((i * 37 % 101) as f64 / 50.0 - 1.0).powi(3)).collect();
        let ms = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
        let total: f64 = power_spectrum(&x).iter().sum();
        assert!(((total - ms) / ms).abs() < 1e-9);
    }

    #[test]
    fn bias_cases_are_ordered() {
        let powers: Vec<f64> = representative_cases::<f64>()
            .iter()
            .map(|(_, s)| {
                harmonic_cascade(s, REPRESENTATIVE_DRIVE, REPRESENTATIVE_PERIODS, REPRESENTATIVE_SAMPLES)
                    .unwrap()
                    .h2_plus_h3_db()
            })
            .collect();
        assert!(powers[0] < powers[1] && powers[1] < powers[2], "{powers:?}");
    }

    #[test]
    fn rejects_bad_sampling_and_stages() {
        let s = [StageClipper::new(1.0, 1.0).unwrap()];
        assert!(harmonic_cascade(&s, 1.0_f64, 4, 100).is_err());
        assert!(harmonic_cascade(&s, 1.0_f64, 4, 32).is_err());
        assert!(harmonic_cascade(&s, 1.0_f64, 0, 64).is_err());
        assert!(harmonic_cascade::<f64>(&[], 1.0, 4, 64).is_err());
        assert!(StageClipper::new(0.0, 1.0_f64).is_err());
        assert!(harmonic_cascade(&s, f64::INFINITY, 4, 64).is_err());
    }

    #[test]
    fn vanishing_fundamental_is_degenerate() {
        let s = [StageClipper { gain: 1.0, clip_level: 1e-300 }];
        assert!(matches!(harmonic_cascade(&s, 1.0_f64, 1, 64), Err(Error::DegenerateSignal(_))));
    }
}
