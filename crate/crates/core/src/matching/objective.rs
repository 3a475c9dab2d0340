use serde::{Deserialize, Serialize};

use crate::scalar::{cplx, creal, deg_to_rad, Real, C};

/// Characteristic impedances (ohm) and electrical lengths (degrees at f0) of
/// the two sections. Section 1 faces the source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionParams<T> {
    pub z01: T,
    pub theta1_deg: T,
    pub z02: T,
    pub theta2_deg: T,
}

/// Cross-multiplied section equations.
///
/// Section 1 must present `z_src` when loaded by `z_int`; section 2 must
/// present `z_int` when loaded by `z_tgt`. Each line equation
/// `Zin = Z0·(ZL + jZ0·tanθ)/(Z0 + jZL·tanθ)` is multiplied through by its
/// denominator and by cosθ, so the residual
/// `Z0·(ZL·cosθ + jZ0·sinθ) − Zin·(Z0·cosθ + jZL·sinθ)` stays finite at 90°.
pub fn section_residuals<T: Real>(p: &SectionParams<T>, z_src: C<T>, z_int: T, z_tgt: T) -> (C<T>, C<T>) {
    let residual = |z0: T, theta_deg: T, zl: C<T>, zin: C<T>| {
        let (s, c) = deg_to_rad(theta_deg).sin_cos();
        let j = cplx(T::zero(), T::one());
        (zl * c + j * z0 * s) * z0 - zin * (j * zl * s + z0 * c)
    };
    (
        residual(p.z01, p.theta1_deg, creal(z_int), z_src),
        residual(p.z02, p.theta2_deg, creal(z_tgt), creal(z_int)),
    )
}

/// |r1|² + |r2|²; zero exactly when both section equations hold.
pub fn section_objective<T: Real>(p: &SectionParams<T>, z_src: C<T>, z_int: T, z_tgt: T) -> T {
    let (r1, r2) = section_residuals(p, z_src, z_int, z_tgt);
    r1.norm_sqr() + r2.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn uniform_fifty_ohm_line_has_zero_residual() {
        for t1 in [5.0, 33.0, 90.0, 140.0] {
            for t2 in [12.0, 90.0, 175.0] {
                let p = SectionParams { z01: 50.0, theta1_deg: t1, z02: 50.0, theta2_deg: t2 };
                assert!(section_objective(&p, Complex64::new(50.0, 0.0), 50.0, 50.0) < 1e-20);
            }
        }
    }

    #[test]
    fn exact_quarter_wave_sections_satisfy_both_equations() {
        // 16.2788 ohm transforms 25 -> 10.6, 35.3553 transforms 50 -> 25.
        let p = SectionParams {
            z01: (10.6f64 * 25.0).sqrt(),
            theta1_deg: 90.0,
            z02: (25.0f64 * 50.0).sqrt(),
            theta2_deg: 90.0,
        };
        assert!(section_objective(&p, Complex64::new(10.6, 0.0), 25.0, 50.0) < 1e-20);
    }

    #[test]
    fn residual_matches_line_equation_away_from_ninety_degrees() {
        let p = SectionParams { z01: 20.0, theta1_deg: 60.0, z02: 40.0, theta2_deg: 30.0 };
        let zs = Complex64::new(10.6, 5.7);
        let (r1, _) = section_residuals(&p, zs, 25.0, 50.0);
        let t = 60f64.to_radians().tan();
        let j = Complex64::i();
        let textbook_form = (25.0 + j * 20.0 * t) * 20.0 - zs * (20.0 + j * 25.0 * t);
        assert!((r1 - textbook_form * 60f64.to_radians().cos()).norm() < 1e-12);
    }
}
