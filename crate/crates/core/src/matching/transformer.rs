use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rf::{Element, Frequency, TLineSection, TwoPort};
use crate::scalar::{deg_to_rad, rad_to_deg, Real};

/// Quarter-wave section matching two real impedances at `f0`.
pub fn quarter_wave<T: Real>(z_load: T, z_target: T, f0: Frequency<T>) -> Result<TLineSection<T>> {
    if !(z_load > T::zero() && z_target > T::zero()) {
        return Err(invalid(format!(
            "quarter-wave match needs positive real impedances, got {z_load} and {z_target}"
        )));
    }
    TLineSection::new((z_load * z_target).sqrt(), T::lit(90.0), f0)
}

/// Lumped C–L–C network equal to a line section at its design frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiEquivalent<T> {
    /// Series inductance in henries.
    pub l_series: T,
    /// Shunt capacitance on each side in farads.
    pub c_shunt: T,
    pub f0: Frequency<T>,
}

impl<T: Real> PiEquivalent<T> {
    /// Shunt C, series L, shunt C.
    pub fn elements(&self) -> [Element<T>; 3] {
        [
            Element::ShuntCapacitor(self.c_shunt),
            Element::SeriesInductor(self.l_series),
            Element::ShuntCapacitor(self.c_shunt),
        ]
    }

    pub fn twoport(&self, f: Frequency<T>) -> Result<TwoPort<T>> {
        let parts = self
            .elements()
            .iter()
            .map(|e| e.twoport(f))
            .collect::<Result<Vec<_>>>()?;
        crate::rf::cascade(&parts)
    }
}

/// L = Z0·sinθ/ω0, C = tan(θ/2)/(ω0·Z0).
pub fn pi_equivalent<T: Real>(sec: &TLineSection<T>) -> Result<PiEquivalent<T>> {
    if !(sec.theta0_deg > T::zero() && sec.theta0_deg < T::lit(180.0)) {
        return Err(invalid(format!(
            "pi equivalent needs 0 < theta < 180 deg, got {}",
            sec.theta0_deg
        )));
    }
    if !(sec.z0 > T::zero()) {
        return Err(invalid("line impedance must be positive"));
    }
    let theta = deg_to_rad(sec.theta0_deg);
    let w = sec.f0.omega();
    Ok(PiEquivalent {
        l_series: sec.z0 * theta.sin() / w,
        c_shunt: (theta / T::lit(2.0)).tan() / (w * sec.z0),
        f0: sec.f0,
    })
}

/// Electrical length (degrees) whose pi equivalent has shunt capacitance `c`.
pub fn theta_from_shunt_c<T: Real>(c: T, z0: T, f0: Frequency<T>) -> Result<T> {
    if !(c > T::zero() && c.is_finite()) {
        return Err(invalid(format!("capacitance must be positive, got {c}")));
    }
    if !(z0 > T::zero()) {
        return Err(invalid("line impedance must be positive"));
    }
    Ok(rad_to_deg(T::lit(2.0) * (f0.omega() * z0 * c).atan()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rf::{abcd_to_s, Element};

    fn f8() -> Frequency<f64> {
        Frequency::from_ghz(8.0).unwrap()
    }

    #[test]
    fn quarter_wave_geometric_mean() {
        assert!((quarter_wave(25.0, 50.0, f8()).unwrap().z0 - 35.355_339).abs() < 1e-6);
        assert_eq!(quarter_wave(50.0, 50.0, f8()).unwrap().z0, 50.0);
        let q = quarter_wave(10.6, 50.0, f8()).unwrap();
        assert!((q.z0 - 23.021_729).abs() < 1e-6);
        assert_eq!(q.theta0_deg, 90.0);
        assert!(quarter_wave(0.0, 50.0, f8()).is_err());
        assert!(quarter_wave(10.0, -50.0, f8()).is_err());
    }

    #[test]
    fn ten_point_six_ohm_match_is_exact_at_center() {
        let q = quarter_wave(10.6, 50.0, f8()).unwrap();
        let s = abcd_to_s(&Element::Line(q).twoport(f8()).unwrap(), 10.6, 50.0).unwrap();
        assert!(s[(0, 0)].norm() < 1e-12);
    }

    #[test]
    fn pi_values_for_25_and_50_ohm_quarter_waves() {
        // ω0 = 2π·8e9 = 5.026548e10 rad/s
        let p25 = pi_equivalent(&TLineSection::new(25.0, 90.0, f8()).unwrap()).unwrap();
        assert!((p25.l_series - 0.497_359e-9).abs() < 1e-14, "{}", p25.l_series);
        assert!((p25.c_shunt - 0.795_775e-12).abs() < 1e-17, "{}", p25.c_shunt);
        let p50 = pi_equivalent(&TLineSection::new(50.0, 90.0, f8()).unwrap()).unwrap();
        assert!((p50.c_shunt - 0.397_887e-12).abs() < 1e-17);
        assert!((p50.c_shunt * 2.0 - p25.c_shunt).abs() < 1e-24);
    }

    #[test]
    fn short_line_has_vanishing_elements() {
        let p = pi_equivalent(&TLineSection::new(50.0, 1e-6, f8()).unwrap()).unwrap();
        assert!(p.l_series < 1e-16 && p.c_shunt < 1e-20);
    }

    #[test]
    fn pi_rejects_out_of_range_length() {
        let mut sec = TLineSection::new(50.0, 90.0, f8()).unwrap();
        sec.theta0_deg = 180.0;
        assert!(pi_equivalent(&sec).is_err());
    }

    #[test]
    fn smallest_capacitor_sets_divider_line_length() {
        // 2·atan(5.026548e10 · 25 · 110e-15) = 2·atan(0.138230) = 15.7398 deg
        let t = theta_from_shunt_c(110e-15, 25.0, f8()).unwrap();
        assert!((t - 15.7398).abs() < 1e-3, "{t}");
        let c = (45f64.to_radians()).tan() / (f8().omega() * 25.0);
        assert!((theta_from_shunt_c(c, 25.0, f8()).unwrap() - 90.0).abs() < 1e-12);
        assert!(theta_from_shunt_c(1e-30, 25.0, f8()).unwrap() < 1e-15);
        assert!(theta_from_shunt_c(0.0, 25.0, f8()).is_err());
    }
}
