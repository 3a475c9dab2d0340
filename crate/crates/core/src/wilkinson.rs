//! Equal and unequal-split Wilkinson dividers/combiners.
//!
//! Port 1 is the common port, port 2 the main path and port 3 the auxiliary
//! path. The power ratio is `P3/P2 = K²`. Branch, bridge and output
//! transformer values follow the standard unequal-split synthesis; the
//! ideal-line realisation is matched and isolated at `f0`.

use serde::{Deserialize, Serialize};

use crate::circuit::{solve_sparams, ElementKind, Netlist, GROUND};
use crate::error::{invalid, Result};
use crate::matching::pi_equivalent;
use crate::rf::{unwrap_deg, Frequency, TLineSection};
use crate::scalar::{rad_to_deg, wrap_deg, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilkinsonDesign<T> {
    pub z0_system: T,
    /// P3/P2.
    pub k_squared: T,
    pub branch2_z0: T,
    pub branch3_z0: T,
    pub bridge_resistor: T,
    pub output_transformer2_z0: T,
    pub output_transformer3_z0: T,
    pub f0: Frequency<T>,
    /// When false, ports 2 and 3 sit directly on the branch ends with
    /// references `Z0·K` and `Z0/K`.
    pub with_transformers: bool,
}

/// Design with output transformers back to `z0_system`.
///
/// `power_ratio_2_over_3` is P2/P3, so `K² = 1/power_ratio_2_over_3`.
pub fn design<T: Real>(z0_system: T, power_ratio_2_over_3: T, f0: Frequency<T>) -> Result<WilkinsonDesign<T>> {
    design_with(z0_system, power_ratio_2_over_3, f0, true)
}

pub fn design_with<T: Real>(
    z0_system: T,
    power_ratio_2_over_3: T,
    f0: Frequency<T>,
    with_transformers: bool,
) -> Result<WilkinsonDesign<T>> {
    if !(z0_system > T::zero() && z0_system.is_finite()) {
        return Err(invalid(format!("system impedance must be positive, got {z0_system}")));
    }
    if !(power_ratio_2_over_3 > T::zero() && power_ratio_2_over_3.is_finite()) {
        return Err(invalid(format!("power ratio must be positive, got {power_ratio_2_over_3}")));
    }
    let k2 = T::one() / power_ratio_2_over_3;
    let k = k2.sqrt();
    let branch3 = z0_system * ((T::one() + k2) / (k2 * k)).sqrt();
    Ok(WilkinsonDesign {
        z0_system,
        k_squared: k2,
        branch2_z0: k2 * branch3,
        branch3_z0: branch3,
        bridge_resistor: z0_system * (k + T::one() / k),
        output_transformer2_z0: z0_system * k.sqrt(),
        output_transformer3_z0: z0_system / k.sqrt(),
        f0,
        with_transformers,
    })
}

impl<T: Real> WilkinsonDesign<T> {
    pub fn k(&self) -> T {
        self.k_squared.sqrt()
    }

    /// Port reference impedances in port order.
    pub fn port_impedances(&self) -> [T; 3] {
        if self.with_transformers {
            [self.z0_system; 3]
        } else {
            [self.z0_system, self.z0_system * self.k(), self.z0_system / self.k()]
        }
    }
}

/// Realisation choices for [`to_netlist_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetlistOptions {
    /// Include the isolation resistor.
    pub bridge: bool,
    /// Replace every line by its pi equivalent.
    pub lumped: bool,
}

impl Default for NetlistOptions {
    fn default() -> Self {
        Self { bridge: true, lumped: false }
    }
}

pub fn to_netlist<T: Real>(d: &WilkinsonDesign<T>) -> Result<Netlist<T>> {
    to_netlist_with(d, NetlistOptions::default())
}

pub fn to_netlist_with<T: Real>(d: &WilkinsonDesign<T>, opts: NetlistOptions) -> Result<Netlist<T>> {
    let mut n = Netlist::new();
    let q = T::lit(90.0);
    let mut lines = vec![("TB2", "in", "a2", d.branch2_z0), ("TB3", "in", "a3", d.branch3_z0)];
    n.add_node("in").add_node("a2").add_node("a3");
    let (p2, p3) = if d.with_transformers {
        n.add_node("p2").add_node("p3");
        lines.push(("TX2", "a2", "p2", d.output_transformer2_z0));
        lines.push(("TX3", "a3", "p3", d.output_transformer3_z0));
        ("p2", "p3")
    } else {
        ("a2", "a3")
    };
    for (name, a, b, z0) in lines {
        if opts.lumped {
            let pi = pi_equivalent(&TLineSection::new(z0, q, d.f0)?)?;
            n.add_element(format!("{name}_C1"), ElementKind::Capacitor(pi.c_shunt), a, GROUND)
                .add_element(format!("{name}_L"), ElementKind::Inductor(pi.l_series), a, b)
                .add_element(format!("{name}_C2"), ElementKind::Capacitor(pi.c_shunt), b, GROUND);
        } else {
            n.add_element(name, ElementKind::TLine { z0, theta0_deg: q, f0: d.f0 }, a, b);
        }
    }
    if opts.bridge {
        n.add_element("RB", ElementKind::Resistor(d.bridge_resistor), "a2", "a3");
    }
    let [z1, z2, z3] = d.port_impedances();
    n.add_port("in", z1).add_port(p2, z2).add_port(p3, z3);
    Ok(n)
}

/// ∠S21 − ∠S31 in degrees at each frequency, unwrapped across the grid.
pub fn terminal_phase_difference<T: Real>(d: &WilkinsonDesign<T>, freqs: &[Frequency<T>]) -> Result<Vec<T>> {
    let report = solve_sparams(&to_netlist(d)?, freqs)?;
    if let Some(fail) = report.failures.first() {
        return Err(fail.error.clone());
    }
    let raw: Vec<T> = report
        .sparams
        .matrices()
        .iter()
        .map(|s| wrap_deg(rad_to_deg(s[(1, 0)].arg() - s[(2, 0)].arg())))
        .collect();
    Ok(unwrap_deg(&raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> Frequency<f64> {
        Frequency::from_ghz(8.0).unwrap()
    }

    #[test]
    fn equal_split_limit() {
        let d = design(50.0, 1.0, f8()).unwrap();
        assert!((d.branch2_z0 - 70.710_678).abs() < 1e-6);
        assert_eq!(d.branch2_z0, d.branch3_z0);
        assert!((d.bridge_resistor - 100.0).abs() < 1e-12);
        assert!((d.output_transformer2_z0 - 50.0).abs() < 1e-12);
    }

    #[test]
    fn combiner_ratio_values() {
        // K² = 1.875, K = 1.369306
        let d = design(50.0, 8.0 / 15.0, f8()).unwrap();
        assert!((d.k_squared - 1.875).abs() < 1e-12);
        assert!((d.branch3_z0 - 52.910).abs() < 1e-3, "{}", d.branch3_z0);
        assert!((d.branch2_z0 - 99.206).abs() < 1e-3, "{}", d.branch2_z0);
        assert!((d.bridge_resistor - 104.980).abs() < 1e-3, "{}", d.bridge_resistor);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(design(50.0, 0.0, f8()).is_err());
        assert!(design(50.0, -1.0, f8()).is_err());
        assert!(design(0.0, 1.0, f8()).is_err());
    }

    #[test]
    fn ratio_above_one_mirrors_branches() {
        let a = design(50.0, 0.5, f8()).unwrap();
        let b = design(50.0, 2.0, f8()).unwrap();
        assert!((a.branch2_z0 - b.branch3_z0).abs() < 1e-9);
        assert!((a.branch3_z0 - b.branch2_z0).abs() < 1e-9);
        assert!((a.bridge_resistor - b.bridge_resistor).abs() < 1e-9);
    }

    #[test]
    fn netlist_shapes() {
        let d = design(50.0, 1.0, f8()).unwrap();
        assert_eq!(to_netlist(&d).unwrap().elements().len(), 5);
        let no_bridge = to_netlist_with(&d, NetlistOptions { bridge: false, lumped: false }).unwrap();
        assert_eq!(no_bridge.elements().len(), 4);
        let lumped = to_netlist_with(&d, NetlistOptions { bridge: true, lumped: true }).unwrap();
        assert_eq!(lumped.elements().len(), 13);
        let bare = to_netlist(&design_with(50.0, 0.5, f8(), false).unwrap()).unwrap();
        assert_eq!(bare.ports().len(), 3);
        assert!(bare.validate().is_ok());
    }

    fn s_at(n: &Netlist<f64>, f: Frequency<f64>) -> crate::linalg::CMatrix<f64> {
        let r = solve_sparams(n, &[f]).unwrap();
        assert!(r.failures.is_empty());
        r.sparams.matrices()[0].clone()
    }

    #[test]
    fn matched_isolated_and_split_at_f0() {
        for (ratio, xf) in [(1.0, true), (8.0 / 15.0, true), (8.0 / 15.0, false), (3.0, true)] {
            let d = design_with(50.0, ratio, f8(), xf).unwrap();
            let s = s_at(&to_netlist(&d).unwrap(), f8());
            for (i, j) in [(0, 0), (1, 1), (2, 2), (1, 2)] {
                assert!(s[(i, j)].norm() < 1e-6, "ratio {ratio} S{}{} = {}", i + 1, j + 1, s[(i, j)].norm());
            }
            let k2 = s[(2, 0)].norm_sqr() / s[(1, 0)].norm_sqr();
            assert!((k2 / d.k_squared - 1.0).abs() < 0.01);
            let total = s[(1, 0)].norm_sqr() + s[(2, 0)].norm_sqr();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn removing_bridge_destroys_isolation() {
        let d = design(50.0, 8.0 / 15.0, f8()).unwrap();
        let n = to_netlist_with(&d, NetlistOptions { bridge: false, lumped: false }).unwrap();
        let s23 = crate::scalar::db20(s_at(&n, f8())[(1, 2)].norm());
        assert!(s23 > -10.0, "{s23}");
    }

    #[test]
    fn lumped_realisation_agrees_at_f0() {
        let d = design(50.0, 8.0 / 15.0, f8()).unwrap();
        let a = s_at(&to_netlist(&d).unwrap(), f8());
        let b = s_at(&to_netlist_with(&d, NetlistOptions { bridge: true, lumped: true }).unwrap(), f8());
        assert!(a.max_abs_diff(&b) < 1e-4, "{}", a.max_abs_diff(&b));
    }

    #[test]
    fn equal_output_phases_at_f0() {
        let d = design(50.0, 8.0 / 15.0, f8()).unwrap();
        let freqs = crate::rf::linspace(Frequency::from_ghz(6.0).unwrap(), Frequency::from_ghz(10.0).unwrap(), 41).unwrap();
        let dphi = terminal_phase_difference(&d, &freqs).unwrap();
        assert!(dphi[20].abs() <= 2.0, "{}", dphi[20]);
        println!("{dphi:?}");
    }
}
