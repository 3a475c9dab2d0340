use num_traits::Zero;

use super::netlist::{is_ground, ElementKind, Netlist};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::rf::Frequency;
use crate::scalar::{cplx, creal, deg_to_rad, Real, C};

/// Node admittance matrix at `f`, ground row and column removed.
///
/// Rows follow node declaration order. Port terminations are not included.
pub fn stamp_admittance<T: Real>(netlist: &Netlist<T>, f: Frequency<T>) -> Result<CMatrix<T>> {
    netlist.validate()?;
    stamp_unchecked(netlist, f)
}

pub(crate) fn stamp_unchecked<T: Real>(netlist: &Netlist<T>, f: Frequency<T>) -> Result<CMatrix<T>> {
    let idx = netlist.node_index();
    let row = |n: &str| if is_ground(n) { None } else { Some(idx[n]) };
    let mut y = CMatrix::zeros(idx.len(), idx.len());
    let w = f.omega();
    let j = cplx(T::zero(), T::one());

    for e in netlist.elements() {
        let (a, b) = (row(&e.n1), row(&e.n2));
        match e.kind {
            ElementKind::Resistor(r) => stamp_two_terminal(&mut y, a, b, creal(T::one() / r)),
            ElementKind::Inductor(l) => stamp_two_terminal(&mut y, a, b, -j / (w * l)),
            ElementKind::Capacitor(c) => stamp_two_terminal(&mut y, a, b, j * w * c),
            ElementKind::TLine { z0, theta0_deg, f0 } => {
                let theta = deg_to_rad(theta0_deg) * f.hz() / f0.hz();
                let (s, c) = theta.sin_cos();
                if s.abs() < T::angle_guard() {
                    return Err(Error::Singular(format!(
                        "line `{}` is a multiple of 180 deg long at {} Hz",
                        e.name,
                        f.hz()
                    )));
                }
                let y11 = -j * c / (z0 * s);
                let y12 = j / (z0 * s);
                add(&mut y, a, a, y11);
                add(&mut y, b, b, y11);
                add(&mut y, a, b, y12);
                add(&mut y, b, a, y12);
            }
        }
    }
    Ok(y)
}

pub(crate) fn stamp_two_terminal<T: Real>(y: &mut CMatrix<T>, a: Option<usize>, b: Option<usize>, g: C<T>) {
    add(y, a, a, g);
    add(y, b, b, g);
    add(y, a, b, -g);
    add(y, b, a, -g);
}

fn add<T: Real>(y: &mut CMatrix<T>, r: Option<usize>, c: Option<usize>, v: C<T>) {
    if let (Some(r), Some(c)) = (r, c) {
        if !v.is_zero() {
            y[(r, c)] += v;
        }
    }
}
