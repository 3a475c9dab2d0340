//! Chain (ABCD) matrices and their conversion to scattering parameters.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Frequency, TLineSection};
use crate::error::{invalid, Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{cplx, creal, Real, C};

/// 2×2 chain matrix evaluated at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPort<T> {
    pub a: C<T>,
    pub b: C<T>,
    pub c: C<T>,
    pub d: C<T>,
    pub freq: Frequency<T>,
}

/// Two-port building blocks.
///
/// Lumped values are in SI base units (ohm, henry, farad, siemens).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Element<T> {
    SeriesImpedance(C<T>),
    ShuntAdmittance(C<T>),
    SeriesResistor(T),
    SeriesInductor(T),
    SeriesCapacitor(T),
    ShuntResistor(T),
    ShuntInductor(T),
    ShuntCapacitor(T),
    Line(TLineSection<T>),
}

fn positive<T: Real>(what: &str, v: T) -> Result<T> {
    if v > T::zero() && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{what} must be positive, got {v}")))
    }
}

impl<T: Real> Element<T> {
    /// Impedance of a series element, or admittance of a shunt element, at `f`.
    fn immittance(&self, f: Frequency<T>) -> Result<C<T>> {
        let w = f.omega();
        let j = cplx(T::zero(), T::one());
        Ok(match *self {
            Element::SeriesImpedance(z) | Element::ShuntAdmittance(z) => z,
            Element::SeriesResistor(r) => creal(positive("resistance", r)?),
            Element::ShuntResistor(r) => creal(T::one() / positive("resistance", r)?),
            Element::SeriesInductor(l) => j * w * positive("inductance", l)?,
            Element::ShuntInductor(l) => -j / (w * positive("inductance", l)?),
            Element::SeriesCapacitor(c) => -j / (w * positive("capacitance", c)?),
            Element::ShuntCapacitor(c) => j * w * positive("capacitance", c)?,
            Element::Line(_) => unreachable!("lines have no lumped immittance"),
        })
    }

    pub fn twoport(&self, f: Frequency<T>) -> Result<TwoPort<T>> {
        let one = C::one();
        let zero = C::zero();
        match self {
            Element::Line(sec) => {
                positive("line impedance", sec.z0)?;
                let theta = sec.theta_at(f);
                let (s, c) = theta.sin_cos();
                let j = cplx(T::zero(), T::one());
                Ok(TwoPort {
                    a: creal(c),
                    b: j * sec.z0 * s,
                    c: j * s / sec.z0,
                    d: creal(c),
                    freq: f,
                })
            }
            Element::SeriesImpedance(_)
            | Element::SeriesResistor(_)
            | Element::SeriesInductor(_)
            | Element::SeriesCapacitor(_) => Ok(TwoPort { a: one, b: self.immittance(f)?, c: zero, d: one, freq: f }),
            _ => Ok(TwoPort { a: one, b: zero, c: self.immittance(f)?, d: one, freq: f }),
        }
    }
}

/// Chain matrix of a single element at `f`.
pub fn twoport_of_element<T: Real>(element: &Element<T>, f: Frequency<T>) -> Result<TwoPort<T>> {
    element.twoport(f)
}

impl<T: Real> TwoPort<T> {
    pub fn identity(freq: Frequency<T>) -> Self {
        Self { a: C::one(), b: C::zero(), c: C::zero(), d: C::one(), freq }
    }

    pub fn det(&self) -> C<T> {
        self.a * self.d - self.b * self.c
    }

    /// `self` followed by `next` (port 2 of `self` feeds port 1 of `next`).
    pub fn then(&self, next: &TwoPort<T>) -> Result<TwoPort<T>> {
        same_freq(self.freq, next.freq)?;
        Ok(TwoPort {
            a: self.a * next.a + self.b * next.c,
            b: self.a * next.b + self.b * next.d,
            c: self.c * next.a + self.d * next.c,
            d: self.c * next.b + self.d * next.d,
            freq: self.freq,
        })
    }

    /// Input impedance with port 2 terminated in `zl`.
    pub fn input_impedance(&self, zl: C<T>) -> Result<C<T>> {
        let den = self.c * zl + self.d;
        if den.norm() <= T::epsilon() * (self.a * zl + self.b).norm() {
            return Err(Error::Singular("two-port input impedance diverges".into()));
        }
        Ok((self.a * zl + self.b) / den)
    }

    pub fn max_abs_diff(&self, other: &TwoPort<T>) -> T {
        [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d]
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }
}

fn same_freq<T: Real>(a: Frequency<T>, b: Frequency<T>) -> Result<()> {
    let tol = T::epsilon() * T::lit(4.0) * a.hz().max(b.hz());
    if (a.hz() - b.hz()).abs() > tol {
        return Err(Error::FrequencyMismatch {
            left: a.hz().to_f64().unwrap_or(f64::NAN),
            right: b.hz().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Ordered product of chain matrices.
pub fn cascade<T: Real>(sections: &[TwoPort<T>]) -> Result<TwoPort<T>> {
    let (first, rest) = sections.split_first().ok_or(Error::Empty("cascade of zero sections"))?;
    rest.iter().try_fold(*first, |acc, s| acc.then(s))
}

/// Chain matrix → S-parameters with real port references.
pub fn abcd_to_s<T: Real>(tp: &TwoPort<T>, zref1: T, zref2: T) -> Result<CMatrix<T>> {
    if !(zref1 > T::zero() && zref2 > T::zero()) {
        return Err(invalid("reference impedances must be positive"));
    }
    abcd_to_s_power_wave(tp, creal(zref1), creal(zref2))
}

/// Chain matrix → power-wave S-parameters with (possibly complex) references.
///
/// Port `k` is matched when it sees `conj(zref_k)`; with real references
/// this is the ordinary travelling-wave definition.
pub fn abcd_to_s_power_wave<T: Real>(tp: &TwoPort<T>, z1: C<T>, z2: C<T>) -> Result<CMatrix<T>> {
    if !(z1.re > T::zero() && z2.re > T::zero()) {
        return Err(invalid("reference impedances need positive real parts"));
    }
    let TwoPort { a, b, c, d, .. } = *tp;
    let den = a * z2 + b + c * z1 * z2 + d * z1;
    let scale = a.norm() * z2.norm() + b.norm() + c.norm() * z1.norm() * z2.norm() + d.norm() * z1.norm();
    if den.norm() <= T::epsilon() * scale {
        return Err(Error::Singular("ABCD to S denominator vanishes".into()));
    }
    let k = T::lit(2.0) * (z1.re * z2.re).sqrt();
    let s11 = (a * z2 + b - c * z1.conj() * z2 - d * z1.conj()) / den;
    let s22 = (-a * z2.conj() + b - c * z1 * z2.conj() + d * z1) / den;
    let s21 = creal(k) / den;
    let s12 = tp.det() * k / den;
    Ok(CMatrix::from_rows(&[vec![s11, s12], vec![s21, s22]]))
}

/// S-parameters with real references → chain matrix.
pub fn s_to_abcd<T: Real>(s: &CMatrix<T>, zref1: T, zref2: T, freq: Frequency<T>) -> Result<TwoPort<T>> {
    if s.rows() != 2 || s.cols() != 2 {
        return Err(invalid("s_to_abcd needs a 2x2 matrix"));
    }
    if !(zref1 > T::zero() && zref2 > T::zero()) {
        return Err(invalid("reference impedances must be positive"));
    }
    let (s11, s12, s21, s22) = (s[(0, 0)], s[(0, 1)], s[(1, 0)], s[(1, 1)]);
    if s21.norm() <= T::epsilon() {
        return Err(Error::Singular("S21 = 0 has no chain representation".into()));
    }
    let one = C::<T>::one();
    let den = s21 * T::lit(2.0) * (zref1 * zref2).sqrt();
    let (z1, z2) = (creal(zref1), creal(zref2));
    Ok(TwoPort {
        a: ((z1 + s11 * z1) * (one - s22) + s12 * s21 * z1) / den,
        b: ((z1 + s11 * z1) * (z2 + s22 * z2) - s12 * s21 * z1 * z2) / den,
        c: ((one - s11) * (one - s22) - s12 * s21) / den,
        d: ((one - s11) * (z2 + s22 * z2) + s12 * s21 * z2) / den,
        freq,
    })
}
