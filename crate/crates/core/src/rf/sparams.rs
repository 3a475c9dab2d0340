use serde::{Deserialize, Serialize};

use super::frequency::check_grid;
use super::Frequency;
use crate::error::{invalid, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// N-port scattering data over a frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SParamBlock<T> {
    freqs: Vec<Frequency<T>>,
    data: Vec<CMatrix<T>>,
    z_ref: Vec<T>,
}

impl<T: Real> SParamBlock<T> {
    pub fn new(freqs: Vec<Frequency<T>>, data: Vec<CMatrix<T>>, z_ref: Vec<T>) -> Result<Self> {
        let n = z_ref.len();
        if n == 0 {
            return Err(invalid("S-parameter block needs at least one port"));
        }
        if freqs.len() != data.len() {
            return Err(invalid(format!("{} frequencies but {} matrices", freqs.len(), data.len())));
        }
        if let Some(i) = data.iter().position(|m| m.rows() != n || m.cols() != n) {
            return Err(invalid(format!("matrix {i} is not {n}x{n}")));
        }
        if z_ref.iter().any(|z| !(*z > T::zero())) {
            return Err(invalid("port reference impedances must be positive"));
        }
        check_grid(&freqs)?;
        Ok(Self { freqs, data, z_ref })
    }

    pub fn ports(&self) -> usize {
        self.z_ref.len()
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    pub fn freqs(&self) -> &[Frequency<T>] {
        &self.freqs
    }

    pub fn matrices(&self) -> &[CMatrix<T>] {
        &self.data
    }

    pub fn z_ref(&self) -> &[T] {
        &self.z_ref
    }

    /// Reference impedance shared by all ports, if any.
    pub fn uniform_z_ref(&self) -> Option<T> {
        let z = self.z_ref[0];
        self.z_ref.iter().all(|&x| x == z).then_some(z)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Frequency<T>, &CMatrix<T>)> {
        self.freqs.iter().copied().zip(self.data.iter())
    }

    /// Largest singular value over the whole sweep.
    pub fn max_singular_value(&self) -> T {
        self.data
            .iter()
            .flat_map(|m| m.singular_values().into_iter().take(1))
            .fold(T::zero(), T::max)
    }

    pub fn is_passive(&self, tol: T) -> bool {
        self.max_singular_value() <= T::one() + tol
    }

    /// Largest `|S - Sᵀ|` entry over the sweep.
    pub fn reciprocity_error(&self) -> T {
        self.data
            .iter()
            .map(|m| m.max_abs_diff(&m.transpose()))
            .fold(T::zero(), T::max)
    }
}
