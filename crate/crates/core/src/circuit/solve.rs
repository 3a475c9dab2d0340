use rayon::prelude::*;

use super::netlist::{is_ground, Netlist};
use super::stamp::{stamp_two_terminal, stamp_unchecked};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::rf::{Frequency, SParamBlock};
use crate::scalar::{creal, Real, C};

/// Condition numbers above this are flagged in [`SolveReport::ill_conditioned`].
pub const CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveFailure<T> {
    pub freq: Frequency<T>,
    pub error: Error,
}

/// S-parameters of a netlist plus per-point diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<T> {
    /// Solved points only; failed frequencies are listed in `failures`.
    pub sparams: SParamBlock<T>,
    /// 1-norm condition estimate of the terminated nodal matrix, one per solved point.
    pub condition: Vec<T>,
    pub failures: Vec<SolveFailure<T>>,
}

impl<T: Real> SolveReport<T> {
    pub fn ill_conditioned(&self) -> Vec<Frequency<T>> {
        self.sparams
            .freqs()
            .iter()
            .zip(&self.condition)
            .filter(|(_, &c)| c > T::lit(CONDITION_LIMIT))
            .map(|(f, _)| *f)
            .collect()
    }
}

/// AC analysis of `netlist` at each frequency.
///
/// Each port is terminated in its reference impedance and driven in turn by
/// a unit incident wave (Norton source `2/√Z`); the resulting node voltages
/// give `S_ik = V_i/√Z_i − δ_ik`. Points that fail are reported and skipped.
pub fn solve_sparams<T: Real>(netlist: &Netlist<T>, freqs: &[Frequency<T>]) -> Result<SolveReport<T>> {
    netlist.validate()?;
    crate::rf::check_grid(freqs)?;
    let results: Vec<Result<(CMatrix<T>, T)>> = freqs.par_iter().map(|&f| solve_point(netlist, f)).collect();

    let mut ok_f = Vec::new();
    let mut data = Vec::new();
    let mut condition = Vec::new();
    let mut failures = Vec::new();
    for (f, r) in freqs.iter().zip(results) {
        match r {
            Ok((s, c)) => {
                ok_f.push(*f);
                data.push(s);
                condition.push(c);
            }
            Err(error) => failures.push(SolveFailure { freq: *f, error }),
        }
    }
    let z_ref = netlist.ports().iter().map(|p| p.z_ref).collect();
    Ok(SolveReport { sparams: SParamBlock::new(ok_f, data, z_ref)?, condition, failures })
}

fn solve_point<T: Real>(netlist: &Netlist<T>, f: Frequency<T>) -> Result<(CMatrix<T>, T)> {
    let mut y = stamp_unchecked(netlist, f)?;
    let idx = netlist.node_index();
    let row = |n: &str| if is_ground(n) { None } else { Some(idx[n]) };
    let ports = netlist.ports();
    for p in &ports {
        stamp_two_terminal(&mut y, row(&p.node), row(&p.reference), creal(T::one() / p.z_ref));
    }
    let cond = y.condition1();
    let lu = y.lu().map_err(|e| match e {
        Error::Singular(m) => Error::Singular(format!("{m} at {} Hz", f.hz())),
        other => other,
    })?;

    let n = ports.len();
    let mut s = CMatrix::zeros(n, n);
    let mut rhs = vec![C::new(T::zero(), T::zero()); idx.len()];
    for (k, pk) in ports.iter().enumerate() {
        rhs.iter_mut().for_each(|v| *v = C::new(T::zero(), T::zero()));
        let drive = creal(T::lit(2.0) / pk.z_ref.sqrt());
        if let Some(r) = row(&pk.node) {
            rhs[r] += drive;
        }
        if let Some(r) = row(&pk.reference) {
            rhs[r] -= drive;
        }
        let v = lu.solve(&rhs);
        let volt = |name: &str| row(name).map_or(C::new(T::zero(), T::zero()), |r| v[r]);
        for (i, pi) in ports.iter().enumerate() {
            let vi = volt(&pi.node) - volt(&pi.reference);
            let mut sik = vi / pi.z_ref.sqrt();
            if i == k {
                sik -= T::one();
            }
            s[(i, k)] = sik;
        }
    }
    Ok((s, cond))
}
