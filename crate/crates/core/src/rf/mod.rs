//! Impedances, transmission lines, chain matrices and sweep metrics.

mod frequency;
mod sparams;
mod sweep;
mod termination;
mod tline;
mod twoport;

pub use frequency::{check_grid, linspace, Frequency};
pub use sparams::SParamBlock;
pub use sweep::{fractional_bandwidth, sweep_metrics, unwrap_deg, SweepMetrics};
pub use termination::{reflection_coefficient, Termination};
pub use tline::TLineSection;
pub use twoport::{
    abcd_to_s, abcd_to_s_power_wave, cascade, s_to_abcd, twoport_of_element, Element, TwoPort,
};

use crate::error::Result;
use crate::scalar::Real;

/// S-parameters of an element chain over a grid, with real port references.
pub fn chain_sparams<T: Real>(
    elements: &[Element<T>],
    freqs: &[Frequency<T>],
    zref1: T,
    zref2: T,
) -> Result<SParamBlock<T>> {
    let data = freqs
        .iter()
        .map(|&f| {
            let sections = elements.iter().map(|e| e.twoport(f)).collect::<Result<Vec<_>>>()?;
            abcd_to_s(&cascade(&sections)?, zref1, zref2)
        })
        .collect::<Result<Vec<_>>>()?;
    SParamBlock::new(freqs.to_vec(), data, vec![zref1, zref2])
}
