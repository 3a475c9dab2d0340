//! Passive-network synthesis and verification for a two-path asymmetric
//! Doherty power amplifier.
//!
//! - [`rf`]: impedances, ideal lines, chain matrices, S-parameters and sweep metrics
//! - [`circuit`]: netlists and nodal AC analysis producing N-port S-parameters
//! - [`matching`]: quarter-wave and two-section matching with phase compensation,
//!   plus lumped pi equivalents of line sections
//! - [`wilkinson`]: equal and unequal split divider/combiner design
//! - [`doherty`]: back-off, power split, combining and harmonic models
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

// `!(x > 0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod doherty;
pub mod error;
pub mod linalg;
pub mod matching;
pub mod rf;
pub mod scalar;
pub mod wilkinson;

pub use error::{Error, NetlistError, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex64;
pub type Frequency64 = rf::Frequency<f64>;
pub type Termination64 = rf::Termination<f64>;
pub type TLineSection64 = rf::TLineSection<f64>;
pub type TwoPort64 = rf::TwoPort<f64>;
pub type Element64 = rf::Element<f64>;
pub type SParamBlock64 = rf::SParamBlock<f64>;
pub type CMatrix64 = linalg::CMatrix<f64>;
pub type Netlist64 = circuit::Netlist<f64>;
pub type SolveReport64 = circuit::SolveReport<f64>;
pub type PiEquivalent64 = matching::PiEquivalent<f64>;
pub type WilkinsonDesign64 = wilkinson::WilkinsonDesign<f64>;
pub type DohertyChain64 = doherty::DohertyChain<f64>;
pub type PathModel64 = doherty::PathModel<f64>;
pub type SplitFunction64 = doherty::SplitFunction<f64>;
pub type StageClipper64 = doherty::StageClipper<f64>;
