//! Behavioural model of a two-path Doherty amplifier without load
//! modulation: back-off versus size ratio, a drive-dependent input split,
//! saturating path gains, a phase-sensitive combiner and a harmonic model of
//! cascaded clipping stages.

mod backoff;
mod chain;
mod harmonics;

pub use backoff::{backoff_from_delta, delta_from_backoff, SizeRatio};
pub use chain::{
    chain_response, combine, metrics, ChainCurves, ChainMetrics, DohertyChain, PathModel, SplitFunction,
    DEFAULT_AUX_THRESHOLD,
};
pub use harmonics::{
    harmonic_cascade, power_spectrum, representative_cases, HarmonicReport, StageClipper, HARMONIC_FLOOR_DBC,
    REPRESENTATIVE_DRIVE, REPRESENTATIVE_PERIODS, REPRESENTATIVE_SAMPLES,
};
