//! Matching-network synthesis.
//!
//! Quarter-wave sections for real-to-real steps, a seeded genetic search for
//! the two-section network that matches a complex source while realising a
//! prescribed insertion phase, and lumped pi equivalents of line sections.

pub mod ga;
mod objective;
mod synth;
mod transformer;

pub use objective::{section_objective, section_residuals, SectionParams};
pub use synth::{
    evaluate, penalized_fitness, synthesize_two_section, Evaluation, GAConfig, MatchResult, MatchSpec,
    SINGULAR_FITNESS,
};
pub use transformer::{pi_equivalent, quarter_wave, theta_from_shunt_c, PiEquivalent};
