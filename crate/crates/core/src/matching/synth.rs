use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ga::{self, GaParams};
use super::objective::{section_residuals, SectionParams};
use crate::error::{invalid, Result};
use crate::rf::{abcd_to_s_power_wave, cascade, linspace, Element, Frequency, TLineSection};
use crate::scalar::{db20, wrap_deg};

/// Two-section matching problem: `z_source` ← section 1 ← `z_intermediate`
/// ← section 2 ← `z_target`, with a required insertion phase at `f0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchSpec {
    pub z_source: Complex64,
    pub z_intermediate: f64,
    pub z_target: f64,
    /// Hz.
    pub f0: f64,
    /// Hz.
    pub band: (f64, f64),
    /// Insertion phase delay −∠S21 to realise, degrees in [0, 360).
    pub phase_target_deg: f64,
    /// Present conj(z_source) instead of z_source.
    pub conjugate_mode: bool,
    pub band_points: usize,
}

impl MatchSpec {
    /// 10.6 + j5.7 Ω → 25 Ω → 50 Ω at 8 GHz over 7.6–8.4 GHz with 120° of phase.
    pub fn main_path_omn() -> Self {
        Self {
            z_source: Complex64::new(10.6, 5.7),
            z_intermediate: 25.0,
            z_target: 50.0,
            f0: 8e9,
            band: (7.6e9, 8.4e9),
            phase_target_deg: 120.0,
            conjugate_mode: false,
            band_points: 41,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z_source.re > 0.0 && self.z_source.im.is_finite()) {
            return Err(invalid("source impedance needs a positive real part"));
        }
        if !(self.z_intermediate > 0.0 && self.z_target > 0.0) {
            return Err(invalid("intermediate and target impedances must be positive"));
        }
        let (lo, hi) = self.band;
        if !(lo > 0.0 && lo < self.f0 && self.f0 < hi) {
            return Err(invalid("band must satisfy 0 < f_lo < f0 < f_hi"));
        }
        if !(0.0..360.0).contains(&self.phase_target_deg) {
            return Err(invalid("phase target must lie in [0, 360)"));
        }
        if self.band_points < 2 {
            return Err(invalid("band sweep needs at least two points"));
        }
        Ok(())
    }

    /// Impedance the network must present at its source side.
    pub fn presented_target(&self) -> Complex64 {
        if self.conjugate_mode {
            self.z_source.conj()
        } else {
            self.z_source
        }
    }
}

/// Genetic-algorithm settings for [`synthesize_two_section`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GAConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub elitism: usize,
    pub crossover_rate: f64,
    /// Per-gene mutation probability.
    pub mutation_rate: f64,
    /// Gaussian mutation standard deviation as a fraction of each parameter range.
    pub mutation_sigma: f64,
    pub penalty_weight: f64,
    /// Phase error that costs `penalty_weight`, degrees.
    pub phase_scale_deg: f64,
    /// |Γ| that costs `penalty_weight`.
    pub match_scale: f64,
    pub seed: u64,
    pub z0_bounds: (f64, f64),
    pub theta_bounds_deg: (f64, f64),
    /// Feasibility thresholds at f0.
    pub max_gamma: f64,
    pub phase_tolerance_deg: f64,
    /// Refine the best individual with Levenberg–Marquardt.
    pub polish: bool,
}

impl Default for GAConfig {
    fn default() -> Self {
        Self {
            population: 200,
            generations: 300,
            tournament_size: 3,
            elitism: 2,
            crossover_rate: 0.9,
            mutation_rate: 0.25,
            mutation_sigma: 0.05,
            penalty_weight: 10.0,
            phase_scale_deg: 1.0,
            match_scale: 0.01,
            seed: 1,
            z0_bounds: (15.0, 110.0),
            theta_bounds_deg: (5.0, 175.0),
            max_gamma: 0.1,
            phase_tolerance_deg: 5.0,
            polish: true,
        }
    }
}

impl GAConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(invalid("population must be at least 2"));
        }
        if self.generations == 0 {
            return Err(invalid("need at least one generation"));
        }
        let (zl, zh) = self.z0_bounds;
        let (tl, th) = self.theta_bounds_deg;
        if !(zl > 0.0 && zh > zl) {
            return Err(invalid("impedance bounds must satisfy 0 < min < max"));
        }
        if !(tl > 0.0 && th > tl && th < 180.0) {
            return Err(invalid("length bounds must satisfy 0 < min < max < 180"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) || !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(invalid("rates must lie in [0, 1]"));
        }
        if !(self.penalty_weight >= 0.0 && self.phase_scale_deg > 0.0 && self.match_scale > 0.0) {
            return Err(invalid("penalty weight must be >= 0 and scales > 0"));
        }
        Ok(())
    }

    /// Maps a unit-box genome to section parameters.
    pub fn decode(&self, g: &[f64; 4]) -> SectionParams<f64> {
        let z = |u: f64| self.z0_bounds.0 + u * (self.z0_bounds.1 - self.z0_bounds.0);
        let t = |u: f64| self.theta_bounds_deg.0 + u * (self.theta_bounds_deg.1 - self.theta_bounds_deg.0);
        SectionParams { z01: z(g[0]), theta1_deg: t(g[1]), z02: z(g[2]), theta2_deg: t(g[3]) }
    }

    pub fn encode(&self, p: &SectionParams<f64>) -> [f64; 4] {
        let z = |v: f64| (v - self.z0_bounds.0) / (self.z0_bounds.1 - self.z0_bounds.0);
        let t = |v: f64| (v - self.theta_bounds_deg.0) / (self.theta_bounds_deg.1 - self.theta_bounds_deg.0);
        [z(p.z01), t(p.theta1_deg), z(p.z02), t(p.theta2_deg)]
    }
}

/// Everything known about one candidate at f0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub residual_r1: Complex64,
    pub residual_r2: Complex64,
    /// |r1|² + |r2|² in ohm⁴.
    pub objective: f64,
    /// Power-wave reflection at the source side against the presented target.
    pub gamma: Complex64,
    /// −∠S21 wrapped to [0, 360).
    pub insertion_phase_deg: f64,
    /// Insertion phase minus target, wrapped to (−180, 180].
    pub phase_error_deg: f64,
    pub fitness: f64,
}

/// Fitness charged when the cascade has no S representation.
pub const SINGULAR_FITNESS: f64 = 1e12;

fn cascade_at(p: &SectionParams<f64>, f0: f64, f: f64) -> Result<crate::rf::TwoPort<f64>> {
    let f0 = Frequency::new(f0)?;
    let f = Frequency::new(f)?;
    let s1 = Element::Line(TLineSection { z0: p.z01, theta0_deg: p.theta1_deg, f0 });
    let s2 = Element::Line(TLineSection { z0: p.z02, theta0_deg: p.theta2_deg, f0 });
    cascade(&[s1.twoport(f)?, s2.twoport(f)?])
}

/// (Γ, S21) with the source-side reference chosen so that presenting the
/// target impedance is a match.
fn network_response(p: &SectionParams<f64>, spec: &MatchSpec, f: f64) -> Result<(Complex64, Complex64)> {
    let tp = cascade_at(p, spec.f0, f)?;
    let z1 = spec.presented_target().conj();
    let s = abcd_to_s_power_wave(&tp, z1, Complex64::new(spec.z_target, 0.0))?;
    Ok((s[(0, 0)], s[(1, 0)]))
}

fn residual_scale(spec: &MatchSpec, cfg: &GAConfig) -> f64 {
    spec.z_source.norm() * cfg.z0_bounds.1
}

pub fn evaluate(p: &SectionParams<f64>, spec: &MatchSpec, cfg: &GAConfig) -> Evaluation {
    let (r1, r2) = section_residuals(p, spec.presented_target(), spec.z_intermediate, spec.z_target);
    let objective = r1.norm_sqr() + r2.norm_sqr();
    let (gamma, phase, err, fitness) = match network_response(p, spec, spec.f0) {
        Ok((g, s21)) => {
            let delay = (-s21.arg().to_degrees()).rem_euclid(360.0);
            let err = wrap_deg(delay - spec.phase_target_deg);
            let fit = objective / residual_scale(spec, cfg).powi(2)
                + cfg.penalty_weight * ((err / cfg.phase_scale_deg).powi(2) + (g.norm() / cfg.match_scale).powi(2));
            (g, delay, err, fit)
        }
        Err(_) => (Complex64::new(f64::NAN, f64::NAN), f64::NAN, f64::NAN, SINGULAR_FITNESS),
    };
    Evaluation {
        residual_r1: r1,
        residual_r2: r2,
        objective,
        gamma,
        insertion_phase_deg: phase,
        phase_error_deg: err,
        fitness,
    }
}

/// Normalised section residuals plus weighted phase and match penalties.
pub fn penalized_fitness(p: &SectionParams<f64>, spec: &MatchSpec, cfg: &GAConfig) -> f64 {
    evaluate(p, spec, cfg).fitness
}

/// Residual vector whose squared norm equals [`penalized_fitness`].
fn fitness_terms(p: &SectionParams<f64>, spec: &MatchSpec, cfg: &GAConfig) -> [f64; 7] {
    let e = evaluate(p, spec, cfg);
    if e.fitness >= SINGULAR_FITNESS {
        return [SINGULAR_FITNESS.sqrt(), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    }
    let s = residual_scale(spec, cfg);
    let w = cfg.penalty_weight.sqrt();
    [
        e.residual_r1.re / s,
        e.residual_r1.im / s,
        e.residual_r2.re / s,
        e.residual_r2.im / s,
        w * e.phase_error_deg / cfg.phase_scale_deg,
        w * e.gamma.re / cfg.match_scale,
        w * e.gamma.im / cfg.match_scale,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    /// Section 1 faces the source, section 2 the target.
    pub sections: [TLineSection<f64>; 2],
    pub residual_r1: Complex64,
    pub residual_r2: Complex64,
    pub objective: f64,
    pub fitness: f64,
    pub achieved_phase_deg: f64,
    pub phase_error_deg: f64,
    pub gamma_at_f0: Complex64,
    /// (Hz, return loss dB) across the band.
    pub band_return_loss: Vec<(f64, f64)>,
    pub feasible: bool,
    /// Best fitness per generation.
    pub history: Vec<f64>,
}

impl MatchResult {
    pub fn params(&self) -> SectionParams<f64> {
        SectionParams {
            z01: self.sections[0].z0,
            theta1_deg: self.sections[0].theta0_deg,
            z02: self.sections[1].z0,
            theta2_deg: self.sections[1].theta0_deg,
        }
    }
}

/// Finds section impedances and lengths that satisfy both section
/// equations while delivering the target insertion phase and a match at f0.
///
/// The search is deterministic for a given seed. When no candidate meets the
/// feasibility thresholds the best one is still returned with
/// `feasible = false`.
pub fn synthesize_two_section(spec: &MatchSpec, cfg: &GAConfig) -> Result<MatchResult> {
    spec.validate()?;
    cfg.validate()?;
    let params = GaParams {
        population: cfg.population,
        generations: cfg.generations,
        tournament_size: cfg.tournament_size,
        elitism: cfg.elitism,
        crossover_rate: cfg.crossover_rate,
        mutation_rate: cfg.mutation_rate,
        mutation_sigma: cfg.mutation_sigma,
        seed: cfg.seed,
    };
    let out = ga::run(&params, |g: &[f64; 4]| penalized_fitness(&cfg.decode(g), spec, cfg));
    let mut genome = out.best;
    if cfg.polish {
        let (polished, _) = ga::polish(genome, |g: &[f64; 4]| fitness_terms(&cfg.decode(g), spec, cfg));
        if penalized_fitness(&cfg.decode(&polished), spec, cfg) < out.best_fitness {
            genome = polished;
        }
    }
    let p = cfg.decode(&genome);
    let e = evaluate(&p, spec, cfg);
    let f0 = Frequency::new(spec.f0)?;
    let band_return_loss = linspace(Frequency::new(spec.band.0)?, Frequency::new(spec.band.1)?, spec.band_points)?
        .into_iter()
        .map(|f| {
            let rl = network_response(&p, spec, f.hz()).map_or(f64::NAN, |(g, _)| -db20(g.norm()));
            (f.hz(), rl)
        })
        .collect();
    Ok(MatchResult {
        sections: [TLineSection::new(p.z01, p.theta1_deg, f0)?, TLineSection::new(p.z02, p.theta2_deg, f0)?],
        residual_r1: e.residual_r1,
        residual_r2: e.residual_r2,
        objective: e.objective,
        fitness: e.fitness,
        achieved_phase_deg: e.insertion_phase_deg,
        phase_error_deg: e.phase_error_deg,
        gamma_at_f0: e.gamma,
        band_return_loss,
        feasible: e.gamma.norm() <= cfg.max_gamma && e.phase_error_deg.abs() <= cfg.phase_tolerance_deg,
        history: out.history,
    })
}
