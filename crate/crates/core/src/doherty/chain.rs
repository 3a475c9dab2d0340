use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::{db10, deg_to_rad, dbm_to_watts, watts_to_dbm, Real};

/// Default share of total output the auxiliary path must exceed before the
/// back-off reference point is taken.
pub const DEFAULT_AUX_THRESHOLD: f64 = 0.1;

/// Saturating amplifier stage with a smooth knee.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathModel<T> {
    pub small_signal_gain_db: T,
    pub p_sat_dbm: T,
    /// Knee sharpness `s`; larger is closer to a hard limiter.
    pub knee_sharpness: T,
    /// DC supply power in watts, when efficiency is wanted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dc_power_w: Option<T>,
}

impl<T: Real> PathModel<T> {
    pub fn validate(&self) -> Result<()> {
        if !self.small_signal_gain_db.is_finite() || !self.p_sat_dbm.is_finite() {
            return Err(invalid("path gain and saturation power must be finite"));
        }
        if !(self.knee_sharpness > T::zero() && self.knee_sharpness.is_finite()) {
            return Err(invalid(format!("knee sharpness must be positive, got {}", self.knee_sharpness)));
        }
        if let Some(p) = self.dc_power_w {
            if !(p > T::zero() && p.is_finite()) {
                return Err(invalid(format!("dc power must be positive, got {p}")));
            }
        }
        Ok(())
    }

    /// Output power in watts for an input power in watts:
    /// `G·p·(1 + (G·p/psat)^(2s))^(-1/(2s))`.
    pub fn transfer_w(&self, p_in_w: T) -> T {
        let two_s = T::lit(2.0) * self.knee_sharpness;
        let lin = dbm_to_watts(self.small_signal_gain_db + T::lit(30.0)) * p_in_w;
        let x = lin / dbm_to_watts(self.p_sat_dbm);
        if x == T::zero() {
            return T::zero();
        }
        // Evaluated in logs so very deep saturation neither overflows nor
        // loses the limit.
        let ln_x = x.ln();
        let ln_term = if two_s * ln_x > T::lit(40.0) {
            two_s * ln_x + (-two_s * ln_x).exp().ln_1p()
        } else {
            (two_s * ln_x).exp().ln_1p()
        };
        lin * (-ln_term / two_s).exp()
    }
}

/// Drive-dependent share of input power sent to the main path.
///
/// `main_fraction(pin) = high + (low - high) / (1 + exp((pin - center)/width))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitFunction<T> {
    pub main_fraction_low: T,
    pub main_fraction_high: T,
    pub transition_center_dbm: T,
    pub transition_width_db: T,
}

impl<T: Real> SplitFunction<T> {
    /// A split that does not depend on drive.
    pub fn constant(main_fraction: T) -> Self {
        Self {
            main_fraction_low: main_fraction,
            main_fraction_high: main_fraction,
            transition_center_dbm: T::zero(),
            transition_width_db: T::one(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if !unit(self.main_fraction_low) || !unit(self.main_fraction_high) {
            return Err(invalid("split fractions must lie in [0, 1]"));
        }
        if self.main_fraction_low < self.main_fraction_high {
            return Err(invalid("main path must receive the larger share at low drive"));
        }
        if !self.transition_center_dbm.is_finite() || !(self.transition_width_db > T::zero()) {
            return Err(invalid("split transition needs a finite center and positive width"));
        }
        Ok(())
    }

    pub fn main_fraction(&self, pin_dbm: T) -> T {
        let z = (pin_dbm - self.transition_center_dbm) / self.transition_width_db;
        self.main_fraction_high + (self.main_fraction_low - self.main_fraction_high) / (T::one() + z.exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DohertyChain<T> {
    pub split: SplitFunction<T>,
    pub main: PathModel<T>,
    pub aux: PathModel<T>,
    /// Combiner design ratio K² = P_aux/P_main.
    pub combiner_ratio: T,
    pub phase_offset_deg: T,
}

impl<T: Real> DohertyChain<T> {
    pub fn validate(&self) -> Result<()> {
        self.split.validate()?;
        self.main.validate()?;
        self.aux.validate()?;
        if !(self.combiner_ratio > T::zero() && self.combiner_ratio.is_finite()) {
            return Err(invalid(format!("combiner ratio must be positive, got {}", self.combiner_ratio)));
        }
        if !self.phase_offset_deg.is_finite() {
            return Err(invalid("phase offset must be finite"));
        }
        Ok(())
    }

    /// Calibrated so that over a −10..20 dBm drive sweep the chain peaks at
    /// 33 dBm with 13.5 dB small-signal gain, under 1 dB compression and
    /// 7.5 dB back-off. These are fitted values, not device data.
    pub fn golden() -> Self {
        Self {
            split: SplitFunction {
                main_fraction_low: T::lit(0.928),
                main_fraction_high: T::lit(0.287),
                transition_center_dbm: T::lit(16.89),
                transition_width_db: T::lit(2.59),
            },
            main: PathModel {
                small_signal_gain_db: T::lit(16.163),
                p_sat_dbm: T::lit(28.122),
                knee_sharpness: T::lit(2.0),
                dc_power_w: None,
            },
            aux: PathModel {
                small_signal_gain_db: T::lit(13.937),
                p_sat_dbm: T::lit(33.536),
                knee_sharpness: T::lit(2.0),
                dc_power_w: None,
            },
            combiner_ratio: T::lit(1.875),
            phase_offset_deg: T::zero(),
        }
    }

    /// Summed DC power of the paths that declare one.
    pub fn dc_power_w(&self) -> Option<T> {
        match (self.main.dc_power_w, self.aux.dc_power_w) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(T::zero()) + b.unwrap_or(T::zero())),
        }
    }
}

/// Output of an ideal lossless two-way combiner with design ratio `K²`.
///
/// The output wave is `c2·√p_main + c3·√p_aux·e^{jΔφ}` with
/// `c2 = 1/√(1+K²)` and `c3 = K/√(1+K²)`. Whatever does not reach the output
/// is dissipated in the isolation resistor.
pub fn combine<T: Real>(p_main: T, p_aux: T, phase_offset_deg: T, design_ratio_k2: T) -> T {
    let norm = (T::one() + design_ratio_k2).sqrt();
    let a = p_main.max(T::zero()).sqrt() / norm;
    let b = design_ratio_k2.sqrt() * p_aux.max(T::zero()).sqrt() / norm;
    let phi = deg_to_rad(phase_offset_deg);
    let re = a + b * phi.cos();
    let im = b * phi.sin();
    re * re + im * im
}

/// Every intermediate curve of a drive sweep, in dBm / dB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainCurves<T> {
    pub pin_dbm: Vec<T>,
    pub main_in_dbm: Vec<T>,
    pub aux_in_dbm: Vec<T>,
    pub main_out_dbm: Vec<T>,
    pub aux_out_dbm: Vec<T>,
    pub pout_dbm: Vec<T>,
    pub gain_db: Vec<T>,
}

impl<T: Real> ChainCurves<T> {
    pub fn len(&self) -> usize {
        self.pin_dbm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pin_dbm.is_empty()
    }
}

pub fn chain_response<T: Real>(chain: &DohertyChain<T>, pin_dbm: &[T]) -> Result<ChainCurves<T>> {
    chain.validate()?;
    if pin_dbm.is_empty() {
        return Err(crate::Error::Empty("drive grid"));
    }
    if pin_dbm.iter().any(|p| !p.is_finite()) || pin_dbm.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("drive grid must be finite and strictly increasing"));
    }
    let n = pin_dbm.len();
    let mut c = ChainCurves {
        pin_dbm: pin_dbm.to_vec(),
        main_in_dbm: Vec::with_capacity(n),
        aux_in_dbm: Vec::with_capacity(n),
        main_out_dbm: Vec::with_capacity(n),
        aux_out_dbm: Vec::with_capacity(n),
        pout_dbm: Vec::with_capacity(n),
        gain_db: Vec::with_capacity(n),
    };
    for &pin in pin_dbm {
        let p = dbm_to_watts(pin);
        let f = chain.split.main_fraction(pin);
        let (pm_in, pa_in) = (f * p, (T::one() - f) * p);
        let (pm, pa) = (chain.main.transfer_w(pm_in), chain.aux.transfer_w(pa_in));
        let out = combine(pm, pa, chain.phase_offset_deg, chain.combiner_ratio);
        c.main_in_dbm.push(watts_to_dbm(pm_in));
        c.aux_in_dbm.push(watts_to_dbm(pa_in));
        c.main_out_dbm.push(watts_to_dbm(pm));
        c.aux_out_dbm.push(watts_to_dbm(pa));
        c.pout_dbm.push(watts_to_dbm(out));
        c.gain_db.push(db10(out / p));
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainMetrics<T> {
    /// Gain at the lowest drive of the sweep.
    pub small_signal_gain_db: T,
    /// Largest drop of gain below the small-signal value.
    pub compression_db: T,
    pub peak_pout_dbm: T,
    /// Peak output minus output where the auxiliary share first exceeds the
    /// threshold; `None` if it never does.
    pub opbo_db: Option<T>,
    /// Drain efficiency per sweep point, when DC power is known.
    pub efficiency: Option<Vec<T>>,
}

pub fn metrics<T: Real>(curves: &ChainCurves<T>, dc_power_w: Option<T>, aux_threshold: T) -> Result<ChainMetrics<T>> {
    if curves.is_empty() {
        return Err(crate::Error::Empty("chain curves"));
    }
    let ss = curves.gain_db[0];
    let compression = curves.gain_db.iter().map(|&g| ss - g).fold(T::zero(), T::max);
    let peak = curves.pout_dbm.iter().copied().fold(T::neg_infinity(), T::max);
    let opbo = curves
        .main_out_dbm
        .iter()
        .zip(&curves.aux_out_dbm)
        .position(|(&m, &a)| {
            let (m, a) = (dbm_to_watts(m), dbm_to_watts(a));
            a / (m + a) > aux_threshold
        })
        .map(|i| peak - curves.pout_dbm[i]);
    let efficiency = dc_power_w.map(|dc| curves.pout_dbm.iter().map(|&p| dbm_to_watts(p) / dc).collect());
    Ok(ChainMetrics {
        small_signal_gain_db: ss,
        compression_db: compression,
        peak_pout_dbm: peak,
        opbo_db: opbo,
        efficiency,
    })
}
