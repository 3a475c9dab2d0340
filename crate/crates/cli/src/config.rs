//! Doherty chain configuration files (TOML).

use qadpa_core::doherty::{DohertyChain, PathModel, SplitFunction, DEFAULT_AUX_THRESHOLD};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSweep {
    pub pin_start_dbm: f64,
    pub pin_stop_dbm: f64,
    pub pin_step_db: f64,
}

impl DriveSweep {
    /// `start + i·step` up to and including `stop` (within half a step).
    pub fn grid(&self) -> CliResult<Vec<f64>> {
        let span = self.pin_stop_dbm - self.pin_start_dbm;
        if !(self.pin_step_db > 0.0 && span >= 0.0 && span.is_finite()) {
            return Err(CliError::Usage("drive sweep needs start <= stop and a positive step".into()));
        }
        let n = (span / self.pin_step_db + 0.5).floor() as usize + 1;
        Ok((0..n).map(|i| self.pin_start_dbm + self.pin_step_db * i as f64).collect())
    }
}

fn default_threshold() -> f64 {
    DEFAULT_AUX_THRESHOLD
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    /// Combiner design ratio K² = P_aux/P_main.
    pub combiner_ratio: f64,
    pub phase_offset_deg: f64,
    /// Auxiliary share of output that marks the back-off reference point.
    #[serde(default = "default_threshold")]
    pub aux_threshold: f64,
    /// Overrides the summed path DC power for efficiency, in watts.
    #[serde(default)]
    pub dc_power_w: Option<f64>,
    pub sweep: DriveSweep,
    pub split: SplitFunction<f64>,
    pub main: PathModel<f64>,
    pub aux: PathModel<f64>,
}

impl ChainConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
                .unwrap_or(1);
            CliError::parse(line, e.message().to_string())
        })
    }

    pub fn chain(&self) -> DohertyChain<f64> {
        DohertyChain {
            split: self.split,
            main: self.main,
            aux: self.aux,
            combiner_ratio: self.combiner_ratio,
            phase_offset_deg: self.phase_offset_deg,
        }
    }

    pub fn dc_power(&self) -> Option<f64> {
        self.dc_power_w.or_else(|| self.chain().dc_power_w())
    }
}
