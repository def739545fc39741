//! Scenario description, presets, configuration files, and the run/sweep drivers.

mod config;
mod output;
mod presets;
mod run;
mod sweep;

pub use config::{load_config, load_config_document, parse_config, ConfigDocument, Overrides};
pub use output::{write_outputs, RunSummary};
pub use presets::{preset, PresetInfo, PRESETS};
pub use run::{evaluate, run_scenario, ScenarioResult};
pub use sweep::{sweep_control_field, SignChange, SweepRow, SweepTable};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::DetuningGrid;
use crate::pulse::{PulseConfig, PulseError};
use crate::slab::{SlabConfig, SlabError};
use crate::susceptibility::AtomicParams;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("scenario `{scenario}`: {source}")]
    Slab {
        scenario: String,
        #[source]
        source: SlabError,
    },
    #[error("scenario `{scenario}`: {source}")]
    Pulse {
        scenario: String,
        #[source]
        source: PulseError,
    },
    #[error("output: {0}")]
    Output(String),
}

impl ScenarioError {
    /// Short machine-readable error class.
    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioError::Parse { .. } => "ParseError",
            ScenarioError::Validation(_) => "ValidationError",
            ScenarioError::UnknownPreset(_) => "UnknownPreset",
            ScenarioError::Io { .. } => "IoError",
            ScenarioError::Slab { source, .. } => match source {
                SlabError::GridTooCoarse { .. } => "GridTooCoarse",
                SlabError::ZeroDenominator { .. } => "ZeroDenominator",
                SlabError::Susceptibility { .. } => "SusceptibilityError",
                _ => "SlabError",
            },
            ScenarioError::Pulse { source, .. } => match source {
                PulseError::EdgePeak { .. } => "EdgePeak",
                PulseError::WindowTooNarrow { .. } => "WindowTooNarrow",
                _ => "PulseError",
            },
            ScenarioError::Output(_) => "OutputError",
        }
    }
}

/// Which artifacts a run produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    pub spectra: bool,
    pub phase_times: bool,
    pub time_series: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            spectra: true,
            phase_times: true,
            time_series: true,
        }
    }
}

/// Probe-detuning sweep used for the spectra and phase times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub lo: f64,
    pub hi: f64,
    pub spacing: f64,
    pub refine_half_width: f64,
    pub refine_factor: u32,
    /// Refinement applies only when Ωc is below this value (narrow Raman line).
    pub refine_below_omega_c: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            lo: 40.0,
            hi: 60.0,
            spacing: 1e-3,
            refine_half_width: 0.5,
            refine_factor: 10,
            refine_below_omega_c: 2.0,
        }
    }
}

impl SweepSpec {
    pub fn grid(&self, carrier: f64, omega_c: f64) -> DetuningGrid {
        let grid = DetuningGrid::uniform(self.lo, self.hi, carrier, self.spacing);
        if omega_c < self.refine_below_omega_c && self.refine_factor > 1 {
            grid.refined(self.refine_half_width, self.refine_factor)
        } else {
            grid
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub atomic: AtomicParams,
    pub slab: SlabConfig,
    pub pulse: PulseConfig,
    pub sweep: SweepSpec,
    pub outputs: Outputs,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            name: "default".to_string(),
            atomic: AtomicParams::default(),
            slab: SlabConfig::default(),
            pulse: PulseConfig::default(),
            sweep: SweepSpec::default(),
            outputs: Outputs::default(),
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let invalid = |s: &str| Err(ScenarioError::Validation(s.to_string()));
        if self.name.trim().is_empty() {
            return invalid("name nonempty");
        }
        self.atomic
            .validate()
            .map_err(|e| ScenarioError::Validation(strip_prefix(e.to_string())))?;
        self.slab
            .validate()
            .map_err(|e| ScenarioError::Validation(strip_prefix(e.to_string())))?;
        self.pulse
            .validate()
            .map_err(|e| ScenarioError::Validation(strip_prefix(e.to_string())))?;
        if self.pulse.omega0 != self.slab.omega0 {
            return invalid("pulse omega0 == slab omega0");
        }
        let s = &self.sweep;
        if !(s.lo.is_finite() && s.hi.is_finite() && s.lo < s.hi) {
            return invalid("sweep lo < hi");
        }
        if !(s.spacing > 0.0 && s.spacing < s.hi - s.lo) {
            return invalid("0 < sweep spacing < hi - lo");
        }
        let carrier = self.slab.delta_p_carrier;
        if !(carrier - 2.0 * s.spacing >= s.lo && carrier + 2.0 * s.spacing <= s.hi) {
            return invalid("carrier detuning inside sweep window");
        }
        if s.refine_factor < 1 {
            return invalid("refine_factor >= 1");
        }
        Ok(())
    }
}

// "invalid slab configuration: eps_b > 0" -> "eps_b > 0"
fn strip_prefix(msg: String) -> String {
    match msg.rsplit_once(": ") {
        Some((_, tail)) => tail.to_string(),
        None => msg,
    }
}
