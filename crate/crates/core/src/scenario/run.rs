use std::path::Path;

use super::{write_outputs, RunSummary, Scenario, ScenarioError};
use crate::pulse::{synthesize, TimeSeries};
use crate::slab::{build_spectral_response, phase_time, Channel, PhaseTime, SpectralResponse};

#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub scenario: Scenario,
    pub spectrum: SpectralResponse,
    pub tau_r: PhaseTime,
    pub tau_t: PhaseTime,
    pub time_series: Option<TimeSeries>,
}

impl ScenarioResult {
    pub fn reflection_superluminal(&self) -> bool {
        Channel::Reflection.is_superluminal(self.tau_r.seconds, self.spectrum.transit_time)
    }

    pub fn transmission_superluminal(&self) -> bool {
        Channel::Transmission.is_superluminal(self.tau_t.seconds, self.spectrum.transit_time)
    }

    /// Vacuum transit time d/c in units of 1/γ.
    pub fn transit_time_gamma(&self) -> f64 {
        self.spectrum.transit_time * self.spectrum.gamma_unit
    }
}

/// Compute the spectrum, carrier phase times and (if requested) pulse traces.
pub fn evaluate(scenario: &Scenario) -> Result<ScenarioResult, ScenarioError> {
    scenario.validate()?;
    let slab_err = |source| ScenarioError::Slab {
        scenario: scenario.name.clone(),
        source,
    };
    let carrier = scenario.slab.delta_p_carrier;
    let grid = scenario.sweep.grid(carrier, scenario.atomic.omega_c).points();
    let spectrum = build_spectral_response(&scenario.atomic, &scenario.slab, &grid).map_err(slab_err)?;
    let tau_r = phase_time(&spectrum, carrier, Channel::Reflection).map_err(slab_err)?;
    let tau_t = phase_time(&spectrum, carrier, Channel::Transmission).map_err(slab_err)?;

    let time_series = if scenario.outputs.time_series {
        let pulse_grid = scenario.pulse.spectral_grid(carrier, scenario.atomic.gamma_unit);
        let pulse_spectrum =
            build_spectral_response(&scenario.atomic, &scenario.slab, &pulse_grid).map_err(slab_err)?;
        let series = synthesize(&pulse_spectrum, &scenario.pulse).map_err(|source| ScenarioError::Pulse {
            scenario: scenario.name.clone(),
            source,
        })?;
        Some(series)
    } else {
        None
    };

    Ok(ScenarioResult {
        scenario: scenario.clone(),
        spectrum,
        tau_r,
        tau_t,
        time_series,
    })
}

/// Evaluate `scenario` and write its artifacts into `out_dir`.
pub fn run_scenario(scenario: &Scenario, out_dir: &Path) -> Result<RunSummary, ScenarioError> {
    let result = evaluate(scenario)?;
    write_outputs(&result, out_dir)
}
