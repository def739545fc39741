use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate, Scenario, ScenarioError};
use crate::slab::Channel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub omega_c: f64,
    pub tau_r_gamma: f64,
    pub tau_t_gamma: f64,
    pub reflection_superluminal: bool,
    pub transmission_superluminal: bool,
}

/// A switch between subluminal and superluminal behavior between two
/// consecutive control-field values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignChange {
    pub channel: Channel,
    pub omega_c_from: f64,
    pub omega_c_to: f64,
    /// True when the switch is into the superluminal regime.
    pub to_superluminal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub scenario: String,
    pub thickness: &'static str,
    pub transit_time_gamma: f64,
    pub rows: Vec<SweepRow>,
    pub transitions: Vec<SignChange>,
}

/// Carrier phase times for each control-field strength, in the order given.
pub fn sweep_control_field(scenario: &Scenario, omega_c_list: &[f64]) -> Result<SweepTable, ScenarioError> {
    if omega_c_list.is_empty() {
        return Err(ScenarioError::Validation("omega_c list nonempty".to_string()));
    }
    let results = omega_c_list
        .par_iter()
        .map(|&omega_c| {
            let mut s = scenario.clone();
            s.atomic.omega_c = omega_c;
            s.outputs.time_series = false;
            evaluate(&s)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let rows: Vec<SweepRow> = results
        .iter()
        .map(|r| SweepRow {
            omega_c: r.scenario.atomic.omega_c,
            tau_r_gamma: r.tau_r.gamma_units,
            tau_t_gamma: r.tau_t.gamma_units,
            reflection_superluminal: r.reflection_superluminal(),
            transmission_superluminal: r.transmission_superluminal(),
        })
        .collect();

    let mut transitions = Vec::new();
    for w in rows.windows(2) {
        let pairs = [
            (
                Channel::Reflection,
                w[0].reflection_superluminal,
                w[1].reflection_superluminal,
            ),
            (
                Channel::Transmission,
                w[0].transmission_superluminal,
                w[1].transmission_superluminal,
            ),
        ];
        for (channel, before, after) in pairs {
            if before != after {
                transitions.push(SignChange {
                    channel,
                    omega_c_from: w[0].omega_c,
                    omega_c_to: w[1].omega_c,
                    to_superluminal: after,
                });
            }
        }
    }

    Ok(SweepTable {
        scenario: scenario.name.clone(),
        thickness: scenario.slab.thickness.label(),
        transit_time_gamma: scenario.slab.transit_time() * scenario.atomic.gamma_unit,
        rows,
        transitions,
    })
}
