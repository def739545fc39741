//! `spectra.csv`, `timeseries.csv` and `summary.json`.

use serde::Serialize;
use std::fs;
use std::path::Path;

use super::{Scenario, ScenarioError, ScenarioResult};
use crate::pulse::{distortion_metric, DISTORTION_WARN_THRESHOLD};
use crate::slab::Channel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub version: String,
    pub parameters: Scenario,
    pub derived: Derived,
    pub phase_times: Option<PhaseTimes>,
    pub superluminal: Superluminal,
    pub wave_packet: Option<WavePacket>,
    pub distortion: Option<Distortion>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Derived {
    pub thickness_m: f64,
    pub lambda0_m: f64,
    pub carrier_phase_rad: f64,
    pub transit_time_seconds: f64,
    pub transit_time_gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseTimes {
    pub tau_r_gamma: f64,
    pub tau_t_gamma: f64,
    pub tau_r_seconds: f64,
    pub tau_t_seconds: f64,
    pub tau_r_extrapolated_gamma: f64,
    pub tau_t_extrapolated_gamma: f64,
    pub step_gamma: f64,
    pub display: Display2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Display2 {
    pub reflection: f64,
    pub transmission: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Superluminal {
    pub reflection: bool,
    pub transmission: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavePacket {
    pub peak_incident_gamma: f64,
    pub peak_reflected_gamma: f64,
    pub peak_transmitted_gamma: f64,
    pub time_step_gamma: f64,
    pub display: Display2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distortion {
    pub reflected: f64,
    pub transmitted: f64,
    pub threshold: f64,
    pub warning: bool,
}

/// Round to six significant digits.
fn display(x: f64) -> f64 {
    format!("{x:.5e}").parse().unwrap_or(x)
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

impl RunSummary {
    pub fn from_result(result: &ScenarioResult) -> Self {
        let s = &result.scenario;
        let derived = Derived {
            thickness_m: s.slab.thickness_m(),
            lambda0_m: s.slab.lambda0(),
            carrier_phase_rad: s.slab.carrier_phase(),
            transit_time_seconds: result.spectrum.transit_time,
            transit_time_gamma: result.transit_time_gamma(),
        };
        let phase_times = s.outputs.phase_times.then(|| PhaseTimes {
            tau_r_gamma: result.tau_r.gamma_units,
            tau_t_gamma: result.tau_t.gamma_units,
            tau_r_seconds: result.tau_r.seconds,
            tau_t_seconds: result.tau_t.seconds,
            tau_r_extrapolated_gamma: result.tau_r.extrapolated,
            tau_t_extrapolated_gamma: result.tau_t.extrapolated,
            step_gamma: result.tau_r.step,
            display: Display2 {
                reflection: display(result.tau_r.gamma_units),
                transmission: display(result.tau_t.gamma_units),
            },
        });
        let wave_packet = result.time_series.as_ref().map(|ts| WavePacket {
            peak_incident_gamma: ts.incident.peak_time,
            peak_reflected_gamma: ts.reflected.peak_time,
            peak_transmitted_gamma: ts.transmitted.peak_time,
            time_step_gamma: ts.time_step(),
            display: Display2 {
                reflection: display(ts.reflected.peak_time),
                transmission: display(ts.transmitted.peak_time),
            },
        });
        let distortion = result.time_series.as_ref().map(|ts| {
            let reflected = distortion_metric(&ts.reflected, &ts.incident);
            let transmitted = distortion_metric(&ts.transmitted, &ts.incident);
            Distortion {
                reflected,
                transmitted,
                threshold: DISTORTION_WARN_THRESHOLD,
                warning: reflected > DISTORTION_WARN_THRESHOLD || transmitted > DISTORTION_WARN_THRESHOLD,
            }
        });
        RunSummary {
            scenario: s.name.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: s.clone(),
            derived,
            phase_times,
            superluminal: Superluminal {
                reflection: result.reflection_superluminal(),
                transmission: result.transmission_superluminal(),
            },
            wave_packet,
            distortion,
        }
    }
}

fn out_err(path: &Path, e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Output(format!("{}: {e}", path.display()))
}

fn write_spectra(result: &ScenarioResult, path: &Path) -> Result<(), ScenarioError> {
    let spec = &result.spectrum;
    let tau_r = spec.local_delays(Channel::Reflection);
    let tau_t = spec.local_delays(Channel::Transmission);
    let mut w = csv::Writer::from_path(path).map_err(|e| out_err(path, e))?;
    w.write_record([
        "delta_p_over_gamma",
        "re_chi",
        "im_chi",
        "re_n",
        "im_n",
        "reflectance",
        "transmittance",
        "tau_r_gamma",
        "tau_t_gamma",
    ])
    .map_err(|e| out_err(path, e))?;
    for (k, p) in spec.points.iter().enumerate() {
        w.write_record([
            num(p.delta_p),
            num(p.chi.re),
            num(p.chi.im),
            num(p.n.re),
            num(p.n.im),
            num(p.reflectance),
            num(p.transmittance),
            num(tau_r[k]),
            num(tau_t[k]),
        ])
        .map_err(|e| out_err(path, e))?;
    }
    w.flush().map_err(|e| out_err(path, e))
}

fn write_timeseries(result: &ScenarioResult, path: &Path) -> Result<(), ScenarioError> {
    let Some(ts) = &result.time_series else {
        return Ok(());
    };
    let mut w = csv::Writer::from_path(path).map_err(|e| out_err(path, e))?;
    w.write_record(["t_gamma", "i_ref_norm", "i_refl_norm", "i_trans_norm"])
        .map_err(|e| out_err(path, e))?;
    for (k, t) in ts.times.iter().enumerate() {
        w.write_record([
            num(*t),
            num(ts.incident.intensity[k]),
            num(ts.reflected.intensity[k]),
            num(ts.transmitted.intensity[k]),
        ])
        .map_err(|e| out_err(path, e))?;
    }
    w.flush().map_err(|e| out_err(path, e))
}

/// Write the requested artifacts and return the summary.
pub fn write_outputs(result: &ScenarioResult, out_dir: &Path) -> Result<RunSummary, ScenarioError> {
    fs::create_dir_all(out_dir).map_err(|source| ScenarioError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    let outputs = result.scenario.outputs;
    if outputs.spectra {
        write_spectra(result, &out_dir.join("spectra.csv"))?;
    }
    if outputs.time_series {
        write_timeseries(result, &out_dir.join("timeseries.csv"))?;
    }
    let summary = RunSummary::from_result(result);
    let path = out_dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(&summary).map_err(|e| out_err(&path, e))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| out_err(&path, e))?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(display(4.161748430028), 4.16175);
        assert_eq!(display(-5.7746677924e-3), -5.77467e-3);
        assert_eq!(display(0.0), 0.0);
    }

    #[test]
    fn full_precision_numbers() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
