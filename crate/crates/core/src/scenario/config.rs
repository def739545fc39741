//! JSON scenario documents.
//!
//! Every key is optional. Values are resolved in the order
//! defaults → `preset` → document keys → command-line overrides.
//! See `schema/scenario.schema.json` for the full key list.

use serde::{Deserialize, Serialize};
use std::path::Path;

use super::{preset, Scenario, ScenarioError};
use crate::slab::ThicknessRule;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub name: Option<String>,
    pub preset: Option<String>,

    pub gamma_per_second: Option<f64>,
    pub omega_1_over_gamma: Option<f64>,
    pub omega_c_over_gamma: Option<f64>,
    pub beta_over_gamma: Option<f64>,
    pub delta_1_over_gamma: Option<f64>,
    pub delta_c_over_gamma: Option<f64>,
    pub dephasing_21: Option<f64>,
    pub dephasing_23: Option<f64>,
    pub dephasing_24: Option<f64>,
    pub dephasing_41: Option<f64>,
    pub dephasing_43: Option<f64>,
    pub dephasing_13: Option<f64>,
    pub dephasing_12: Option<f64>,
    pub decay_12: Option<f64>,
    pub decay_32: Option<f64>,
    pub decay_34: Option<f64>,
    pub decay_14: Option<f64>,

    pub eps_b: Option<f64>,
    pub omega0: Option<f64>,
    pub thickness_rule: Option<String>,
    pub m: Option<i64>,
    pub thickness_m: Option<f64>,
    pub carrier_delta_p_over_gamma: Option<f64>,

    pub t0_seconds: Option<f64>,
    pub amplitude: Option<f64>,
    pub span_over_t0: Option<f64>,
    pub n_samples: Option<usize>,
    pub time_half_window_over_t0: Option<f64>,

    pub grid_lo_over_gamma: Option<f64>,
    pub grid_hi_over_gamma: Option<f64>,
    pub grid_spacing_over_gamma: Option<f64>,
    pub refine_half_width_over_gamma: Option<f64>,
    pub refine_factor: Option<u32>,
    pub refine_below_omega_c: Option<f64>,

    pub outputs: Option<Vec<String>>,
}

/// Command-line overrides use the same keys as a config document.
pub type Overrides = ConfigDocument;

fn set<T: Copy>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl ConfigDocument {
    /// Starting scenario: the named preset, or the defaults.
    pub fn base(&self) -> Result<Scenario, ScenarioError> {
        match &self.preset {
            Some(name) => preset(name).ok_or_else(|| ScenarioError::UnknownPreset(name.clone())),
            None => Ok(Scenario::default()),
        }
    }

    /// Layer this document's keys over `scenario` (no validation).
    pub fn apply(&self, mut scenario: Scenario) -> Result<Scenario, ScenarioError> {
        if let Some(name) = &self.name {
            scenario.name = name.clone();
        }

        let a = &mut scenario.atomic;
        set(&mut a.gamma_unit, self.gamma_per_second);
        set(&mut a.omega_1, self.omega_1_over_gamma);
        set(&mut a.omega_c, self.omega_c_over_gamma);
        set(&mut a.beta, self.beta_over_gamma);
        set(&mut a.delta_1, self.delta_1_over_gamma);
        set(&mut a.delta_c, self.delta_c_over_gamma);
        set(&mut a.dephasing_21, self.dephasing_21);
        set(&mut a.dephasing_23, self.dephasing_23);
        set(&mut a.dephasing_24, self.dephasing_24);
        set(&mut a.dephasing_41, self.dephasing_41);
        set(&mut a.dephasing_43, self.dephasing_43);
        set(&mut a.dephasing_13, self.dephasing_13);
        set(&mut a.dephasing_12, self.dephasing_12);
        set(&mut a.decay_12, self.decay_12);
        set(&mut a.decay_32, self.decay_32);
        set(&mut a.decay_34, self.decay_34);
        set(&mut a.decay_14, self.decay_14);

        let s = &mut scenario.slab;
        set(&mut s.eps_b, self.eps_b);
        set(&mut s.omega0, self.omega0);
        set(&mut s.delta_p_carrier, self.carrier_delta_p_over_gamma);
        s.thickness = self.thickness(s.thickness)?;

        let p = &mut scenario.pulse;
        set(&mut p.t0, self.t0_seconds);
        set(&mut p.amplitude, self.amplitude);
        set(&mut p.span, self.span_over_t0);
        set(&mut p.n_samples, self.n_samples);
        set(&mut p.time_half_window, self.time_half_window_over_t0);
        // one carrier shared by slab and pulse
        set(&mut p.omega0, self.omega0);

        let g = &mut scenario.sweep;
        set(&mut g.lo, self.grid_lo_over_gamma);
        set(&mut g.hi, self.grid_hi_over_gamma);
        set(&mut g.spacing, self.grid_spacing_over_gamma);
        set(&mut g.refine_half_width, self.refine_half_width_over_gamma);
        set(&mut g.refine_factor, self.refine_factor);
        set(&mut g.refine_below_omega_c, self.refine_below_omega_c);

        if let Some(list) = &self.outputs {
            let o = &mut scenario.outputs;
            o.spectra = false;
            o.phase_times = false;
            o.time_series = false;
            for item in list {
                match item.as_str() {
                    "spectra" => o.spectra = true,
                    "phase_times" => o.phase_times = true,
                    "time_series" => o.time_series = true,
                    _ => {
                        return Err(ScenarioError::Validation(
                            "outputs ⊆ {spectra, phase_times, time_series}".to_string(),
                        ))
                    }
                }
            }
        }
        Ok(scenario)
    }

    fn thickness(&self, current: ThicknessRule) -> Result<ThicknessRule, ScenarioError> {
        let m = match self.m {
            Some(m) if m < 1 || m > u32::MAX as i64 => return Err(ScenarioError::Validation("m >= 1".to_string())),
            Some(m) => Some(m as u32),
            None => None,
        };
        let current_m = match current {
            ThicknessRule::Resonant { m } | ThicknessRule::AntiResonant { m } => m,
            ThicknessRule::Explicit { .. } => 1500,
        };
        let rule = match self.thickness_rule.as_deref() {
            Some("resonant") => ThicknessRule::Resonant {
                m: m.unwrap_or(current_m),
            },
            Some("anti-resonant") => ThicknessRule::AntiResonant {
                m: m.unwrap_or(current_m),
            },
            Some("explicit") => ThicknessRule::Explicit {
                meters: self
                    .thickness_m
                    .ok_or_else(|| ScenarioError::Validation("explicit thickness requires thickness_m".to_string()))?,
            },
            Some(_) => {
                return Err(ScenarioError::Validation(
                    "thickness_rule ∈ {resonant, anti-resonant, explicit}".to_string(),
                ))
            }
            None => match (self.thickness_m, m, current) {
                (Some(meters), _, _) => ThicknessRule::Explicit { meters },
                (None, Some(m), ThicknessRule::Resonant { .. }) => ThicknessRule::Resonant { m },
                (None, Some(m), ThicknessRule::AntiResonant { .. }) => ThicknessRule::AntiResonant { m },
                (None, Some(m), ThicknessRule::Explicit { .. }) => ThicknessRule::Resonant { m },
                (None, None, rule) => rule,
            },
        };
        Ok(rule)
    }

    /// Resolve against the preset/defaults and then `overrides`, and validate.
    pub fn resolve(&self, overrides: &Overrides) -> Result<Scenario, ScenarioError> {
        let base = match &overrides.preset {
            Some(_) => overrides.base()?,
            None => self.base()?,
        };
        let scenario = overrides.apply(self.apply(base)?)?;
        scenario.validate()?;
        Ok(scenario)
    }
}

/// Parse a JSON scenario document and resolve it into a validated scenario.
pub fn parse_config(text: &str) -> Result<Scenario, ScenarioError> {
    parse_document(text)?.resolve(&Overrides::default())
}

pub(crate) fn parse_document(text: &str) -> Result<ConfigDocument, ScenarioError> {
    if text.trim().is_empty() {
        return Ok(ConfigDocument::default());
    }
    serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    load_config_document(path)?.resolve(&Overrides::default())
}

pub fn load_config_document(path: impl AsRef<Path>) -> Result<ConfigDocument, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_document(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        for text in ["", "{}", "  \n"] {
            let s = parse_config(text).unwrap();
            assert_eq!(s.atomic.omega_c, 1.5);
            assert_eq!(s.slab.thickness, ThicknessRule::Resonant { m: 1500 });
            assert_eq!(s.atomic.beta, 0.16);
            assert_eq!(s.slab.eps_b, 4.0);
            assert_eq!(s.pulse.t0, 20e-6);
        }
    }

    #[test]
    fn control_field_override() {
        let s = parse_config(r#"{"omega_c_over_gamma": 6.0}"#).unwrap();
        assert_eq!(s.atomic.omega_c, 6.0);
        assert_eq!(s.slab.thickness, ThicknessRule::Resonant { m: 1500 });
    }

    #[test]
    fn negative_permittivity_is_a_validation_error() {
        match parse_config(r#"{"eps_b": -1}"#) {
            Err(ScenarioError::Validation(msg)) => assert_eq!(msg, "eps_b > 0"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_config("{\n  \"eps_b\": 4.0,\n  \"bogus\": 1\n}") {
            Err(ScenarioError::Parse { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("bogus"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_config("{\"eps_b\": }"),
            Err(ScenarioError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn preset_then_document_then_overrides() {
        let doc = parse_document(r#"{"preset": "fig5", "omega_c_over_gamma": 6.0, "name": "mine"}"#).unwrap();
        let s = doc.resolve(&Overrides::default()).unwrap();
        assert_eq!(s.slab.thickness, ThicknessRule::AntiResonant { m: 1500 });
        assert_eq!(s.atomic.omega_c, 6.0);
        assert_eq!(s.name, "mine");

        let flags = Overrides {
            omega_c_over_gamma: Some(8.0),
            thickness_rule: Some("resonant".into()),
            ..Overrides::default()
        };
        let s = doc.resolve(&flags).unwrap();
        assert_eq!(s.atomic.omega_c, 8.0);
        assert_eq!(s.slab.thickness, ThicknessRule::Resonant { m: 1500 });
    }

    #[test]
    fn unknown_preset_and_bad_values() {
        assert!(matches!(
            parse_config(r#"{"preset": "nope"}"#),
            Err(ScenarioError::UnknownPreset(_))
        ));
        assert!(matches!(parse_config(r#"{"m": 0}"#), Err(ScenarioError::Validation(m)) if m == "m >= 1"));
        assert!(matches!(
            parse_config(r#"{"thickness_rule": "thick"}"#),
            Err(ScenarioError::Validation(_))
        ));
        assert!(matches!(
            parse_config(r#"{"dephasing_13": 0.0}"#),
            Err(ScenarioError::Validation(m)) if m == "dephasing and decay rates > 0"
        ));
        assert!(matches!(
            parse_config(r#"{"span_over_t0": 2.0}"#),
            Err(ScenarioError::Validation(m)) if m == "span >= 4"
        ));
        assert!(matches!(
            parse_config(r#"{"outputs": ["plots"]}"#),
            Err(ScenarioError::Validation(_))
        ));
    }

    #[test]
    fn explicit_thickness() {
        let s = parse_config(r#"{"thickness_m": 1e-3}"#).unwrap();
        assert_eq!(s.slab.thickness, ThicknessRule::Explicit { meters: 1e-3 });
        assert!(parse_config(r#"{"thickness_rule": "explicit"}"#).is_err());
    }

    #[test]
    fn outputs_selection() {
        let s = parse_config(r#"{"outputs": ["phase_times"]}"#).unwrap();
        assert!(s.outputs.phase_times && !s.outputs.spectra && !s.outputs.time_series);
    }

    #[test]
    fn carrier_shared_between_slab_and_pulse() {
        let s = parse_config(r#"{"omega0": 2e15}"#).unwrap();
        assert_eq!(s.pulse.omega0, 2e15);
        assert_eq!(s.slab.omega0, 2e15);
    }
}
