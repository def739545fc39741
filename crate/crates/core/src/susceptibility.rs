//! Probe susceptibility of a four-level N-configuration Raman-gain medium.
//!
//! Every rate, detuning and Rabi frequency is stored as a dimensionless
//! multiple of the scale `gamma_unit` (γ = 1 internally). The probe Rabi
//! frequency cancels between the coherence ρ₂₃ and the polarization, so the
//! response is independent of probe strength in the weak-probe limit and no
//! probe field is modeled.
//!
//! Time-harmonic convention is `e^{-iωt}`: `Im χ < 0` is gain, `Im χ > 0`
//! is absorption.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Magnitude below which a denominator is treated as a pole.
pub const POLE_THRESHOLD: f64 = 1e-30;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SusceptibilityError {
    #[error("degenerate denominator {which} at delta_p = {delta_p} (|value| = {magnitude:e})")]
    DegenerateDenominator {
        which: &'static str,
        delta_p: f64,
        magnitude: f64,
    },
    #[error("branch ambiguity: eps_b + chi = {0} lies on the non-positive real axis")]
    BranchAmbiguity(Complex64),
    #[error("invalid atomic parameters: {0}")]
    InvalidParams(&'static str),
    #[error("invalid background permittivity: eps_b > 0 required, got {0}")]
    InvalidBackground(f64),
}

/// Rates, detunings and field strengths of the four-level system, in units of γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomicParams {
    /// The scale γ in rad/s.
    pub gamma_unit: f64,
    pub dephasing_21: f64,
    pub dephasing_23: f64,
    pub dephasing_24: f64,
    pub dephasing_41: f64,
    pub dephasing_43: f64,
    pub dephasing_13: f64,
    /// Enters only as Γ₁₂² in the population term; defaults to Γ₂₁.
    pub dephasing_12: f64,
    pub decay_12: f64,
    pub decay_32: f64,
    pub decay_34: f64,
    pub decay_14: f64,
    /// Pump detuning Δ₁.
    pub delta_1: f64,
    /// Control detuning Δc.
    pub delta_c: f64,
    /// Pump Rabi frequency Ω₁.
    pub omega_1: f64,
    /// Control Rabi frequency Ωc.
    pub omega_c: f64,
    /// Coupling prefactor β = 2N|d₂₃|²/(ħε₀).
    pub beta: f64,
}

impl Default for AtomicParams {
    /// Reference parameter set with Ωc = 1.5γ.
    ///
    /// Ω₁ = 4γ is a calibration: it fixes the product βΩ₁²/8 so that the
    /// reference phase times are reproduced.
    fn default() -> Self {
        Self {
            gamma_unit: 1.0e6,
            dephasing_21: 2.01,
            dephasing_23: 2.01,
            dephasing_24: 4.01,
            dephasing_41: 2.01,
            dephasing_43: 2.01,
            dephasing_13: 0.01,
            dephasing_12: 2.01,
            decay_12: 2.0,
            decay_32: 2.0,
            decay_34: 2.0,
            decay_14: 2.0,
            delta_1: 50.0,
            delta_c: 0.0,
            omega_1: 4.0,
            omega_c: 1.5,
            beta: 0.16,
        }
    }
}

impl AtomicParams {
    pub fn with_omega_c(mut self, omega_c: f64) -> Self {
        self.omega_c = omega_c;
        self
    }

    pub fn validate(&self) -> Result<(), SusceptibilityError> {
        let rates = [
            self.dephasing_21,
            self.dephasing_23,
            self.dephasing_24,
            self.dephasing_41,
            self.dephasing_43,
            self.dephasing_13,
            self.dephasing_12,
            self.decay_12,
            self.decay_32,
            self.decay_34,
            self.decay_14,
        ];
        if !rates.iter().all(|r| r.is_finite() && *r > 0.0) {
            return Err(SusceptibilityError::InvalidParams("dephasing and decay rates > 0"));
        }
        if !(self.gamma_unit.is_finite() && self.gamma_unit > 0.0) {
            return Err(SusceptibilityError::InvalidParams("gamma_unit > 0"));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(SusceptibilityError::InvalidParams("beta >= 0"));
        }
        if !(self.omega_1 >= 0.0 && self.omega_1.is_finite()) {
            return Err(SusceptibilityError::InvalidParams("omega_1 >= 0"));
        }
        if !(self.omega_c >= 0.0 && self.omega_c.is_finite()) {
            return Err(SusceptibilityError::InvalidParams("omega_c >= 0"));
        }
        if !(self.delta_1.is_finite() && self.delta_c.is_finite()) {
            return Err(SusceptibilityError::InvalidParams("detunings finite"));
        }
        Ok(())
    }

    fn control_term(&self) -> f64 {
        self.omega_c * self.omega_c / 4.0
    }
}

/// A = (Γ₂₃ − iΔp)(Γ₂₄ − i(Δp − Δc)) + |Ωc|²/4, in units of γ².
pub fn denominator_a(delta_p: f64, params: &AtomicParams) -> Complex64 {
    let p = params;
    (p.dephasing_23 - I * delta_p) * (p.dephasing_24 - I * (delta_p - p.delta_c)) + p.control_term()
}

/// Coherence factor D in units of γ⁻³.
///
/// The first bracket term carries the population difference driven by the
/// pump; the second carries the two-photon Raman coherence dressed by the
/// control field.
pub fn coherence_factor_d(delta_p: f64, params: &AtomicParams) -> Result<Complex64, SusceptibilityError> {
    let p = params;
    let a = denominator_a(delta_p, p);
    check_pole("A", delta_p, a)?;

    let two_photon_24 = p.dephasing_24 - I * (delta_p - p.delta_c);
    let three_photon_41 = p.dephasing_41 - I * (delta_p - p.delta_1 - p.delta_c);
    let raman_13 = p.dephasing_13 - I * (delta_p - p.delta_1);
    let control = p.control_term();

    let population = 2.0 * p.dephasing_21 * two_photon_24
        / ((p.decay_12 + p.decay_32) * (p.dephasing_12 * p.dephasing_12 + p.delta_1 * p.delta_1));

    let inner = raman_13 * three_photon_41 + control;
    check_pole("Raman bracket", delta_p, inner)?;
    let raman = (two_photon_24 * three_photon_41 - control) / ((p.dephasing_21 + I * p.delta_1) * inner);

    Ok(-I / a * (population + raman))
}

/// χ = β Ω₁² D / 8 (dimensionless).
pub fn chi(delta_p: f64, params: &AtomicParams) -> Result<Complex64, SusceptibilityError> {
    let d = coherence_factor_d(delta_p, params)?;
    Ok(d * (params.beta * params.omega_1 * params.omega_1 / 8.0))
}

/// n = √(ε_b + χ) on the principal branch (Re n > 0).
pub fn refractive_index(chi: Complex64, eps_b: f64) -> Result<Complex64, SusceptibilityError> {
    if !(eps_b > 0.0 && eps_b.is_finite()) {
        return Err(SusceptibilityError::InvalidBackground(eps_b));
    }
    let eps = chi + eps_b;
    if eps.re <= 0.0 && eps.im == 0.0 {
        return Err(SusceptibilityError::BranchAmbiguity(eps));
    }
    Ok(eps.sqrt())
}

fn check_pole(which: &'static str, delta_p: f64, value: Complex64) -> Result<(), SusceptibilityError> {
    let magnitude = value.norm();
    if magnitude < POLE_THRESHOLD || !magnitude.is_finite() {
        return Err(SusceptibilityError::DegenerateDenominator {
            which,
            delta_p,
            magnitude,
        });
    }
    Ok(())
}
