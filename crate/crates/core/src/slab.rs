//! Reflection and transmission of a single dielectric slab in vacuum.
//!
//! The slab is characterized by its 2×2 transfer matrix relating the field
//! and its normalized derivative across the layer. With vacuum on both sides
//! the coefficients reduce to
//!
//! ```text
//! r = i(n − 1/n) sin θ / (2 cos θ − i(n + 1/n) sin θ)
//! t = 2 / (2 cos θ − i(n + 1/n) sin θ),      θ = nωd/c
//! ```
//!
//! The `−i` in the denominator is what makes `|r|² + |t|² = 1` for real `n`
//! and `t = e^{iωd/c}` in the vacuum limit.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::susceptibility::{chi, refractive_index, AtomicParams, SusceptibilityError};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Magnitude below which the coefficient denominator is treated as a pole.
pub const ZERO_DENOMINATOR: f64 = 1e-30;

/// Maximum relative gap between the central difference and its Richardson
/// extrapolation before a phase time is rejected.
pub const RICHARDSON_TOLERANCE: f64 = 1e-3;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlabError {
    #[error("invalid slab configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("refractive index must be nonzero")]
    ZeroIndex,
    #[error("coefficient denominator vanishes (lasing pole) at delta_p = {delta_p}")]
    ZeroDenominator { delta_p: f64 },
    #[error("susceptibility failed at delta_p = {delta_p}: {source}")]
    Susceptibility {
        delta_p: f64,
        #[source]
        source: SusceptibilityError,
    },
    #[error("detuning grid must be strictly increasing with at least 2 points")]
    BadGrid,
    #[error("delta_p = {0} is not a grid point")]
    NotOnGrid(f64),
    #[error("delta_p = {0} needs two symmetric neighbours on each side")]
    NoStencil(f64),
    #[error("grid too coarse at delta_p = {at}: central {central:e}, extrapolated {extrapolated:e}")]
    GridTooCoarse { at: f64, central: f64, extrapolated: f64 },
}

/// How the slab thickness is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ThicknessRule {
    /// d = 2mλ₀/(4√ε_b): background optical phase mπ at the carrier.
    Resonant {
        m: u32,
    },
    /// d = (2m+1)λ₀/(4√ε_b): background optical phase (2m+1)π/2.
    AntiResonant {
        m: u32,
    },
    Explicit {
        meters: f64,
    },
}

impl ThicknessRule {
    pub fn label(&self) -> &'static str {
        match self {
            ThicknessRule::Resonant { .. } => "resonant",
            ThicknessRule::AntiResonant { .. } => "anti-resonant",
            ThicknessRule::Explicit { .. } => "explicit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlabConfig {
    pub eps_b: f64,
    /// Carrier angular frequency, rad/s.
    pub omega0: f64,
    pub thickness: ThicknessRule,
    /// Probe detuning (units of γ) that coincides with the carrier.
    pub delta_p_carrier: f64,
}

impl Default for SlabConfig {
    fn default() -> Self {
        Self {
            eps_b: 4.0,
            omega0: 1.0e15,
            thickness: ThicknessRule::Resonant { m: 1500 },
            delta_p_carrier: 50.0,
        }
    }
}

impl SlabConfig {
    pub fn validate(&self) -> Result<(), SlabError> {
        if !(self.eps_b > 0.0 && self.eps_b.is_finite()) {
            return Err(SlabError::InvalidConfig("eps_b > 0"));
        }
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(SlabError::InvalidConfig("omega0 > 0"));
        }
        match self.thickness {
            ThicknessRule::Resonant { m } | ThicknessRule::AntiResonant { m } if m < 1 => {
                Err(SlabError::InvalidConfig("m >= 1"))
            }
            ThicknessRule::Explicit { meters } if !(meters > 0.0 && meters.is_finite()) => {
                Err(SlabError::InvalidConfig("d > 0"))
            }
            _ => Ok(()),
        }
    }

    /// Vacuum carrier wavelength λ₀ = 2πc/ω₀.
    pub fn lambda0(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT / self.omega0
    }

    /// Vacuum phase ω₀d/c accumulated across the slab at the carrier.
    ///
    /// For the resonant rules this is taken from the exact identity
    /// √ε_b·ω₀d/c = mπ (or (2m+1)π/2) rather than from the rounded thickness.
    pub fn carrier_phase(&self) -> f64 {
        let root = self.eps_b.sqrt();
        match self.thickness {
            ThicknessRule::Resonant { m } => m as f64 * PI / root,
            ThicknessRule::AntiResonant { m } => (2 * m + 1) as f64 * PI / (2.0 * root),
            ThicknessRule::Explicit { meters } => self.omega0 * meters / SPEED_OF_LIGHT,
        }
    }

    /// Slab thickness d in meters.
    pub fn thickness_m(&self) -> f64 {
        let root = self.eps_b.sqrt();
        match self.thickness {
            ThicknessRule::Resonant { m } => 2.0 * m as f64 * self.lambda0() / (4.0 * root),
            ThicknessRule::AntiResonant { m } => (2 * m + 1) as f64 * self.lambda0() / (4.0 * root),
            ThicknessRule::Explicit { meters } => meters,
        }
    }

    /// Vacuum transit time d/c in seconds.
    pub fn transit_time(&self) -> f64 {
        self.thickness_m() / SPEED_OF_LIGHT
    }

    /// Relative mismatch between √ε_b·ω₀d/c computed from the thickness and
    /// the phase implied by the thickness rule.
    pub fn phase_rule_mismatch(&self) -> f64 {
        let from_d = self.eps_b.sqrt() * self.omega0 * self.thickness_m() / SPEED_OF_LIGHT;
        let from_rule = self.eps_b.sqrt() * self.carrier_phase();
        ((from_d - from_rule) / from_rule).abs()
    }

    /// Absolute angular frequency of a probe detuning.
    pub fn omega_at(&self, delta_p: f64, gamma_unit: f64) -> f64 {
        self.omega0 + (delta_p - self.delta_p_carrier) * gamma_unit
    }
}

/// Transfer matrix of a homogeneous layer acting on (E, E'/k₀).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            m11: one,
            m12: zero,
            m21: zero,
            m22: one,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Reflection and transmission for vacuum on both sides.
    ///
    /// Solves `[t, it]ᵀ = M [1 + r, i(1 − r)]ᵀ`.
    pub fn vacuum_coefficients(&self) -> Result<Coefficients, SlabError> {
        let den = self.m12 - self.m21 + I * (self.m11 + self.m22);
        if den.norm() < ZERO_DENOMINATOR {
            return Err(SlabError::ZeroDenominator { delta_p: f64::NAN });
        }
        let r = (self.m12 + self.m21 + I * (self.m22 - self.m11)) / den;
        let t = 2.0 * I * self.det() / den;
        Ok(Coefficients { r, t })
    }
}

/// M = [[cos θ, sin θ / n], [−n sin θ, cos θ]], θ = (ω/c)·n·dz.
pub fn transfer_matrix(n: Complex64, omega: f64, dz: f64) -> TransferMatrix {
    let theta = n * (omega * dz / SPEED_OF_LIGHT);
    let (s, c) = (theta.sin(), theta.cos());
    TransferMatrix {
        m11: c,
        m12: s / n,
        m21: -n * s,
        m22: c,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub r: Complex64,
    pub t: Complex64,
}

/// Closed-form slab coefficients from the index and cos θ, sin θ.
pub fn coefficients_from_phase(n: Complex64, cos: Complex64, sin: Complex64) -> Result<Coefficients, SlabError> {
    if n.norm() == 0.0 {
        return Err(SlabError::ZeroIndex);
    }
    let inv = n.inv();
    let den = 2.0 * cos - I * (n + inv) * sin;
    if den.norm() < ZERO_DENOMINATOR || !den.norm().is_finite() {
        return Err(SlabError::ZeroDenominator { delta_p: f64::NAN });
    }
    Ok(Coefficients {
        r: I * (n - inv) * sin / den,
        t: 2.0 / den,
    })
}

pub fn reflection_coefficient(n: Complex64, omega: f64, d: f64) -> Result<Complex64, SlabError> {
    let theta = n * (omega * d / SPEED_OF_LIGHT);
    coefficients_from_phase(n, theta.cos(), theta.sin()).map(|c| c.r)
}

pub fn transmission_coefficient(n: Complex64, omega: f64, d: f64) -> Result<Complex64, SlabError> {
    let theta = n * (omega * d / SPEED_OF_LIGHT);
    coefficients_from_phase(n, theta.cos(), theta.sin()).map(|c| c.t)
}

/// Coefficients at carrier offset `omega - omega0`.
///
/// θ is split into the large carrier part n·ω₀d/c and the small offset part;
/// cos/sin are recombined with the addition formulas so that the offset is
/// not lost against the ~10³ rad carrier phase.
fn slab_coefficients(n: Complex64, slab: &SlabConfig, omega_offset: f64) -> Result<Coefficients, SlabError> {
    let carrier = n * slab.carrier_phase();
    let offset = carrier * (omega_offset / slab.omega0);
    let (sa, ca) = (carrier.sin(), carrier.cos());
    let (sb, cb) = (offset.sin(), offset.cos());
    coefficients_from_phase(n, ca * cb - sa * sb, sa * cb + ca * sb)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Reflection,
    Transmission,
}

impl Channel {
    /// Reflection is superluminal for τ_r < 0, transmission for τ_t < d/c.
    pub fn is_superluminal(self, tau_seconds: f64, transit_time: f64) -> bool {
        match self {
            Channel::Reflection => tau_seconds < 0.0,
            Channel::Transmission => tau_seconds < transit_time,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub delta_p: f64,
    pub omega: f64,
    pub chi: Complex64,
    pub n: Complex64,
    pub r: Complex64,
    pub t: Complex64,
    /// Unwrapped phases, rad.
    pub phi_r: f64,
    pub phi_t: f64,
    pub reflectance: f64,
    pub transmittance: f64,
}

impl SpectralPoint {
    pub fn coefficient(&self, channel: Channel) -> Complex64 {
        match channel {
            Channel::Reflection => self.r,
            Channel::Transmission => self.t,
        }
    }

    pub fn phase(&self, channel: Channel) -> f64 {
        match channel {
            Channel::Reflection => self.phi_r,
            Channel::Transmission => self.phi_t,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResponse {
    pub points: Vec<SpectralPoint>,
    pub gamma_unit: f64,
    pub omega0: f64,
    /// Probe detuning of the carrier, units of γ.
    pub carrier_delta_p: f64,
    /// Vacuum transit time d/c, seconds.
    pub transit_time: f64,
}

/// Phase increment between consecutive coefficients on the nearest branch.
fn phase_step(prev: Complex64, next: Complex64) -> f64 {
    (next * prev.conj()).arg()
}

fn unwrap(coefs: impl Iterator<Item = Complex64>) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev: Option<Complex64> = None;
    let mut acc = 0.0;
    for c in coefs {
        acc = match prev {
            None => c.arg(),
            Some(p) => acc + phase_step(p, c),
        };
        out.push(acc);
        prev = Some(c);
    }
    out
}

/// Evaluate χ, n, r, t and unwrapped phases over a strictly increasing grid.
///
/// ω = ω₀ + (Δp − Δp_carrier)·γ. Phases are unwrapped from the low end of
/// the grid.
pub fn build_spectral_response(
    params: &AtomicParams,
    slab: &SlabConfig,
    grid: &[f64],
) -> Result<SpectralResponse, SlabError> {
    slab.validate()?;
    params.validate().map_err(|source| SlabError::Susceptibility {
        delta_p: f64::NAN,
        source,
    })?;
    if grid.len() < 2 || !grid.windows(2).all(|w| w[1] > w[0]) {
        return Err(SlabError::BadGrid);
    }

    let gamma = params.gamma_unit;
    let mut points = grid
        .par_iter()
        .map(|&delta_p| {
            let chi = chi(delta_p, params).map_err(|source| SlabError::Susceptibility { delta_p, source })?;
            let n =
                refractive_index(chi, slab.eps_b).map_err(|source| SlabError::Susceptibility { delta_p, source })?;
            let offset = (delta_p - slab.delta_p_carrier) * gamma;
            let Coefficients { r, t } = slab_coefficients(n, slab, offset).map_err(|e| match e {
                SlabError::ZeroDenominator { .. } => SlabError::ZeroDenominator { delta_p },
                other => other,
            })?;
            Ok(SpectralPoint {
                delta_p,
                omega: slab.omega0 + offset,
                chi,
                n,
                r,
                t,
                phi_r: 0.0,
                phi_t: 0.0,
                reflectance: r.norm_sqr(),
                transmittance: t.norm_sqr(),
            })
        })
        .collect::<Result<Vec<_>, SlabError>>()?;

    let phi_r = unwrap(points.iter().map(|p| p.r));
    let phi_t = unwrap(points.iter().map(|p| p.t));
    for (p, (pr, pt)) in points.iter_mut().zip(phi_r.into_iter().zip(phi_t)) {
        p.phi_r = pr;
        p.phi_t = pt;
    }

    Ok(SpectralResponse {
        points,
        gamma_unit: gamma,
        omega0: slab.omega0,
        carrier_delta_p: slab.delta_p_carrier,
        transit_time: slab.transit_time(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseTime {
    /// Central-difference delay in units of 1/γ.
    pub gamma_units: f64,
    pub seconds: f64,
    /// Richardson-extrapolated delay in units of 1/γ.
    pub extrapolated: f64,
    /// Stencil half-step in units of γ.
    pub step: f64,
}

impl PhaseTime {
    pub fn richardson_gap(&self) -> f64 {
        if self.extrapolated == 0.0 {
            (self.gamma_units - self.extrapolated).abs()
        } else {
            ((self.gamma_units - self.extrapolated) / self.extrapolated).abs()
        }
    }
}

impl SpectralResponse {
    pub fn delta_p(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.delta_p).collect()
    }

    pub fn coefficients(&self, channel: Channel) -> Vec<Complex64> {
        self.points.iter().map(|p| p.coefficient(channel)).collect()
    }

    pub fn index_of(&self, delta_p: f64) -> Option<usize> {
        let k = self
            .points
            .partition_point(|p| p.delta_p < delta_p)
            .min(self.points.len().saturating_sub(1));
        let candidates = [k.saturating_sub(1), k];
        candidates
            .into_iter()
            .filter(|&j| (self.points[j].delta_p - delta_p).abs() <= 1e-9 * delta_p.abs().max(1.0))
            .min_by(|&a, &b| {
                let da = (self.points[a].delta_p - delta_p).abs();
                let db = (self.points[b].delta_p - delta_p).abs();
                da.partial_cmp(&db).unwrap()
            })
    }

    /// Local group delay dφ/dΔp (units of 1/γ) at every grid point.
    ///
    /// Central differences in the interior, one-sided at the ends. No
    /// Richardson validation; use [`phase_time`] for reported values.
    pub fn local_delays(&self, channel: Channel) -> Vec<f64> {
        let pts = &self.points;
        let n = pts.len();
        (0..n)
            .map(|k| {
                let (a, b) = (k.saturating_sub(1), (k + 1).min(n - 1));
                let dphi = pts[b].phase(channel) - pts[a].phase(channel);
                dphi / (pts[b].delta_p - pts[a].delta_p)
            })
            .collect()
    }

    /// Grid index of the maximum of reflectance or transmittance.
    pub fn peak_index(&self, channel: Channel) -> usize {
        let value = |p: &SpectralPoint| match channel {
            Channel::Reflection => p.reflectance,
            Channel::Transmission => p.transmittance,
        };
        let mut best = 0;
        for (k, p) in self.points.iter().enumerate() {
            if value(p) > value(&self.points[best]) {
                best = k;
            }
        }
        best
    }
}

/// Phase delay τ = ∂φ/∂ω at grid point `at`.
///
/// Uses a central difference over the immediate neighbours and checks it
/// against a Richardson extrapolation with the next-nearest neighbours.
pub fn phase_time(response: &SpectralResponse, at: f64, channel: Channel) -> Result<PhaseTime, SlabError> {
    let k = response.index_of(at).ok_or(SlabError::NotOnGrid(at))?;
    let pts = &response.points;
    if k < 2 || k + 2 >= pts.len() {
        return Err(SlabError::NoStencil(at));
    }
    let x = |j: usize| pts[j].delta_p;
    let h = x(k + 1) - x(k);
    let symmetric = |a: f64, b: f64| (a - b).abs() <= 1e-6 * h;
    if !(symmetric(x(k) - x(k - 1), h) && symmetric(x(k + 2) - x(k + 1), h) && symmetric(x(k - 1) - x(k - 2), h)) {
        return Err(SlabError::NoStencil(at));
    }

    let c = |j: usize| pts[j].coefficient(channel);
    let inner = phase_step(c(k - 1), c(k)) + phase_step(c(k), c(k + 1));
    let outer = inner + phase_step(c(k - 2), c(k - 1)) + phase_step(c(k + 1), c(k + 2));
    let central = inner / (x(k + 1) - x(k - 1));
    let wide = outer / (x(k + 2) - x(k - 2));
    let extrapolated = central + (central - wide) / 3.0;

    let out = PhaseTime {
        gamma_units: central,
        seconds: central / response.gamma_unit,
        extrapolated,
        step: h,
    };
    if out.richardson_gap() > RICHARDSON_TOLERANCE {
        return Err(SlabError::GridTooCoarse {
            at,
            central,
            extrapolated,
        });
    }
    Ok(out)
}
