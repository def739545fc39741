//! Time-domain synthesis of incident, reflected and transmitted Gaussian pulses.
//!
//! The envelopes are integrated at baseband: with δ = ω − ω₀ the carrier
//! `e^{-iω₀t}` is factored out of
//!
//! ```text
//! E(t) = ∫ E_i(ω) c(ω) e^{-iωt} dω
//! ```
//!
//! leaving a smooth integrand over a window of a few spectral widths. Times are
//! reported in units of 1/γ. The vacuum transit d/c is kept in the transmitted
//! trace.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::grid::linspace;
use crate::slab::SpectralResponse;

/// Relative rms-width change above which a trace counts as distorted.
pub const DISTORTION_WARN_THRESHOLD: f64 = 0.1;

/// Phasor recurrences are re-seeded from an exact exponential this often.
const RESEED_INTERVAL: usize = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PulseError {
    #[error("invalid pulse configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("spectral grid does not cover carrier ± {half_width} γ")]
    WindowNotCovered { half_width: f64 },
    #[error("spectral grid inside the pulse window is not uniform")]
    NonUniformGrid,
    #[error("pulse carrier {pulse:e} rad/s differs from slab carrier {slab:e} rad/s")]
    CarrierMismatch { pulse: f64, slab: f64 },
    #[error("spectral window too narrow: |coefficient| changes by {change:e} at the edge")]
    WindowTooNarrow { change: f64 },
    #[error("peak lies at the edge of the time window (sample {index} of {len})")]
    EdgePeak { index: usize, len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseConfig {
    pub amplitude: f64,
    /// Temporal width t₀, seconds.
    pub t0: f64,
    /// Carrier angular frequency, rad/s.
    pub omega0: f64,
    /// Half-width of the spectral window in units of 1/t₀.
    pub span: f64,
    /// Number of samples on both the frequency and the time grid.
    pub n_samples: usize,
    /// Half-width of the time window in units of t₀.
    pub time_half_window: f64,
}

impl Default for PulseConfig {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            t0: 20.0e-6,
            omega0: 1.0e15,
            span: 8.0,
            n_samples: 1 << 14,
            time_half_window: 6.0,
        }
    }
}

impl PulseConfig {
    pub fn validate(&self) -> Result<(), PulseError> {
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(PulseError::InvalidConfig("t0 > 0"));
        }
        if !(self.span >= 4.0 && self.span.is_finite()) {
            return Err(PulseError::InvalidConfig("span >= 4"));
        }
        if self.n_samples < 1 << 10 {
            return Err(PulseError::InvalidConfig("n_samples >= 1024"));
        }
        if !(self.time_half_window > 0.0 && self.time_half_window.is_finite()) {
            return Err(PulseError::InvalidConfig("time_half_window > 0"));
        }
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(PulseError::InvalidConfig("omega0 > 0"));
        }
        Ok(())
    }

    /// Probe detunings (units of γ) of the quadrature grid centered on the carrier.
    pub fn spectral_grid(&self, carrier_delta_p: f64, gamma_unit: f64) -> Vec<f64> {
        let half = self.span / (self.t0 * gamma_unit);
        linspace(-half, half, self.n_samples)
            .into_iter()
            .map(|d| carrier_delta_p + d)
            .collect()
    }

    /// Sample times in units of 1/γ.
    pub fn time_grid(&self, gamma_unit: f64) -> Vec<f64> {
        let half = self.time_half_window * self.t0 * gamma_unit;
        linspace(-half, half, self.n_samples)
    }

    fn spectrum_at_offset(&self, delta_omega: f64) -> f64 {
        let x = self.t0 * delta_omega;
        self.amplitude * self.t0 / (2.0 * PI.sqrt()) * (-0.5 * x * x).exp()
    }
}

/// E_i(0, ω) = (A₀t₀ / 2√π) exp[−t₀²(ω − ω₀)²/2].
pub fn gaussian_spectrum(omega: f64, cfg: &PulseConfig) -> f64 {
    cfg.spectrum_at_offset(omega - cfg.omega0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub envelope: Vec<Complex64>,
    /// |E|² scaled so that its maximum is exactly 1.
    pub intensity: Vec<f64>,
    /// Units of 1/γ.
    pub peak_time: f64,
    /// Units of 1/γ.
    pub rms_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    /// Units of 1/γ.
    pub times: Vec<f64>,
    pub gamma_unit: f64,
    pub incident: Trace,
    pub reflected: Trace,
    pub transmitted: Trace,
}

impl TimeSeries {
    pub fn times_seconds(&self) -> Vec<f64> {
        self.times.iter().map(|t| t / self.gamma_unit).collect()
    }

    pub fn time_step(&self) -> f64 {
        self.times[1] - self.times[0]
    }
}

/// Reflected and transmitted pulses for the slab response in `response`.
///
/// The response grid must cover the carrier ± `span/t₀` uniformly; only the
/// points inside that window enter the quadrature.
pub fn synthesize(response: &SpectralResponse, cfg: &PulseConfig) -> Result<TimeSeries, PulseError> {
    cfg.validate()?;
    if ((response.omega0 - cfg.omega0) / cfg.omega0).abs() > 1e-12 {
        return Err(PulseError::CarrierMismatch {
            pulse: cfg.omega0,
            slab: response.omega0,
        });
    }
    let gamma = response.gamma_unit;
    let half = cfg.span / (cfg.t0 * gamma);
    let tol = 1e-9 * half;

    let window: Vec<_> = response
        .points
        .iter()
        .filter(|p| (p.delta_p - response.carrier_delta_p).abs() <= half + tol)
        .collect();
    let covered = window.len() >= 2
        && window[0].delta_p - response.carrier_delta_p <= -half + tol
        && window[window.len() - 1].delta_p - response.carrier_delta_p >= half - tol;
    if !covered {
        return Err(PulseError::WindowNotCovered { half_width: half });
    }

    let offsets: Vec<f64> = window.iter().map(|p| p.delta_p - response.carrier_delta_p).collect();
    let r: Vec<Complex64> = window.iter().map(|p| p.r).collect();
    let t: Vec<Complex64> = window.iter().map(|p| p.t).collect();

    let mut traces = synthesize_traces(&offsets, &[&r, &t], cfg, gamma)?.into_iter();
    let incident = traces.next().expect("incident trace");
    let reflected = traces.next().expect("reflected trace");
    let transmitted = traces.next().expect("transmitted trace");
    Ok(TimeSeries {
        times: cfg.time_grid(gamma),
        gamma_unit: gamma,
        incident,
        reflected,
        transmitted,
    })
}

/// Synthesize the incident trace followed by one trace per coefficient set.
///
/// `offsets` are ω − ω₀ in units of γ on a uniform grid; each entry of
/// `coefficients` is sampled on the same grid.
pub fn synthesize_traces(
    offsets: &[f64],
    coefficients: &[&[Complex64]],
    cfg: &PulseConfig,
    gamma_unit: f64,
) -> Result<Vec<Trace>, PulseError> {
    cfg.validate()?;
    let n = offsets.len();
    if n < 2 {
        return Err(PulseError::WindowNotCovered {
            half_width: cfg.span / (cfg.t0 * gamma_unit),
        });
    }
    let step = offsets[1] - offsets[0];
    if !offsets
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-6 * step.abs())
        || step <= 0.0
    {
        return Err(PulseError::NonUniformGrid);
    }

    let spectrum: Vec<f64> = offsets.iter().map(|d| cfg.spectrum_at_offset(d * gamma_unit)).collect();
    let peak_amp = spectrum.iter().cloned().fold(0.0, f64::max);
    for coefs in coefficients {
        check_window(coefs, &spectrum, peak_amp)?;
    }

    // Trapezoid weights in rad/s.
    let weight = |j: usize| {
        let w = step * gamma_unit;
        if j == 0 || j == n - 1 {
            0.5 * w
        } else {
            w
        }
    };
    let mut integrands: Vec<Vec<Complex64>> = Vec::with_capacity(coefficients.len() + 1);
    integrands.push((0..n).map(|j| Complex64::new(weight(j) * spectrum[j], 0.0)).collect());
    for coefs in coefficients {
        integrands.push((0..n).map(|j| coefs[j] * (weight(j) * spectrum[j])).collect());
    }

    let times = cfg.time_grid(gamma_unit);
    let envelopes = baseband_sum(offsets[0], step, &integrands, &times);

    envelopes
        .into_iter()
        .map(|envelope| make_trace(envelope, &times))
        .collect()
}

fn check_window(coefs: &[Complex64], spectrum: &[f64], peak_amp: f64) -> Result<(), PulseError> {
    let n = coefs.len();
    let center = coefs[n / 2].norm();
    if center == 0.0 {
        return Ok(());
    }
    for &edge in &[0, n - 1] {
        let change = (coefs[edge].norm() / center - 1.0).abs();
        if change > 1e-2 && spectrum[edge] > 1e-6 * peak_amp {
            return Err(PulseError::WindowTooNarrow { change });
        }
    }
    Ok(())
}

/// Σ_j a_j e^{−iδ_j t} for every integrand `a` and every time `t`, with
/// δ_j = δ₀ + j·h.
fn baseband_sum(delta0: f64, h: f64, integrands: &[Vec<Complex64>], times: &[f64]) -> Vec<Vec<Complex64>> {
    let n = integrands[0].len();
    let per_time: Vec<Vec<Complex64>> = times
        .par_iter()
        .map(|&t| {
            let stride = Complex64::from_polar(1.0, -h * t);
            let mut sums = vec![Complex64::new(0.0, 0.0); integrands.len()];
            let mut phasor = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j % RESEED_INTERVAL == 0 {
                    phasor = Complex64::from_polar(1.0, -(delta0 + j as f64 * h) * t);
                }
                for (s, a) in sums.iter_mut().zip(integrands) {
                    *s += a[j] * phasor;
                }
                phasor *= stride;
            }
            sums
        })
        .collect();

    (0..integrands.len())
        .map(|k| per_time.iter().map(|s| s[k]).collect())
        .collect()
}

fn make_trace(envelope: Vec<Complex64>, times: &[f64]) -> Result<Trace, PulseError> {
    let raw: Vec<f64> = envelope.iter().map(|e| e.norm_sqr()).collect();
    let max = raw.iter().cloned().fold(0.0, f64::max);
    let intensity: Vec<f64> = if max > 0.0 {
        raw.iter().map(|v| v / max).collect()
    } else {
        raw
    };
    let peak_time = peak_time(times, &intensity)?;
    let rms_width = rms_width(times, &intensity);
    Ok(Trace {
        envelope,
        intensity,
        peak_time,
        rms_width,
    })
}

/// Time of the intensity maximum, refined by a three-point parabola.
///
/// `times` must be uniformly spaced.
pub fn peak_time(times: &[f64], intensity: &[f64]) -> Result<f64, PulseError> {
    let len = intensity.len();
    let mut k = 0;
    for (j, v) in intensity.iter().enumerate() {
        if *v > intensity[k] {
            k = j;
        }
    }
    if k < 2 || k + 2 >= len {
        return Err(PulseError::EdgePeak { index: k, len });
    }
    let (y0, y1, y2) = (intensity[k - 1], intensity[k], intensity[k + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    let h = times[k + 1] - times[k];
    if curvature == 0.0 {
        return Ok(times[k]);
    }
    Ok(times[k] + 0.5 * h * (y0 - y2) / curvature)
}

/// Intensity-weighted rms width about the centroid.
pub fn rms_width(times: &[f64], intensity: &[f64]) -> f64 {
    let total: f64 = intensity.iter().sum();
    let mean = times.iter().zip(intensity).map(|(t, i)| t * i).sum::<f64>() / total;
    let var = times
        .iter()
        .zip(intensity)
        .map(|(t, i)| (t - mean) * (t - mean) * i)
        .sum::<f64>()
        / total;
    var.sqrt()
}

/// |width(trace) − width(reference)| / width(reference).
pub fn distortion_metric(trace: &Trace, reference: &Trace) -> f64 {
    ((trace.rms_width - reference.rms_width) / reference.rms_width).abs()
}
