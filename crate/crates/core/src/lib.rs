//! Reflection and transmission of Gaussian pulses through a dielectric slab
//! doped with four-level N-configuration atoms under Raman gain.
//!
//! A control field reshapes the Raman gain line of the dopant. Depending on
//! its strength the slab disperses normally or anomalously around the gain
//! resonance, and the reflected and transmitted pulses are delayed
//! (subluminal) or advanced (superluminal).
//!
//! - [`susceptibility`]: probe susceptibility χ(Δp) and refractive index.
//! - [`slab`]: transfer matrix, r(ω), t(ω), unwrapped phases and phase times.
//! - [`pulse`]: Gaussian pulse synthesis and peak/width diagnostics.
//! - [`scenario`]: presets, JSON configs, run and sweep drivers, file output.

pub mod grid;
pub mod pulse;
pub mod scenario;
pub mod slab;
pub mod susceptibility;

pub use num_complex::Complex64;
