//! Probe-detuning grids.

use serde::{Deserialize, Serialize};

/// Uniform detuning grid anchored on `center`, optionally refined near it.
///
/// Points are generated as integer multiples of the spacing measured from
/// `center`, so the center itself is always an exact grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetuningGrid {
    pub lo: f64,
    pub hi: f64,
    pub center: f64,
    pub spacing: f64,
    pub refinement: Option<Refinement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    /// Refined region is `center ± half_width`.
    pub half_width: f64,
    /// Spacing inside the region is `spacing / factor`.
    pub factor: u32,
}

impl DetuningGrid {
    pub fn uniform(lo: f64, hi: f64, center: f64, spacing: f64) -> Self {
        Self {
            lo,
            hi,
            center,
            spacing,
            refinement: None,
        }
    }

    pub fn refined(mut self, half_width: f64, factor: u32) -> Self {
        self.refinement = Some(Refinement { half_width, factor });
        self
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing;
        let j_lo = ((self.lo - self.center) / h - 1e-9).ceil() as i64;
        let j_hi = ((self.hi - self.center) / h + 1e-9).floor() as i64;

        let (fine_h, fine_n) = match self.refinement {
            Some(r) if r.factor > 1 && r.half_width > 0.0 => {
                let fh = h / r.factor as f64;
                (fh, (r.half_width / fh + 1e-9).floor() as i64)
            }
            _ => (h, 0),
        };
        let fine_extent = fine_n as f64 * fine_h;

        let mut out = Vec::with_capacity((j_hi - j_lo + 1).max(0) as usize + 2 * fine_n as usize);
        for j in j_lo..=j_hi {
            let offset = j as f64 * h;
            if fine_n > 0 && offset.abs() <= fine_extent * (1.0 + 1e-12) {
                continue;
            }
            out.push(self.center + offset);
        }
        for i in -fine_n..=fine_n {
            let x = self.center + i as f64 * fine_h;
            if x >= self.lo - 1e-12 && x <= self.hi + 1e-12 {
                out.push(x);
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|k| lo + k as f64 * step).collect()
        }
    }
}
