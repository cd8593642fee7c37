//! Seed-deterministic synthetic data.
//!
//! All randomness comes from ChaCha8 streams. A stream is addressed by a
//! 64-bit seed (expanded to a key with `SeedableRng::seed_from_u64`) and a
//! 64-bit stream id, so independent datasets can be derived from one
//! study seed without sharing state.

mod hilbert;
mod tasks;

pub use hilbert::{covering_order, curve_positions, hilbert_d2xy, HilbertIndex};
pub use tasks::{generate_task_dataset, IntervalKind, TaskDataset, TaskSettings};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GridLayout, TimeSeries, ValueDomain};

pub type StudyRng = ChaCha8Rng;

/// Opens stream `stream` of the generator keyed by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StudyRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Samples per series.
    pub length: usize,
    /// Standard deviation of one random-walk step, in data units.
    pub walk_step_sigma: f64,
    /// Width of the centered moving average; odd.
    pub smooth_window: usize,
    /// Weight of the previously generated series.
    pub alpha_prev: f64,
    pub domain: ValueDomain,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            length: 72,
            walk_step_sigma: 4.0,
            smooth_window: 5,
            alpha_prev: 0.25,
            domain: ValueDomain::default(),
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(Error::Config(format!("series length {} < 2", self.length)));
        }
        if !(self.walk_step_sigma.is_finite() && self.walk_step_sigma >= 0.0) {
            return Err(Error::Config("walk step sigma must be finite and non-negative".into()));
        }
        if self.smooth_window == 0 || self.smooth_window.is_multiple_of(2) || self.smooth_window >= self.length {
            return Err(Error::Config(format!(
                "smoothing window {} must be odd and shorter than the series",
                self.smooth_window
            )));
        }
        if !(0.0..=1.0).contains(&self.alpha_prev) {
            return Err(Error::Config(format!("alpha {} outside [0, 1]", self.alpha_prev)));
        }
        ValueDomain::new(self.domain.min, self.domain.max)?;
        Ok(())
    }
}

/// Reflects `v` back into `[lo, hi]` as often as needed.
fn reflect(mut v: f64, lo: f64, hi: f64) -> f64 {
    loop {
        if v < lo {
            v = 2.0 * lo - v;
        } else if v > hi {
            v = 2.0 * hi - v;
        } else {
            return v;
        }
    }
}

/// Centered moving average, truncated at both ends.
pub fn smooth(values: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    let n = values.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            values[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64
        })
        .collect()
}

/// Reflected Gaussian random walk followed by moving-average smoothing.
pub fn random_walk_series<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Result<TimeSeries> {
    cfg.validate()?;
    let (lo, hi) = (cfg.domain.min, cfg.domain.max);
    let step = Normal::new(0.0, cfg.walk_step_sigma)
        .map_err(|e| Error::Config(format!("walk step distribution: {e}")))?;
    let mut raw = Vec::with_capacity(cfg.length);
    let mut v = rng.random_range(lo..=hi);
    raw.push(v);
    for _ in 1..cfg.length {
        v = reflect(v + step.sample(rng), lo, hi);
        raw.push(v);
    }
    let smoothed = smooth(&raw, cfg.smooth_window)
        .into_iter()
        .map(|x| x.clamp(lo, hi))
        .collect();
    TimeSeries::new(smoothed)
}

/// Pointwise `alpha * prev + (1 - alpha) * fresh`.
pub fn correlate(prev: &TimeSeries, fresh: &TimeSeries, alpha: f64) -> Result<TimeSeries> {
    if prev.len() != fresh.len() {
        return Err(Error::Shape {
            expected: prev.len(),
            actual: fresh.len(),
        });
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Range(format!("alpha {alpha} outside [0, 1]")));
    }
    TimeSeries::new(
        prev.values()
            .iter()
            .zip(fresh.values())
            .map(|(p, f)| alpha * p + (1.0 - alpha) * f)
            .collect(),
    )
}

/// Generates `rows * cols` series, each blended with its predecessor, and
/// places them along the (truncated) Hilbert curve.
pub fn layout_grid<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    quadrant_side: Option<usize>,
    cfg: &GenConfig,
    rng: &mut R,
) -> Result<GridLayout> {
    let positions = curve_positions(rows, cols);
    let mut slots: Vec<Option<TimeSeries>> = vec![None; rows * cols];
    let mut prev: Option<TimeSeries> = None;
    for &(r, c) in &positions {
        let fresh = random_walk_series(cfg, rng)?;
        let s = match &prev {
            None => fresh,
            Some(p) => correlate(p, &fresh, cfg.alpha_prev)?,
        };
        slots[r * cols + c] = Some(s.clone());
        prev = Some(s);
    }
    let cells = slots
        .into_iter()
        .map(|s| s.expect("hilbert positions cover the grid"))
        .collect();
    GridLayout::new(rows, cols, cells, quadrant_side)
}
