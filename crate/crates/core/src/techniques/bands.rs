use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{slice_ranges, TimeSeries, ValueDomain};

/// Which slice ends up in front when the slices of a band are collapsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceOrdering {
    /// The earliest slice is drawn on top.
    #[default]
    FrontFirstSlice,
    /// The latest slice is drawn on top.
    FrontLastSlice,
}

impl SliceOrdering {
    /// Stacking rank of a slice: `slices - 1` is the front.
    pub fn front_rank(self, slice: usize, slices: usize) -> usize {
        match self {
            SliceOrdering::FrontFirstSlice => slices - 1 - slice,
            SliceOrdering::FrontLastSlice => slice,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandSliceConfig {
    pub bands: usize,
    pub slices: usize,
    pub domain: ValueDomain,
    pub ordering: SliceOrdering,
}

impl Default for BandSliceConfig {
    fn default() -> Self {
        Self {
            bands: 3,
            slices: 3,
            domain: ValueDomain::default(),
            ordering: SliceOrdering::default(),
        }
    }
}

impl BandSliceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bands == 0 || self.slices == 0 {
            return Err(Error::Config("need at least one band and one slice".into()));
        }
        ValueDomain::new(self.domain.min, self.domain.max)?;
        Ok(())
    }

    /// Height of one band in data units.
    pub fn band_height(&self) -> f64 {
        self.domain.span() / self.bands as f64
    }
}

/// The part of each sample that falls inside one band, in `[0, h]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandResidual {
    pub band: usize,
    pub residuals: Vec<f64>,
}

/// Cuts a series into `bands` equal-height bands.
///
/// `domain.min + sum of residuals` reproduces every sample.
pub fn band_decompose(s: &TimeSeries, bands: usize, domain: &ValueDomain) -> Result<Vec<BandResidual>> {
    if bands == 0 {
        return Err(Error::Config("need at least one band".into()));
    }
    let h = domain.span() / bands as f64;
    Ok((0..bands)
        .map(|b| {
            let base = domain.min + b as f64 * h;
            BandResidual {
                band: b,
                residuals: s.values().iter().map(|&v| (v - base).clamp(0.0, h)).collect(),
            }
        })
        .collect())
}

/// One band/slice cell as a piecewise-linear residual curve over the
/// collapsed x range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellCurve {
    pub band: usize,
    pub slice: usize,
    /// Ascending x positions.
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
}

impl CellCurve {
    /// Linear interpolation, constant beyond the ends.
    pub fn value_at(&self, x: f64) -> f64 {
        let xs = &self.xs;
        if x <= xs[0] {
            return self.values[0];
        }
        if x >= xs[xs.len() - 1] {
            return self.values[xs.len() - 1];
        }
        let i = xs.partition_point(|&v| v <= x) - 1;
        let (x0, x1) = (xs[i], xs[i + 1]);
        if x1 == x0 {
            return self.values[i + 1];
        }
        let t = (x - x0) / (x1 - x0);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }
}

/// Collapses every slice of every band onto `[0, width]`.
///
/// The samples of a slice spread evenly over the whole width; a slice with
/// a single sample becomes a flat segment.
pub fn collapse_cells(s: &TimeSeries, cfg: &BandSliceConfig, width: f64) -> Result<Vec<CellCurve>> {
    cfg.validate()?;
    let ranges = slice_ranges(s.len(), cfg.slices)?;
    let bands = band_decompose(s, cfg.bands, &cfg.domain)?;
    let mut out = Vec::with_capacity(cfg.bands * cfg.slices);
    for band in &bands {
        for (slice, r) in ranges.iter().enumerate() {
            let n = r.len();
            let (xs, values) = if n == 1 {
                let v = band.residuals[r.start];
                (vec![0.0, width], vec![v, v])
            } else {
                (
                    (0..n).map(|j| j as f64 * width / (n - 1) as f64).collect(),
                    band.residuals[r.clone()].to_vec(),
                )
            };
            out.push(CellCurve {
                band: band.band,
                slice,
                xs,
                values,
            });
        }
    }
    Ok(out)
}
