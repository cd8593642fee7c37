//! Domain types shared by every other module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed value range of a series, in data units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueDomain {
    pub min: f64,
    pub max: f64,
}

impl ValueDomain {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::Config(format!(
                "value domain needs finite min < max, got [{min}, {max}]"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.min, self.max)
    }
}

impl Default for ValueDomain {
    fn default() -> Self {
        Self {
            min: 0.0,
            max: 100.0,
        }
    }
}

/// Sampling of the time axis onto a clock of `hours_span` hours.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeDomain {
    pub steps: usize,
    pub hours_span: f64,
}

impl TimeDomain {
    pub fn new(steps: usize, hours_span: f64) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Config(format!("need at least 2 steps, got {steps}")));
        }
        if !(hours_span.is_finite() && hours_span > 0.0) {
            return Err(Error::Config(format!("hours span must be positive, got {hours_span}")));
        }
        Ok(Self { steps, hours_span })
    }

    /// Clock time in hours of a step index.
    pub fn hours_at(&self, step: usize) -> f64 {
        self.hours_span * step as f64 / (self.steps - 1) as f64
    }

    /// Display hours covered by one sampling interval.
    pub fn hours_per_step(&self) -> f64 {
        self.hours_span / (self.steps - 1) as f64
    }

    /// Nearest step index for a clock time, clamped to the axis.
    pub fn step_at(&self, hours: f64) -> usize {
        let pos = (hours / self.hours_span * (self.steps - 1) as f64).round();
        pos.clamp(0.0, (self.steps - 1) as f64) as usize
    }

    pub fn check_step(&self, step: usize) -> Result<()> {
        if step < self.steps {
            Ok(())
        } else {
            Err(Error::Range(format!(
                "step {step} outside 0..{}",
                self.steps
            )))
        }
    }
}

impl Default for TimeDomain {
    fn default() -> Self {
        Self {
            steps: 72,
            hours_span: 24.0,
        }
    }
}

/// "H:MM" label of a step under the linear step-to-clock mapping.
pub fn clock_label(step: usize, td: &TimeDomain) -> Result<String> {
    td.check_step(step)?;
    let minutes = (td.hours_at(step) * 60.0).round() as u64;
    Ok(format!("{}:{:02}", minutes / 60, minutes % 60))
}

/// Step ranges of `slices` vertical slices: equal counts of samples, the
/// last slice absorbing the remainder.
pub fn slice_ranges(steps: usize, slices: usize) -> Result<Vec<std::ops::Range<usize>>> {
    if slices == 0 || slices > steps {
        return Err(Error::Config(format!(
            "cannot cut {steps} steps into {slices} slices"
        )));
    }
    let len = steps / slices;
    Ok((0..slices)
        .map(|k| {
            let end = if k + 1 == slices { steps } else { (k + 1) * len };
            k * len..end
        })
        .collect())
}

/// Index of the slice containing `step`.
pub fn slice_of(step: usize, steps: usize, slices: usize) -> Result<usize> {
    if step >= steps {
        return Err(Error::Range(format!("step {step} outside 0..{steps}")));
    }
    let ranges = slice_ranges(steps, slices)?;
    Ok(ranges.iter().position(|r| r.contains(&step)).expect("slices cover all steps"))
}

/// A fixed-length sequence of finite samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("time series must not be empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Range(format!("non-finite value at step {i}")));
        }
        Ok(Self { values })
    }

    /// Builds a series and checks every sample against `domain`.
    pub fn in_domain(values: Vec<f64>, domain: &ValueDomain) -> Result<Self> {
        let s = Self::new(values)?;
        s.check_domain(domain)?;
        Ok(s)
    }

    pub fn check_domain(&self, domain: &ValueDomain) -> Result<()> {
        match self.values.iter().position(|&v| !domain.contains(v)) {
            None => Ok(()),
            Some(i) => Err(Error::Range(format!(
                "value {} at step {i} outside [{}, {}]",
                self.values[i], domain.min, domain.max
            ))),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl std::ops::Index<usize> for TimeSeries {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Quadrant coordinates, in quadrant units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadrantId {
    pub row: usize,
    pub col: usize,
}

impl QuadrantId {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// Inclusive range of step indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeInterval {
    pub start_step: usize,
    pub end_step: usize,
}

impl TimeInterval {
    pub fn new(start_step: usize, end_step: usize, td: &TimeDomain) -> Result<Self> {
        if start_step >= end_step || end_step >= td.steps {
            return Err(Error::Range(format!(
                "interval [{start_step}, {end_step}] invalid for {} steps",
                td.steps
            )));
        }
        Ok(Self {
            start_step,
            end_step,
        })
    }

    pub fn full(td: &TimeDomain) -> Self {
        Self {
            start_step: 0,
            end_step: td.steps - 1,
        }
    }

    pub fn contains(&self, step: usize) -> bool {
        step >= self.start_step && step <= self.end_step
    }
}

/// Row-major grid of series, optionally partitioned into square quadrants.
///
/// Study grids are square except the two-graph comparison layout, so rows
/// and columns are kept separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridLayout {
    rows: usize,
    cols: usize,
    cells: Vec<TimeSeries>,
    quadrant_side: Option<usize>,
}

impl GridLayout {
    pub fn new(
        rows: usize,
        cols: usize,
        cells: Vec<TimeSeries>,
        quadrant_side: Option<usize>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Config("grid needs at least one row and column".into()));
        }
        if cells.len() != rows * cols {
            return Err(Error::Shape {
                expected: rows * cols,
                actual: cells.len(),
            });
        }
        let len = cells[0].len();
        if let Some(bad) = cells.iter().find(|c| c.len() != len) {
            return Err(Error::Shape {
                expected: len,
                actual: bad.len(),
            });
        }
        if let Some(q) = quadrant_side {
            if q == 0 || !rows.is_multiple_of(q) || !cols.is_multiple_of(q) {
                return Err(Error::Config(format!(
                    "quadrant side {q} does not divide a {rows}x{cols} grid"
                )));
            }
        }
        Ok(Self {
            rows,
            cols,
            cells,
            quadrant_side,
        })
    }

    pub fn square(side: usize, cells: Vec<TimeSeries>, quadrant_side: Option<usize>) -> Result<Self> {
        Self::new(side, side, cells, quadrant_side)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[TimeSeries] {
        &self.cells
    }

    pub fn cell(&self, index: usize) -> &TimeSeries {
        &self.cells[index]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Samples per series.
    pub fn steps(&self) -> usize {
        self.cells[0].len()
    }

    pub fn quadrant_side(&self) -> Option<usize> {
        self.quadrant_side
    }

    /// All quadrant ids in row-major order.
    pub fn quadrants(&self) -> Result<Vec<QuadrantId>> {
        let q = self.require_quadrants()?;
        let (qr, qc) = (self.rows / q, self.cols / q);
        Ok((0..qr)
            .flat_map(|r| (0..qc).map(move |c| QuadrantId::new(r, c)))
            .collect())
    }

    /// Row-major cell indices of one quadrant.
    pub fn quadrant_members(&self, id: QuadrantId) -> Result<Vec<usize>> {
        let q = self.require_quadrants()?;
        if id.row >= self.rows / q || id.col >= self.cols / q {
            return Err(Error::Range(format!(
                "quadrant ({}, {}) outside a {}x{} quadrant grid",
                id.row,
                id.col,
                self.rows / q,
                self.cols / q
            )));
        }
        let mut out = Vec::with_capacity(q * q);
        for r in id.row * q..(id.row + 1) * q {
            for c in id.col * q..(id.col + 1) * q {
                out.push(r * self.cols + c);
            }
        }
        Ok(out)
    }

    fn require_quadrants(&self) -> Result<usize> {
        self.quadrant_side
            .ok_or_else(|| Error::Config("grid has no quadrant partition".into()))
    }
}
