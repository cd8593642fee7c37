use crate::error::{Error, Result};
use crate::model::{GridLayout, QuadrantId, TimeInterval, TimeSeries};

use super::dtw::dtw_cost;

/// Difference between the last and the first sample.
pub fn slope(s: &TimeSeries) -> f64 {
    s.last() - s.first()
}

/// Step of the maximum; ties resolve to the earliest step.
pub fn global_max_time(s: &TimeSeries) -> usize {
    let mut best = 0;
    for (i, &v) in s.values().iter().enumerate().skip(1) {
        if v > s[best] {
            best = i;
        }
    }
    best
}

/// Whether any sample inside `iv` is strictly greater than `thr`.
pub fn exceeds_threshold(s: &TimeSeries, iv: &TimeInterval, thr: f64) -> Result<bool> {
    check_interval(s, iv)?;
    Ok(s.values()[iv.start_step..=iv.end_step].iter().any(|&v| v > thr))
}

/// Whether every sample lies in the closed band `first ± tol`.
pub fn within_range(s: &TimeSeries, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Range(format!("tolerance must be positive, got {tol}")));
    }
    let first = s.first();
    Ok(s.values()
        .iter()
        .all(|&v| v >= first - tol && v <= first + tol))
}

/// Mean increase over `iv` among the members of a quadrant.
pub fn quadrant_avg_slope(grid: &GridLayout, q: QuadrantId, iv: &TimeInterval) -> Result<f64> {
    let members = grid.quadrant_members(q)?;
    check_interval(grid.cell(members[0]), iv)?;
    let total: f64 = members
        .iter()
        .map(|&i| {
            let s = grid.cell(i);
            s[iv.end_step] - s[iv.start_step]
        })
        .sum();
    Ok(total / members.len() as f64)
}

/// DTW cost of every unordered pair of quadrant members, as
/// `(cell_a, cell_b, cost)` with `cell_a < cell_b`.
pub fn pairwise_dtw(grid: &GridLayout, q: QuadrantId) -> Result<Vec<(usize, usize, f64)>> {
    let members = grid.quadrant_members(q)?;
    let mut out = Vec::with_capacity(members.len() * (members.len() - 1) / 2);
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            let cost = dtw_cost(grid.cell(a).values(), grid.cell(b).values())?.cost;
            out.push((a, b, cost));
        }
    }
    Ok(out)
}

/// Summed pairwise DTW cost inside a quadrant; lower is more homogeneous.
pub fn quadrant_homogeneity(grid: &GridLayout, q: QuadrantId) -> Result<f64> {
    Ok(pairwise_dtw(grid, q)?.iter().map(|&(_, _, c)| c).sum())
}

fn check_interval(s: &TimeSeries, iv: &TimeInterval) -> Result<()> {
    if iv.start_step > iv.end_step || iv.end_step >= s.len() {
        return Err(Error::Range(format!(
            "interval [{}, {}] outside a {}-step series",
            iv.start_step,
            iv.end_step,
            s.len()
        )));
    }
    Ok(())
}
