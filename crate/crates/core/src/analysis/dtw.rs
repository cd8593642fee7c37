use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Accumulated cost of the cheapest full warping path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DtwResult {
    pub cost: f64,
}

/// Classic unconstrained dynamic time warping with absolute-difference
/// local cost and diagonal, horizontal and vertical moves.
pub fn dtw_cost(a: &[f64], b: &[f64]) -> Result<DtwResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Config("dtw needs two non-empty sequences".into()));
    }
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![0.0; m];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            let local = (ai - bj).abs();
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j - 1].min(prev[j]).min(cur[j - 1]),
            };
            cur[j] = local + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(DtwResult { cost: prev[m - 1] })
}
