use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TimeSeries;

/// Order statistics of one aggregation interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalStats {
    /// First step of the interval.
    pub start_step: usize,
    /// Last step of the interval (inclusive).
    pub end_step: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl IntervalStats {
    /// Center of the interval in step units.
    pub fn mid_step(&self) -> f64 {
        (self.start_step + self.end_step) as f64 / 2.0
    }
}

/// Linear-interpolation quantile of an ascending slice, taken at
/// position `q * (n - 1)`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        return sorted[lo];
    }
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Splits the series into consecutive intervals of `interval_len` steps
/// (the last one may be shorter) and summarizes each.
pub fn summary_stats(s: &TimeSeries, interval_len: usize) -> Result<Vec<IntervalStats>> {
    if interval_len == 0 {
        return Err(Error::Range("aggregation interval must be at least 1 step".into()));
    }
    let mut out = Vec::with_capacity(s.len().div_ceil(interval_len));
    let mut buf = Vec::with_capacity(interval_len);
    for (k, chunk) in s.values().chunks(interval_len).enumerate() {
        buf.clear();
        buf.extend_from_slice(chunk);
        buf.sort_by(f64::total_cmp);
        let start = k * interval_len;
        out.push(IntervalStats {
            start_step: start,
            end_step: start + chunk.len() - 1,
            min: buf[0],
            q1: quantile_sorted(&buf, 0.25),
            median: quantile_sorted(&buf, 0.5),
            q3: quantile_sorted(&buf, 0.75),
            max: buf[buf.len() - 1],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn three_values() {
        let st = summary_stats(&series(&[20.0, 10.0, 30.0]), 3).unwrap();
        assert_eq!(st.len(), 1);
        let s = st[0];
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (10.0, 15.0, 20.0, 25.0, 30.0));
    }

    #[test]
    fn constant_series_degenerates() {
        let st = summary_stats(&series(&[7.5; 10]), 3).unwrap();
        assert_eq!(st.len(), 4);
        for s in st {
            assert_eq!([s.min, s.q1, s.median, s.q3, s.max], [7.5; 5]);
        }
    }

    #[test]
    fn interval_counts() {
        let s = series(&[1.0; 72]);
        assert_eq!(summary_stats(&s, 3).unwrap().len(), 24);
        let st = summary_stats(&series(&[1.0; 10]), 4).unwrap();
        assert_eq!(st.len(), 3);
        assert_eq!((st[2].start_step, st[2].end_step), (8, 9));
    }

    #[test]
    fn zero_interval_is_an_error() {
        assert!(matches!(summary_stats(&series(&[1.0]), 0), Err(Error::Range(_))));
    }

    proptest! {
        #[test]
        fn ordering_invariant(v in proptest::collection::vec(0.0f64..100.0, 1..80), len in 1usize..10) {
            for s in summary_stats(&series(&v), len).unwrap() {
                prop_assert!(s.min <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.max);
            }
        }
    }
}
