//! Task metrics and answer-key computations.

mod dtw;
mod metrics;
mod scoring;
mod stats;

pub use dtw::{dtw_cost, DtwResult};
pub use metrics::{
    exceeds_threshold, global_max_time, pairwise_dtw, quadrant_avg_slope, quadrant_homogeneity,
    slope, within_range,
};
pub use scoring::{score_trial, Outcome};
pub use stats::{quantile_sorted, summary_stats, IntervalStats};
