use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    exceeds_threshold, global_max_time, quadrant_avg_slope, quadrant_homogeneity, slope,
    within_range,
};
use crate::error::{Error, Result};
use crate::model::{slice_ranges, GridLayout, TimeDomain, TimeInterval};
use crate::task::{AnswerKey, Markers, TaskId, TaskParams};

use super::{layout_grid, GenConfig};

/// Which kind of time interval a synoptic-slope repetition queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalKind {
    /// The whole day.
    #[default]
    Full,
    /// Exactly one slice of the collapsed techniques.
    SliceAligned,
    /// A one-third-of-the-day window at a random offset.
    Arbitrary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TaskSettings {
    /// Slice count used for slice-aligned intervals.
    pub slices: usize,
    pub hours_span: f64,
    pub t07_threshold: (f64, f64),
    pub t07_count: (usize, usize),
    pub t08_interval: IntervalKind,
    pub t09_tolerance: f64,
    pub max_attempts: usize,
}

impl Default for TaskSettings {
    fn default() -> Self {
        Self {
            slices: 3,
            hours_span: 24.0,
            t07_threshold: (60.0, 80.0),
            t07_count: (5, 10),
            t08_interval: IntervalKind::Full,
            t09_tolerance: 15.0,
            max_attempts: 10_000,
        }
    }
}

/// A grid satisfying its task's predicate, with parameters and key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskDataset {
    pub task: TaskId,
    pub grid: GridLayout,
    pub params: TaskParams,
    pub key: AnswerKey,
    /// Grids drawn before one was accepted.
    pub attempts: usize,
}

/// Rejection-samples whole grids until the task's predicate holds.
pub fn generate_task_dataset<R: Rng + ?Sized>(
    task: TaskId,
    cfg: &GenConfig,
    settings: &TaskSettings,
    rng: &mut R,
) -> Result<TaskDataset> {
    cfg.validate()?;
    let td = TimeDomain::new(cfg.length, settings.hours_span)?;
    let (rows, cols, quadrant_side) = task.grid_shape();
    for attempt in 1..=settings.max_attempts {
        let grid = layout_grid(rows, cols, quadrant_side, cfg, rng)?;
        if let Some((params, key)) = try_task(task, &grid, &td, settings, rng)? {
            return Ok(TaskDataset {
                task,
                grid,
                params,
                key,
                attempts: attempt,
            });
        }
    }
    Err(Error::Generation {
        task: task.to_string(),
        attempts: settings.max_attempts,
        predicate: predicate_name(task, settings),
    })
}

fn predicate_name(task: TaskId, s: &TaskSettings) -> String {
    match task {
        TaskId::T01 | TaskId::T04 => "unique maximum at the marked steps".into(),
        TaskId::T02 => "at least one increasing slope with a unique maximum".into(),
        TaskId::T03 => "at least one decreasing slope with a unique minimum".into(),
        TaskId::T05 => "distinct marker steps".into(),
        TaskId::T06 => "unique global maximum of the highlighted graph".into(),
        TaskId::T07 => format!(
            "qualifying series count in [{}, {}]",
            s.t07_count.0, s.t07_count.1
        ),
        TaskId::T08 => "unique quadrant with the highest average increase".into(),
        TaskId::T09 => "none".into(),
        TaskId::T10 => "unique most homogeneous quadrant".into(),
    }
}

/// Index of the strictly largest value, if there is exactly one.
fn unique_argmax(values: &[f64]) -> Option<usize> {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    let ties = values.iter().filter(|&&v| v == values[best]).count();
    (ties == 1).then_some(best)
}

fn unique_argmin(values: &[f64]) -> Option<usize> {
    let neg: Vec<f64> = values.iter().map(|v| -v).collect();
    unique_argmax(&neg)
}

/// Window of one third of the day, in steps.
fn third_of_day(td: &TimeDomain) -> usize {
    (((td.steps - 1) as f64) / 3.0).round().max(1.0) as usize
}

fn random_window<R: Rng + ?Sized>(td: &TimeDomain, rng: &mut R) -> TimeInterval {
    let w = third_of_day(td);
    let start = rng.random_range(0..td.steps - w);
    TimeInterval {
        start_step: start,
        end_step: start + w,
    }
}

fn draw_interval<R: Rng + ?Sized>(
    kind: IntervalKind,
    td: &TimeDomain,
    slices: usize,
    rng: &mut R,
) -> Result<TimeInterval> {
    Ok(match kind {
        IntervalKind::Full => TimeInterval::full(td),
        IntervalKind::SliceAligned => {
            let ranges = slice_ranges(td.steps, slices)?;
            let r = &ranges[rng.random_range(0..ranges.len())];
            TimeInterval::new(r.start, r.end - 1, td)?
        }
        IntervalKind::Arbitrary => random_window(td, rng),
    })
}

fn quadrant_metrics(
    grid: &GridLayout,
    metric: impl Fn(crate::model::QuadrantId) -> Result<f64>,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let q = grid.quadrant_side().expect("quadrant tasks define quadrants");
    let qcols = grid.cols() / q;
    let flat = grid
        .quadrants()?
        .into_iter()
        .map(metric)
        .collect::<Result<Vec<_>>>()?;
    let nested = flat.chunks(qcols).map(|c| c.to_vec()).collect();
    Ok((flat, nested))
}

fn try_task<R: Rng + ?Sized>(
    task: TaskId,
    grid: &GridLayout,
    td: &TimeDomain,
    settings: &TaskSettings,
    rng: &mut R,
) -> Result<Option<(TaskParams, AnswerKey)>> {
    let n = grid.len();
    let mut params = TaskParams::default();
    let key = match task {
        TaskId::T01 => {
            let step = rng.random_range(0..td.steps);
            params.markers = Some(Markers::Shared { step });
            let metrics: Vec<f64> = grid.cells().iter().map(|s| s[step]).collect();
            unique_argmax(&metrics).map(|index| AnswerKey::SingleGraph { index, metrics })
        }
        TaskId::T02 | TaskId::T03 => {
            let metrics: Vec<f64> = grid.cells().iter().map(slope).collect();
            let pick = if task == TaskId::T02 {
                unique_argmax(&metrics).filter(|&i| metrics[i] > 0.0)
            } else {
                unique_argmin(&metrics).filter(|&i| metrics[i] < 0.0)
            };
            pick.map(|index| AnswerKey::SingleGraph { index, metrics })
        }
        TaskId::T04 | TaskId::T05 => {
            let a = rng.random_range(0..td.steps);
            let mut b = rng.random_range(0..td.steps - 1);
            if b >= a {
                b += 1;
            }
            params.markers = Some(Markers::PerGraph { steps: vec![a, b] });
            let metrics = vec![grid.cell(0)[a], grid.cell(1)[b]];
            if task == TaskId::T04 {
                unique_argmax(&metrics).map(|index| AnswerKey::SingleGraph { index, metrics })
            } else {
                Some(AnswerKey::ValueInput {
                    value: (metrics[0] - metrics[1]).abs(),
                })
            }
        }
        TaskId::T06 => {
            let h = rng.random_range(0..n);
            params.highlighted = Some(h);
            let s = grid.cell(h);
            let step = global_max_time(s);
            let ties = s.values().iter().filter(|&&v| v == s[step]).count();
            (ties == 1).then(|| AnswerKey::TimeSlider {
                step,
                hours_per_step: td.hours_per_step(),
            })
        }
        TaskId::T07 => {
            let (lo, hi) = settings.t07_threshold;
            let thr = rng.random_range(lo..=hi);
            let iv = random_window(td, rng);
            params.threshold = Some(thr);
            params.interval = Some(iv);
            let mut indices = Vec::new();
            for (i, s) in grid.cells().iter().enumerate() {
                if exceeds_threshold(s, &iv, thr)? {
                    indices.push(i);
                }
            }
            let (cmin, cmax) = settings.t07_count;
            (indices.len() >= cmin && indices.len() <= cmax)
                .then_some(AnswerKey::MultiGraph { indices })
        }
        TaskId::T08 => {
            let iv = draw_interval(settings.t08_interval, td, settings.slices, rng)?;
            params.interval = Some(iv);
            params.quadrant_side = grid.quadrant_side();
            let (flat, metrics) = quadrant_metrics(grid, |q| quadrant_avg_slope(grid, q, &iv))?;
            let qcols = metrics[0].len();
            unique_argmax(&flat).map(|i| AnswerKey::Quadrant {
                row: i / qcols,
                col: i % qcols,
                metrics,
            })
        }
        TaskId::T09 => {
            let h = rng.random_range(0..n);
            params.highlighted = Some(h);
            params.tolerance = Some(settings.t09_tolerance);
            Some(AnswerKey::YesNo {
                yes: within_range(grid.cell(h), settings.t09_tolerance)?,
            })
        }
        TaskId::T10 => {
            params.quadrant_side = grid.quadrant_side();
            let (flat, metrics) = quadrant_metrics(grid, |q| quadrant_homogeneity(grid, q))?;
            let qcols = metrics[0].len();
            unique_argmin(&flat).map(|i| AnswerKey::Quadrant {
                row: i / qcols,
                col: i % qcols,
                metrics,
            })
        }
    };
    Ok(key.map(|k| (params, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::stream_rng;

    #[test]
    fn unique_extrema() {
        assert_eq!(unique_argmax(&[1.0, 3.0, 2.0]), Some(1));
        assert_eq!(unique_argmax(&[3.0, 1.0, 3.0]), None);
        assert_eq!(unique_argmin(&[3.0, 1.0, 2.0]), Some(1));
    }

    #[test]
    fn exhausted_attempts_name_the_predicate() {
        let settings = TaskSettings {
            t07_threshold: (100.0, 100.0),
            max_attempts: 3,
            ..TaskSettings::default()
        };
        let err = generate_task_dataset(TaskId::T07, &GenConfig::default(), &settings, &mut stream_rng(1, 0))
            .unwrap_err();
        match err {
            Error::Generation { task, attempts, predicate } => {
                assert_eq!(task, "T07");
                assert_eq!(attempts, 3);
                assert!(predicate.contains("[5, 10]"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn interval_kinds() {
        let td = TimeDomain::default();
        let mut rng = stream_rng(4, 0);
        assert_eq!(draw_interval(IntervalKind::Full, &td, 3, &mut rng).unwrap(), TimeInterval::full(&td));
        for _ in 0..50 {
            let iv = draw_interval(IntervalKind::SliceAligned, &td, 3, &mut rng).unwrap();
            assert!([(0, 23), (24, 47), (48, 71)].contains(&(iv.start_step, iv.end_step)));
            let iv = draw_interval(IntervalKind::Arbitrary, &td, 3, &mut rng).unwrap();
            assert_eq!(iv.end_step - iv.start_step, 24);
            assert!(iv.end_step <= 71);
        }
    }

    #[test]
    fn t02_key_is_max_slope() {
        let d = generate_task_dataset(TaskId::T02, &GenConfig::default(), &TaskSettings::default(), &mut stream_rng(2, 0))
            .unwrap();
        let slopes: Vec<f64> = d.grid.cells().iter().map(slope).collect();
        match d.key {
            AnswerKey::SingleGraph { index, metrics } => {
                assert_eq!(metrics, slopes);
                assert!(slopes[index] > 0.0);
                assert!(slopes.iter().enumerate().all(|(i, &s)| i == index || s < slopes[index]));
            }
            other => panic!("unexpected key {other:?}"),
        }
    }
}
