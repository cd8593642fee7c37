use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::task::{Answer, AnswerKey, TaskId, TrialSpec};

/// Result of grading one trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Outcome {
    /// The participant skipped; not scored.
    Skipped,
    Scored {
        error: f64,
        /// For homogeneity trials: cost gap between the chosen and the
        /// most homogeneous quadrant.
        dtw_gap: Option<f64>,
    },
}

impl Outcome {
    pub fn error(&self) -> Option<f64> {
        match self {
            Outcome::Skipped => None,
            Outcome::Scored { error, .. } => Some(*error),
        }
    }
}

/// Grades `answer` against the trial's key.
///
/// Graph and quadrant choices for T01, T02, T03 and T08 are graded by the
/// distance between the chosen and the correct task metric. T04, T09 and
/// T10 are binary, T05 is the absolute estimation error, T06 the time
/// error in display hours and T07 counts misses plus false alarms.
pub fn score_trial(trial: &TrialSpec, answer: &Answer) -> Result<Outcome> {
    let Some(kind) = answer.answer_type() else {
        return Ok(Outcome::Skipped);
    };
    if kind != trial.answer_type || kind != trial.key.answer_type() {
        return Err(Error::Validation(format!(
            "trial {} expects a {:?} answer, got {:?}",
            trial.trial_id, trial.answer_type, kind
        )));
    }
    let scored = |error: f64| Outcome::Scored {
        error,
        dtw_gap: None,
    };
    let out = match (&trial.key, answer) {
        (AnswerKey::SingleGraph { index, metrics }, Answer::SingleGraph { index: chosen }) => {
            let chosen_metric = metrics.get(*chosen).ok_or_else(|| {
                Error::Validation(format!(
                    "trial {}: graph {chosen} does not exist ({} graphs)",
                    trial.trial_id,
                    metrics.len()
                ))
            })?;
            match trial.task {
                TaskId::T04 => scored(binary(chosen == index)),
                _ => scored((metrics[*index] - chosen_metric).abs()),
            }
        }
        (AnswerKey::MultiGraph { indices }, Answer::MultiGraph { indices: chosen }) => {
            let misses = indices.iter().filter(|i| !chosen.contains(i)).count();
            let mut extra: Vec<usize> = chosen.iter().copied().filter(|i| !indices.contains(i)).collect();
            extra.sort_unstable();
            extra.dedup();
            scored((misses + extra.len()) as f64)
        }
        (AnswerKey::ValueInput { value }, Answer::ValueInput { value: est }) => {
            if !est.is_finite() {
                return Err(Error::Validation(format!(
                    "trial {}: estimate is not a finite number",
                    trial.trial_id
                )));
            }
            scored((est - value).abs())
        }
        (
            AnswerKey::TimeSlider {
                step,
                hours_per_step,
            },
            Answer::TimeSlider { step: chosen },
        ) => scored(step.abs_diff(*chosen) as f64 * hours_per_step),
        (AnswerKey::YesNo { yes }, Answer::YesNo { yes: chosen }) => scored(binary(yes == chosen)),
        (AnswerKey::Quadrant { row, col, metrics }, Answer::Quadrant { row: r, col: c }) => {
            let chosen_metric = metrics
                .get(*r)
                .and_then(|m| m.get(*c))
                .ok_or_else(|| {
                    Error::Validation(format!(
                        "trial {}: quadrant ({r}, {c}) does not exist",
                        trial.trial_id
                    ))
                })?;
            let gap = (metrics[*row][*col] - chosen_metric).abs();
            match trial.task {
                TaskId::T10 => Outcome::Scored {
                    error: binary(r == row && c == col),
                    dtw_gap: Some(gap),
                },
                _ => scored(gap),
            }
        }
        _ => unreachable!("answer types were checked above"),
    };
    Ok(out)
}

fn binary(correct: bool) -> f64 {
    if correct {
        0.0
    } else {
        1.0
    }
}
