//! Study tasks, answers and answer keys.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::{QuadrantId, TimeInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskId {
    T01,
    T02,
    T03,
    T04,
    T05,
    T06,
    T07,
    T08,
    T09,
    T10,
}

impl TaskId {
    pub const ALL: [TaskId; 10] = [
        TaskId::T01,
        TaskId::T02,
        TaskId::T03,
        TaskId::T04,
        TaskId::T05,
        TaskId::T06,
        TaskId::T07,
        TaskId::T08,
        TaskId::T09,
        TaskId::T10,
    ];

    pub fn answer_type(self) -> AnswerType {
        match self {
            TaskId::T01 | TaskId::T02 | TaskId::T03 | TaskId::T04 => AnswerType::SingleGraph,
            TaskId::T05 => AnswerType::ValueInput,
            TaskId::T06 => AnswerType::TimeSlider,
            TaskId::T07 => AnswerType::MultiGraph,
            TaskId::T08 | TaskId::T10 => AnswerType::Quadrant,
            TaskId::T09 => AnswerType::YesNo,
        }
    }

    /// Grid shape as (rows, cols, quadrant side).
    pub fn grid_shape(self) -> (usize, usize, Option<usize>) {
        match self {
            TaskId::T01 | TaskId::T02 | TaskId::T03 | TaskId::T06 => (3, 3, None),
            TaskId::T04 | TaskId::T05 => (1, 2, None),
            TaskId::T07 | TaskId::T09 => (5, 5, None),
            TaskId::T08 | TaskId::T10 => (9, 9, Some(3)),
        }
    }

    /// Number of scored repetitions per technique.
    pub fn repetitions(self) -> usize {
        match self {
            TaskId::T08 => 3,
            _ => 2,
        }
    }

    /// Techniques the task is run with.
    pub fn techniques(self) -> &'static [Technique] {
        match self {
            TaskId::T03 => &[Technique::Chg],
            _ => &Technique::ALL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TaskId::T01 => "T01",
            TaskId::T02 => "T02",
            TaskId::T03 => "T03",
            TaskId::T04 => "T04",
            TaskId::T05 => "T05",
            TaskId::T06 => "T06",
            TaskId::T07 => "T07",
            TaskId::T08 => "T08",
            TaskId::T09 => "T09",
            TaskId::T10 => "T10",
        }
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TaskId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown task id {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Technique {
    Cbp,
    Hg,
    Chg,
    Bhg,
}

impl Technique {
    pub const ALL: [Technique; 4] = [Technique::Cbp, Technique::Hg, Technique::Chg, Technique::Bhg];

    pub fn as_str(self) -> &'static str {
        match self {
            Technique::Cbp => "CBP",
            Technique::Hg => "HG",
            Technique::Chg => "CHG",
            Technique::Bhg => "BHG",
        }
    }

    /// Techniques that collapse slices and therefore color markers by slice.
    pub fn is_collapsed(self) -> bool {
        matches!(self, Technique::Chg | Technique::Bhg)
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Technique {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Technique::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown technique {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerType {
    SingleGraph,
    MultiGraph,
    ValueInput,
    TimeSlider,
    YesNo,
    Quadrant,
}

/// A participant's response to one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Answer {
    SingleGraph { index: usize },
    MultiGraph { indices: Vec<usize> },
    ValueInput { value: f64 },
    TimeSlider { step: usize },
    YesNo { yes: bool },
    Quadrant { row: usize, col: usize },
    Skipped,
}

impl Answer {
    /// `None` for a skipped trial.
    pub fn answer_type(&self) -> Option<AnswerType> {
        Some(match self {
            Answer::SingleGraph { .. } => AnswerType::SingleGraph,
            Answer::MultiGraph { .. } => AnswerType::MultiGraph,
            Answer::ValueInput { .. } => AnswerType::ValueInput,
            Answer::TimeSlider { .. } => AnswerType::TimeSlider,
            Answer::YesNo { .. } => AnswerType::YesNo,
            Answer::Quadrant { .. } => AnswerType::Quadrant,
            Answer::Skipped => return None,
        })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Answer::Skipped)
    }
}

/// The correct answer of a trial plus the per-choice metrics needed to
/// grade wrong answers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AnswerKey {
    /// `metrics[i]` is the task metric of graph `i`.
    SingleGraph { index: usize, metrics: Vec<f64> },
    MultiGraph { indices: Vec<usize> },
    ValueInput { value: f64 },
    TimeSlider { step: usize, hours_per_step: f64 },
    YesNo { yes: bool },
    /// `metrics[row][col]` is the task metric of each quadrant.
    Quadrant {
        row: usize,
        col: usize,
        metrics: Vec<Vec<f64>>,
    },
}

impl AnswerKey {
    pub fn answer_type(&self) -> AnswerType {
        match self {
            AnswerKey::SingleGraph { .. } => AnswerType::SingleGraph,
            AnswerKey::MultiGraph { .. } => AnswerType::MultiGraph,
            AnswerKey::ValueInput { .. } => AnswerType::ValueInput,
            AnswerKey::TimeSlider { .. } => AnswerType::TimeSlider,
            AnswerKey::YesNo { .. } => AnswerType::YesNo,
            AnswerKey::Quadrant { .. } => AnswerType::Quadrant,
        }
    }

    /// The answer a perfect participant would give.
    pub fn key_answer(&self) -> Answer {
        match self {
            AnswerKey::SingleGraph { index, .. } => Answer::SingleGraph { index: *index },
            AnswerKey::MultiGraph { indices } => Answer::MultiGraph {
                indices: indices.clone(),
            },
            AnswerKey::ValueInput { value } => Answer::ValueInput { value: *value },
            AnswerKey::TimeSlider { step, .. } => Answer::TimeSlider { step: *step },
            AnswerKey::YesNo { yes } => Answer::YesNo { yes: *yes },
            AnswerKey::Quadrant { row, col, .. } => Answer::Quadrant {
                row: *row,
                col: *col,
            },
        }
    }
}

/// Time markers drawn beneath graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Markers {
    /// Same step under every graph.
    Shared { step: usize },
    /// One step per graph, in cell order.
    PerGraph { steps: Vec<usize> },
}

impl Markers {
    pub fn step_for(&self, cell: usize) -> Option<usize> {
        match self {
            Markers::Shared { step } => Some(*step),
            Markers::PerGraph { steps } => steps.get(cell).copied(),
        }
    }
}

/// Per-trial parameters shown to the participant.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TaskParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markers: Option<Markers>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<TimeInterval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub highlighted: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrant_side: Option<usize>,
}

/// One task repetition with its answer key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub trial_id: String,
    pub task: TaskId,
    pub technique: Technique,
    pub repetition: usize,
    /// Identifier of the drawn dataset.
    pub dataset: String,
    /// Which of the candidate datasets was drawn.
    pub drawn: usize,
    pub params: TaskParams,
    pub answer_type: AnswerType,
    pub key: AnswerKey,
}

impl TrialSpec {
    pub fn quadrant(&self) -> Option<QuadrantId> {
        match &self.key {
            AnswerKey::Quadrant { row, col, .. } => Some(QuadrantId::new(*row, *col)),
            _ => None,
        }
    }
}
