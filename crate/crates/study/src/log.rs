//! Per-participant result logs written by the study runner.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use horizon_core::{Answer, TaskId, Technique};

use crate::bundle::Keys;
use crate::error::{io_err, json_err, Result};

pub const LOG_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: String,
    pub answer: Answer,
    /// Milliseconds when the stimulus appeared.
    pub display_ts: u64,
    /// Milliseconds when the answer was submitted.
    pub submit_ts: u64,
    #[serde(default)]
    pub training_rounds: u32,
}

impl TrialRecord {
    pub fn seconds(&self) -> f64 {
        self.submit_ts.saturating_sub(self.display_ts) as f64 / 1000.0
    }
}

/// Post-task ratings on 7-point scales.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rating {
    pub task: TaskId,
    pub technique: Technique,
    pub confidence: u8,
    pub difficulty: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultLog {
    pub schema: u32,
    pub participant: String,
    /// Free-form questionnaire answers, kept verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demographics: Option<serde_json::Value>,
    pub trials: Vec<TrialRecord>,
    #[serde(default)]
    pub ratings: Vec<Rating>,
}

impl ResultLog {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        serde_json::from_str(&text).map_err(json_err(path))
    }

    /// Structural problems, one message per offending record.
    pub fn problems(&self) -> Vec<String> {
        let who = &self.participant;
        let mut out = Vec::new();
        if self.schema != LOG_SCHEMA {
            out.push(format!("{who}: unsupported log schema {}", self.schema));
        }
        let mut seen = HashSet::new();
        for t in &self.trials {
            if !seen.insert(&t.trial_id) {
                out.push(format!("{who}/{}: duplicate record", t.trial_id));
            }
            if t.submit_ts < t.display_ts {
                out.push(format!(
                    "{who}/{}: submitted at {} before display at {}",
                    t.trial_id, t.submit_ts, t.display_ts
                ));
            }
        }
        let mut rated = BTreeSet::new();
        for r in &self.ratings {
            let pair = (r.task, r.technique);
            if !rated.insert(pair) {
                out.push(format!("{who}: {} {} rated twice", r.task, r.technique));
            }
            for (name, v) in [("confidence", r.confidence), ("difficulty", r.difficulty)] {
                if !(1..=7).contains(&v) {
                    out.push(format!("{who}: {} {} {name} {v} outside 1..=7", r.task, r.technique));
                }
            }
        }
        out
    }
}

/// Log of a participant who answers every trial with its key, five
/// seconds per trial, and rates every task-technique pair.
pub fn perfect_log(keys: &Keys, participant: &str) -> ResultLog {
    let mut trials = Vec::new();
    let mut pairs = BTreeSet::new();
    for (i, k) in keys.trials.iter().filter(|k| k.participant == participant).enumerate() {
        let display_ts = 10_000 * i as u64;
        trials.push(TrialRecord {
            trial_id: k.spec.trial_id.clone(),
            answer: k.spec.key.key_answer(),
            display_ts,
            submit_ts: display_ts + 5_000,
            training_rounds: 1,
        });
        pairs.insert((k.spec.task, k.spec.technique));
    }
    ResultLog {
        schema: LOG_SCHEMA,
        participant: participant.to_string(),
        demographics: None,
        trials,
        ratings: pairs
            .into_iter()
            .map(|(task, technique)| Rating {
                task,
                technique,
                confidence: 7,
                difficulty: 1,
            })
            .collect(),
    }
}
