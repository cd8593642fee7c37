//! Scoring result logs against a bundle's keys.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use serde::Serialize;

use horizon_core::analysis::{score_trial, Outcome};
use horizon_core::{TaskId, Technique};

use crate::bundle::{KeyedTrial, Keys};
use crate::error::{Result, StudyError};
use crate::log::ResultLog;

/// One line of the metrics report. Participant rows hold the mean over a
/// participant's non-skipped repetitions; aggregate rows summarize those
/// per-participant observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub scope: &'static str,
    pub participant: String,
    pub task: TaskId,
    pub technique: Technique,
    pub observations: usize,
    pub skipped: usize,
    pub mean_time_s: Option<f64>,
    pub median_time_s: Option<f64>,
    pub mean_error: Option<f64>,
    pub median_error: Option<f64>,
    pub dtw_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.rows {
            out.serialize(r)?;
        }
        out.flush().map_err(|e| StudyError::Csv(e.into()))?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn participant_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.scope == "participant")
    }

    pub fn aggregate_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.scope == "aggregate")
    }
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn median(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    Some(if s.len() % 2 == 1 { s[m] } else { (s[m - 1] + s[m]) / 2.0 })
}

#[derive(Default)]
struct Cell {
    times: Vec<f64>,
    errors: Vec<f64>,
    gaps: Vec<f64>,
    skipped: usize,
}

/// Scores logs against keys. Any unknown trial, foreign record,
/// answer-type mismatch or malformed record fails the whole run with the
/// full list of offending records.
pub fn score_logs(keys: &Keys, logs: &[ResultLog]) -> Result<Report> {
    let by_id: HashMap<&str, &KeyedTrial> =
        keys.trials.iter().map(|k| (k.spec.trial_id.as_str(), k)).collect();
    let mut problems = Vec::new();
    let mut cells: BTreeMap<(String, TaskId, Technique), Cell> = BTreeMap::new();

    for log in logs {
        problems.extend(log.problems());
        for rec in &log.trials {
            let Some(k) = by_id.get(rec.trial_id.as_str()) else {
                problems.push(format!("{}/{}: unknown trial", log.participant, rec.trial_id));
                continue;
            };
            if k.participant != log.participant {
                problems.push(format!(
                    "{}/{}: trial belongs to {}",
                    log.participant, rec.trial_id, k.participant
                ));
                continue;
            }
            let cell = cells
                .entry((log.participant.clone(), k.spec.task, k.spec.technique))
                .or_default();
            match score_trial(&k.spec, &rec.answer) {
                Ok(Outcome::Skipped) => cell.skipped += 1,
                Ok(Outcome::Scored { error, dtw_gap }) => {
                    cell.errors.push(error);
                    cell.times.push(rec.seconds());
                    cell.gaps.extend(dtw_gap);
                }
                Err(e) => problems.push(format!("{}/{}: {e}", log.participant, rec.trial_id)),
            }
        }
    }
    if !problems.is_empty() {
        return Err(StudyError::Invalid(problems));
    }

    let mut rows = Vec::new();
    let mut pooled: BTreeMap<(TaskId, Technique), Cell> = BTreeMap::new();
    for ((participant, task, technique), c) in &cells {
        let row = ReportRow {
            scope: "participant",
            participant: participant.clone(),
            task: *task,
            technique: *technique,
            observations: c.errors.len(),
            skipped: c.skipped,
            mean_time_s: mean(&c.times),
            median_time_s: median(&c.times),
            mean_error: mean(&c.errors),
            median_error: median(&c.errors),
            dtw_gap: mean(&c.gaps),
        };
        let agg = pooled.entry((*task, *technique)).or_default();
        agg.skipped += c.skipped;
        agg.times.extend(row.mean_time_s);
        agg.errors.extend(row.mean_error);
        agg.gaps.extend(row.dtw_gap);
        rows.push(row);
    }
    for ((task, technique), c) in pooled {
        rows.push(ReportRow {
            scope: "aggregate",
            participant: "all".into(),
            task,
            technique,
            observations: c.errors.len(),
            skipped: c.skipped,
            mean_time_s: mean(&c.times),
            median_time_s: median(&c.times),
            mean_error: mean(&c.errors),
            median_error: median(&c.errors),
            dtw_gap: mean(&c.gaps),
        });
    }
    Ok(Report { rows })
}
