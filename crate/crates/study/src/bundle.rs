//! Study bundles: stimuli, dataset files, a participant-visible manifest
//! and a separate keys file.
//!
//! Every random draw comes from `stream_rng(seed, stream)` with streams
//! assigned as follows, so conditions can be generated in any order:
//!
//! * candidate `c` of repetition `r` of (task, technique):
//!   `1 + ((task * 4 + technique) * 3 + r) * candidates + c`
//! * training dataset of (task, technique): `TRAINING_STREAM + task * 4 + technique`
//! * dataset draws of participant `p`: `DRAW_STREAM + p`

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use horizon_core::datagen::{
    generate_task_dataset, stream_rng, GenConfig, IntervalKind, TaskDataset, TaskSettings,
};
use horizon_core::export::{grid_to_csv, manifest_to_json, DatasetManifest};
use horizon_core::render::{emit_svg, rasterize, render_grid, GridRenderSpec, MarkerSpec, TechniqueConfig};
use horizon_core::{Answer, AnswerType, SceneGraph, TaskId, TaskParams, Technique, TrialSpec};

use crate::config::StudyConfig;
use crate::error::{io_err, json_err, Result, StudyError};
use crate::latin::technique_order;

pub const SCHEMA: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";
pub const KEYS_FILE: &str = "keys.json";

const TRAINING_STREAM: u64 = 1 << 32;
const DRAW_STREAM: u64 = 1 << 40;

/// Files belonging to one rendered dataset, relative to the bundle root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StimulusFiles {
    pub svg: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub png: Option<String>,
    pub dataset: String,
    pub width_px: u32,
    pub height_px: u32,
}

/// A trial as the participant sees it: no answer key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialView {
    pub trial_id: String,
    pub task: TaskId,
    pub technique: Technique,
    pub repetition: usize,
    pub dataset: String,
    pub drawn: usize,
    pub params: TaskParams,
    pub answer_type: AnswerType,
    pub stimulus: StimulusFiles,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticipantPlan {
    pub id: String,
    pub technique_order: Vec<Technique>,
    pub trials: Vec<TrialView>,
}

/// Unscored practice trial. Its solution is revealed after answering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingTrial {
    pub task: TaskId,
    pub technique: Technique,
    pub params: TaskParams,
    pub answer_type: AnswerType,
    pub solution: Answer,
    pub stimulus: StimulusFiles,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: u32,
    pub seed: u64,
    pub participant_count: usize,
    pub config: StudyConfig,
    pub participants: Vec<ParticipantPlan>,
    pub training: Vec<TrainingTrial>,
    pub explanations: BTreeMap<Technique, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyedTrial {
    pub participant: String,
    #[serde(flatten)]
    pub spec: TrialSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Keys {
    pub schema: u32,
    pub seed: u64,
    pub trials: Vec<KeyedTrial>,
}

/// An in-memory bundle. `files` maps relative paths to contents.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub manifest: Manifest,
    pub keys: Keys,
    pub files: BTreeMap<String, Vec<u8>>,
}

/// One generated and rendered dataset.
struct Rendered {
    dataset: TaskDataset,
    stimulus: StimulusFiles,
    files: Vec<(String, Vec<u8>)>,
}

fn task_index(task: TaskId) -> u64 {
    TaskId::ALL.iter().position(|t| *t == task).expect("listed") as u64
}

fn technique_index(t: Technique) -> u64 {
    Technique::ALL.iter().position(|x| *x == t).expect("listed") as u64
}

pub fn candidate_stream(task: TaskId, technique: Technique, repetition: usize, candidate: usize, candidates: usize) -> u64 {
    1 + ((task_index(task) * 4 + technique_index(technique)) * 3 + repetition as u64) * candidates as u64
        + candidate as u64
}

/// Interval kind queried by a synoptic-slope repetition.
pub fn t08_interval(repetition: usize) -> IntervalKind {
    match repetition % 3 {
        0 => IntervalKind::Full,
        1 => IntervalKind::SliceAligned,
        _ => IntervalKind::Arbitrary,
    }
}

/// Scored conditions of one participant, in presentation order: techniques
/// as given, tasks in fixed order within a technique.
pub fn conditions(order: &[Technique]) -> Vec<(TaskId, Technique, usize)> {
    let mut out = Vec::new();
    for &tech in order {
        for task in TaskId::ALL {
            if task.techniques().contains(&tech) {
                out.extend((0..task.repetitions()).map(|r| (task, tech, r)));
            }
        }
    }
    out
}

fn explanation(t: Technique) -> &'static str {
    match t {
        Technique::Cbp => "Compact boxplot: every three time steps are summarized by their minimum, quartiles and median.",
        Technique::Hg => "Horizon graph: the value range is cut into bands that are overlaid, darker shades mark higher bands.",
        Technique::Chg => "Collapsed horizon graph: bands and time slices are overlaid. Hue marks the slice, shade marks the band. Outlines show covered slices.",
        Technique::Bhg => "Braided collapsed horizon graph: like the collapsed horizon graph, but overlapping areas are interleaved so lower values are always in front.",
    }
}

fn grid_spec(cfg: &StudyConfig, params: &TaskParams) -> GridRenderSpec {
    GridRenderSpec {
        cell_px: cfg.cell_px,
        gap_px: cfg.gap_px,
        marker: params.markers.clone().map(|markers| MarkerSpec {
            markers,
            slice_colored: true,
        }),
        highlight: params.highlighted,
        quadrant_rules: params.quadrant_side.is_some(),
        legend: cfg.legend,
    }
}

fn technique_config(cfg: &StudyConfig) -> TechniqueConfig {
    TechniqueConfig {
        domain: cfg.generation.domain,
        ..cfg.technique.clone()
    }
}

/// Renders the stimulus of a generated dataset.
pub fn stimulus_scene(cfg: &StudyConfig, technique: Technique, ds: &TaskDataset) -> Result<SceneGraph> {
    Ok(render_grid(&ds.grid, technique, &technique_config(cfg), &grid_spec(cfg, &ds.params))?)
}

fn generate_and_render(
    cfg: &StudyConfig,
    gen: &GenConfig,
    task: TaskId,
    technique: Technique,
    repetition: usize,
    stream: u64,
    stem: String,
) -> Result<Rendered> {
    let settings = TaskSettings {
        t08_interval: t08_interval(repetition),
        ..cfg.tasks.clone()
    };
    let mut rng = stream_rng(gen.seed, stream);
    let dataset = generate_task_dataset(task, gen, &settings, &mut rng).map_err(|source| StudyError::Task {
        task: task.to_string(),
        source,
    })?;
    let scene = stimulus_scene(cfg, technique, &dataset)?;
    let svg_path = format!("stimuli/{stem}.svg");
    let csv_path = format!("datasets/{stem}.csv");
    let mut files = vec![
        (svg_path.clone(), emit_svg(&scene).into_bytes()),
        (csv_path.clone(), grid_to_csv(&dataset.grid).into_bytes()),
        (
            format!("datasets/{stem}.json"),
            manifest_to_json(&DatasetManifest::for_dataset(&dataset, gen)).into_bytes(),
        ),
    ];
    let png = if cfg.png {
        let path = format!("stimuli/{stem}.png");
        files.push((path.clone(), rasterize(&scene, 1)?.to_png()?));
        Some(path)
    } else {
        None
    };
    Ok(Rendered {
        dataset,
        stimulus: StimulusFiles {
            svg: svg_path,
            png,
            dataset: csv_path,
            width_px: scene.width_px,
            height_px: scene.height_px,
        },
        files,
    })
}

/// Generates and renders a whole bundle in memory.
pub fn plan_bundle(cfg: &StudyConfig, seed: u64, participants: usize) -> Result<Bundle> {
    if cfg.candidates == 0 {
        return Err(horizon_core::Error::Config("at least one candidate dataset is needed".into()).into());
    }
    let gen = GenConfig {
        seed,
        ..cfg.generation.clone()
    };
    gen.validate()?;
    let n = cfg.candidates;

    // every (condition, candidate), rendered in parallel
    let all_conditions = conditions(&Technique::ALL);
    let jobs: Vec<(TaskId, Technique, usize, usize)> = all_conditions
        .iter()
        .flat_map(|&(task, tech, rep)| (0..n).map(move |c| (task, tech, rep, c)))
        .collect();
    let rendered: Vec<Rendered> = jobs
        .par_iter()
        .map(|&(task, tech, rep, c)| {
            generate_and_render(
                cfg,
                &gen,
                task,
                tech,
                rep,
                candidate_stream(task, tech, rep, c, n),
                format!("{task}_{rep}_{tech}_d{c}"),
            )
        })
        .collect::<Result<_>>()?;
    let index: BTreeMap<(TaskId, Technique, usize, usize), usize> =
        jobs.iter().enumerate().map(|(i, j)| (*j, i)).collect();

    let training_jobs: Vec<(TaskId, Technique)> = Technique::ALL
        .iter()
        .flat_map(|&tech| {
            TaskId::ALL
                .into_iter()
                .filter(move |t| t.techniques().contains(&tech))
                .map(move |t| (t, tech))
        })
        .collect();
    let training_rendered: Vec<Rendered> = training_jobs
        .par_iter()
        .map(|&(task, tech)| {
            generate_and_render(
                cfg,
                &gen,
                task,
                tech,
                0,
                TRAINING_STREAM + task_index(task) * 4 + technique_index(tech),
                format!("training_{task}_{tech}"),
            )
        })
        .collect::<Result<_>>()?;

    let mut plans = Vec::with_capacity(participants);
    let mut keyed = Vec::new();
    for p in 0..participants {
        let id = format!("P{:03}", p + 1);
        let order = technique_order(p);
        let mut rng = stream_rng(seed, DRAW_STREAM + p as u64);
        let mut trials = Vec::new();
        for (task, tech, rep) in conditions(&order) {
            let drawn = rng.random_range(0..n);
            let r = &rendered[index[&(task, tech, rep, drawn)]];
            let trial_id = format!("{id}-{task}-{tech}-{rep}");
            let dataset = format!("{task}_{rep}_{tech}_d{drawn}");
            trials.push(TrialView {
                trial_id: trial_id.clone(),
                task,
                technique: tech,
                repetition: rep,
                dataset: dataset.clone(),
                drawn,
                params: r.dataset.params.clone(),
                answer_type: task.answer_type(),
                stimulus: r.stimulus.clone(),
            });
            keyed.push(KeyedTrial {
                participant: id.clone(),
                spec: TrialSpec {
                    trial_id,
                    task,
                    technique: tech,
                    repetition: rep,
                    dataset,
                    drawn,
                    params: r.dataset.params.clone(),
                    answer_type: task.answer_type(),
                    key: r.dataset.key.clone(),
                },
            });
        }
        plans.push(ParticipantPlan {
            id,
            technique_order: order.to_vec(),
            trials,
        });
    }

    let training = training_jobs
        .iter()
        .zip(&training_rendered)
        .map(|(&(task, technique), r)| TrainingTrial {
            task,
            technique,
            params: r.dataset.params.clone(),
            answer_type: task.answer_type(),
            solution: r.dataset.key.key_answer(),
            stimulus: r.stimulus.clone(),
        })
        .collect();

    let mut files = BTreeMap::new();
    for r in rendered.into_iter().chain(training_rendered) {
        files.extend(r.files);
    }

    Ok(Bundle {
        manifest: Manifest {
            schema: SCHEMA,
            seed,
            participant_count: participants,
            config: cfg.clone(),
            participants: plans,
            training,
            explanations: Technique::ALL.iter().map(|&t| (t, explanation(t).to_string())).collect(),
        },
        keys: Keys {
            schema: SCHEMA,
            seed,
            trials: keyed,
        },
        files,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    std::fs::write(path, bytes).map_err(io_err(path))
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("bundle documents serialize");
    s.push(b'\n');
    s
}

/// Writes a bundle below `out`.
pub fn write_bundle(bundle: &Bundle, out: &Path) -> Result<()> {
    for (rel, bytes) in &bundle.files {
        write_file(&out.join(rel), bytes)?;
    }
    write_file(&out.join(MANIFEST_FILE), &to_json(&bundle.manifest))?;
    write_file(&out.join(KEYS_FILE), &to_json(&bundle.keys))
}

pub fn build_bundle(cfg: &StudyConfig, seed: u64, participants: usize, out: &Path) -> Result<Bundle> {
    let bundle = plan_bundle(cfg, seed, participants)?;
    write_bundle(&bundle, out)?;
    Ok(bundle)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(json_err(path))
}

fn check_schema(found: u32, what: &Path) -> Result<()> {
    if found != SCHEMA {
        return Err(StudyError::Invalid(vec![format!(
            "{}: unsupported schema {found}",
            what.display()
        )]));
    }
    Ok(())
}

pub fn load_manifest(bundle_dir: &Path) -> Result<Manifest> {
    let path = bundle_dir.join(MANIFEST_FILE);
    let m: Manifest = read_json(&path)?;
    check_schema(m.schema, &path)?;
    Ok(m)
}

pub fn load_keys(bundle_dir: &Path) -> Result<Keys> {
    let path = bundle_dir.join(KEYS_FILE);
    let k: Keys = read_json(&path)?;
    check_schema(k.schema, &path)?;
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for (task, tech, rep) in conditions(&Technique::ALL) {
            for c in 0..3 {
                assert!(seen.insert(candidate_stream(task, tech, rep, c, 3)));
            }
        }
        assert!(seen.iter().all(|s| *s < TRAINING_STREAM));
    }

    #[test]
    fn conditions_follow_order() {
        let order = technique_order(1);
        let c = conditions(&order);
        assert_eq!(c.len(), 78);
        assert_eq!(c[0], (TaskId::T01, order[0], 0));
        let firsts: Vec<_> = c.iter().map(|x| x.1).collect();
        let mut dedup = firsts.clone();
        dedup.dedup();
        assert_eq!(dedup, order.to_vec());
    }

    #[test]
    fn t08_repetitions_cover_interval_kinds() {
        assert_eq!(
            (0..3).map(t08_interval).collect::<Vec<_>>(),
            vec![IntervalKind::Full, IntervalKind::SliceAligned, IntervalKind::Arbitrary]
        );
    }
}
