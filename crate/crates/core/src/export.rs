//! Plain-text dataset files: one CSV row per series plus a JSON sidecar.

use serde::{Deserialize, Serialize};

use crate::datagen::{GenConfig, TaskDataset};
use crate::error::{Error, Result};
use crate::model::{GridLayout, TimeSeries};
use crate::task::TaskId;

pub const DATASET_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub schema: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskId>,
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrant_side: Option<usize>,
    pub config: GenConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempts: Option<usize>,
}

impl DatasetManifest {
    pub fn for_grid(grid: &GridLayout, cfg: &GenConfig) -> Self {
        Self {
            schema: DATASET_SCHEMA,
            seed: cfg.seed,
            task: None,
            rows: grid.rows(),
            cols: grid.cols(),
            quadrant_side: grid.quadrant_side(),
            config: cfg.clone(),
            attempts: None,
        }
    }

    pub fn for_dataset(ds: &TaskDataset, cfg: &GenConfig) -> Self {
        Self {
            task: Some(ds.task),
            attempts: Some(ds.attempts),
            ..Self::for_grid(&ds.grid, cfg)
        }
    }
}

/// Series in cell order, values separated by commas. Uses the shortest
/// representation that round-trips.
pub fn grid_to_csv(grid: &GridLayout) -> String {
    let mut out = String::new();
    for s in grid.cells() {
        let row: Vec<String> = s.values().iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn grid_from_csv(csv: &str, manifest: &DatasetManifest) -> Result<GridLayout> {
    let cells = csv
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            let values = line
                .split(',')
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Validation(format!("row {i}: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            TimeSeries::new(values)
        })
        .collect::<Result<Vec<_>>>()?;
    GridLayout::new(manifest.rows, manifest.cols, cells, manifest.quadrant_side)
}

pub fn manifest_to_json(m: &DatasetManifest) -> String {
    serde_json::to_string_pretty(m).expect("manifest serializes")
}

pub fn manifest_from_json(s: &str) -> Result<DatasetManifest> {
    let m: DatasetManifest =
        serde_json::from_str(s).map_err(|e| Error::Validation(format!("dataset manifest: {e}")))?;
    if m.schema != DATASET_SCHEMA {
        return Err(Error::Validation(format!("unsupported dataset schema {}", m.schema)));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{layout_grid, stream_rng};

    #[test]
    fn round_trip() {
        let cfg = GenConfig {
            seed: 11,
            ..Default::default()
        };
        let grid = layout_grid(3, 3, None, &cfg, &mut stream_rng(11, 0)).unwrap();
        let m = DatasetManifest::for_grid(&grid, &cfg);
        let back = grid_from_csv(&grid_to_csv(&grid), &manifest_from_json(&manifest_to_json(&m)).unwrap())
            .unwrap();
        assert_eq!(back, grid);
    }

    #[test]
    fn rejects_garbage() {
        let m = DatasetManifest::for_grid(
            &GridLayout::new(1, 1, vec![TimeSeries::new(vec![1.0, 2.0]).unwrap()], None).unwrap(),
            &GenConfig::default(),
        );
        assert!(grid_from_csv("1,x\n", &m).is_err());
        assert!(manifest_from_json("{\"schema\":2}").is_err());
    }
}
