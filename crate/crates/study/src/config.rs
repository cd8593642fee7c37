use std::path::Path;

use serde::{Deserialize, Serialize};

use horizon_core::datagen::{GenConfig, TaskSettings};
use horizon_core::render::TechniqueConfig;

use crate::error::{io_err, json_err, Result};

/// Everything that shapes a bundle apart from the seed and the number of
/// participants. Missing fields take their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StudyConfig {
    pub generation: GenConfig,
    pub tasks: TaskSettings,
    pub technique: TechniqueConfig,
    pub cell_px: u32,
    pub gap_px: u32,
    pub legend: bool,
    /// Candidate datasets generated per repetition.
    pub candidates: usize,
    /// Also write PNG stimuli next to the SVGs.
    pub png: bool,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            generation: GenConfig::default(),
            tasks: TaskSettings::default(),
            technique: TechniqueConfig::default(),
            cell_px: 24,
            gap_px: 4,
            legend: false,
            candidates: 3,
            png: true,
        }
    }
}

impl StudyConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        serde_json::from_str(&text).map_err(json_err(path))
    }
}
