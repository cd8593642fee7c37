//! Study bundles, result logs and scoring for the compact time-series
//! techniques in `horizon-core`.

pub mod bundle;
pub mod config;
pub mod error;
pub mod latin;
pub mod log;
pub mod render_cmd;
pub mod score;

pub use bundle::{build_bundle, load_keys, load_manifest, plan_bundle, Bundle, Keys, Manifest};
pub use config::StudyConfig;
pub use error::{Result, StudyError};
pub use log::{perfect_log, ResultLog};
pub use score::{score_logs, Report};
