//! Compact time-series glyphs and the synthetic study machinery around
//! them.
//!
//! The crate renders a series as a compact boxplot, a horizon graph, a
//! collapsed horizon graph or a braided collapsed horizon graph. Every
//! technique produces a renderer-independent [`SceneGraph`], which the
//! [`render`] module turns into SVG or PNG. The [`datagen`] and
//! [`analysis`] modules generate task datasets and compute answer keys
//! and scores.

pub mod analysis;
pub mod datagen;
pub mod error;
pub mod export;
pub mod model;
pub mod render;
pub mod task;
pub mod techniques;

pub use error::{Error, Result};
pub use model::{
    clock_label, GridLayout, QuadrantId, TimeDomain, TimeInterval, TimeSeries, ValueDomain,
};
pub use task::{Answer, AnswerKey, AnswerType, Markers, TaskId, TaskParams, Technique, TrialSpec};
pub use techniques::{Primitive, Rgb, SceneGraph, Shape};
