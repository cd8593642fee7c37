//! Renderer-independent scene construction for the four compact
//! techniques.

mod bands;
mod bhg;
mod cbp;
mod chg;
mod colormap;
mod hg;
mod scene;

pub use bands::{band_decompose, collapse_cells, BandResidual, BandSliceConfig, CellCurve, SliceOrdering};
pub use bhg::{braid, build_bhg, split_positions, CellSegment, MERGE_EPS};
pub use cbp::{build_cbp, MEDIAN_STROKE, MIN_MAX_FILL, QUARTILE_FILL};
pub use chg::{build_chg, collapsed_size};
pub use colormap::{make_colormap, BivariateColorMap, ColorMapFamily, Palette, Ramp};
pub use hg::{build_hg, hg_height};
pub use scene::{CellPart, Point, Primitive, Rgb, SceneGraph, Shape, StatLayer, Tag};
