//! SVG and PNG output of scenes and composed stimulus grids.

mod grid;
mod raster;
mod svg;

pub use grid::{
    cell_scene, grid_canvas_size, marker_column, render_grid, GridRenderSpec, MarkerSpec,
    TechniqueConfig, HIGHLIGHT_COLOR, LEGEND_SWATCH_PX, MARKER_STRIP_PX, MARKER_WIDTH_PX,
    RULE_COLOR,
};
pub use raster::{rasterize, rasterize_with_owners, OwnerMap, Raster};
pub use svg::emit_svg;
