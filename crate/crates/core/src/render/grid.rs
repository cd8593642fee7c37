use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{slice_ranges, GridLayout, TimeSeries, ValueDomain};
use crate::task::{Markers, Technique};
use crate::techniques::{
    build_bhg, build_cbp, build_chg, build_hg, make_colormap, BandSliceConfig, BivariateColorMap,
    ColorMapFamily, Palette, Point, Primitive, Rgb, SceneGraph, Shape, SliceOrdering, Tag,
    MEDIAN_STROKE, MIN_MAX_FILL, QUARTILE_FILL,
};

/// Height of the strip below each graph row that holds markers.
pub const MARKER_STRIP_PX: u32 = 5;
pub const MARKER_WIDTH_PX: f64 = 5.0;
pub const LEGEND_SWATCH_PX: u32 = 8;
pub const HIGHLIGHT_COLOR: Rgb = Rgb([0xe6, 0x55, 0x0d]);
pub const RULE_COLOR: Rgb = Rgb([0x99, 0x99, 0x99]);

// z layers of overlays, above every cell primitive
const Z_RULE: i32 = 1 << 20;
const Z_MARKER: i32 = Z_RULE + 1;
const Z_HIGHLIGHT: i32 = Z_RULE + 2;
const Z_LEGEND: i32 = Z_RULE + 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkerSpec {
    pub markers: Markers,
    /// Color markers with the hue of the slice they fall into (collapsed
    /// techniques only).
    #[serde(default = "yes")]
    pub slice_colored: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridRenderSpec {
    pub cell_px: u32,
    pub gap_px: u32,
    pub marker: Option<MarkerSpec>,
    pub highlight: Option<usize>,
    pub quadrant_rules: bool,
    pub legend: bool,
}

impl Default for GridRenderSpec {
    fn default() -> Self {
        Self {
            cell_px: 24,
            gap_px: 4,
            marker: None,
            highlight: None,
            quadrant_rules: false,
            legend: false,
        }
    }
}

impl GridRenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.cell_px < 8 {
            return Err(Error::Config(format!("cell_px {} below 8", self.cell_px)));
        }
        Ok(())
    }

    fn row_height(&self) -> u32 {
        self.cell_px + if self.marker.is_some() { MARKER_STRIP_PX } else { 0 }
    }
}

/// Everything a technique needs besides the series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TechniqueConfig {
    pub bands: usize,
    pub slices: usize,
    /// Steps per compact boxplot interval.
    pub interval_len: usize,
    pub ordering: SliceOrdering,
    pub family: ColorMapFamily,
    pub domain: ValueDomain,
    pub palette: Palette,
}

impl Default for TechniqueConfig {
    fn default() -> Self {
        Self {
            bands: 3,
            slices: 3,
            interval_len: 3,
            ordering: SliceOrdering::default(),
            family: ColorMapFamily::default(),
            domain: ValueDomain::default(),
            palette: Palette::default(),
        }
    }
}

impl TechniqueConfig {
    pub fn band_slice(&self) -> BandSliceConfig {
        BandSliceConfig {
            bands: self.bands,
            slices: self.slices,
            domain: self.domain,
            ordering: self.ordering,
        }
    }

    pub fn colormap(&self) -> Result<BivariateColorMap> {
        make_colormap(self.family, self.bands, self.slices, &self.palette)
    }
}

/// Paint resources shared by every cell of a grid.
enum Paint {
    Sequential(Vec<Rgb>),
    Bivariate(BivariateColorMap),
    Boxplot,
}

impl Paint {
    fn for_technique(technique: Technique, cfg: &TechniqueConfig) -> Result<Self> {
        Ok(match technique {
            Technique::Cbp => Paint::Boxplot,
            Technique::Hg => Paint::Sequential(cfg.palette.sequential_colors(cfg.bands)),
            Technique::Chg | Technique::Bhg => Paint::Bivariate(cfg.colormap()?),
        })
    }
}

fn draw_cell(
    s: &TimeSeries,
    technique: Technique,
    cfg: &TechniqueConfig,
    paint: &Paint,
    cell_px: u32,
) -> Result<SceneGraph> {
    match (technique, paint) {
        (Technique::Cbp, _) => build_cbp(s, cfg.interval_len, &cfg.domain, cell_px, cell_px),
        (Technique::Hg, Paint::Sequential(colors)) => {
            build_hg(s, cfg.bands, &cfg.domain, colors, cell_px, cell_px)
        }
        (Technique::Chg, Paint::Bivariate(cmap)) => build_chg(
            s,
            &cfg.band_slice(),
            cmap,
            cell_px * cfg.slices as u32,
            cell_px * cfg.bands as u32,
        ),
        (Technique::Bhg, Paint::Bivariate(cmap)) => build_bhg(
            s,
            &cfg.band_slice(),
            cmap,
            cell_px * cfg.slices as u32,
            cell_px * cfg.bands as u32,
        ),
        _ => unreachable!("paint matches technique"),
    }
}

/// Scene of a single graph at `cell_px x cell_px`. Collapsed techniques are
/// built from a line graph of `cell_px * slices` by `cell_px * bands`.
pub fn cell_scene(
    s: &TimeSeries,
    technique: Technique,
    cfg: &TechniqueConfig,
    cell_px: u32,
) -> Result<SceneGraph> {
    let paint = Paint::for_technique(technique, cfg)?;
    draw_cell(s, technique, cfg, &paint, cell_px)?.finish()
}

/// Canvas size of a rendered grid.
pub fn grid_canvas_size(
    rows: usize,
    cols: usize,
    technique: Technique,
    cfg: &TechniqueConfig,
    spec: &GridRenderSpec,
) -> (u32, u32) {
    let (rows, cols) = (rows as u32, cols as u32);
    let gw = cols * spec.cell_px + cols.saturating_sub(1) * spec.gap_px;
    let gh = rows * spec.row_height() + rows.saturating_sub(1) * spec.gap_px;
    if !spec.legend {
        return (gw, gh);
    }
    let (lc, lr) = legend_dims(technique, cfg);
    let lw = spec.gap_px.max(4) + lc * LEGEND_SWATCH_PX;
    (gw + lw, gh.max(lr * LEGEND_SWATCH_PX))
}

/// Legend swatch columns and rows.
fn legend_dims(technique: Technique, cfg: &TechniqueConfig) -> (u32, u32) {
    match technique {
        Technique::Cbp => (1, 3),
        Technique::Hg => (1, cfg.bands as u32),
        Technique::Chg | Technique::Bhg => (cfg.slices as u32, cfg.bands as u32),
    }
}

/// Pixel column, relative to the cell, under which a marker for `step` sits.
pub fn marker_column(
    step: usize,
    steps: usize,
    technique: Technique,
    cfg: &TechniqueConfig,
    cell_px: u32,
) -> Result<(u32, Option<usize>)> {
    if step >= steps {
        return Err(Error::Range(format!("marker step {step} outside 0..{steps}")));
    }
    let span = (cell_px - 1) as f64;
    let frac = |j: usize, n: usize| if n <= 1 { 0.0 } else { j as f64 / (n - 1) as f64 };
    Ok(if technique.is_collapsed() {
        let ranges = slice_ranges(steps, cfg.slices)?;
        let (slice, r) = ranges
            .iter()
            .enumerate()
            .find(|(_, r)| r.contains(&step))
            .expect("slices cover every step");
        let col = (frac(step - r.start, r.len()) * span).round() as u32;
        (col, Some(slice))
    } else {
        ((frac(step, steps) * span).round() as u32, None)
    })
}

/// Composes a grid of graphs with optional markers, a highlight frame,
/// quadrant separators and a color legend.
pub fn render_grid(
    grid: &GridLayout,
    technique: Technique,
    cfg: &TechniqueConfig,
    spec: &GridRenderSpec,
) -> Result<SceneGraph> {
    spec.validate()?;
    let (w, h) = grid_canvas_size(grid.rows(), grid.cols(), technique, cfg, spec);
    let (wf, hf) = (w as f64, h as f64);
    let paint = Paint::for_technique(technique, cfg)?;
    let pitch_x = (spec.cell_px + spec.gap_px) as f64;
    let pitch_y = (spec.row_height() + spec.gap_px) as f64;
    let cell = spec.cell_px as f64;
    let origin = |i: usize| {
        let (r, c) = (i / grid.cols(), i % grid.cols());
        (c as f64 * pitch_x, r as f64 * pitch_y)
    };

    let mut scene = SceneGraph::new(w, h);
    for (i, s) in grid.cells().iter().enumerate() {
        let (x, y) = origin(i);
        scene.place(&draw_cell(s, technique, cfg, &paint, spec.cell_px)?, x, y);
    }

    if let Some(m) = &spec.marker {
        for i in 0..grid.len() {
            let Some(step) = m.markers.step_for(i) else {
                return Err(Error::Range(format!("no marker step for cell {i}")));
            };
            let (col, slice) = marker_column(step, grid.steps(), technique, cfg, spec.cell_px)?;
            let color = match (&paint, slice) {
                (Paint::Bivariate(cmap), Some(s)) if m.slice_colored => cmap.slice_hue(s),
                _ => Rgb::NEUTRAL_DARK,
            };
            let (x, y) = origin(i);
            let apex_x = x + col as f64 + 0.5;
            let top = y + cell;
            let half = MARKER_WIDTH_PX / 2.0;
            let base_y = top + MARKER_STRIP_PX as f64;
            scene.push(
                Primitive::new(
                    Z_MARKER,
                    color,
                    Shape::Triangle([
                        Point::new(apex_x, top),
                        Point::new((apex_x - half).max(0.0), base_y),
                        Point::new((apex_x + half).min(wf), base_y),
                    ]),
                )
                .tagged(Tag::Marker),
            );
        }
    }

    if let Some(idx) = spec.highlight {
        if idx >= grid.len() {
            return Err(Error::Range(format!(
                "highlight index {idx} outside grid of {}",
                grid.len()
            )));
        }
        let (x, y) = origin(idx);
        let x0 = (x - 1.0).max(1.0);
        let y0 = (y - 1.0).max(1.0);
        let x1 = (x + cell + 1.0).min(wf - 1.0);
        let y1 = (y + spec.row_height() as f64 + 1.0).min(hf - 1.0);
        scene.push(
            Primitive::new(
                Z_HIGHLIGHT,
                HIGHLIGHT_COLOR,
                Shape::Rect {
                    x: x0,
                    y: y0,
                    w: x1 - x0,
                    h: y1 - y0,
                    stroke: Some(2.0),
                },
            )
            .tagged(Tag::Highlight),
        );
    }

    if spec.quadrant_rules {
        let q = grid
            .quadrant_side()
            .ok_or_else(|| Error::Config("quadrant rules need a quadrant side".into()))?;
        let grid_w = grid.cols() as f64 * pitch_x - spec.gap_px as f64;
        let grid_h = grid.rows() as f64 * pitch_y - spec.gap_px as f64;
        let gap = spec.gap_px as f64;
        for c in (q..grid.cols()).step_by(q) {
            let x = c as f64 * pitch_x - gap / 2.0;
            scene.push(
                Primitive::new(
                    Z_RULE,
                    RULE_COLOR,
                    Shape::Rect { x: x - 0.5, y: 0.0, w: 1.0, h: grid_h, stroke: None },
                )
                .tagged(Tag::QuadrantRule),
            );
        }
        for r in (q..grid.rows()).step_by(q) {
            let y = r as f64 * pitch_y - gap / 2.0;
            scene.push(
                Primitive::new(
                    Z_RULE,
                    RULE_COLOR,
                    Shape::Rect { x: 0.0, y: y - 0.5, w: grid_w, h: 1.0, stroke: None },
                )
                .tagged(Tag::QuadrantRule),
            );
        }
    }

    if spec.legend {
        let gw = grid.cols() as f64 * pitch_x - spec.gap_px as f64;
        let left = gw + spec.gap_px.max(4) as f64;
        let sw = LEGEND_SWATCH_PX as f64;
        let mut swatch = |col: usize, row: usize, color: Rgb| {
            scene.push(
                Primitive::new(
                    Z_LEGEND,
                    color,
                    Shape::Rect {
                        x: left + col as f64 * sw,
                        y: row as f64 * sw,
                        w: sw,
                        h: sw,
                        stroke: None,
                    },
                )
                .tagged(Tag::Legend),
            );
        };
        match &paint {
            Paint::Boxplot => {
                for (row, c) in [MEDIAN_STROKE, QUARTILE_FILL, MIN_MAX_FILL].into_iter().enumerate() {
                    swatch(0, row, c);
                }
            }
            // highest band on top
            Paint::Sequential(colors) => {
                for (b, &c) in colors.iter().enumerate().take(cfg.bands) {
                    swatch(0, cfg.bands - 1 - b, c);
                }
            }
            Paint::Bivariate(cmap) => {
                for b in 0..cfg.bands {
                    for s in 0..cfg.slices {
                        swatch(s, cfg.bands - 1 - b, cmap.get(b, s));
                    }
                }
            }
        }
    }

    scene.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TimeSeries;

    fn grid(side: usize) -> GridLayout {
        let cells = (0..side * side)
            .map(|i| TimeSeries::new((0..72).map(|t| ((t + i) % 100) as f64).collect()).unwrap())
            .collect();
        GridLayout::square(side, cells, None).unwrap()
    }

    #[test]
    fn canvas_arithmetic() {
        let cfg = TechniqueConfig::default();
        let mut spec = GridRenderSpec::default();
        let g = grid(3);
        let s = render_grid(&g, Technique::Hg, &cfg, &spec).unwrap();
        assert_eq!((s.width_px, s.height_px), (80, 80));
        spec.marker = Some(MarkerSpec {
            markers: Markers::Shared { step: 40 },
            slice_colored: true,
        });
        let s = render_grid(&g, Technique::Hg, &cfg, &spec).unwrap();
        assert_eq!((s.width_px, s.height_px), (80, 80 + 3 * MARKER_STRIP_PX));
        spec.legend = true;
        let s = render_grid(&g, Technique::Chg, &cfg, &spec).unwrap();
        assert_eq!((s.width_px, s.height_px), (80 + 4 + 3 * 8, 95));
    }

    #[test]
    fn marker_takes_slice_hue() {
        let cfg = TechniqueConfig::default();
        let spec = GridRenderSpec {
            marker: Some(MarkerSpec {
                markers: Markers::Shared { step: 40 },
                slice_colored: true,
            }),
            ..Default::default()
        };
        let s = render_grid(&grid(3), Technique::Chg, &cfg, &spec).unwrap();
        let hue = cfg.colormap().unwrap().slice_hue(1);
        let markers: Vec<_> = s.tagged(|t| *t == Tag::Marker).collect();
        assert_eq!(markers.len(), 9);
        assert!(markers.iter().all(|p| p.color == hue));
        let s = render_grid(&grid(3), Technique::Cbp, &cfg, &spec).unwrap();
        assert!(s.tagged(|t| *t == Tag::Marker).all(|p| p.color == Rgb::NEUTRAL_DARK));
    }

    #[test]
    fn marker_out_of_range() {
        let spec = GridRenderSpec {
            marker: Some(MarkerSpec {
                markers: Markers::Shared { step: 72 },
                slice_colored: true,
            }),
            ..Default::default()
        };
        let err = render_grid(&grid(3), Technique::Hg, &TechniqueConfig::default(), &spec);
        assert!(matches!(err, Err(Error::Range(_))));
    }

    #[test]
    fn highlight_frames_center_cell() {
        let spec = GridRenderSpec {
            highlight: Some(4),
            ..Default::default()
        };
        let s = render_grid(&grid(3), Technique::Hg, &TechniqueConfig::default(), &spec).unwrap();
        let frame: Vec<_> = s.tagged(|t| *t == Tag::Highlight).collect();
        assert_eq!(frame.len(), 1);
        match frame[0].shape {
            Shape::Rect { x, y, w, h, .. } => {
                assert_eq!((x, y, w, h), (27.0, 27.0, 26.0, 26.0));
            }
            _ => panic!("highlight is a rect"),
        }
    }

    #[test]
    fn quadrant_rules_sit_in_gaps() {
        let cells = (0..81)
            .map(|_| TimeSeries::new(vec![50.0; 72]).unwrap())
            .collect();
        let g = GridLayout::square(9, cells, Some(3)).unwrap();
        let spec = GridRenderSpec {
            quadrant_rules: true,
            ..Default::default()
        };
        let s = render_grid(&g, Technique::Cbp, &TechniqueConfig::default(), &spec).unwrap();
        assert_eq!(s.tagged(|t| *t == Tag::QuadrantRule).count(), 4);
    }
}
