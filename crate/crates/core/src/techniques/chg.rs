use crate::error::{Error, Result};
use crate::model::TimeSeries;

use super::bands::{collapse_cells, BandSliceConfig, CellCurve};
use super::colormap::BivariateColorMap;
use super::scene::{CellPart, Point, Primitive, SceneGraph, Shape, Tag};

/// Footprint of a collapsed graph replacing a `line_w x line_h` line graph.
pub fn collapsed_size(line_w: u32, line_h: u32, cfg: &BandSliceConfig) -> (u32, u32) {
    (line_w.div_ceil(cfg.slices as u32), line_h.div_ceil(cfg.bands as u32))
}

pub(crate) fn check_cmap(cmap: &BivariateColorMap, cfg: &BandSliceConfig) -> Result<()> {
    if cmap.bands() < cfg.bands || cmap.slices() < cfg.slices {
        return Err(Error::Config(format!(
            "color map is {}x{}, need {}x{}",
            cmap.bands(),
            cmap.slices(),
            cfg.bands,
            cfg.slices
        )));
    }
    Ok(())
}

/// Residual to pixel row.
pub(crate) fn y_of(r: f64, band_h: f64, height: f64) -> f64 {
    height * (1.0 - r / band_h)
}

/// Filled area under a cell curve.
pub(crate) fn area(points: &[(f64, f64)], band_h: f64, height: f64) -> Vec<Point> {
    let mut pts = Vec::with_capacity(points.len() + 2);
    pts.push(Point::new(points[0].0, height));
    pts.extend(points.iter().map(|&(x, r)| Point::new(x, y_of(r, band_h, height))));
    pts.push(Point::new(points[points.len() - 1].0, height));
    pts
}

/// Runs of the curve with positive residual, widened by one vertex on each
/// side so the outline meets the baseline.
fn contour_runs(cell: &CellCurve) -> Vec<std::ops::Range<usize>> {
    let n = cell.values.len();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < n {
        if cell.values[i] > 0.0 {
            let start = i.saturating_sub(1);
            while i < n && cell.values[i] > 0.0 {
                i += 1;
            }
            runs.push(start..(i + 1).min(n));
        } else {
            i += 1;
        }
    }
    runs
}

/// Collapsed horizon graph.
///
/// Cells are stacked with `z = front_rank(slice) * bands + band`, so the
/// front slice occludes the others completely and, inside one slice,
/// higher bands cover lower ones. A second pass draws each cell's upper
/// outline above all fills so occluded cells stay readable.
pub fn build_chg(
    s: &TimeSeries,
    cfg: &BandSliceConfig,
    cmap: &BivariateColorMap,
    line_w: u32,
    line_h: u32,
) -> Result<SceneGraph> {
    check_cmap(cmap, cfg)?;
    let (w, h) = collapsed_size(line_w, line_h, cfg);
    let (wf, hf) = (w as f64, h as f64);
    let band_h = cfg.band_height();
    let cells = collapse_cells(s, cfg, wf)?;
    let fills = (cfg.bands * cfg.slices) as i32;
    let mut scene = SceneGraph::new(w, h);
    for cell in &cells {
        let rank = cfg.ordering.front_rank(cell.slice, cfg.slices);
        let z = (rank * cfg.bands + cell.band) as i32;
        let color = cmap.get(cell.band, cell.slice);
        let pts: Vec<(f64, f64)> = cell.xs.iter().copied().zip(cell.values.iter().copied()).collect();
        scene.push(
            Primitive::new(z, color, Shape::FilledPolygon(area(&pts, band_h, hf))).tagged(Tag::Cell {
                band: cell.band,
                slice: cell.slice,
                part: CellPart::Fill,
            }),
        );
        for run in contour_runs(cell) {
            let points = run
                .map(|i| Point::new(cell.xs[i], y_of(cell.values[i], band_h, hf)))
                .collect();
            scene.push(
                Primitive::new(fills + z, color, Shape::Polyline { points, width: 1.0 }).tagged(
                    Tag::Cell {
                        band: cell.band,
                        slice: cell.slice,
                        part: CellPart::Contour,
                    },
                ),
            );
        }
    }
    scene.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ValueDomain;
    use crate::techniques::bands::SliceOrdering;
    use crate::techniques::colormap::{make_colormap, ColorMapFamily, Palette};

    fn cmap(b: usize, s: usize) -> BivariateColorMap {
        make_colormap(ColorMapFamily::SeqQual, b, s, &Palette::default()).unwrap()
    }

    #[test]
    fn footprint_is_a_ninth() {
        let s = TimeSeries::new((0..72).map(|i| i as f64).collect()).unwrap();
        let scene = build_chg(&s, &BandSliceConfig::default(), &cmap(3, 3), 72, 72).unwrap();
        assert_eq!((scene.width_px, scene.height_px), (24, 24));
        let (w, h) = collapsed_size(70, 71, &BandSliceConfig::default());
        assert_eq!((w, h), (24, 24));
    }

    #[test]
    fn single_cell_is_the_filled_line_graph() {
        let v: Vec<f64> = (0..10).map(|i| (i * 13 % 100) as f64).collect();
        let s = TimeSeries::new(v.clone()).unwrap();
        let cfg = BandSliceConfig {
            bands: 1,
            slices: 1,
            ..BandSliceConfig::default()
        };
        let scene = build_chg(&s, &cfg, &cmap(1, 1), 90, 50).unwrap();
        let fill = scene
            .tagged(|t| matches!(t, Tag::Cell { part: CellPart::Fill, .. }))
            .next()
            .unwrap();
        let Shape::FilledPolygon(pts) = &fill.shape else { unreachable!() };
        assert_eq!(pts.len(), v.len() + 2);
        for (i, &val) in v.iter().enumerate() {
            let p = pts[i + 1];
            approx::assert_abs_diff_eq!(p.x, i as f64 * 10.0, epsilon = 1e-12);
            approx::assert_abs_diff_eq!(p.y, 50.0 * (1.0 - val / 100.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn front_slice_dominates() {
        let s = TimeSeries::new((0..72).map(|i| i as f64 * 100.0 / 71.0).collect()).unwrap();
        for (ordering, front) in [
            (SliceOrdering::FrontFirstSlice, 0),
            (SliceOrdering::FrontLastSlice, 2),
        ] {
            let cfg = BandSliceConfig {
                ordering,
                ..BandSliceConfig::default()
            };
            let scene = build_chg(&s, &cfg, &cmap(3, 3), 72, 72).unwrap();
            for band in 0..3 {
                let top = scene
                    .primitives()
                    .iter()
                    .filter_map(|p| match p.tag {
                        Some(Tag::Cell { band: b, slice, part: CellPart::Fill }) if b == band => {
                            Some((p.z, slice))
                        }
                        _ => None,
                    })
                    .max()
                    .unwrap();
                assert_eq!(top.1, front, "{ordering:?} band {band}");
            }
        }
    }

    #[test]
    fn contours_sit_above_fills() {
        let s = TimeSeries::new((0..72).map(|i| 50.0 + 40.0 * ((i as f64) / 7.0).sin()).collect()).unwrap();
        let scene = build_chg(&s, &BandSliceConfig::default(), &cmap(3, 3), 72, 72).unwrap();
        let max_fill = scene
            .tagged(|t| matches!(t, Tag::Cell { part: CellPart::Fill, .. }))
            .map(|p| p.z)
            .max()
            .unwrap();
        assert!(scene
            .tagged(|t| matches!(t, Tag::Cell { part: CellPart::Contour, .. }))
            .all(|p| p.z > max_fill));
    }

    #[test]
    fn contour_runs_skip_empty_stretches() {
        let c = CellCurve {
            band: 0,
            slice: 0,
            xs: (0..7).map(|i| i as f64).collect(),
            values: vec![0.0, 0.0, 1.0, 2.0, 0.0, 0.0, 3.0],
        };
        assert_eq!(contour_runs(&c), vec![1..5, 5..7]);
    }

    #[test]
    fn too_many_slices() {
        let s = TimeSeries::new(vec![1.0, 2.0]).unwrap();
        let cfg = BandSliceConfig {
            slices: 3,
            domain: ValueDomain::default(),
            ..BandSliceConfig::default()
        };
        assert!(build_chg(&s, &cfg, &cmap(3, 3), 9, 9).is_err());
    }
}
