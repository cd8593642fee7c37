use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::TimeSeries;

use super::bands::{collapse_cells, BandSliceConfig, CellCurve};
use super::chg::{area, check_cmap, collapsed_size};
use super::colormap::BivariateColorMap;
use super::scene::{CellPart, Primitive, SceneGraph, Shape, Tag};

/// Crossings closer than this along x are merged.
pub const MERGE_EPS: f64 = 1e-9;
/// Residual differences at or below this count as touching.
const TOUCH_EPS: f64 = 1e-12;

/// The part of one cell between two consecutive split positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSegment {
    pub band: usize,
    pub slice: usize,
    pub x0: f64,
    pub x1: f64,
    /// `(x, residual)` vertices from `x0` to `x1`.
    pub points: Vec<(f64, f64)>,
    /// Mean residual over `[x0, x1]`.
    pub mean: f64,
    /// Stacking order within `[x0, x1]`; larger means are further back.
    pub z: i32,
}

fn merge_sorted(v: &mut Vec<f64>) {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|b, a| (*b - *a).abs() <= MERGE_EPS);
}

/// Every x where two cells cross or touch, plus both ends of the range.
pub fn split_positions(cells: &[CellCurve]) -> Vec<f64> {
    let mut breaks: Vec<f64> = cells.iter().flat_map(|c| c.xs.iter().copied()).collect();
    merge_sorted(&mut breaks);
    let mut splits = vec![breaks[0], breaks[breaks.len() - 1]];
    for w in breaks.windows(2) {
        let (p, q) = (w[0], w[1]);
        let at_p: Vec<f64> = cells.iter().map(|c| c.value_at(p)).collect();
        let at_q: Vec<f64> = cells.iter().map(|c| c.value_at(q)).collect();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                let dp = at_p[i] - at_p[j];
                let dq = at_q[i] - at_q[j];
                if dp.abs() <= TOUCH_EPS {
                    splits.push(p);
                }
                if dq.abs() <= TOUCH_EPS {
                    splits.push(q);
                }
                if dp * dq < 0.0 && dp.abs() > TOUCH_EPS && dq.abs() > TOUCH_EPS {
                    splits.push(p + (q - p) * dp / (dp - dq));
                }
            }
        }
    }
    merge_sorted(&mut splits);
    splits
}

/// Splits overlaid cell curves at their crossings and orders the pieces
/// so that, between two crossings, the cell with the larger mean residual
/// sits behind. Ties fall back to ascending (band, slice).
pub fn braid(cells: &[CellCurve]) -> Vec<CellSegment> {
    if cells.is_empty() {
        return Vec::new();
    }
    let splits = split_positions(cells);
    let mut out = Vec::new();
    for w in splits.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        if x1 - x0 <= MERGE_EPS {
            continue;
        }
        let mut pieces: Vec<CellSegment> = cells
            .iter()
            .map(|c| {
                let mut points = vec![(x0, c.value_at(x0))];
                points.extend(
                    c.xs.iter()
                        .zip(&c.values)
                        .filter(|(&x, _)| x > x0 + MERGE_EPS && x < x1 - MERGE_EPS)
                        .map(|(&x, &v)| (x, v)),
                );
                points.push((x1, c.value_at(x1)));
                let integral: f64 = points
                    .windows(2)
                    .map(|p| (p[1].0 - p[0].0) * (p[0].1 + p[1].1) / 2.0)
                    .sum();
                CellSegment {
                    band: c.band,
                    slice: c.slice,
                    x0,
                    x1,
                    points,
                    mean: integral / (x1 - x0),
                    z: 0,
                }
            })
            .collect();
        pieces.sort_by(|a, b| {
            b.mean
                .total_cmp(&a.mean)
                .then((a.band, a.slice).cmp(&(b.band, b.slice)))
        });
        for (rank, mut p) in pieces.into_iter().enumerate() {
            if p.points.iter().all(|&(_, v)| v <= 0.0) {
                continue;
            }
            p.z = rank as i32;
            out.push(p);
        }
    }
    out
}

/// Braided collapsed horizon graph: cells collapsed as for the collapsed
/// horizon graph, then braided so every cell stays visible wherever it is
/// not covered by an equal or smaller one. Braiding compares residuals,
/// the quantity that is drawn.
pub fn build_bhg(
    s: &TimeSeries,
    cfg: &BandSliceConfig,
    cmap: &BivariateColorMap,
    line_w: u32,
    line_h: u32,
) -> Result<SceneGraph> {
    check_cmap(cmap, cfg)?;
    let (w, h) = collapsed_size(line_w, line_h, cfg);
    let cells = collapse_cells(s, cfg, w as f64)?;
    let band_h = cfg.band_height();
    let mut scene = SceneGraph::new(w, h);
    for seg in braid(&cells) {
        scene.push(
            Primitive::new(
                seg.z,
                cmap.get(seg.band, seg.slice),
                Shape::FilledPolygon(area(&seg.points, band_h, h as f64)),
            )
            .tagged(Tag::Cell {
                band: seg.band,
                slice: seg.slice,
                part: CellPart::Segment,
            }),
        );
    }
    scene.finish()
}
