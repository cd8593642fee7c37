use crate::error::{Error, Result};
use crate::model::{TimeSeries, ValueDomain};

use super::bands::band_decompose;
use super::scene::{Point, Primitive, Rgb, SceneGraph, Shape, Tag};

/// Height of a horizon graph that replaces a line graph of `line_height`.
pub fn hg_height(line_height: u32, bands: usize) -> u32 {
    line_height.div_ceil(bands as u32)
}

/// Horizon graph: bands overlaid from the bottom, higher bands in front,
/// with the time axis shrunk to `width_px`.
pub fn build_hg(
    s: &TimeSeries,
    bands: usize,
    domain: &ValueDomain,
    colors: &[Rgb],
    width_px: u32,
    height_px: u32,
) -> Result<SceneGraph> {
    if colors.len() < bands {
        return Err(Error::Config(format!(
            "{bands} bands need {bands} colors, got {}",
            colors.len()
        )));
    }
    let residuals = band_decompose(s, bands, domain)?;
    let band_h = domain.span() / bands as f64;
    let (w, h) = (width_px as f64, height_px as f64);
    let last = (s.len().max(2) - 1) as f64;
    let mut scene = SceneGraph::new(width_px, height_px);
    for band in residuals {
        let mut pts = Vec::with_capacity(s.len() + 2);
        pts.push(Point::new(0.0, h));
        pts.extend(
            band.residuals
                .iter()
                .enumerate()
                .map(|(i, r)| Point::new(i as f64 / last * w, h * (1.0 - r / band_h))),
        );
        if s.len() == 1 {
            pts.push(Point::new(w, pts[1].y));
        }
        pts.push(Point::new(w, h));
        scene.push(
            Primitive::new(band.band as i32, colors[band.band], Shape::FilledPolygon(pts))
                .tagged(Tag::Band { band: band.band }),
        );
    }
    scene.finish()
}
