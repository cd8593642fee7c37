//! Rendering one series to an image file.

use std::path::Path;

use horizon_core::render::{cell_scene, emit_svg, rasterize, TechniqueConfig};
use horizon_core::techniques::{ColorMapFamily, SliceOrdering};
use horizon_core::{Error, SceneGraph, Technique, TimeSeries, ValueDomain};

use crate::error::{io_err, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Svg,
    Png,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub technique: Technique,
    pub bands: usize,
    pub slices: usize,
    pub interval_len: usize,
    pub ordering: SliceOrdering,
    pub family: ColorMapFamily,
    pub domain: ValueDomain,
    /// Side of the output graph in pixels.
    pub size: u32,
    pub scale: u32,
    pub format: ImageFormat,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            technique: Technique::Chg,
            bands: 3,
            slices: 3,
            interval_len: 3,
            ordering: SliceOrdering::default(),
            family: ColorMapFamily::default(),
            domain: ValueDomain::default(),
            size: 24,
            scale: 1,
            format: ImageFormat::Svg,
        }
    }
}

/// First non-empty line of a CSV file as a series.
pub fn read_series(path: &Path) -> Result<TimeSeries> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Validation(format!("{}: no series", path.display())))?;
    let values = line
        .split(',')
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|e| Error::Validation(format!("{}: {f:?}: {e}", path.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TimeSeries::new(values)?)
}

pub fn render_scene(series: &TimeSeries, opts: &RenderOptions) -> Result<SceneGraph> {
    if opts.size < 8 {
        return Err(Error::Config(format!("size {} below 8 px", opts.size)).into());
    }
    series.check_domain(&opts.domain)?;
    let cfg = TechniqueConfig {
        bands: opts.bands,
        slices: opts.slices,
        interval_len: opts.interval_len,
        ordering: opts.ordering,
        family: opts.family,
        domain: opts.domain,
        ..Default::default()
    };
    Ok(cell_scene(series, opts.technique, &cfg, opts.size)?)
}

pub fn encode(scene: &SceneGraph, opts: &RenderOptions) -> Result<Vec<u8>> {
    Ok(match opts.format {
        ImageFormat::Svg => emit_svg(scene).into_bytes(),
        ImageFormat::Png => rasterize(scene, opts.scale)?.to_png()?,
    })
}

/// Reads, renders and writes. Nothing is written unless rendering succeeds.
pub fn render_file(input: &Path, output: &Path, opts: &RenderOptions) -> Result<()> {
    let series = read_series(input)?;
    let bytes = encode(&render_scene(&series, opts)?, opts)?;
    std::fs::write(output, bytes).map_err(io_err(output))
}
