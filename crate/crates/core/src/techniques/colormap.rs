//! Bivariate color maps: band index on a sequential lightness axis, slice
//! index on a second (qualitative, sequential or diverging) axis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::scene::Rgb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorMapFamily {
    SeqSeq,
    #[default]
    SeqQual,
    SeqDiv,
    DivDiv,
}

/// Light-to-dark color anchors, sampled piecewise linearly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ramp(pub Vec<Rgb>);

impl Ramp {
    pub fn sample(&self, t: f64) -> Rgb {
        let a = &self.0;
        if a.len() == 1 {
            return a[0];
        }
        let pos = t.clamp(0.0, 1.0) * (a.len() - 1) as f64;
        let i = (pos.floor() as usize).min(a.len() - 2);
        a[i].lerp(a[i + 1], pos - i as f64)
    }
}

/// Base colors the maps are built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Palette {
    /// One light-to-dark ramp per slice hue.
    pub qualitative: Vec<Ramp>,
    /// Single-hue ramp for plain horizon graphs.
    pub sequential: Ramp,
}

impl Default for Palette {
    fn default() -> Self {
        serde_json::from_str(include_str!("../../palette/default.json"))
            .expect("bundled palette parses")
    }
}

impl Palette {
    /// `bands` colors of the sequential ramp, light to dark.
    pub fn sequential_colors(&self, bands: usize) -> Vec<Rgb> {
        (0..bands).map(|b| self.sequential.sample(band_t(b, bands))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BivariateColorMap {
    pub family: ColorMapFamily,
    /// `colors[band][slice]`.
    pub colors: Vec<Vec<Rgb>>,
}

impl BivariateColorMap {
    pub fn get(&self, band: usize, slice: usize) -> Rgb {
        self.colors[band][slice]
    }

    pub fn bands(&self) -> usize {
        self.colors.len()
    }

    pub fn slices(&self) -> usize {
        self.colors[0].len()
    }

    /// The color used to identify a slice on its own (markers, legends).
    pub fn slice_hue(&self, slice: usize) -> Rgb {
        self.colors[self.bands() - 1][slice]
    }
}

fn band_t(b: usize, bands: usize) -> f64 {
    if bands <= 1 {
        1.0
    } else {
        b as f64 / (bands - 1) as f64
    }
}

fn slice_t(s: usize, slices: usize) -> f64 {
    if slices <= 1 {
        0.0
    } else {
        s as f64 / (slices - 1) as f64
    }
}

fn hex(s: &str) -> Rgb {
    Rgb::from_hex(s).expect("valid literal")
}

/// Interpolates across three anchors at `t` in [0, 1].
fn diverge(a: Rgb, mid: Rgb, b: Rgb, t: f64) -> Rgb {
    Ramp(vec![a, mid, b]).sample(t)
}

/// Builds a `bands x slices` map. Every column darkens with the band index
/// and all colors are pairwise distinct.
pub fn make_colormap(
    family: ColorMapFamily,
    bands: usize,
    slices: usize,
    palette: &Palette,
) -> Result<BivariateColorMap> {
    if bands == 0 || slices == 0 {
        return Err(Error::Config("color map needs at least one band and slice".into()));
    }
    let column = |s: usize| -> Result<(Rgb, Rgb, Option<&Ramp>)> {
        let u = slice_t(s, slices);
        Ok(match family {
            ColorMapFamily::SeqQual => {
                let ramp = palette.qualitative.get(s).ok_or_else(|| {
                    Error::Config(format!(
                        "palette has {} qualitative hues, {slices} slices requested",
                        palette.qualitative.len()
                    ))
                })?;
                if ramp.0.is_empty() {
                    return Err(Error::Config(format!("qualitative ramp {s} is empty")));
                }
                (ramp.0[0], ramp.0[ramp.0.len() - 1], Some(ramp))
            }
            ColorMapFamily::SeqSeq => (
                hex("#e8e8e8").lerp(hex("#be64ac"), u),
                hex("#5ac8c8").lerp(hex("#3b4994"), u),
                None,
            ),
            ColorMapFamily::SeqDiv => (
                diverge(hex("#fdb863"), hex("#f7f7f7"), hex("#b2abd2"), u),
                diverge(hex("#e66101"), hex("#969696"), hex("#5e3c99"), u),
                None,
            ),
            ColorMapFamily::DivDiv => (
                diverge(hex("#fdb863"), hex("#f7f7f7"), hex("#b2abd2"), u).lerp(hex("#ffffbf"), 0.5),
                diverge(hex("#e66101"), hex("#969696"), hex("#5e3c99"), u).lerp(hex("#01665e"), 0.5),
                None,
            ),
        })
    };
    let mut colors = vec![Vec::with_capacity(slices); bands];
    for s in 0..slices {
        let (light, dark, ramp) = column(s)?;
        for (b, row) in colors.iter_mut().enumerate() {
            let t = band_t(b, bands);
            row.push(match ramp {
                Some(r) => r.sample(t),
                None => light.lerp(dark, t),
            });
        }
    }
    let map = BivariateColorMap { family, colors };
    check_map(&map)?;
    Ok(map)
}

fn check_map(map: &BivariateColorMap) -> Result<()> {
    let mut all: Vec<Rgb> = map.colors.iter().flatten().copied().collect();
    all.sort();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Config(
            "palette yields duplicate colors for this band/slice count".into(),
        ));
    }
    for s in 0..map.slices() {
        for b in 1..map.bands() {
            if map.get(b, s).lightness() >= map.get(b - 1, s).lightness() {
                return Err(Error::Config(format!(
                    "slice {s}: band {b} is not darker than band {}",
                    b - 1
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_map_is_brewer_anchors() {
        let m = make_colormap(ColorMapFamily::SeqQual, 3, 3, &Palette::default()).unwrap();
        assert_eq!(m.get(0, 0).to_hex(), "#efedf5");
        assert_eq!(m.get(2, 0).to_hex(), "#756bb1");
        assert_eq!(m.get(1, 1).to_hex(), "#a1d99b");
        assert_eq!(m.get(2, 2).to_hex(), "#de2d26");
        let mut all: Vec<_> = m.colors.iter().flatten().collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn every_family_builds_for_three_by_three() {
        for fam in [
            ColorMapFamily::SeqSeq,
            ColorMapFamily::SeqQual,
            ColorMapFamily::SeqDiv,
            ColorMapFamily::DivDiv,
        ] {
            let m = make_colormap(fam, 3, 3, &Palette::default()).unwrap();
            for s in 0..3 {
                assert!(m.get(2, s).lightness() < m.get(0, s).lightness(), "{fam:?}");
            }
        }
    }

    #[test]
    fn other_sizes() {
        for (b, s) in [(1, 1), (2, 3), (5, 3), (4, 2)] {
            make_colormap(ColorMapFamily::SeqQual, b, s, &Palette::default()).unwrap();
            make_colormap(ColorMapFamily::SeqSeq, b, s, &Palette::default()).unwrap();
        }
    }

    #[test]
    fn insufficient_palette() {
        let err = make_colormap(ColorMapFamily::SeqQual, 3, 4, &Palette::default()).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn sequential_ramp() {
        let c = Palette::default().sequential_colors(3);
        assert_eq!(c[0].to_hex(), "#deebf7");
        assert_eq!(c[2].to_hex(), "#3182bd");
    }
}
