use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 8-bit sRGB color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rgb(pub [u8; 3]);

impl Rgb {
    pub const WHITE: Rgb = Rgb([255, 255, 255]);
    pub const NEUTRAL_DARK: Rgb = Rgb([0x33, 0x33, 0x33]);

    pub fn from_hex(s: &str) -> Result<Self> {
        let h = s.strip_prefix('#').unwrap_or(s);
        if h.len() != 6 || !h.is_ascii() {
            return Err(Error::Config(format!("bad color {s:?}")));
        }
        let mut out = [0u8; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = u8::from_str_radix(&h[2 * i..2 * i + 2], 16)
                .map_err(|_| Error::Config(format!("bad color {s:?}")))?;
        }
        Ok(Rgb(out))
    }

    pub fn to_hex(self) -> String {
        let [r, g, b] = self.0;
        format!("#{r:02x}{g:02x}{b:02x}")
    }

    /// Componentwise interpolation in sRGB space.
    pub fn lerp(self, other: Rgb, t: f64) -> Rgb {
        let mut out = [0u8; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.0[i] as f64;
            let b = other.0[i] as f64;
            *o = (a + (b - a) * t).round().clamp(0.0, 255.0) as u8;
        }
        Rgb(out)
    }

    /// CIE L* lightness (D65).
    pub fn lightness(self) -> f64 {
        let lin = |c: u8| {
            let c = c as f64 / 255.0;
            if c <= 0.04045 {
                c / 12.92
            } else {
                ((c + 0.055) / 1.055).powf(2.4)
            }
        };
        let [r, g, b] = self.0;
        let y = 0.2126 * lin(r) + 0.7152 * lin(g) + 0.0722 * lin(b);
        if y > 216.0 / 24389.0 {
            116.0 * y.cbrt() - 16.0
        } else {
            y * 24389.0 / 27.0
        }
    }
}

impl Serialize for Rgb {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Rgb {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rgb::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Pixel coordinates, y growing downward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    FilledPolygon(Vec<Point>),
    Polyline { points: Vec<Point>, width: f64 },
    Triangle([Point; 3]),
    /// Filled when `stroke` is `None`, otherwise an outline of that width
    /// centered on the rectangle's edges.
    Rect {
        x: f64,
        y: f64,
        w: f64,
        h: f64,
        stroke: Option<f64>,
    },
    Text { x: f64, y: f64, size: f64, text: String },
}

impl Shape {
    fn points(&self) -> Vec<Point> {
        match self {
            Shape::FilledPolygon(p) | Shape::Polyline { points: p, .. } => p.clone(),
            Shape::Triangle(t) => t.to_vec(),
            Shape::Rect { x, y, w, h, .. } => vec![Point::new(*x, *y), Point::new(x + w, y + h)],
            Shape::Text { x, y, .. } => vec![Point::new(*x, *y)],
        }
    }

    fn translate(&mut self, dx: f64, dy: f64) {
        let mv = |p: &mut Point| {
            p.x += dx;
            p.y += dy;
        };
        match self {
            Shape::FilledPolygon(p) | Shape::Polyline { points: p, .. } => p.iter_mut().for_each(mv),
            Shape::Triangle(t) => t.iter_mut().for_each(mv),
            Shape::Rect { x, y, .. } | Shape::Text { x, y, .. } => {
                *x += dx;
                *y += dy;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellPart {
    Fill,
    Contour,
    Segment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatLayer {
    MinMax,
    Quartiles,
    Median,
}

/// What a primitive depicts. Carried through to SVG as a class name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Cell { band: usize, slice: usize, part: CellPart },
    Band { band: usize },
    Stat(StatLayer),
    Marker,
    Highlight,
    QuadrantRule,
    Legend,
    Background,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Cell { band, slice, part } => {
                let p = match part {
                    CellPart::Fill => "fill",
                    CellPart::Contour => "contour",
                    CellPart::Segment => "segment",
                };
                write!(f, "cell b{band} s{slice} {p}")
            }
            Tag::Band { band } => write!(f, "band b{band}"),
            Tag::Stat(StatLayer::MinMax) => f.write_str("stat minmax"),
            Tag::Stat(StatLayer::Quartiles) => f.write_str("stat quartiles"),
            Tag::Stat(StatLayer::Median) => f.write_str("stat median"),
            Tag::Marker => f.write_str("marker"),
            Tag::Highlight => f.write_str("highlight"),
            Tag::QuadrantRule => f.write_str("quadrant-rule"),
            Tag::Legend => f.write_str("legend"),
            Tag::Background => f.write_str("background"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Primitive {
    pub z: i32,
    pub color: Rgb,
    pub shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<Tag>,
}

impl Primitive {
    pub fn new(z: i32, color: Rgb, shape: Shape) -> Self {
        Self {
            z,
            color,
            shape,
            tag: None,
        }
    }

    pub fn tagged(mut self, tag: Tag) -> Self {
        self.tag = Some(tag);
        self
    }
}

/// Ordered draw list in pixel coordinates. Primitives are sorted by
/// ascending `z`; equal `z` keeps insertion order. Later primitives are
/// painted on top.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneGraph {
    pub width_px: u32,
    pub height_px: u32,
    primitives: Vec<Primitive>,
}

/// Slack allowed on the canvas bounds for accumulated float error.
const BOUNDS_EPS: f64 = 1e-6;

impl SceneGraph {
    pub fn new(width_px: u32, height_px: u32) -> Self {
        Self {
            width_px,
            height_px,
            primitives: Vec::new(),
        }
    }

    pub fn push(&mut self, p: Primitive) {
        self.primitives.push(p);
    }

    /// Copies `other` into this scene at offset `(dx, dy)`.
    pub fn place(&mut self, other: &SceneGraph, dx: f64, dy: f64) {
        for p in &other.primitives {
            let mut p = p.clone();
            p.shape.translate(dx, dy);
            self.primitives.push(p);
        }
    }

    /// Sorts by z and checks that every vertex lies on the canvas.
    pub fn finish(mut self) -> Result<Self> {
        self.primitives.sort_by_key(|p| p.z);
        let (w, h) = (self.width_px as f64, self.height_px as f64);
        for (i, p) in self.primitives.iter().enumerate() {
            for pt in p.shape.points() {
                let ok = pt.x.is_finite()
                    && pt.y.is_finite()
                    && pt.x >= -BOUNDS_EPS
                    && pt.x <= w + BOUNDS_EPS
                    && pt.y >= -BOUNDS_EPS
                    && pt.y <= h + BOUNDS_EPS;
                if !ok {
                    return Err(Error::Range(format!(
                        "primitive {i} vertex ({}, {}) outside {w}x{h} canvas",
                        pt.x, pt.y
                    )));
                }
            }
        }
        Ok(self)
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn is_sorted(&self) -> bool {
        self.primitives.windows(2).all(|w| w[0].z <= w[1].z)
    }

    pub fn tagged(&self, pred: impl Fn(&Tag) -> bool) -> impl Iterator<Item = &Primitive> {
        self.primitives
            .iter()
            .filter(move |p| p.tag.as_ref().is_some_and(&pred))
    }
}
