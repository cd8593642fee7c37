use std::io::Cursor;

use image::{ImageFormat, RgbImage};

use crate::error::{Error, Result};
use crate::techniques::{Point, SceneGraph, Shape, Rgb};

/// Row-major RGB pixel buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub width: u32,
    pub height: u32,
    pixels: Vec<Rgb>,
}

impl Raster {
    pub fn new(width: u32, height: u32, fill: Rgb) -> Self {
        Self {
            width,
            height,
            pixels: vec![fill; (width as usize) * (height as usize)],
        }
    }

    pub fn get(&self, x: u32, y: u32) -> Rgb {
        self.pixels[(y as usize) * (self.width as usize) + x as usize]
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn to_png(&self) -> Result<Vec<u8>> {
        let raw: Vec<u8> = self.pixels.iter().flat_map(|c| c.0).collect();
        let img = RgbImage::from_raw(self.width, self.height, raw)
            .ok_or_else(|| Error::Validation("raster buffer size mismatch".into()))?;
        let mut out = Cursor::new(Vec::new());
        img.write_to(&mut out, ImageFormat::Png)
            .map_err(|e| Error::Validation(format!("png encoding failed: {e}")))?;
        Ok(out.into_inner())
    }
}

/// Per-pixel index of the primitive that painted it last, `None` for
/// background.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwnerMap {
    pub width: u32,
    pub height: u32,
    owners: Vec<Option<usize>>,
}

impl OwnerMap {
    pub fn get(&self, x: u32, y: u32) -> Option<usize> {
        self.owners[(y as usize) * (self.width as usize) + x as usize]
    }

    pub fn owners(&self) -> &[Option<usize>] {
        &self.owners
    }
}

/// Rasterizes a scene without anti-aliasing at an integer `scale`.
/// Pixels are sampled at their centers with the nonzero rule. Text is
/// not rasterized.
pub fn rasterize(scene: &SceneGraph, scale: u32) -> Result<Raster> {
    rasterize_with_owners(scene, scale).map(|(r, _)| r)
}

pub fn rasterize_with_owners(scene: &SceneGraph, scale: u32) -> Result<(Raster, OwnerMap)> {
    if scale == 0 {
        return Err(Error::Config("raster scale must be at least 1".into()));
    }
    let (w, h) = (scene.width_px * scale, scene.height_px * scale);
    let mut raster = Raster::new(w, h, Rgb::WHITE);
    let mut owners = vec![None; raster.pixels.len()];
    let k = scale as f64;
    for (idx, prim) in scene.primitives().iter().enumerate() {
        for poly in outline(&prim.shape) {
            let poly: Vec<Point> = poly.iter().map(|p| Point::new(p.x * k, p.y * k)).collect();
            fill_polygon(&poly, w, h, |x, y| {
                let i = (y as usize) * (w as usize) + x as usize;
                raster.pixels[i] = prim.color;
                owners[i] = Some(idx);
            });
        }
    }
    Ok((
        raster,
        OwnerMap {
            width: w,
            height: h,
            owners,
        },
    ))
}

fn rect_poly(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<Point> {
    vec![
        Point::new(x0, y0),
        Point::new(x1, y0),
        Point::new(x1, y1),
        Point::new(x0, y1),
    ]
}

/// Quad covering one stroked segment with square caps.
fn segment_quad(a: Point, b: Point, width: f64) -> Vec<Point> {
    let r = width / 2.0;
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return rect_poly(a.x - r, a.y - r, a.x + r, a.y + r);
    }
    let (ux, uy) = (dx / len * r, dy / len * r);
    let (nx, ny) = (-uy, ux);
    let (sx, sy) = (a.x - ux, a.y - uy);
    let (ex, ey) = (b.x + ux, b.y + uy);
    vec![
        Point::new(sx + nx, sy + ny),
        Point::new(ex + nx, ey + ny),
        Point::new(ex - nx, ey - ny),
        Point::new(sx - nx, sy - ny),
    ]
}

/// Fillable polygons making up a shape.
fn outline(shape: &Shape) -> Vec<Vec<Point>> {
    match shape {
        Shape::FilledPolygon(p) => vec![p.clone()],
        Shape::Triangle(t) => vec![t.to_vec()],
        Shape::Polyline { points, width } => match points.len() {
            0 => Vec::new(),
            1 => vec![segment_quad(points[0], points[0], *width)],
            _ => points
                .windows(2)
                .map(|s| segment_quad(s[0], s[1], *width))
                .collect(),
        },
        Shape::Rect { x, y, w, h, stroke: None } => vec![rect_poly(*x, *y, x + w, y + h)],
        Shape::Rect { x, y, w, h, stroke: Some(sw) } => {
            let r = sw / 2.0;
            let (x1, y1) = (x + w, y + h);
            vec![
                rect_poly(x - r, y - r, x1 + r, y + r),
                rect_poly(x - r, y1 - r, x1 + r, y1 + r),
                rect_poly(x - r, y + r, x + r, y1 - r),
                rect_poly(x1 - r, y + r, x1 + r, y1 - r),
            ]
        }
        Shape::Text { .. } => Vec::new(),
    }
}

/// Scanline fill. A pixel is covered when its center lies inside the
/// polygon under the nonzero rule; edges are half-open so that shared
/// edges are owned by exactly one side (top-left convention).
fn fill_polygon(poly: &[Point], w: u32, h: u32, mut paint: impl FnMut(u32, u32)) {
    if poly.len() < 3 {
        return;
    }
    let ymin = poly.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let ymax = poly.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    let row0 = ((ymin - 0.5).ceil().max(0.0)) as i64;
    let row1 = ((ymax - 0.5).ceil().min(h as f64)) as i64;
    let mut crossings: Vec<(f64, i32)> = Vec::new();
    for row in row0..row1 {
        let yc = row as f64 + 0.5;
        crossings.clear();
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            if a.y == b.y {
                continue;
            }
            let (lo, hi, dir) = if a.y < b.y { (a, b, 1) } else { (b, a, -1) };
            if yc < lo.y || yc >= hi.y {
                continue;
            }
            let t = (yc - lo.y) / (hi.y - lo.y);
            crossings.push((lo.x + t * (hi.x - lo.x), dir));
        }
        crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut winding = 0;
        for pair in crossings.windows(2) {
            winding += pair[0].1;
            if winding == 0 {
                continue;
            }
            let c0 = ((pair[0].0 - 0.5).ceil().max(0.0)) as i64;
            let c1 = ((pair[1].0 - 0.5).ceil().min(w as f64)) as i64;
            for col in c0..c1 {
                paint(col as u32, row as u32);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::techniques::Primitive;

    fn scene_with(shape: Shape, w: u32, h: u32) -> SceneGraph {
        let mut s = SceneGraph::new(w, h);
        s.push(Primitive::new(0, Rgb([0, 0, 0]), shape));
        s.finish().unwrap()
    }

    fn count_dark(r: &Raster) -> usize {
        r.pixels().iter().filter(|c| **c != Rgb::WHITE).count()
    }

    #[test]
    fn aligned_rect_covers_exact_pixels() {
        let s = scene_with(Shape::Rect { x: 1.0, y: 2.0, w: 3.0, h: 4.0, stroke: None }, 10, 10);
        let r = rasterize(&s, 1).unwrap();
        assert_eq!(count_dark(&r), 12);
        assert_eq!(r.get(1, 2), Rgb([0, 0, 0]));
        assert_eq!(r.get(3, 5), Rgb([0, 0, 0]));
        assert_eq!(r.get(4, 5), Rgb::WHITE);
        let r = rasterize(&s, 3).unwrap();
        assert_eq!(count_dark(&r), 12 * 9);
    }

    #[test]
    fn adjacent_rects_do_not_overlap() {
        let mut s = SceneGraph::new(4, 1);
        s.push(Primitive::new(0, Rgb([1, 1, 1]), Shape::Rect { x: 0.0, y: 0.0, w: 2.0, h: 1.0, stroke: None }));
        s.push(Primitive::new(0, Rgb([2, 2, 2]), Shape::Rect { x: 2.0, y: 0.0, w: 2.0, h: 1.0, stroke: None }));
        let (_, owners) = rasterize_with_owners(&s.finish().unwrap(), 1).unwrap();
        assert_eq!(owners.owners(), &[Some(0), Some(0), Some(1), Some(1)]);
    }

    #[test]
    fn horizontal_polyline_is_one_pixel_thick() {
        let s = scene_with(
            Shape::Polyline {
                points: vec![Point::new(1.0, 5.0), Point::new(8.0, 5.0)],
                width: 1.0,
            },
            10,
            10,
        );
        let r = rasterize(&s, 1).unwrap();
        // square caps extend half a pixel past each end
        assert_eq!(count_dark(&r), 8);
    }

    #[test]
    fn stroked_rect_leaves_interior_empty() {
        let s = scene_with(Shape::Rect { x: 1.0, y: 1.0, w: 6.0, h: 6.0, stroke: Some(2.0) }, 8, 8);
        let r = rasterize(&s, 1).unwrap();
        assert_eq!(r.get(4, 4), Rgb::WHITE);
        assert_eq!(r.get(0, 0), Rgb([0, 0, 0]));
        assert_eq!(count_dark(&r), 64 - 16);
    }

    #[test]
    fn png_round_trip() {
        let s = scene_with(Shape::Rect { x: 0.0, y: 0.0, w: 1.0, h: 1.0, stroke: None }, 2, 2);
        let png = rasterize(&s, 1).unwrap().to_png().unwrap();
        let img = image::load_from_memory(&png).unwrap().to_rgb8();
        assert_eq!(img.dimensions(), (2, 2));
        assert_eq!(img.get_pixel(0, 0).0, [0, 0, 0]);
        assert_eq!(img.get_pixel(1, 1).0, [255, 255, 255]);
    }
}
