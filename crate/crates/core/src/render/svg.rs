use std::fmt::Write;

use crate::techniques::{Point, SceneGraph, Shape};

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    // avoid "-0.000"
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000".to_string()
    } else {
        s
    }
}

fn points(pts: &[Point]) -> String {
    let mut out = String::new();
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", num(p.x), num(p.y));
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Serializes a scene as an SVG document, one element per primitive in
/// paint order. Output depends only on the scene.
pub fn emit_svg(scene: &SceneGraph) -> String {
    let mut out = String::new();
    let (w, h) = (scene.width_px, scene.height_px);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" shape-rendering="crispEdges">"#
    );
    for p in scene.primitives() {
        let class = p
            .tag
            .map(|t| format!(r#" class="{t}""#))
            .unwrap_or_default();
        let color = p.color.to_hex();
        let _ = match &p.shape {
            Shape::FilledPolygon(pts) => writeln!(
                out,
                r#"<polygon{class} points="{}" fill="{color}"/>"#,
                points(pts)
            ),
            Shape::Triangle(t) => writeln!(
                out,
                r#"<polygon{class} points="{}" fill="{color}"/>"#,
                points(t)
            ),
            Shape::Polyline { points: pts, width } => writeln!(
                out,
                r#"<polyline{class} points="{}" fill="none" stroke="{color}" stroke-width="{}" stroke-linecap="square"/>"#,
                points(pts),
                num(*width)
            ),
            Shape::Rect { x, y, w, h, stroke: None } => writeln!(
                out,
                r#"<rect{class} x="{}" y="{}" width="{}" height="{}" fill="{color}"/>"#,
                num(*x),
                num(*y),
                num(*w),
                num(*h)
            ),
            Shape::Rect { x, y, w, h, stroke: Some(sw) } => writeln!(
                out,
                r#"<rect{class} x="{}" y="{}" width="{}" height="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
                num(*x),
                num(*y),
                num(*w),
                num(*h),
                num(*sw)
            ),
            Shape::Text { x, y, size, text } => writeln!(
                out,
                r#"<text{class} x="{}" y="{}" font-size="{}" font-family="sans-serif" fill="{color}">{}</text>"#,
                num(*x),
                num(*y),
                num(*size),
                escape(text)
            ),
        };
    }
    out.push_str("</svg>\n");
    out
}
