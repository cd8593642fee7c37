//! The built-in rasterizer against resvg rendering of the emitted SVG.

use horizon_core::datagen::{layout_grid, random_walk_series, stream_rng, GenConfig};
use horizon_core::render::{cell_scene, emit_svg, rasterize, render_grid, GridRenderSpec, MarkerSpec, TechniqueConfig};
use horizon_core::{Markers, SceneGraph, Technique};
use resvg::tiny_skia::{Color, Pixmap, Transform};
use resvg::usvg::{Options, Tree};

const MIN_AGREEMENT: f64 = 0.99;

fn reference(scene: &SceneGraph, scale: u32) -> Vec<[u8; 3]> {
    let tree = Tree::from_str(&emit_svg(scene), &Options::default()).unwrap();
    let mut pm = Pixmap::new(scene.width_px * scale, scene.height_px * scale).unwrap();
    pm.fill(Color::WHITE);
    resvg::render(&tree, Transform::from_scale(scale as f32, scale as f32), &mut pm.as_mut());
    pm.pixels()
        .iter()
        .map(|p| {
            let c = p.demultiply();
            [c.red(), c.green(), c.blue()]
        })
        .collect()
}

fn agreement(scene: &SceneGraph, scale: u32) -> f64 {
    let ours = rasterize(scene, scale).unwrap();
    let theirs = reference(scene, scale);
    let same = ours
        .pixels()
        .iter()
        .zip(&theirs)
        .filter(|(a, b)| a.0 == **b)
        .count();
    same as f64 / theirs.len() as f64
}

fn corpus() -> Vec<(String, SceneGraph)> {
    let cfg = TechniqueConfig::default();
    let mut out = Vec::new();
    for seed in 0..6u64 {
        let gen = GenConfig { seed, ..Default::default() };
        let s = random_walk_series(&gen, &mut stream_rng(seed, 0)).unwrap();
        for t in Technique::ALL {
            out.push((format!("{t} cell {seed}"), cell_scene(&s, t, &cfg, 24).unwrap()));
        }
        let grid = layout_grid(3, 3, None, &gen, &mut stream_rng(seed, 1)).unwrap();
        let spec = GridRenderSpec {
            marker: Some(MarkerSpec { markers: Markers::Shared { step: 40 }, slice_colored: true }),
            highlight: Some(seed as usize % 9),
            ..Default::default()
        };
        for t in Technique::ALL {
            out.push((format!("{t} grid {seed}"), render_grid(&grid, t, &cfg, &spec).unwrap()));
        }
    }
    out
}

#[test]
fn agrees_with_resvg_on_golden_corpus() {
    let corpus = corpus();
    let (mut same, mut total) = (0.0, 0.0);
    for (name, scene) in &corpus {
        for scale in [1, 4] {
            let a = agreement(scene, scale);
            let n = (scene.width_px * scene.height_px * scale * scale) as f64;
            same += a * n;
            total += n;
            assert!(a >= 0.95, "{name} at {scale}x: only {:.2}% agree", a * 100.0);
        }
    }
    let overall = same / total;
    assert!(overall >= MIN_AGREEMENT, "overall agreement {:.3}%", overall * 100.0);
}
