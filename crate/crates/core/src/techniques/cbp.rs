use crate::analysis::summary_stats;
use crate::error::Result;
use crate::model::{TimeSeries, ValueDomain};

use super::scene::{Point, Primitive, Rgb, SceneGraph, Shape, StatLayer, Tag};

pub const MIN_MAX_FILL: Rgb = Rgb([0xc6, 0xdb, 0xef]);
pub const QUARTILE_FILL: Rgb = Rgb([0x6b, 0xae, 0xd6]);
pub const MEDIAN_STROKE: Rgb = Rgb([0x08, 0x30, 0x6b]);

/// Compact boxplot: a min-max band, a quartile band and the median line,
/// one vertex per aggregation interval at the interval's center.
pub fn build_cbp(
    s: &TimeSeries,
    interval_len: usize,
    domain: &ValueDomain,
    width_px: u32,
    height_px: u32,
) -> Result<SceneGraph> {
    let stats = summary_stats(s, interval_len)?;
    let (w, h) = (width_px as f64, height_px as f64);
    let last = (s.len().max(2) - 1) as f64;
    let x = |step: f64| step / last * w;
    let y = |v: f64| h * (1.0 - (domain.clamp(v) - domain.min) / domain.span());

    let band = |upper: &dyn Fn(usize) -> f64, lower: &dyn Fn(usize) -> f64| {
        let mut pts: Vec<Point> = stats
            .iter()
            .enumerate()
            .map(|(i, st)| Point::new(x(st.mid_step()), y(upper(i))))
            .collect();
        pts.extend(
            stats
                .iter()
                .enumerate()
                .rev()
                .map(|(i, st)| Point::new(x(st.mid_step()), y(lower(i)))),
        );
        pts
    };

    let mut scene = SceneGraph::new(width_px, height_px);
    scene.push(
        Primitive::new(
            0,
            MIN_MAX_FILL,
            Shape::FilledPolygon(band(&|i| stats[i].max, &|i| stats[i].min)),
        )
        .tagged(Tag::Stat(StatLayer::MinMax)),
    );
    scene.push(
        Primitive::new(
            1,
            QUARTILE_FILL,
            Shape::FilledPolygon(band(&|i| stats[i].q3, &|i| stats[i].q1)),
        )
        .tagged(Tag::Stat(StatLayer::Quartiles)),
    );
    scene.push(
        Primitive::new(
            2,
            MEDIAN_STROKE,
            Shape::Polyline {
                points: stats
                    .iter()
                    .map(|st| Point::new(x(st.mid_step()), y(st.median)))
                    .collect(),
                width: 1.0,
            },
        )
        .tagged(Tag::Stat(StatLayer::Median)),
    );
    scene.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(scene: &SceneGraph, l: StatLayer) -> &Primitive {
        scene.tagged(|t| *t == Tag::Stat(l)).next().unwrap()
    }

    #[test]
    fn vertex_counts_and_order() {
        let s = TimeSeries::new((0..72).map(|i| (i as f64 * 0.7) % 100.0).collect()).unwrap();
        let scene = build_cbp(&s, 3, &ValueDomain::default(), 24, 24).unwrap();
        assert_eq!(scene.primitives().len(), 3);
        match &layer(&scene, StatLayer::MinMax).shape {
            Shape::FilledPolygon(p) => assert_eq!(p.len(), 48),
            other => panic!("{other:?}"),
        }
        match &layer(&scene, StatLayer::Median).shape {
            Shape::Polyline { points, .. } => assert_eq!(points.len(), 24),
            other => panic!("{other:?}"),
        }
        let top = scene.primitives().last().unwrap();
        assert_eq!(top.tag, Some(Tag::Stat(StatLayer::Median)));
    }

    #[test]
    fn constant_series_collapses_to_a_line() {
        let s = TimeSeries::new(vec![25.0; 72]).unwrap();
        let scene = build_cbp(&s, 3, &ValueDomain::default(), 24, 24).unwrap();
        for p in scene.primitives() {
            let ys: Vec<f64> = match &p.shape {
                Shape::FilledPolygon(pts) | Shape::Polyline { points: pts, .. } => {
                    pts.iter().map(|q| q.y).collect()
                }
                _ => unreachable!(),
            };
            assert!(ys.iter().all(|&y| y == 18.0));
        }
    }
}
