use serde::Serialize;

use super::fmt3;
use super::layout::{LayoutConfig, Point};
use crate::hypergraph::TopicSet;

/// Shape used to draw one hyperedge.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeGeometry {
    /// Circle touching its vertex glyph from the outside.
    SelfLoop {
        center: Point,
        radius: f64,
    },
    Segment {
        from: Point,
        to: Point,
    },
    /// Convex hull of the member vertices grown by `margin` with rounded corners.
    /// Collinear members collapse to their two extreme points, giving a capsule.
    Hull {
        corners: Vec<Point>,
        margin: f64,
    },
}

pub fn edge_geometry(
    topics: &TopicSet,
    positions: &[Point],
    config: &LayoutConfig,
) -> EdgeGeometry {
    let members: Vec<Point> = topics.indices().iter().map(|&i| positions[i]).collect();
    match members.as_slice() {
        [p] => {
            let radius = config.self_loop_offset;
            let dir = config.outward(*p);
            EdgeGeometry::SelfLoop {
                center: p.add(dir.scale(config.vertex_radius + radius)),
                radius,
            }
        }
        [a, b] => EdgeGeometry::Segment { from: *a, to: *b },
        _ => EdgeGeometry::Hull {
            corners: convex_hull(&members),
            margin: config.hull_margin,
        },
    }
}

/// Andrew's monotone chain. Counter-clockwise in numeric coordinates, no
/// collinear points; collinear input yields its two extreme points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.distance(*b) < 1e-9);
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point, a: Point, b: Point| a.sub(o).cross(b.sub(o));
    let chain = |iter: &mut dyn Iterator<Item = Point>| {
        let mut c: Vec<Point> = Vec::with_capacity(pts.len());
        for p in iter {
            while c.len() >= 2 && turn(c[c.len() - 2], c[c.len() - 1], p) <= 1e-9 {
                c.pop();
            }
            c.push(p);
        }
        c
    };
    let mut hull = chain(&mut pts.iter().copied());
    let upper = chain(&mut pts.iter().rev().copied());
    // Each chain's last point starts the other one.
    hull.pop();
    hull.extend(&upper[..upper.len() - 1]);
    if hull.len() < 3 {
        // Everything collinear: keep the extremes.
        return vec![pts[0], pts[pts.len() - 1]];
    }
    hull
}

impl EdgeGeometry {
    /// SVG path data for hulls; `None` for loops and segments.
    pub fn hull_path(&self) -> Option<String> {
        let EdgeGeometry::Hull { corners, margin } = self else {
            return None;
        };
        let m = *margin;
        let k = corners.len();
        if k == 1 {
            let c = corners[0];
            return Some(format!(
                "M {} {} A {m} {m} 0 1 1 {} {} A {m} {m} 0 1 1 {} {} Z",
                fmt3(c.x - m),
                fmt3(c.y),
                fmt3(c.x + m),
                fmt3(c.y),
                fmt3(c.x - m),
                fmt3(c.y),
                m = fmt3(m),
            ));
        }
        let normal = |i: usize| {
            let d = corners[(i + 1) % k].sub(corners[i]);
            Point::new(d.y, -d.x).unit_or(Point::new(0.0, -1.0))
        };
        let mut d = String::new();
        let start = corners[0].add(normal(0).scale(m));
        d.push_str(&format!("M {} {}", fmt3(start.x), fmt3(start.y)));
        for i in 0..k {
            let next = (i + 1) % k;
            let n_in = normal(i);
            let n_out = normal(next);
            let a = corners[next].add(n_in.scale(m));
            let b = corners[next].add(n_out.scale(m));
            d.push_str(&format!(" L {} {}", fmt3(a.x), fmt3(a.y)));
            d.push_str(&format!(
                " A {} {} 0 0 1 {} {}",
                fmt3(m),
                fmt3(m),
                fmt3(b.x),
                fmt3(b.y)
            ));
        }
        d.push_str(" Z");
        Some(d)
    }

    /// Distance from `p` to the drawn region (0 when inside).
    pub fn distance_to(&self, p: Point) -> f64 {
        match self {
            EdgeGeometry::SelfLoop { center, radius } => (p.distance(*center) - radius).max(0.0),
            EdgeGeometry::Segment { from, to } => segment_distance(p, *from, *to),
            EdgeGeometry::Hull { corners, margin } => {
                (polygon_distance(p, corners) - margin).max(0.0)
            }
        }
    }
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    if len2 < 1e-18 {
        return p.distance(a);
    }
    let t = (p.sub(a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a.add(ab.scale(t)))
}

/// Distance to a convex counter-clockwise polygon (0 inside).
fn polygon_distance(p: Point, corners: &[Point]) -> f64 {
    let k = corners.len();
    if k == 1 {
        return p.distance(corners[0]);
    }
    if k >= 3 {
        let inside = (0..k).all(|i| {
            corners[(i + 1) % k]
                .sub(corners[i])
                .cross(p.sub(corners[i]))
                >= 0.0
        });
        if inside {
            return 0.0;
        }
    }
    (0..k)
        .map(|i| segment_distance(p, corners[i], corners[(i + 1) % k]))
        .fold(f64::INFINITY, f64::min)
}
