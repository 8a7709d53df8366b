use std::f64::consts::TAU;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Tdm;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LayoutError {
    #[error("layout parameter `{0}` must be positive")]
    NonPositive(&'static str),
    #[error("stroke width range is empty: min {min} >= max {max}")]
    StrokeRange { min: f64, max: f64 },
    #[error("canvas too small: circle margin leaves no room for the layout circle")]
    NoRoom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[allow(clippy::should_implement_trait)]
impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        self.sub(o).norm()
    }

    /// Unit vector, or `fallback` for the zero vector.
    pub fn unit_or(self, fallback: Point) -> Point {
        let n = self.norm();
        if n < 1e-9 {
            fallback
        } else {
            self.scale(1.0 / n)
        }
    }
}

/// Pixel dimensions for drawing a model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LayoutConfig {
    pub width: f64,
    pub height: f64,
    pub vertex_radius: f64,
    /// Gap between the canvas edge and the layout circle.
    pub circle_margin: f64,
    /// How far hulls extend past their member vertices.
    pub hull_margin: f64,
    pub stroke_min: f64,
    pub stroke_max: f64,
    /// Radius of a self-loop circle.
    pub self_loop_offset: f64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        Self {
            width: 480.0,
            height: 480.0,
            vertex_radius: 14.0,
            circle_margin: 80.0,
            hull_margin: 22.0,
            stroke_min: 2.0,
            stroke_max: 12.0,
            self_loop_offset: 14.0,
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<(), LayoutError> {
        let fields = [
            ("width", self.width),
            ("height", self.height),
            ("vertex_radius", self.vertex_radius),
            ("circle_margin", self.circle_margin),
            ("hull_margin", self.hull_margin),
            ("stroke_min", self.stroke_min),
            ("stroke_max", self.stroke_max),
            ("self_loop_offset", self.self_loop_offset),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(LayoutError::NonPositive(name));
            }
        }
        if self.stroke_min >= self.stroke_max {
            return Err(LayoutError::StrokeRange {
                min: self.stroke_min,
                max: self.stroke_max,
            });
        }
        if self.layout_radius() <= 0.0 {
            return Err(LayoutError::NoRoom);
        }
        Ok(())
    }

    pub fn center(&self) -> Point {
        Point::new(self.width / 2.0, self.height / 2.0)
    }

    pub fn layout_radius(&self) -> f64 {
        self.width.min(self.height) / 2.0 - self.circle_margin
    }

    /// Outward direction at `p`: away from the canvas centre, or up at the centre.
    pub fn outward(&self, p: Point) -> Point {
        p.sub(self.center()).unit_or(Point::new(0.0, -1.0))
    }
}

/// Places vertices evenly on a circle in canonical topic order, clockwise from 12 o'clock.
pub fn layout_vertices(tdm: &Tdm, config: &LayoutConfig) -> Vec<Point> {
    circle_positions(tdm.vertex_count(), config)
}

pub fn circle_positions(n: usize, config: &LayoutConfig) -> Vec<Point> {
    let c = config.center();
    if n == 1 {
        return vec![c];
    }
    let r = config.layout_radius();
    (0..n)
        .map(|i| {
            let theta = TAU * i as f64 / n as f64;
            // y grows downwards, so +sin/-cos walks clockwise from the top.
            Point::new(c.x + r * theta.sin(), c.y - r * theta.cos())
        })
        .collect()
}
