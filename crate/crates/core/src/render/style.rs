//! Two-weight visual encoding: colour from achievement, width from coverage.

use std::fmt;

use serde::{Serialize, Serializer};

use super::layout::LayoutConfig;
use crate::hypergraph::{Achievement, Hyperedge};
use crate::levels::{EdgeStatus, LegendRanges};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02X}{:02X}{:02X}", self.0, self.1, self.2)
    }
}

impl Serialize for Rgb {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Achievement 0: dark pink.
pub const RAMP_LOW: Rgb = Rgb(0xC2, 0x18, 0x5B);
/// Achievement 0.5: brownish pink.
pub const RAMP_MID: Rgb = Rgb(0xA1, 0x88, 0x7F);
/// Achievement 1: dark green.
pub const RAMP_HIGH: Rgb = Rgb(0x1B, 0x5E, 0x20);
pub const GREY: Rgb = Rgb(0x9E, 0x9E, 0x9E);
pub const GREYED_OPACITY: f64 = 0.4;

fn lerp_channel(a: u8, b: u8, s: f64) -> u8 {
    (f64::from(a) + (f64::from(b) - f64::from(a)) * s).round() as u8
}

fn lerp(a: Rgb, b: Rgb, s: f64) -> Rgb {
    Rgb(
        lerp_channel(a.0, b.0, s),
        lerp_channel(a.1, b.1, s),
        lerp_channel(a.2, b.2, s),
    )
}

/// Piecewise-linear sRGB ramp through the three anchor colours; `t` is clamped to `[0, 1]`.
pub fn ramp_color(t: f64) -> Rgb {
    let t = t.clamp(0.0, 1.0);
    if t <= 0.5 {
        lerp(RAMP_LOW, RAMP_MID, t * 2.0)
    } else {
        lerp(RAMP_MID, RAMP_HIGH, (t - 0.5) * 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeStyle {
    pub color: Rgb,
    pub width: f64,
    pub opacity: f64,
    /// Achievement used as the ramp parameter; `None` for greyed edges.
    #[serde(serialize_with = "ser_ramp")]
    pub ramp_param: Option<Achievement>,
}

fn ser_ramp<S: Serializer>(v: &Option<Achievement>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(a) => s.collect_str(a),
        None => s.serialize_none(),
    }
}

/// Stroke width for `coverage` given the coverage range of the visible edges.
pub fn coverage_width(coverage: u64, range: Option<(u64, u64)>, config: &LayoutConfig) -> f64 {
    let (lo, hi) = (config.stroke_min, config.stroke_max);
    match range {
        Some((cmin, cmax)) if cmax > cmin => {
            let s = (coverage.clamp(cmin, cmax) - cmin) as f64 / (cmax - cmin) as f64;
            lo + (hi - lo) * s
        }
        _ => (lo + hi) / 2.0,
    }
}

pub fn style_edge(
    edge: &Hyperedge,
    status: EdgeStatus,
    legend: Option<&LegendRanges>,
    config: &LayoutConfig,
) -> EdgeStyle {
    let width = coverage_width(
        edge.coverage,
        legend.map(|l| (l.coverage_min, l.coverage_max)),
        config,
    );
    match status {
        EdgeStatus::Selected => {
            let achv = edge.achievement();
            EdgeStyle {
                color: ramp_color(achv.to_f64()),
                width,
                opacity: 1.0,
                ramp_param: Some(achv),
            }
        }
        EdgeStatus::Greyed => EdgeStyle {
            color: GREY,
            width,
            opacity: GREYED_OPACITY,
            ramp_param: None,
        },
    }
}
