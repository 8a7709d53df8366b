use serde::Serialize;

use super::geometry::{edge_geometry, EdgeGeometry};
use super::layout::{LayoutConfig, Point};
use super::style::{style_edge, EdgeStyle, Rgb, RAMP_HIGH, RAMP_LOW, RAMP_MID};
use crate::hypergraph::Tdm;
use crate::levels::{EdgeStatus, ViewModel};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexGlyph {
    pub index: usize,
    pub label: String,
    pub position: Point,
    pub radius: f64,
    pub label_position: Point,
    /// `start`, `middle` or `end`.
    pub label_anchor: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContributorTag {
    pub question_id: String,
    pub attempts: u64,
    pub correct: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeGlyph {
    /// Canonical position of the hyperedge in the model.
    pub edge: usize,
    pub id: String,
    pub topics: Vec<String>,
    pub coverage: u64,
    pub achievement_num: u64,
    pub achievement_den: u64,
    pub contributors: Vec<ContributorTag>,
    pub status: EdgeStatus,
    pub geometry: EdgeGeometry,
    pub style: EdgeStyle,
}

impl EdgeGlyph {
    pub fn arity(&self) -> usize {
        self.topics.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Legend {
    pub color_stops: Vec<(f64, Rgb)>,
    /// Visible coverage range mapped onto `width_range`.
    pub coverage_range: Option<(u64, u64)>,
    pub width_range: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum ZItem {
    Edge(usize),
    Vertex(usize),
}

/// Everything needed to draw one view, in drawing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SceneGraph {
    pub width: f64,
    pub height: f64,
    pub title: String,
    pub vertices: Vec<VertexGlyph>,
    /// Hyperedge glyphs, highest arity first.
    pub edges: Vec<EdgeGlyph>,
    pub legend: Legend,
    /// Hulls and segments, then vertices, then self-loops.
    pub z_order: Vec<ZItem>,
}

const LABEL_GAP: f64 = 8.0;
const LABEL_HALF_HEIGHT: f64 = 6.5;

fn vertex_glyphs(tdm: &Tdm, positions: &[Point], config: &LayoutConfig) -> Vec<VertexGlyph> {
    tdm.vertices()
        .iter()
        .zip(positions)
        .map(|(v, &p)| {
            let dir = config.outward(p);
            // Clear the widest possible self-loop, plus half the text height
            // when the label sits above or below the vertex.
            let dist = config.vertex_radius
                + 2.0 * config.self_loop_offset
                + config.stroke_max / 2.0
                + LABEL_GAP
                + LABEL_HALF_HEIGHT * dir.y.abs();
            let anchor = if dir.x > 0.3 {
                "start"
            } else if dir.x < -0.3 {
                "end"
            } else {
                "middle"
            };
            VertexGlyph {
                index: v.index,
                label: v.label.clone(),
                position: p,
                radius: config.vertex_radius,
                label_position: p.add(dir.scale(dist)),
                label_anchor: anchor,
            }
        })
        .collect()
}

/// Builds the scene for `view`. Positions come from the model alone, so every
/// view of one model shares them.
pub fn build_scene(
    tdm: &Tdm,
    view: &ViewModel,
    positions: &[Point],
    config: &LayoutConfig,
    hide_greyed: bool,
    title: impl Into<String>,
) -> SceneGraph {
    let legend_ranges = view.legend.as_ref();
    let mut edges: Vec<EdgeGlyph> = view
        .statuses
        .iter()
        .filter(|&&(_, status)| !(hide_greyed && status == EdgeStatus::Greyed))
        .map(|&(pos, status)| {
            let edge = &tdm.hyperedges()[pos];
            let achv = edge.achievement();
            EdgeGlyph {
                edge: pos,
                id: Tdm::edge_id(pos),
                topics: tdm
                    .labels(&edge.topics)
                    .into_iter()
                    .map(str::to_string)
                    .collect(),
                coverage: edge.coverage,
                achievement_num: achv.numerator(),
                achievement_den: achv.denominator(),
                contributors: edge
                    .contributors
                    .iter()
                    .map(|c| ContributorTag {
                        question_id: c.question_id.clone(),
                        attempts: c.attempts,
                        correct: c.correct,
                    })
                    .collect(),
                status,
                geometry: edge_geometry(&edge.topics, positions, config),
                style: style_edge(edge, status, legend_ranges, config),
            }
        })
        .collect();
    // Stable: ties keep canonical order.
    edges.sort_by_key(|e| std::cmp::Reverse(e.arity()));

    let vertices = vertex_glyphs(tdm, positions, config);
    let loops_from = edges
        .iter()
        .position(|e| e.arity() == 1)
        .unwrap_or(edges.len());
    let z_order = (0..loops_from)
        .map(ZItem::Edge)
        .chain((0..vertices.len()).map(ZItem::Vertex))
        .chain((loops_from..edges.len()).map(ZItem::Edge))
        .collect();

    SceneGraph {
        width: config.width,
        height: config.height,
        title: title.into(),
        vertices,
        edges,
        legend: Legend {
            color_stops: vec![(0.0, RAMP_LOW), (0.5, RAMP_MID), (1.0, RAMP_HIGH)],
            coverage_range: legend_ranges.map(|l| (l.coverage_min, l.coverage_max)),
            width_range: (config.stroke_min, config.stroke_max),
        },
        z_order,
    }
}
