//! Deterministic drawing of filtered views.
//!
//! Vertices sit on a circle; self-loops, segments and rounded hulls draw
//! hyperedges of arity 1, 2 and 3+. Colour encodes achievement, stroke width
//! encodes coverage (normalised over the visible edges), and greyed edges are
//! drawn in neutral grey at reduced opacity.

pub mod dot;
pub mod geometry;
pub mod layout;
pub mod scene;
pub mod style;
pub mod svg;

pub use dot::emit_dot;
pub use geometry::{edge_geometry, EdgeGeometry};
pub use layout::{layout_vertices, LayoutConfig, LayoutError, Point};
pub use scene::{build_scene, SceneGraph};
pub use style::{ramp_color, style_edge, EdgeStyle, Rgb};
pub use svg::{emit_panels, emit_svg};

use crate::hypergraph::Tdm;
use crate::levels::{compose_view, FilterError, FilterSpec, LevelPartition, ViewMode, ViewModel};

/// Fixed three-decimal formatting; never prints `-0.000`.
pub fn fmt3(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

pub fn view_title(view: &ViewModel) -> String {
    let levels = match (view.level, view.spec.mode) {
        (0, _) => "No levels".to_string(),
        (1, _) => "Level 1".to_string(),
        (k, ViewMode::Accumulative) => format!("Level {k} (accumulative)"),
        (k, ViewMode::Cumulative) => format!("Levels 1-{k} (cumulative)"),
    };
    let mut filter = view.spec.clone();
    filter.level = None;
    let q = filter.to_query();
    if q.is_empty() {
        levels
    } else {
        format!("{levels}: {q}")
    }
}

/// One panel of a level strip.
#[derive(Debug, Clone)]
pub struct Panel {
    pub level: usize,
    pub view: ViewModel,
    pub scene: SceneGraph,
}

/// Panels for levels `1..=k` of `spec` (mode preserved), sharing one layout.
/// Empty levels are skipped unless `include_empty`; if nothing is left the
/// anchor level is drawn on its own.
pub fn level_strip(
    tdm: &Tdm,
    partition: &LevelPartition,
    spec: &FilterSpec,
    config: &LayoutConfig,
    include_empty: bool,
    hide_greyed: bool,
) -> Result<Vec<Panel>, FilterError> {
    spec.validate(tdm)?;
    let positions = layout_vertices(tdm, config);
    let anchor = spec.effective_level(tdm);
    let panel = |level: usize| -> Result<Panel, FilterError> {
        let mut s = spec.clone();
        s.level = (level > 0).then_some(level);
        let view = compose_view(tdm, partition, &s)?;
        let scene = build_scene(
            tdm,
            &view,
            &positions,
            config,
            hide_greyed,
            view_title(&view),
        );
        Ok(Panel { level, view, scene })
    };
    let mut panels = Vec::new();
    for level in 1..=anchor {
        if include_empty || !partition.level(level).is_empty() {
            panels.push(panel(level)?);
        }
    }
    if panels.is_empty() {
        panels.push(panel(anchor)?);
    }
    Ok(panels)
}

pub fn emit_level_strip(
    tdm: &Tdm,
    partition: &LevelPartition,
    spec: &FilterSpec,
    config: &LayoutConfig,
    include_empty: bool,
    hide_greyed: bool,
) -> Result<String, FilterError> {
    let panels = level_strip(tdm, partition, spec, config, include_empty, hide_greyed)?;
    let scenes: Vec<SceneGraph> = panels.into_iter().map(|p| p.scene).collect();
    Ok(emit_panels(&scenes))
}
