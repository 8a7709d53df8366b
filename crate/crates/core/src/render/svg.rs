//! SVG 1.1 writer. Output is a pure function of the scenes: fixed element and
//! attribute order, every coordinate printed with three decimals.

use std::fmt::Write as _;

use super::fmt3;
use super::geometry::EdgeGeometry;
use super::scene::{EdgeGlyph, SceneGraph, VertexGlyph, ZItem};
use crate::levels::EdgeStatus;

pub const TITLE_HEIGHT: f64 = 28.0;
pub const LEGEND_HEIGHT: f64 = 64.0;
const HULL_FILL_OPACITY: f64 = 0.25;
const RAMP_ID: &str = "tdm-achievement-ramp";

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Standalone document for one scene.
pub fn emit_svg(scene: &SceneGraph) -> String {
    emit_panels(std::slice::from_ref(scene))
}

/// Standalone document with the scenes side by side, left to right.
pub fn emit_panels(scenes: &[SceneGraph]) -> String {
    let width: f64 = scenes.iter().map(|s| s.width).sum();
    let height = scenes.iter().map(|s| s.height).fold(0.0, f64::max) + TITLE_HEIGHT + LEGEND_HEIGHT;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = fmt3(width),
        h = fmt3(height)
    );
    write_defs(&mut out, scenes);
    let _ = writeln!(
        out,
        "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#FFFFFF\"/>",
        fmt3(width),
        fmt3(height)
    );
    let mut x = 0.0;
    for (i, scene) in scenes.iter().enumerate() {
        write_panel(&mut out, scene, i, x);
        x += scene.width;
    }
    out.push_str("</svg>\n");
    out
}

fn write_defs(out: &mut String, scenes: &[SceneGraph]) {
    let Some(first) = scenes.first() else {
        return;
    };
    out.push_str("<defs>\n");
    let _ = writeln!(
        out,
        "<linearGradient id=\"{RAMP_ID}\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">"
    );
    for (offset, color) in &first.legend.color_stops {
        let _ = writeln!(
            out,
            "<stop offset=\"{}\" stop-color=\"{color}\"/>",
            fmt3(*offset)
        );
    }
    out.push_str("</linearGradient>\n</defs>\n");
}

fn write_panel(out: &mut String, scene: &SceneGraph, index: usize, x: f64) {
    let _ = writeln!(
        out,
        "<g class=\"panel\" data-panel=\"{index}\" transform=\"translate({} 0)\">",
        fmt3(x)
    );
    let _ = writeln!(
        out,
        "<text class=\"panel-title\" x=\"{}\" y=\"19\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>",
        fmt3(scene.width / 2.0),
        escape(&scene.title)
    );
    let _ = writeln!(
        out,
        "<g class=\"graph\" transform=\"translate(0 {})\">",
        fmt3(TITLE_HEIGHT)
    );
    for item in &scene.z_order {
        match *item {
            ZItem::Edge(i) => write_edge(out, &scene.edges[i]),
            ZItem::Vertex(i) => write_vertex(out, &scene.vertices[i]),
        }
    }
    out.push_str("</g>\n");
    write_legend(out, scene);
    out.push_str("</g>\n");
}

fn status_name(s: EdgeStatus) -> &'static str {
    match s {
        EdgeStatus::Selected => "selected",
        EdgeStatus::Greyed => "greyed",
    }
}

fn edge_data_attrs(e: &EdgeGlyph) -> String {
    let contributors: Vec<String> = e
        .contributors
        .iter()
        .map(|c| format!("{}:{}:{}", c.question_id, c.attempts, c.correct))
        .collect();
    let achv = crate::Achievement::new(e.achievement_num, e.achievement_den)
        .expect("visible edges have coverage");
    format!(
        "data-edge=\"{}\" data-topics=\"{}\" data-coverage=\"{}\" data-achievement=\"{}\" data-achievement-display=\"{}\" data-status=\"{}\" data-contributors=\"{}\"",
        escape(&e.id),
        escape(&e.topics.join(",")),
        e.coverage,
        achv,
        achv.display_2dp(),
        status_name(e.status),
        escape(&contributors.join(";")),
    )
}

fn edge_title(e: &EdgeGlyph) -> String {
    let achv = crate::Achievement::new(e.achievement_num, e.achievement_den)
        .expect("visible edges have coverage");
    let mut t = format!(
        "{} {{{}}}: coverage {}, achievement {} ({}%)",
        e.id,
        e.topics.join(", "),
        e.coverage,
        achv,
        achv.percent()
    );
    if e.status == EdgeStatus::Greyed {
        t.push_str(" [filtered out]");
    }
    escape(&t)
}

fn write_edge(out: &mut String, e: &EdgeGlyph) {
    let s = &e.style;
    let data = edge_data_attrs(e);
    let title = edge_title(e);
    let paint = format!(
        "stroke=\"{}\" stroke-width=\"{}\" opacity=\"{}\"",
        s.color,
        fmt3(s.width),
        fmt3(s.opacity)
    );
    match &e.geometry {
        EdgeGeometry::SelfLoop { center, radius } => {
            let _ = writeln!(
                out,
                "<circle class=\"edge self-loop\" {data} cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" {paint}><title>{title}</title></circle>",
                fmt3(center.x),
                fmt3(center.y),
                fmt3(*radius)
            );
        }
        EdgeGeometry::Segment { from, to } => {
            let _ = writeln!(
                out,
                "<line class=\"edge segment\" {data} x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-linecap=\"round\" {paint}><title>{title}</title></line>",
                fmt3(from.x),
                fmt3(from.y),
                fmt3(to.x),
                fmt3(to.y)
            );
        }
        EdgeGeometry::Hull { .. } => {
            let d = e.geometry.hull_path().expect("hull geometry has a path");
            let _ = writeln!(
                out,
                "<path class=\"edge hull\" {data} d=\"{d}\" fill=\"{}\" fill-opacity=\"{}\" stroke-linejoin=\"round\" {paint}><title>{title}</title></path>",
                s.color,
                fmt3(HULL_FILL_OPACITY)
            );
        }
    }
}

fn write_vertex(out: &mut String, v: &VertexGlyph) {
    let _ = writeln!(
        out,
        "<g class=\"vertex\" data-topic=\"{}\"><circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#FFFFFF\" stroke=\"#37474F\" stroke-width=\"2.000\"/><text x=\"{}\" y=\"{}\" text-anchor=\"{}\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text></g>",
        escape(&v.label),
        fmt3(v.position.x),
        fmt3(v.position.y),
        fmt3(v.radius),
        fmt3(v.label_position.x),
        fmt3(v.label_position.y),
        v.label_anchor,
        escape(&v.label)
    );
}

fn write_legend(out: &mut String, scene: &SceneGraph) {
    let top = TITLE_HEIGHT + scene.height;
    let _ = writeln!(
        out,
        "<g class=\"legend\" transform=\"translate(0 {})\">",
        fmt3(top)
    );
    let _ = writeln!(
        out,
        "<rect class=\"color-ramp\" x=\"16.000\" y=\"8.000\" width=\"160.000\" height=\"12.000\" fill=\"url(#{RAMP_ID})\"/>"
    );
    let _ = writeln!(
        out,
        "<text x=\"16.000\" y=\"36.000\" font-family=\"sans-serif\" font-size=\"11\">achievement 0</text>"
    );
    let _ = writeln!(
        out,
        "<text x=\"176.000\" y=\"36.000\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1</text>"
    );
    if let Some((lo, hi)) = scene.legend.coverage_range {
        let (wmin, wmax) = scene.legend.width_range;
        let samples: Vec<(u64, f64)> = if lo == hi {
            vec![(lo, (wmin + wmax) / 2.0)]
        } else {
            vec![(lo, wmin), (hi, wmax)]
        };
        for (i, (cov, w)) in samples.into_iter().enumerate() {
            let y = 14.0 + 24.0 * i as f64;
            let _ = writeln!(
                out,
                "<line class=\"width-ramp\" x1=\"208.000\" y1=\"{y}\" x2=\"248.000\" y2=\"{y}\" stroke=\"#616161\" stroke-width=\"{}\"/><text x=\"256.000\" y=\"{}\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"11\">coverage {cov}</text>",
                fmt3(w),
                fmt3(y),
                y = fmt3(y)
            );
        }
    }
    out.push_str("</g>\n");
}
