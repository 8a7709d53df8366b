//! Graphviz export. Hyperedges of arity three or more are expanded into a
//! synthetic point node joined to every member; such nodes carry
//! `synthetic=true` and the hyperedge id.

use std::fmt::Write as _;

use super::fmt3;
use super::scene::SceneGraph;
use crate::levels::EdgeStatus;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit_dot(scene: &SceneGraph) -> String {
    let mut out = String::from("graph tdm {\n");
    let _ = writeln!(out, "  label={};", quote(&scene.title));
    out.push_str("  layout=neato;\n  node [shape=circle, fontname=\"sans-serif\"];\n");
    for v in &scene.vertices {
        // neato reads points; flip y so the picture matches the SVG.
        let _ = writeln!(
            out,
            "  {} [pos=\"{},{}!\"];",
            quote(&v.label),
            fmt3(v.position.x),
            fmt3(scene.height - v.position.y)
        );
    }
    for e in &scene.edges {
        let status = match e.status {
            EdgeStatus::Selected => "selected",
            EdgeStatus::Greyed => "greyed",
        };
        let attrs = format!(
            "id={}, color=\"{}\", penwidth={}, coverage={}, achievement=\"{}/{}\", status={}",
            quote(&e.id),
            e.style.color,
            fmt3(e.style.width),
            e.coverage,
            e.achievement_num,
            e.achievement_den,
            status
        );
        match e.topics.as_slice() {
            [a] => {
                let _ = writeln!(out, "  {} -- {} [{attrs}];", quote(a), quote(a));
            }
            [a, b] => {
                let _ = writeln!(out, "  {} -- {} [{attrs}];", quote(a), quote(b));
            }
            members => {
                let hub = quote(&format!("{}*", e.id));
                let _ = writeln!(
                    out,
                    "  {hub} [shape=point, label=\"\", synthetic=true, hyperedge={}, comment=\"synthetic node for hyperedge {}\"];",
                    quote(&e.id),
                    e.id
                );
                for m in members {
                    let _ = writeln!(out, "  {hub} -- {} [{attrs}];", quote(m));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
