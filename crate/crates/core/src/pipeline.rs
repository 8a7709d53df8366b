//! One entry point from a model plus a query to output bytes, shared by the
//! command line and the HTTP service so both produce identical documents.

use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Tdm;
use crate::levels::{partition_levels, EdgeStatus, FilterError, FilterSpec, ViewMode};
use crate::render::{self, LayoutConfig, Panel, SceneGraph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ViewError {
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    Option {
        key: &'static str,
        value: String,
        reason: &'static str,
    },
    #[error(transparent)]
    Layout(#[from] render::LayoutError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Svg,
    Json,
    Dot,
}

impl OutputFormat {
    pub fn content_type(self) -> &'static str {
        match self {
            OutputFormat::Svg => "image/svg+xml",
            OutputFormat::Json => "application/json",
            OutputFormat::Dot => "text/vnd.graphviz",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Svg => "svg",
            OutputFormat::Json => "json",
            OutputFormat::Dot => "dot",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(Self::Svg),
            "json" => Ok(Self::Json),
            "dot" => Ok(Self::Dot),
            _ => Err("expected `svg`, `json` or `dot`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RenderOptions {
    /// One panel per level instead of a single view.
    pub strip: bool,
    /// Keep panels for empty levels in a strip.
    pub include_empty: bool,
    /// Drop greyed edges from the drawing (they stay in the report).
    pub hide_greyed: bool,
}

/// Filter spec plus presentation options, as carried by a view query.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ViewRequest {
    pub spec: FilterSpec,
    pub options: RenderOptions,
    pub format: OutputFormat,
}

fn parse_flag(key: &'static str, value: &str) -> Result<bool, ViewError> {
    match value {
        "1" | "true" | "" => Ok(true),
        "0" | "false" => Ok(false),
        _ => Err(ViewError::Option {
            key,
            value: value.to_string(),
            reason: "expected `true` or `false`",
        }),
    }
}

impl ViewRequest {
    /// Splits `format`, `strip`, `include_empty` and `hide_greyed` off the
    /// pairs and parses the rest as a [`FilterSpec`].
    pub fn from_pairs<I, K, V>(pairs: I) -> Result<Self, ViewError>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut req = ViewRequest::default();
        let mut seen: Vec<&'static str> = Vec::new();
        let mut rest = Vec::new();
        for (k, v) in pairs {
            let (key, value) = (k.as_ref(), v.as_ref());
            let known: Option<&'static str> = ["format", "strip", "include_empty", "hide_greyed"]
                .into_iter()
                .find(|&n| n == key);
            let Some(name) = known else {
                rest.push((key.to_string(), value.to_string()));
                continue;
            };
            if seen.contains(&name) {
                return Err(FilterError::DuplicateKey(name.to_string()).into());
            }
            seen.push(name);
            match name {
                "format" => {
                    req.format = value.parse().map_err(|reason| ViewError::Option {
                        key: "format",
                        value: value.to_string(),
                        reason,
                    })?;
                }
                "strip" => req.options.strip = parse_flag("strip", value)?,
                "include_empty" => req.options.include_empty = parse_flag("include_empty", value)?,
                _ => req.options.hide_greyed = parse_flag("hide_greyed", value)?,
            }
        }
        req.spec = FilterSpec::from_pairs(rest)?;
        Ok(req)
    }

    pub fn from_query(query: &str) -> Result<Self, ViewError> {
        Self::from_pairs(form_urlencoded::parse(query.as_bytes()))
    }

    pub fn to_query(&self) -> String {
        let mut pairs: Vec<(&str, String)> = self.spec.to_pairs();
        if self.options.strip {
            pairs.push(("strip", "true".into()));
        }
        if self.options.include_empty {
            pairs.push(("include_empty", "true".into()));
        }
        if self.options.hide_greyed {
            pairs.push(("hide_greyed", "true".into()));
        }
        pairs.push(("format", self.format.extension().into()));
        form_urlencoded::Serializer::new(String::new())
            .extend_pairs(pairs)
            .finish()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeReport {
    pub id: String,
    pub topics: Vec<String>,
    pub level: usize,
    pub status: EdgeStatus,
    pub coverage: u64,
    pub achievement_num: u64,
    pub achievement_den: u64,
    pub achievement: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelSelection {
    pub level: usize,
    pub selected: Vec<String>,
    pub greyed: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PanelReport {
    pub level: usize,
    pub mode: ViewMode,
    pub active_levels: Vec<usize>,
    pub selected: Vec<String>,
    pub greyed: Vec<String>,
    /// Selection split by level, in level order.
    pub levels: Vec<LevelSelection>,
    pub edges: Vec<EdgeReport>,
    pub scene: SceneGraph,
}

/// Machine-readable selection report: edge id to status, per panel.
#[derive(Debug, Clone, Serialize)]
pub struct ViewReport {
    pub query: String,
    pub strip: bool,
    pub panels: Vec<PanelReport>,
}

fn ids(edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| Tdm::edge_id(e)).collect()
}

fn panel_report(tdm: &Tdm, panel: Panel) -> PanelReport {
    let view = panel.view;
    let edges = view
        .statuses
        .iter()
        .map(|&(pos, status)| {
            let e = &tdm.hyperedges()[pos];
            let a = e.achievement();
            EdgeReport {
                id: Tdm::edge_id(pos),
                topics: tdm
                    .labels(&e.topics)
                    .into_iter()
                    .map(str::to_string)
                    .collect(),
                level: e.arity(),
                status,
                coverage: e.coverage,
                achievement_num: a.numerator(),
                achievement_den: a.denominator(),
                achievement: a.display_2dp(),
            }
        })
        .collect();
    let levels = view
        .active_levels
        .iter()
        .map(|&k| {
            let in_level = |s: EdgeStatus| -> Vec<usize> {
                view.statuses
                    .iter()
                    .filter(|&&(pos, st)| st == s && tdm.hyperedges()[pos].arity() == k)
                    .map(|&(pos, _)| pos)
                    .collect()
            };
            LevelSelection {
                level: k,
                selected: ids(&in_level(EdgeStatus::Selected)),
                greyed: ids(&in_level(EdgeStatus::Greyed)),
            }
        })
        .collect();
    PanelReport {
        level: panel.level,
        mode: view.spec.mode,
        active_levels: view.active_levels.clone(),
        selected: ids(&view.selected()),
        greyed: ids(&view.greyed()),
        levels,
        edges,
        scene: panel.scene,
    }
}

/// Panels for a request: one, or one per level for a strip.
pub fn panels(
    tdm: &Tdm,
    req: &ViewRequest,
    config: &LayoutConfig,
) -> Result<Vec<Panel>, ViewError> {
    config.validate()?;
    let partition = partition_levels(tdm);
    let opts = req.options;
    if opts.strip {
        return Ok(render::level_strip(
            tdm,
            &partition,
            &req.spec,
            config,
            opts.include_empty,
            opts.hide_greyed,
        )?);
    }
    let view = crate::levels::compose_view(tdm, &partition, &req.spec)?;
    let positions = render::layout_vertices(tdm, config);
    let scene = render::build_scene(
        tdm,
        &view,
        &positions,
        config,
        opts.hide_greyed,
        render::view_title(&view),
    );
    Ok(vec![Panel {
        level: view.level,
        view,
        scene,
    }])
}

pub fn view_report(
    tdm: &Tdm,
    req: &ViewRequest,
    config: &LayoutConfig,
) -> Result<ViewReport, ViewError> {
    let panels = panels(tdm, req, config)?;
    Ok(ViewReport {
        query: req.spec.to_query(),
        strip: req.options.strip,
        panels: panels.into_iter().map(|p| panel_report(tdm, p)).collect(),
    })
}

pub fn report_json(report: &ViewReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Renders `req` in its requested format.
pub fn render_view(
    tdm: &Tdm,
    req: &ViewRequest,
    config: &LayoutConfig,
) -> Result<String, ViewError> {
    match req.format {
        OutputFormat::Json => Ok(report_json(&view_report(tdm, req, config)?)),
        OutputFormat::Svg => {
            let scenes: Vec<SceneGraph> = panels(tdm, req, config)?
                .into_iter()
                .map(|p| p.scene)
                .collect();
            Ok(render::emit_panels(&scenes))
        }
        OutputFormat::Dot => Ok(panels(tdm, req, config)?
            .iter()
            .map(|p| render::emit_dot(&p.scene))
            .collect()),
    }
}
