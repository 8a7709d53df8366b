//! JSON persistence of a [`Tdm`].
//!
//! Field order is fixed by the struct declarations below; snapshot tests and
//! the HTTP service rely on it.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Contributor, Hyperedge, Tdm, TopicSet, TopicVertex};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub index: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributorDoc {
    pub question_id: String,
    pub attempts: u64,
    pub correct: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub topics: Vec<String>,
    pub coverage: u64,
    pub achievement_num: u64,
    pub achievement_den: u64,
    pub contributors: Vec<ContributorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdmDocument {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    /// Tag sets with zero coverage.
    pub diagnostics: Vec<Vec<String>>,
}

fn labels(tdm: &Tdm, set: &TopicSet) -> Vec<String> {
    tdm.labels(set).into_iter().map(str::to_string).collect()
}

impl From<&Tdm> for TdmDocument {
    fn from(tdm: &Tdm) -> Self {
        let vertices = tdm
            .vertices()
            .iter()
            .map(|v| VertexDoc {
                index: v.index,
                label: v.label.clone(),
            })
            .collect();
        let edges = tdm
            .hyperedges()
            .iter()
            .enumerate()
            .map(|(pos, e)| {
                let achv = e.achievement();
                EdgeDoc {
                    id: Tdm::edge_id(pos),
                    topics: labels(tdm, &e.topics),
                    coverage: e.coverage,
                    achievement_num: achv.numerator(),
                    achievement_den: achv.denominator(),
                    contributors: e
                        .contributors
                        .iter()
                        .map(|c| ContributorDoc {
                            question_id: c.question_id.clone(),
                            attempts: c.attempts,
                            correct: c.correct,
                        })
                        .collect(),
                }
            })
            .collect();
        let diagnostics = tdm
            .zero_coverage_sets()
            .iter()
            .map(|s| labels(tdm, s))
            .collect();
        Self {
            vertices,
            edges,
            diagnostics,
        }
    }
}

fn invalid(msg: impl Into<String>) -> ModelError {
    ModelError::Invalid(msg.into())
}

impl TryFrom<TdmDocument> for Tdm {
    type Error = ModelError;

    fn try_from(doc: TdmDocument) -> Result<Self, ModelError> {
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        for (i, v) in doc.vertices.into_iter().enumerate() {
            if v.index != i {
                return Err(invalid(format!(
                    "vertex {} has index {}, expected {i}",
                    v.label, v.index
                )));
            }
            if let Some(prev) = vertices.last().map(|p: &TopicVertex| p.label.as_str()) {
                if prev >= v.label.as_str() {
                    return Err(invalid(format!(
                        "vertex labels not strictly ascending at {}",
                        v.label
                    )));
                }
            }
            vertices.push(TopicVertex {
                index: v.index,
                label: v.label,
            });
        }
        let resolve = |topics: &[String]| -> Result<TopicSet, ModelError> {
            let mut idx = Vec::with_capacity(topics.len());
            for t in topics {
                let i = vertices
                    .binary_search_by(|v| v.label.as_str().cmp(t))
                    .map_err(|_| invalid(format!("unknown topic {t}")))?;
                idx.push(i);
            }
            let set = TopicSet::new(idx).map_err(|e| invalid(e.to_string()))?;
            if set.arity() != topics.len() {
                return Err(invalid(format!("duplicate topic in {topics:?}")));
            }
            Ok(set)
        };

        let mut hyperedges: Vec<Hyperedge> = Vec::with_capacity(doc.edges.len());
        for (pos, e) in doc.edges.into_iter().enumerate() {
            let expected_id = Tdm::edge_id(pos);
            if e.id != expected_id {
                return Err(invalid(format!(
                    "edge id {} out of sequence, expected {expected_id}",
                    e.id
                )));
            }
            let topics = resolve(&e.topics)?;
            if let Some(prev) = hyperedges.last() {
                if prev.topics >= topics {
                    return Err(invalid(format!("edge {} not in canonical order", e.id)));
                }
            }
            if e.coverage == 0 {
                return Err(invalid(format!("edge {} has zero coverage", e.id)));
            }
            if e.achievement_den != e.coverage || e.achievement_num > e.achievement_den {
                return Err(invalid(format!(
                    "edge {} achievement {}/{} inconsistent with coverage {}",
                    e.id, e.achievement_num, e.achievement_den, e.coverage
                )));
            }
            let attempts: u64 = e.contributors.iter().map(|c| c.attempts).sum();
            let correct: u64 = e.contributors.iter().map(|c| c.correct).sum();
            if attempts != e.coverage || correct != e.achievement_num {
                return Err(invalid(format!(
                    "edge {} contributors do not sum to its weights",
                    e.id
                )));
            }
            if e.contributors.iter().any(|c| c.correct > c.attempts) {
                return Err(invalid(format!(
                    "edge {} has a contributor with correct > attempts",
                    e.id
                )));
            }
            hyperedges.push(Hyperedge {
                topics,
                coverage: e.coverage,
                correct: e.achievement_num,
                contributors: e
                    .contributors
                    .into_iter()
                    .map(|c| Contributor {
                        question_id: c.question_id,
                        attempts: c.attempts,
                        correct: c.correct,
                    })
                    .collect(),
            });
        }

        let edge_sets: HashSet<&TopicSet> = hyperedges.iter().map(|e| &e.topics).collect();
        let mut diagnostics = Vec::with_capacity(doc.diagnostics.len());
        for d in &doc.diagnostics {
            let set = resolve(d)?;
            if edge_sets.contains(&set) {
                return Err(invalid(format!("diagnostic set {d:?} is also an edge")));
            }
            diagnostics.push(set);
        }
        diagnostics.sort();

        Ok(Tdm {
            vertices,
            hyperedges,
            diagnostics,
        })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(tdm: &Tdm) -> String {
    let mut s = serde_json::to_string_pretty(&TdmDocument::from(tdm)).expect("model serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Tdm, ModelError> {
    let doc: TdmDocument = serde_json::from_str(text)?;
    Tdm::try_from(doc)
}
