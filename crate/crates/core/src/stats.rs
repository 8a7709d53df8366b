use std::fmt::Write as _;

use serde::Serialize;

use crate::hypergraph::Tdm;
use crate::levels::partition_levels;

pub const HISTOGRAM_BINS: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub level: usize,
    pub edges: usize,
    pub coverage: u64,
}

/// Edges whose achievement falls in `[lower, upper)` percent (the last bin includes 100).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistogramBin {
    pub lower: u64,
    pub upper: u64,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelStats {
    pub vertices: usize,
    pub edges: usize,
    pub zero_coverage_sets: usize,
    pub total_coverage: u64,
    pub levels: Vec<LevelStats>,
    pub achievement_histogram: Vec<HistogramBin>,
}

pub fn model_stats(tdm: &Tdm) -> ModelStats {
    let partition = partition_levels(tdm);
    let levels = partition
        .iter()
        .map(|(level, edges)| LevelStats {
            level,
            edges: edges.len(),
            coverage: edges.iter().map(|&e| tdm.hyperedges()[e].coverage).sum(),
        })
        .collect();
    let width = 100 / HISTOGRAM_BINS;
    let mut achievement_histogram: Vec<HistogramBin> = (0..HISTOGRAM_BINS)
        .map(|b| HistogramBin {
            lower: b * width,
            upper: (b + 1) * width,
            edges: 0,
        })
        .collect();
    for e in tdm.hyperedges() {
        let a = e.achievement();
        let bin = (a.numerator() * HISTOGRAM_BINS / a.denominator()).min(HISTOGRAM_BINS - 1);
        achievement_histogram[bin as usize].edges += 1;
    }
    ModelStats {
        vertices: tdm.vertex_count(),
        edges: tdm.edge_count(),
        zero_coverage_sets: tdm.zero_coverage_sets().len(),
        total_coverage: tdm.total_coverage(),
        levels,
        achievement_histogram,
    }
}

impl ModelStats {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} vertices, {} hyperedges, {} zero-coverage sets",
            self.vertices, self.edges, self.zero_coverage_sets
        );
        let _ = writeln!(out, "total coverage: {}", self.total_coverage);
        out.push_str("level  edges  coverage\n");
        for l in &self.levels {
            let _ = writeln!(out, "{:>5}  {:>5}  {:>8}", l.level, l.edges, l.coverage);
        }
        out.push_str("achievement histogram\n");
        for b in &self.achievement_histogram {
            let close = if b.upper == 100 { ']' } else { ')' };
            let line = format!(
                "[{:>3}%, {:>3}%{close}  {:>3}  {}",
                b.lower,
                b.upper,
                b.edges,
                "#".repeat(b.edges)
            );
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}
