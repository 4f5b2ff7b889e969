//! Connectivity evaluation: SCC size, average degree, dead-end counts, and
//! before/after comparison of a vanilla, enriched, and combined graph.
//!
//! Reported percentages are rounded half-up to two decimals. The underlying
//! ratios (`avg_degree`, SCC fraction) are kept unrounded in memory; rounding
//! happens where a value is defined as a percentage or at serialization.

mod report;
mod scc;

pub use report::{metrics_to_json, render_metrics_text, render_text_report, report_to_json};
pub use scc::{tarjan_scc, SccResult};

use thiserror::Error;

use crate::graph::PageGraph;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    /// Compared metrics were computed over different node universes.
    #[error("node universes differ: vanilla has {vanilla} nodes, {which} has {got}")]
    UniverseMismatch {
        vanilla: usize,
        which: &'static str,
        got: usize,
    },
}

/// Connectivity measurements for one graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphMetrics {
    pub node_count: usize,
    pub largest_scc: usize,
    /// Largest SCC as a percentage of nodes, rounded half-up to 2 decimals.
    pub largest_scc_pct: f64,
    /// Mean out-degree `edges / nodes`, unrounded.
    pub avg_degree: f64,
    pub deadend_count: usize,
    /// Dead ends as a percentage of nodes, rounded half-up to 2 decimals.
    pub deadend_pct: f64,
}

impl GraphMetrics {
    /// Builds metrics from already-known counts, e.g. externally reported
    /// figures. Percentages are derived with the same rounding as
    /// [`metrics`].
    pub fn from_counts(
        node_count: usize,
        largest_scc: usize,
        avg_degree: f64,
        deadend_count: usize,
    ) -> Self {
        GraphMetrics {
            node_count,
            largest_scc,
            largest_scc_pct: percentage(largest_scc, node_count),
            avg_degree,
            deadend_count,
            deadend_pct: percentage(deadend_count, node_count),
        }
    }
}

/// Measures a graph: node count, largest SCC, mean out-degree, dead ends.
pub fn metrics(graph: &PageGraph) -> GraphMetrics {
    let node_count = graph.node_count();
    let avg_degree = if node_count == 0 {
        0.0
    } else {
        graph.edge_count() as f64 / node_count as f64
    };
    GraphMetrics::from_counts(
        node_count,
        tarjan_scc(graph).largest_size,
        avg_degree,
        graph.deadend_count(),
    )
}

/// Vanilla/enriched/combined metrics plus combined-vs-vanilla deltas.
///
/// A delta is `None` when its vanilla denominator is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub vanilla: GraphMetrics,
    pub enriched: GraphMetrics,
    pub combined: GraphMetrics,
    /// `(combined.largest_scc - vanilla.largest_scc) / vanilla.largest_scc`, in percent.
    pub scc_improvement_pct: Option<f64>,
    /// Same delta on `avg_degree`.
    pub degree_improvement_pct: Option<f64>,
    /// `(vanilla.deadend_count - combined.deadend_count) / vanilla.deadend_count`, in percent.
    pub deadend_reduction_pct: Option<f64>,
}

/// Compares three graphs measured over the same node universe.
pub fn compare(
    vanilla: GraphMetrics,
    enriched: GraphMetrics,
    combined: GraphMetrics,
) -> Result<ComparisonReport, AnalysisError> {
    for (which, m) in [("enriched", &enriched), ("combined", &combined)] {
        if m.node_count != vanilla.node_count {
            return Err(AnalysisError::UniverseMismatch {
                vanilla: vanilla.node_count,
                which,
                got: m.node_count,
            });
        }
    }
    let scc_improvement_pct = relative_delta_pct(
        vanilla.largest_scc as f64,
        combined.largest_scc as f64 - vanilla.largest_scc as f64,
    );
    let degree_improvement_pct =
        relative_delta_pct(vanilla.avg_degree, combined.avg_degree - vanilla.avg_degree);
    let deadend_reduction_pct = relative_delta_pct(
        vanilla.deadend_count as f64,
        vanilla.deadend_count as f64 - combined.deadend_count as f64,
    );
    Ok(ComparisonReport {
        vanilla,
        enriched,
        combined,
        scc_improvement_pct,
        degree_improvement_pct,
        deadend_reduction_pct,
    })
}

fn relative_delta_pct(denominator: f64, delta: f64) -> Option<f64> {
    if denominator == 0.0 {
        None
    } else {
        Some(round_half_up_2(delta / denominator * 100.0))
    }
}

/// `part / whole` as a percentage, rounded half-up to 2 decimals with exact
/// integer arithmetic. Zero when `whole` is zero.
pub fn percentage(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        return 0.0;
    }
    let hundredths = (20_000 * part as u128 + whole as u128) / (2 * whole as u128);
    hundredths as f64 / 100.0
}

/// Rounds to 2 decimals, ties away from zero.
pub fn round_half_up_2(value: f64) -> f64 {
    if value >= 0.0 {
        (value * 100.0 + 0.5).floor() / 100.0
    } else {
        -((-value * 100.0 + 0.5).floor() / 100.0)
    }
}
