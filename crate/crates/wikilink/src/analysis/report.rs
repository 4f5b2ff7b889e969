//! Report serialization: a JSON document and a plain-text table layout.

use serde::Serialize;
use serde_json::Value;

use super::{round_half_up_2, ComparisonReport, GraphMetrics};

#[derive(Serialize)]
struct MetricsWire {
    node_count: usize,
    largest_scc: usize,
    largest_scc_pct: f64,
    avg_degree: f64,
    deadend_count: usize,
    deadend_pct: f64,
}

impl From<&GraphMetrics> for MetricsWire {
    fn from(m: &GraphMetrics) -> Self {
        MetricsWire {
            node_count: m.node_count,
            largest_scc: m.largest_scc,
            largest_scc_pct: m.largest_scc_pct,
            avg_degree: round_half_up_2(m.avg_degree),
            deadend_count: m.deadend_count,
            deadend_pct: m.deadend_pct,
        }
    }
}

#[derive(Serialize)]
struct ImprovementsWire {
    scc_pct: Option<f64>,
    degree_pct: Option<f64>,
    deadend_reduction_pct: Option<f64>,
}

#[derive(Serialize)]
struct ReportWire {
    vanilla: MetricsWire,
    enriched: MetricsWire,
    combined: MetricsWire,
    improvements: ImprovementsWire,
}

/// JSON form of a comparison report. Percentages and the average degree are
/// rounded to 2 decimals; undefined deltas serialize as `null`.
pub fn report_to_json(report: &ComparisonReport) -> Value {
    serde_json::to_value(ReportWire {
        vanilla: (&report.vanilla).into(),
        enriched: (&report.enriched).into(),
        combined: (&report.combined).into(),
        improvements: ImprovementsWire {
            scc_pct: report.scc_improvement_pct,
            degree_pct: report.degree_improvement_pct,
            deadend_reduction_pct: report.deadend_reduction_pct,
        },
    })
    .expect("report serialization is infallible")
}

/// JSON form of a single graph's metrics.
pub fn metrics_to_json(metrics: &GraphMetrics) -> Value {
    serde_json::to_value(MetricsWire::from(metrics)).expect("metrics serialization is infallible")
}

const ROW_LABELS: [&str; 3] = ["Vanilla", "Enriched", "Combined"];

/// Plain-text report: one table per measure, one row per graph, plus the
/// combined-vs-vanilla deltas.
pub fn render_text_report(report: &ComparisonReport) -> String {
    let rows = [&report.vanilla, &report.enriched, &report.combined];
    let mut out = String::new();

    out.push_str(&format!(
        "Size of the SCC ({} nodes total)\n",
        report.vanilla.node_count
    ));
    out.push_str(&format!("{:<12} {:>14} {:>9}\n", "Graph type", "Nodes in SCC", "%"));
    for (label, m) in ROW_LABELS.iter().zip(rows) {
        out.push_str(&format!(
            "{:<12} {:>14} {:>9.2}\n",
            label, m.largest_scc, m.largest_scc_pct
        ));
    }
    out.push('\n');

    out.push_str("Average degree of a node\n");
    out.push_str(&format!("{:<12} {:>14}\n", "Graph type", "Avg. degree"));
    for (label, m) in ROW_LABELS.iter().zip(rows) {
        out.push_str(&format!(
            "{:<12} {:>14.2}\n",
            label,
            round_half_up_2(m.avg_degree)
        ));
    }
    out.push('\n');

    out.push_str(&format!(
        "Dead-end articles ({} nodes total)\n",
        report.vanilla.node_count
    ));
    out.push_str(&format!("{:<12} {:>14} {:>9}\n", "Graph type", "Dead-end nodes", "%"));
    for (label, m) in ROW_LABELS.iter().zip(rows) {
        out.push_str(&format!(
            "{:<12} {:>14} {:>9.2}\n",
            label, m.deadend_count, m.deadend_pct
        ));
    }
    out.push('\n');

    out.push_str("Combined vs. vanilla\n");
    out.push_str(&format!(
        "{:<22} {}\n",
        "SCC improvement:",
        fmt_delta(report.scc_improvement_pct)
    ));
    out.push_str(&format!(
        "{:<22} {}\n",
        "Degree improvement:",
        fmt_delta(report.degree_improvement_pct)
    ));
    out.push_str(&format!(
        "{:<22} {}\n",
        "Dead-end reduction:",
        fmt_delta(report.deadend_reduction_pct)
    ));
    out
}

/// Plain-text form of a single graph's metrics.
pub fn render_metrics_text(metrics: &GraphMetrics) -> String {
    format!(
        "nodes: {}\nlargest SCC: {} ({:.2}%)\naverage degree: {:.2}\ndead ends: {} ({:.2}%)\n",
        metrics.node_count,
        metrics.largest_scc,
        metrics.largest_scc_pct,
        round_half_up_2(metrics.avg_degree),
        metrics.deadend_count,
        metrics.deadend_pct,
    )
}

fn fmt_delta(delta: Option<f64>) -> String {
    match delta {
        Some(v) => format!("{v:.2}%"),
        None => "undefined (vanilla denominator is zero)".to_owned(),
    }
}
