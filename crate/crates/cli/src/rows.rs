//! JSON shapes written by the CLI. Field order is fixed by declaration order.

use serde::Serialize;

use pathhom::metrics::MetricReport;
use pathhom::Digraph;

pub type Arc = (String, String);

/// One `(arc, "num/den")` term of a cycle.
pub type Term = (Arc, String);

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub graph_id: String,
    pub field: String,
    pub vertices: usize,
    pub arcs: usize,
    pub betti: Vec<usize>,
    pub reduced_betti: Vec<usize>,
    pub p_max: usize,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_at: Option<usize>,
    pub cyclomatic: usize,
    pub divergence: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1_generators: Option<Vec<Vec<Term>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1_support: Option<Vec<Arc>>,
}

impl AnalyzeReport {
    pub fn new(d: &Digraph, field: String, report: &MetricReport) -> Self {
        let b = &report.reduced_betti;
        Self {
            graph_id: report.graph_id.clone(),
            field,
            vertices: d.vertex_count(),
            arcs: d.arc_count(),
            betti: b.betti.clone(),
            reduced_betti: b.reduced.clone(),
            p_max: b.p_max,
            complete: b.complete,
            truncated_at: b.truncated_at,
            cyclomatic: report.cyclomatic,
            divergence: report.divergence,
            h1_generators: None,
            h1_support: None,
        }
    }
}

/// How a manifest item was produced.
#[derive(Default, Serialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_productions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_gotos: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_lines: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate_count: Option<usize>,
}

#[derive(Serialize)]
pub struct ManifestRow {
    pub id: String,
    pub kind: String,
    pub file: String,
    #[serde(flatten)]
    pub provenance: Provenance,
    pub vertices: usize,
    pub arcs: usize,
    pub cyclomatic: usize,
    pub betti: Vec<usize>,
    pub reduced_betti: Vec<usize>,
    pub p_max: usize,
    pub complete: bool,
    pub divergence: i64,
}

impl ManifestRow {
    pub fn new(
        kind: &str,
        file: String,
        provenance: Provenance,
        d: &Digraph,
        r: &MetricReport,
    ) -> Self {
        Self {
            id: r.graph_id.clone(),
            kind: kind.to_string(),
            file,
            provenance,
            vertices: d.vertex_count(),
            arcs: d.arc_count(),
            cyclomatic: r.cyclomatic,
            betti: r.reduced_betti.betti.clone(),
            reduced_betti: r.reduced_betti.reduced.clone(),
            p_max: r.reduced_betti.p_max,
            complete: r.reduced_betti.complete,
            divergence: r.divergence,
        }
    }
}

#[derive(Serialize)]
pub struct ProgenitorRow {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub vertices: Vec<String>,
    pub arcs: Vec<Arc>,
    pub valid_pairs: Vec<Arc>,
    pub betti: Vec<usize>,
    pub reduced_betti: Vec<usize>,
    pub complete: bool,
}

#[derive(Serialize)]
pub struct EnumerateSummary {
    pub n: usize,
    pub total: usize,
    pub progenitors: usize,
    pub filter: Option<String>,
    pub filtered: usize,
    pub records: Vec<ProgenitorRow>,
}

pub fn arc_labels(d: &Digraph, (u, v): (usize, usize)) -> Arc {
    (d.label(u).to_string(), d.label(v).to_string())
}
