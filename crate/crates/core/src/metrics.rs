//! Cyclomatic complexity and its comparison with the first reduced Betti
//! number.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::Error;
use crate::field::Field;
use crate::homology::{betti_with, BettiProfile, HomologyOptions};

/// `|A| - |V| + c` with `c` the number of weak components. Antiparallel arcs
/// count separately, so a 2-cycle has `ν = 1`.
pub fn cyclomatic(d: &Digraph) -> Result<usize, Error> {
    if d.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    Ok(d.arc_count() + d.weak_components().len() - d.vertex_count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricReport {
    pub graph_id: String,
    pub cyclomatic: usize,
    pub reduced_betti: BettiProfile,
    /// `cyclomatic - β̃_1`.
    pub divergence: i64,
}

impl MetricReport {
    pub fn beta1(&self) -> usize {
        self.reduced_betti.reduced_at(1)
    }
}

/// Rational-field comparison with the default path cap.
pub fn compare(d: &Digraph, p_max: usize) -> Result<MetricReport, Error> {
    compare_with(
        &crate::field::Rationals,
        d,
        p_max,
        HomologyOptions::default(),
        "",
    )
}

pub fn compare_with<F: Field>(
    field: &F,
    d: &Digraph,
    p_max: usize,
    options: HomologyOptions,
    graph_id: &str,
) -> Result<MetricReport, Error> {
    let nu = cyclomatic(d)?;
    let profile = betti_with(field, d, p_max, options)?;
    let beta1 = profile.reduced_at(1);
    Ok(MetricReport {
        graph_id: graph_id.to_string(),
        cyclomatic: nu,
        reduced_betti: profile,
        divergence: nu as i64 - beta1 as i64,
    })
}

/// Counts of `(ν, β̃_1)` pairs in ascending order.
pub fn corpus_histogram(reports: &[MetricReport]) -> Vec<(usize, usize, usize)> {
    count_pairs(reports.iter().map(|r| (r.cyclomatic, r.beta1())))
}

/// `(ν, β̃_1, count)` rows for arbitrary pairs.
pub fn count_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<(usize, usize, usize)> {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for pair in pairs {
        *counts.entry(pair).or_default() += 1;
    }
    counts.into_iter().map(|((nu, b), c)| (nu, b, c)).collect()
}

/// The histogram as CSV with a `nu,beta1,count` header.
pub fn histogram_csv(rows: &[(usize, usize, usize)]) -> String {
    let mut out = String::from("nu,beta1,count\n");
    for (nu, b, c) in rows {
        out.push_str(&format!("{nu},{b},{c}\n"));
    }
    out
}
