//! Census of equilibrium behavior over isomorphism classes of SCT graphs.
//!
//! Each class is canonicalized first, searched with the same seeded budget,
//! and summarized into one row. Rows sort by canonical key, so the output is
//! byte-identical across runs and worker counts. Search results are
//! heuristic-complete at the stated budget, not proven exhaustive.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{multistart_search, RecordJson, SearchParams};
use crate::graphs::{Graph, GraphError};
use crate::stability::Classification;

/// One summarized isomorphism class.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusRow {
    /// Hex of the canonical adjacency key.
    pub key: String,
    pub n: usize,
    pub edges: usize,
    /// Exact min-degree/(n−1), reduced, e.g. "2/7".
    pub mu_c: String,
    /// n − k + 1 for the largest (open or closed) k-let with k ≥ 3.
    pub klet_bound: Option<usize>,
    /// Has a chordless cycle of length ≥ 5.
    pub chordless_ge5: bool,
    pub stable_records: usize,
    pub exotic_records: usize,
    pub budget: usize,
    pub seed: u64,
}

/// Full per-class result: the row plus the refined records.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassReport {
    pub graph6: String,
    pub row: CensusRow,
    pub records: Vec<RecordJson>,
    pub non_converged: usize,
}

/// Analyzes one isomorphism class on its canonical representative.
pub fn census_graph(g: &Graph, params: &SearchParams) -> Result<ClassReport, GraphError> {
    let key = g.canonical_key()?;
    let canon = Graph::from_canonical_key(g.vertex_count(), &key)?;
    let outcome = multistart_search(&canon, params);
    let stable_records = outcome
        .records
        .iter()
        .filter(|r| r.classification == Classification::LinearlyStable)
        .count();
    let exotic_records = outcome.records.iter().filter(|r| r.exotic).count();
    let row = CensusRow {
        key: key.hex(),
        n: canon.vertex_count(),
        edges: canon.edge_count(),
        mu_c: canon.connectivity_mu().to_string(),
        klet_bound: canon.klet_codim_bound(),
        chordless_ge5: !canon.chordless_cycles(5).is_empty(),
        stable_records,
        exotic_records,
        budget: params.restarts,
        seed: params.seed,
    };
    Ok(ClassReport {
        graph6: canon.to_graph6(),
        row,
        records: outcome.records.iter().map(RecordJson::from).collect(),
        non_converged: outcome.non_converged,
    })
}

/// Census over a set of graphs: canonical dedup, parallel per-class search,
/// deterministic sort by key.
pub fn run_census(graphs: &[Graph], params: &SearchParams) -> Result<Vec<ClassReport>, GraphError> {
    let mut reports = graphs
        .par_iter()
        .map(|g| census_graph(g, params))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| a.row.key.cmp(&b.row.key).then(a.row.n.cmp(&b.row.n)));
    reports.dedup_by(|a, b| a.row.key == b.row.key && a.row.n == b.row.n);
    Ok(reports)
}

/// (class count, classes with a k-let bound, classes with an exotic record).
pub fn summarize(reports: &[ClassReport]) -> (usize, usize, usize) {
    (
        reports.len(),
        reports.iter().filter(|r| r.row.klet_bound.is_some()).count(),
        reports.iter().filter(|r| r.row.exotic_records > 0).count(),
    )
}

pub const CSV_HEADER: &str =
    "key,n,edges,mu_c,klet_bound,chordless_ge5,stable_records,exotic_records,budget,seed";

pub fn csv_line(row: &CensusRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        row.key,
        row.n,
        row.edges,
        row.mu_c,
        row.klet_bound.map_or(String::new(), |b| b.to_string()),
        row.chordless_ge5,
        row.stable_records,
        row.exotic_records,
        row.budget,
        row.seed,
    )
}

pub fn census_csv(reports: &[ClassReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&csv_line(&r.row));
        out.push('\n');
    }
    out
}
