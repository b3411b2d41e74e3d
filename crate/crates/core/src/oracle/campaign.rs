use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::factorization::{theorem_suite, CheckStatus, SuiteOptions, SuiteReport, Theorem};
use crate::graph::Graph;
use crate::io::to_graph6;

use super::corpus::corpus_up_to;

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    /// Connected graphs on `1..=max_n` vertices are generated when no corpus
    /// is given.
    pub max_n: usize,
    pub suite: SuiteOptions,
    /// Explicit graphs, e.g. read from a graph6 file.
    pub corpus: Option<Vec<Graph>>,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        Self {
            max_n: 5,
            suite: SuiteOptions::default(),
            corpus: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremTally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    /// Partitions or chains examined across all graphs.
    pub checked: usize,
}

/// A graph that failed a check or could not be processed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphFailure {
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub graphs: usize,
    pub passed: usize,
    pub theorems: BTreeMap<Theorem, TheoremTally>,
    /// Graphs with at least one failed check.
    pub failures: Vec<GraphFailure>,
    /// Graphs with a skipped check or a lattice over its bound.
    pub bound_hits: Vec<GraphFailure>,
}

impl CampaignReport {
    /// 0 when everything passed, 1 on any counterexample, 2 when only a
    /// resource bound got in the way.
    pub fn exit_code(&self) -> i32 {
        if !self.failures.is_empty() {
            1
        } else if !self.bound_hits.is_empty() {
            2
        } else {
            0
        }
    }
}

/// Runs the theorem suite over every graph of the corpus in parallel.
pub fn campaign(options: &CampaignOptions) -> CampaignReport {
    let graphs = match &options.corpus {
        Some(list) => list.clone(),
        None => corpus_up_to(options.max_n, true),
    };
    let results: Vec<_> = graphs
        .par_iter()
        .map(|g| (g, theorem_suite(g, &options.suite)))
        .collect();

    let mut theorems: BTreeMap<Theorem, TheoremTally> = options
        .suite
        .theorems
        .iter()
        .map(|&t| (t, TheoremTally::default()))
        .collect();
    let mut passed = 0;
    let mut failures = Vec::new();
    let mut bound_hits = Vec::new();
    for (g, result) in results {
        match result {
            Ok(report) => {
                for o in &report.outcomes {
                    let tally = theorems.entry(o.theorem).or_default();
                    tally.checked += o.checked;
                    match o.status {
                        CheckStatus::Pass => tally.pass += 1,
                        CheckStatus::Fail => tally.fail += 1,
                        CheckStatus::Skipped => tally.skipped += 1,
                    }
                }
                let entry = |report| GraphFailure {
                    graph6: to_graph6(g),
                    report: Some(report),
                    error: None,
                };
                if report.failed() {
                    failures.push(entry(report));
                } else if report.skipped() {
                    bound_hits.push(entry(report));
                } else {
                    passed += 1;
                }
            }
            Err(e) => bound_hits.push(GraphFailure {
                graph6: to_graph6(g),
                report: None,
                error: Some(e.to_string()),
            }),
        }
    }
    CampaignReport {
        graphs: graphs.len(),
        passed,
        theorems,
        failures,
        bound_hits,
    }
}
