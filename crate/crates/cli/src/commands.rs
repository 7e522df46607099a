use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use tokengraph::connectivity::{
    edge_connectivity, edge_connectivity_over_edges, exhaustive_edge_connectivity, min_degree,
    vertex_connectivity,
};
use tokengraph::lemma::{claimed_bound, DisjointFamilyCertificate, FamilyBuilder};
use tokengraph::token::{binomial, TokenConfig, TokenGraph};
use tokengraph::Graph;

use crate::spec::GraphSpec;
use crate::{CliError, MAX_TOKEN_VERTICES};

/// Largest token graph whose edge cuts the oracle enumerates exhaustively.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 25;

/// Parses a comma-separated vertex list such as `1,3`.
pub fn parse_config(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad vertex {v:?} in {text:?}")))
        })
        .collect()
}

/// `"3"` or an inclusive range `"1-4"`.
pub fn parse_k_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad k range {text:?}"));
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = match text.split_once('-') {
        Some((lo, hi)) => int(lo)?..=int(hi)?,
        None => int(text)?..=int(text)?,
    };
    if range.is_empty() || *range.start() == 0 {
        return Err(bad());
    }
    Ok(range)
}

fn guard_size(n: usize, k: usize) -> Result<(), CliError> {
    if k == 0 || k >= n {
        return Err(CliError::Usage(format!(
            "k = {k} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    let vertices = binomial(n, k);
    if vertices > MAX_TOKEN_VERTICES {
        return Err(CliError::Usage(format!(
            "F_{k} would have {vertices} vertices, above the limit of {MAX_TOKEN_VERTICES}"
        )));
    }
    Ok(())
}

pub struct BuildReport {
    pub label: String,
    pub tokens: TokenGraph,
}

pub fn build_report(spec: &GraphSpec, k: usize) -> Result<BuildReport, CliError> {
    let base = spec.build()?;
    guard_size(base.order(), k)?;
    Ok(BuildReport {
        label: spec.to_string(),
        tokens: TokenGraph::build(&base, k)?,
    })
}

impl BuildReport {
    pub fn vertices(&self) -> usize {
        self.tokens.graph().order()
    }

    pub fn edges(&self) -> usize {
        self.tokens.graph().size()
    }

    pub fn to_json(&self) -> String {
        let value = json!({
            "schema": 1,
            "graph": self.label,
            "k": self.tokens.k(),
            "vertices": self.tokens.configs(),
            "edges": self.tokens.graph().edges(),
        });
        serde_json::to_string_pretty(&value).expect("json value serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Both bounds hold and `λ(F_k)` exceeds the bound.
    Holds,
    /// `λ(F_k)` equals the bound.
    Tight,
    /// `k > λ(G)`: values are reported but no bound is claimed.
    HypothesisViolated,
    /// A claimed bound failed.
    Violated,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub lambda_g: usize,
    pub delta_g: usize,
    pub kappa_g: usize,
    pub lambda_fk: Option<usize>,
    pub delta_fk: Option<usize>,
    pub bound: usize,
    pub status: Status,
    pub detail: Option<String>,
}

/// Measures `λ(F_k)` and `δ(F_k)` for each `k` in `ks` below the order of
/// `base` and classifies the result against `k(λ(G) - k + 1)`.
pub fn verify_graph(
    label: &str,
    base: &Graph,
    ks: RangeInclusive<usize>,
) -> Vec<VerificationRecord> {
    let n = base.order();
    let (lambda_g, delta_g, kappa_g) = (
        edge_connectivity(base),
        min_degree(base),
        vertex_connectivity(base),
    );
    ks.filter(|&k| k < n)
        .map(|k| {
            let bound = claimed_bound(k, lambda_g);
            let mut record = VerificationRecord {
                graph: label.to_string(),
                n,
                k,
                lambda_g,
                delta_g,
                kappa_g,
                lambda_fk: None,
                delta_fk: None,
                bound,
                status: Status::Error,
                detail: None,
            };
            let tokens = match guard_size(n, k).and_then(|()| Ok(TokenGraph::build(base, k)?)) {
                Ok(t) => t,
                Err(e) => {
                    record.detail = Some(e.to_string());
                    return record;
                }
            };
            let (lambda_fk, delta_fk) = (
                edge_connectivity(tokens.graph()),
                min_degree(tokens.graph()),
            );
            record.lambda_fk = Some(lambda_fk);
            record.delta_fk = Some(delta_fk);
            record.status = if k > lambda_g {
                Status::HypothesisViolated
            } else if lambda_fk < bound || delta_fk < bound {
                record.detail = Some(format!(
                    "measured λ = {lambda_fk}, δ = {delta_fk} below {bound}"
                ));
                Status::Violated
            } else if delta_fk == bound && lambda_fk != delta_fk {
                record.detail = Some(format!("δ(F_k) = bound but λ(F_k) = {lambda_fk}"));
                Status::Violated
            } else if lambda_fk == bound {
                Status::Tight
            } else {
                Status::Holds
            };
            record
        })
        .collect()
}

/// Runs [`verify_graph`] over every spec in parallel; output follows spec order.
pub fn verify_corpus(specs: &[GraphSpec], ks: RangeInclusive<usize>) -> Vec<VerificationRecord> {
    specs
        .par_iter()
        .map(|spec| match spec.build() {
            Ok(g) => verify_graph(&spec.to_string(), &g, ks.clone()),
            Err(e) => vec![VerificationRecord {
                graph: spec.to_string(),
                n: 0,
                k: 0,
                lambda_g: 0,
                delta_g: 0,
                kappa_g: 0,
                lambda_fk: None,
                delta_fk: None,
                bound: 0,
                status: Status::Error,
                detail: Some(e.to_string()),
            }],
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn records_to_csv(records: &[VerificationRecord]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r).map_err(|e| CliError::Io(e.into()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn records_to_json(records: &[VerificationRecord]) -> String {
    serde_json::to_string_pretty(&json!({ "schema": 1, "records": records }))
        .expect("records serialize")
}

pub fn construct_certificate(
    spec: &GraphSpec,
    k: usize,
    from: Vec<usize>,
    to: Vec<usize>,
) -> Result<DisjointFamilyCertificate, CliError> {
    let base = spec.build()?;
    guard_size(base.order(), k)?;
    let n = base.order();
    let from = TokenConfig::new(from, k, n)?;
    let to = TokenConfig::new(to, k, n)?;
    Ok(FamilyBuilder::new(&base, k)?.construct(&from, &to)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub schema: u32,
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub delta: usize,
    /// Minimum over `(0, v)` of the local edge-connectivity.
    pub lambda_standard: usize,
    /// Minimum over edges `uv` of the local edge-connectivity.
    pub lambda_adjacent: usize,
    /// Exhaustive edge-cut search, run when the token graph is small enough.
    pub lambda_exhaustive: Option<usize>,
    pub agree: bool,
}

impl OracleReport {
    pub fn to_text(&self) -> String {
        let exhaustive = self
            .lambda_exhaustive
            .map_or("skipped".to_string(), |v| v.to_string());
        format!(
            "{} k={}: |V|={} |E|={} δ={} λ(standard)={} λ(adjacent pairs)={} λ(exhaustive)={} {}\n",
            self.graph,
            self.k,
            self.vertices,
            self.edges,
            self.delta,
            self.lambda_standard,
            self.lambda_adjacent,
            exhaustive,
            if self.agree { "agree" } else { "DISAGREE" }
        )
    }
}

/// Computes `λ(F_k(G))` by independent routes and reports whether they agree.
pub fn oracle_report(spec: &GraphSpec, k: usize) -> Result<OracleReport, CliError> {
    let built = build_report(spec, k)?;
    let g = built.tokens.graph();
    let lambda_standard = edge_connectivity(g);
    let lambda_adjacent = edge_connectivity_over_edges(g);
    let lambda_exhaustive =
        (g.size() <= EXHAUSTIVE_EDGE_LIMIT).then(|| exhaustive_edge_connectivity(g));
    let agree = lambda_standard == lambda_adjacent
        && lambda_exhaustive.is_none_or(|v| v == lambda_standard);
    Ok(OracleReport {
        schema: 1,
        graph: built.label.clone(),
        n: built.tokens.base().order(),
        k,
        vertices: g.order(),
        edges: g.size(),
        delta: min_degree(g),
        lambda_standard,
        lambda_adjacent,
        lambda_exhaustive,
        agree,
    })
}
