//! Machine-readable report schemas. Every document carries a
//! `format_version` field; serialization is deterministic (fixed field
//! order, sorted maps, no timestamps or timings).

use mepvcb::graph::EdgeId;
use mepvcb::instance::{Answer, Certificate, Verdict};
use mepvcb::reductions::ReductionReport;
use mepvcb::{Graph, GraphStats};
use serde::Serialize;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct VertexJson {
    pub side: &'static str,
    pub index: usize,
}

#[derive(Serialize)]
pub struct EdgeJson {
    pub left: usize,
    pub right: usize,
    pub weight: i64,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub chosen: Vec<VertexJson>,
    pub covered: Vec<EdgeJson>,
    pub matching: Vec<EdgeJson>,
    pub covered_weight: i64,
    pub matching_weight: i64,
}

impl CertificateJson {
    pub fn from_certificate(graph: &Graph, cert: &Certificate<i64>) -> Self {
        let edge = |id: &EdgeId| {
            let e = graph.edge(*id);
            EdgeJson {
                left: e.left,
                right: e.right,
                weight: e.weight,
            }
        };
        Self {
            chosen: cert
                .chosen
                .iter()
                .map(|v| VertexJson {
                    side: if v.is_left() { "left" } else { "right" },
                    index: v.index(),
                })
                .collect(),
            covered: cert.covered.iter().map(edge).collect(),
            matching: cert.matching.iter().map(edge).collect(),
            covered_weight: cert.covered_weight,
            matching_weight: cert.matching_weight,
        }
    }
}

#[derive(Serialize)]
pub struct SolveReport {
    pub format_version: u32,
    pub instance_digest: String,
    pub verdict: &'static str,
    pub method: String,
    pub strategy: String,
    pub seed: u64,
    pub certificate: Option<CertificateJson>,
}

impl SolveReport {
    pub fn new(
        graph: &Graph,
        digest: String,
        verdict: &Verdict<i64>,
        strategy: String,
        seed: u64,
    ) -> Self {
        let (answer, certificate) = match &verdict.answer {
            Answer::Yes(cert) => ("yes", Some(CertificateJson::from_certificate(graph, cert))),
            Answer::No => ("no", None),
        };
        Self {
            format_version: FORMAT_VERSION,
            instance_digest: digest,
            verdict: answer,
            method: verdict.method.clone(),
            strategy,
            seed,
            certificate,
        }
    }
}

#[derive(Serialize)]
pub struct ReduceReport {
    pub format_version: u32,
    pub reduction: String,
    pub source_digest: String,
    pub target_digest: String,
    pub source_budget: usize,
    pub target_budget: usize,
    pub params: std::collections::BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct VerifyKindSummary {
    pub reduction: String,
    pub equivalent: usize,
    pub mismatches: usize,
    pub unverified: usize,
    pub reports: Vec<ReductionReport>,
}

#[derive(Serialize)]
pub struct VerifySummary {
    pub format_version: u32,
    pub seed: u64,
    pub corpus_count: usize,
    pub mutated: bool,
    pub kinds: Vec<VerifyKindSummary>,
}

#[derive(Serialize)]
pub struct StatsReport {
    pub format_version: u32,
    pub left: usize,
    pub right: usize,
    pub edges: usize,
    pub total_weight: i64,
    pub max_degree: usize,
    pub tau: usize,
    pub nu: usize,
    pub alpha: usize,
    pub nu_ind: Option<usize>,
    pub radius: usize,
    pub diameter: usize,
    pub disconnected: bool,
    pub degree_0: usize,
    pub degree_1: usize,
    pub degree_2: usize,
    pub at_least_2: usize,
    pub at_least_3: usize,
    pub k1: usize,
    pub k2: i64,
    pub k3: i64,
    pub max_matching_weight: i64,
    pub budget_rule_applies: bool,
    pub matching_rule_applies: bool,
    pub ratio_rule_applies: bool,
}

impl StatsReport {
    pub fn new(inst: &mepvcb::Instance, stats: &GraphStats, max_matching_weight: i64) -> Self {
        let g = &inst.graph;
        let delta = stats.max_degree as i64;
        Self {
            format_version: FORMAT_VERSION,
            left: g.left_count(),
            right: g.right_count(),
            edges: g.edge_count(),
            total_weight: g.total_weight(),
            max_degree: stats.max_degree,
            tau: stats.tau,
            nu: stats.nu,
            alpha: stats.alpha,
            nu_ind: stats.nu_ind,
            radius: stats.radius,
            diameter: stats.diameter,
            disconnected: stats.disconnected,
            degree_0: stats.degree_0,
            degree_1: stats.degree_1,
            degree_2: stats.degree_2,
            at_least_2: stats.at_least_2,
            at_least_3: stats.at_least_3,
            k1: inst.k1,
            k2: inst.k2,
            k3: inst.k3,
            max_matching_weight,
            budget_rule_applies: inst.k1 >= stats.tau,
            matching_rule_applies: inst.k2 <= inst.k3,
            ratio_rule_applies: inst.k2 >= inst.k3.saturating_mul(delta),
        }
    }
}

/// Deterministic document rendering: pretty JSON plus a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}
