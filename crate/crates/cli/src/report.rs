//! Serializable command reports. Every map is ordered, so the same input always
//! produces the same bytes.

use incidence_core::arrangement::{density_lower_bound, RichLineBound};
use incidence_core::clique::de_caen_szekely_monitor;
use incidence_core::document::{
    rational_json, AuditView, BoundRowView, CertificateView, ConfigView, CrossingView,
    JsonRational, MonitorView, PartitionView, StatsView, TraceView, SCHEMA_VERSION,
};
use incidence_core::partition::{crossing_profile, PartitionResult};
use incidence_core::pipeline::{balanced_size, InequalityAudit, PipelineConfig, Theorem1Outcome};
use incidence_core::{Arrangement, Scalar};
use num_traits::Zero;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct BoundSummary {
    pub constant: JsonRational,
    pub all_within: bool,
    /// Smallest constant that would still cover every row.
    pub tightest_constant: JsonRational,
    pub rows: Vec<BoundRowView>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub stats: StatsView,
    /// Largest `p/1000` with `(p/1000)·n^{4/3} <= I`.
    pub density_lower_bound: JsonRational,
    pub st_bound: BoundSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monitor: Option<MonitorView>,
}

pub fn analyze(arr: &Arrangement, constant: &Scalar, monitor: bool) -> AnalyzeReport {
    let rows = arr.st_bound_report(constant);
    let tightest = rows
        .iter()
        .map(RichLineBound::tightest_constant)
        .max()
        .unwrap_or_else(Scalar::zero);
    AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        stats: (&arr.stats()).into(),
        density_lower_bound: rational_json(&density_lower_bound(
            arr.n_incidences(),
            balanced_size(arr),
            1000,
        )),
        st_bound: BoundSummary {
            constant: rational_json(constant),
            all_within: rows.iter().all(|r| r.within_bound),
            tightest_constant: rational_json(&tightest),
            rows: rows.iter().map(Into::into).collect(),
        },
        monitor: monitor.then(|| (&de_caen_szekely_monitor(arr)).into()),
    }
}

#[derive(Debug, Serialize)]
pub struct PartitionReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub partition: PartitionView,
    /// Cells met by each arrangement line.
    pub crossing: CrossingView,
}

pub fn partition(arr: &Arrangement, pr: &PartitionResult) -> PartitionReport {
    PartitionReport {
        schema_version: SCHEMA_VERSION,
        command: "partition",
        partition: PartitionView::new(pr, &pr.verify(arr.points())),
        crossing: (&crossing_profile(pr, arr.lines())).into(),
    }
}

#[derive(Debug, Serialize)]
pub struct Theorem1Report {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub status: &'static str,
    /// `measured` or `given`.
    pub c_source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub config: ConfigView,
    pub trace: TraceView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u128>,
}

pub struct Theorem1Inputs<'a> {
    pub arr: &'a Arrangement,
    pub cfg: &'a PipelineConfig,
    pub outcome: &'a Theorem1Outcome,
    pub audit: Option<&'a InequalityAudit>,
    pub c_measured: bool,
    pub seed: Option<u64>,
    pub duration_ms: Option<u128>,
}

pub fn theorem1(inp: Theorem1Inputs<'_>) -> Theorem1Report {
    Theorem1Report {
        schema_version: SCHEMA_VERSION,
        command: "theorem1",
        status: match inp.outcome {
            Theorem1Outcome::Found { .. } => "found",
            Theorem1Outcome::NotFound { .. } => "not_found",
        },
        c_source: if inp.c_measured { "measured" } else { "given" },
        seed: inp.seed,
        config: inp.cfg.into(),
        trace: inp.outcome.trace().into(),
        certificate: inp
            .outcome
            .certificate()
            .map(|c| CertificateView::new(inp.arr, c)),
        audit: inp.audit.map(Into::into),
        duration_ms: inp.duration_ms,
    }
}
