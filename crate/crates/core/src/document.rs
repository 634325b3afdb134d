//! JSON interchange for arrangements and the serializable views used in run reports.
//!
//! Rationals travel as `[numerator, denominator]` integer pairs and lines as
//! `[a, b, c]` triples. Integers that fit in 64 bits are written as JSON numbers,
//! larger ones as decimal strings; both forms are accepted on input.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, IncidenceStats, RichLineBound};
use crate::clique::TriangleMonitor;
use crate::geom::{Line, Point, Scalar};
use crate::partition::{CrossingProfile, PartitionCheck, PartitionResult, Region};
use crate::pipeline::{
    InequalityAudit, PipelineConfig, PipelineTrace, SearchMode, Theorem1Certificate,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonInt, E> {
                Err(E::custom(format!(
                    "{v} is not an exact integer; quote integers wider than 64 bits"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("{v:?} is not a decimal integer")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        JsonInt(v.clone())
    }
}

impl From<usize> for JsonInt {
    fn from(v: usize) -> Self {
        JsonInt(v.into())
    }
}

/// `[numerator, denominator]`
pub type JsonRational = [JsonInt; 2];

pub fn rational_json(v: &BigRational) -> JsonRational {
    [v.numer().into(), v.denom().into()]
}

fn rational_from_json(pair: &JsonRational) -> Option<Scalar> {
    if pair[1].0.is_zero() {
        return None;
    }
    Some(BigRational::new(pair[0].0.clone(), pair[1].0.clone()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementDocument {
    pub schema_version: String,
    pub points: Vec<[JsonRational; 2]>,
    pub lines: Vec<[JsonInt; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error at {path} (line {line}, column {column}): {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema_version {0:?}, expected \"1\"")]
    SchemaVersion(String),
    #[error("points[{index}]: zero denominator")]
    ZeroDenominator { index: usize },
    #[error("lines[{index}]: a and b are both zero")]
    DegenerateLine { index: usize },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

impl ArrangementDocument {
    pub fn from_arrangement(arr: &Arrangement, metadata: Option<Metadata>) -> Self {
        ArrangementDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            points: arr
                .points()
                .iter()
                .map(|p| [rational_json(&p.x), rational_json(&p.y)])
                .collect(),
            lines: arr
                .lines()
                .iter()
                .map(|l| [l.a().into(), l.b().into(), l.c().into()])
                .collect(),
            metadata,
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::SchemaVersion(self.schema_version.clone()));
        }
        let mut points = Vec::with_capacity(self.points.len());
        for (index, [x, y]) in self.points.iter().enumerate() {
            let zero = || DocumentError::ZeroDenominator { index };
            points.push(Point::new(
                rational_from_json(x).ok_or_else(zero)?,
                rational_from_json(y).ok_or_else(zero)?,
            ));
        }
        let mut lines = Vec::with_capacity(self.lines.len());
        for (index, [a, b, c]) in self.lines.iter().enumerate() {
            let l = Line::new(a.0.clone(), b.0.clone(), c.0.clone())
                .map_err(|_| DocumentError::DegenerateLine { index })?;
            lines.push(l);
        }
        Ok(Arrangement::new(points, lines)?)
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            let inner = err.into_inner();
            DocumentError::Parse {
                path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Parse and validate a document in one step.
pub fn read_arrangement(text: &str) -> Result<(Arrangement, Option<Metadata>), DocumentError> {
    let doc = ArrangementDocument::parse(text)?;
    let arr = doc.to_arrangement()?;
    Ok((arr, doc.metadata))
}

#[derive(Debug, Clone, Serialize)]
pub struct HistogramRow {
    pub m: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsView {
    pub n_points: usize,
    pub n_lines: usize,
    pub n_incidences: usize,
    pub richness_histogram: Vec<HistogramRow>,
    pub st_ratio_cubed: Option<JsonRational>,
}

impl From<&IncidenceStats> for StatsView {
    fn from(s: &IncidenceStats) -> Self {
        StatsView {
            n_points: s.n_points,
            n_lines: s.n_lines,
            n_incidences: s.n_incidences,
            richness_histogram: s
                .richness_histogram
                .iter()
                .map(|(&m, &count)| HistogramRow { m, count })
                .collect(),
            st_ratio_cubed: s.st_ratio_cubed.as_ref().map(rational_json),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRowView {
    pub m: usize,
    pub rich_count: usize,
    pub bound: JsonRational,
    pub within_bound: bool,
    pub tightest_constant: JsonRational,
}

impl From<&RichLineBound> for BoundRowView {
    fn from(r: &RichLineBound) -> Self {
        BoundRowView {
            m: r.m,
            rich_count: r.rich_count,
            bound: rational_json(&r.bound),
            within_bound: r.within_bound,
            tightest_constant: rational_json(&r.tightest_constant()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointView {
    pub index: usize,
    pub x: JsonRational,
    pub y: JsonRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairLineView {
    pub a: usize,
    pub b: usize,
    pub line: usize,
    pub coefficients: [JsonInt; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCountView {
    pub a: usize,
    pub b: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateView {
    pub points: Vec<PointView>,
    pub connecting_lines: Vec<PairLineView>,
    pub general_position: bool,
    pub locality: Vec<PairCountView>,
    pub source_cell: usize,
}

impl CertificateView {
    pub fn new(arr: &Arrangement, cert: &Theorem1Certificate) -> Self {
        CertificateView {
            points: cert
                .point_indices
                .iter()
                .zip(&cert.points)
                .map(|(&index, p)| PointView {
                    index,
                    x: rational_json(&p.x),
                    y: rational_json(&p.y),
                })
                .collect(),
            connecting_lines: cert
                .connecting_lines
                .iter()
                .map(|(&(a, b), &line)| {
                    let l = &arr.lines()[line];
                    PairLineView {
                        a,
                        b,
                        line,
                        coefficients: [l.a().into(), l.b().into(), l.c().into()],
                    }
                })
                .collect(),
            general_position: cert.general_position,
            locality: cert
                .locality
                .iter()
                .map(|(&(a, b), &count)| PairCountView { a, b, count })
                .collect(),
            source_cell: cert.source_cell,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AttemptView {
    pub cell_index: usize,
    pub floor_sum: usize,
    pub mode: &'static str,
    pub segments: usize,
    pub dual_vertices: usize,
    pub dual_edges: usize,
    pub shear: JsonRational,
    pub tuples_examined: usize,
    pub tuples_rejected: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceView {
    pub n: usize,
    pub n_incidences: usize,
    pub density_precondition_holds: bool,
    pub r: usize,
    pub t: usize,
    pub floor_sums: Vec<usize>,
    pub attempts: Vec<AttemptView>,
}

impl From<&PipelineTrace> for TraceView {
    fn from(t: &PipelineTrace) -> Self {
        TraceView {
            n: t.n,
            n_incidences: t.n_incidences,
            density_precondition_holds: t.density_precondition_holds,
            r: t.r,
            t: t.t,
            floor_sums: t.floor_sums.clone(),
            attempts: t
                .attempts
                .iter()
                .map(|a| AttemptView {
                    cell_index: a.cell_index,
                    floor_sum: a.floor_sum,
                    mode: match a.mode {
                        SearchMode::Segments => "segments",
                        SearchMode::CellLines => "cell_lines",
                    },
                    segments: a.segments,
                    dual_vertices: a.dual_vertices,
                    dual_edges: a.dual_edges,
                    shear: rational_json(&a.shear),
                    tuples_examined: a.tuples_examined,
                    tuples_rejected: a.tuples_rejected,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigView {
    pub k: usize,
    pub c: JsonRational,
    pub beta_k: JsonRational,
    pub multiplicity_threshold: usize,
    pub rich_threshold_slack: JsonRational,
    pub fallback_cap: usize,
    pub max_tuples_per_cell: usize,
    pub r_override: Option<usize>,
}

impl From<&PipelineConfig> for ConfigView {
    fn from(c: &PipelineConfig) -> Self {
        ConfigView {
            k: c.k,
            c: rational_json(&c.c),
            beta_k: rational_json(&c.beta_k),
            multiplicity_threshold: c.multiplicity_threshold,
            rich_threshold_slack: rational_json(&c.rich_threshold_slack),
            fallback_cap: c.fallback_cap,
            max_tuples_per_cell: c.max_tuples_per_cell,
            r_override: c.r_override,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditView {
    pub n: usize,
    pub n_lines: usize,
    pub r: usize,
    pub t: usize,
    pub sqrt_r_lower: JsonRational,
    pub total_floor_sum: usize,
    pub rich_floor_sum: usize,
    pub rich_lines: usize,
    pub lhs_cubed: JsonRational,
    pub rhs: JsonRational,
    pub holds: bool,
    pub holds_rich_only: bool,
    pub halved_holds: bool,
    pub max_cell_floor_sum: usize,
    pub pigeonhole_holds: bool,
    pub selected_at_least_average: bool,
}

impl From<&InequalityAudit> for AuditView {
    fn from(a: &InequalityAudit) -> Self {
        AuditView {
            n: a.n,
            n_lines: a.n_lines,
            r: a.r,
            t: a.t,
            sqrt_r_lower: rational_json(&a.sqrt_r_lower),
            total_floor_sum: a.total_floor_sum,
            rich_floor_sum: a.rich_floor_sum,
            rich_lines: a.rich_lines,
            lhs_cubed: rational_json(&a.lhs_cubed),
            rhs: rational_json(&a.rhs),
            holds: a.holds,
            holds_rich_only: a.holds_rich_only,
            halved_holds: a.halved_holds,
            max_cell_floor_sum: a.max_cell_floor_sum,
            pigeonhole_holds: a.pigeonhole_holds,
            selected_at_least_average: a.selected_at_least_average,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionView {
    pub x_min: Option<JsonRational>,
    pub x_max: Option<JsonRational>,
    pub y_min: Option<JsonRational>,
    pub y_max: Option<JsonRational>,
}

impl From<&Region> for RegionView {
    fn from(r: &Region) -> Self {
        let f = |v: &Option<Scalar>| v.as_ref().map(rational_json);
        RegionView {
            x_min: f(&r.x_min),
            x_max: f(&r.x_max),
            y_min: f(&r.y_min),
            y_max: f(&r.y_max),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CellView {
    pub index: usize,
    pub size: usize,
    pub region: RegionView,
    pub point_indices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossingView {
    pub max: usize,
    pub mean: JsonRational,
    pub per_line: Vec<usize>,
}

impl From<&CrossingProfile> for CrossingView {
    fn from(p: &CrossingProfile) -> Self {
        CrossingView {
            max: p.max,
            mean: rational_json(&p.mean),
            per_line: p.per_line.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionView {
    pub r: usize,
    pub t: usize,
    pub size_window: [usize; 2],
    pub covers: bool,
    pub regions_contain_members: bool,
    pub sizes_in_window: bool,
    pub cell_count_within: bool,
    pub cells: Vec<CellView>,
}

impl PartitionView {
    pub fn new(pr: &PartitionResult, check: &PartitionCheck) -> Self {
        let (lo, hi) = pr.size_window();
        PartitionView {
            r: pr.r_requested,
            t: pr.t(),
            size_window: [lo, hi],
            covers: check.covers,
            regions_contain_members: check.regions_contain_members,
            sizes_in_window: check.sizes_in_window,
            cell_count_within: check.cell_count_within,
            cells: pr
                .cells
                .iter()
                .enumerate()
                .map(|(index, c)| CellView {
                    index,
                    size: c.point_indices.len(),
                    region: (&c.region).into(),
                    point_indices: c.point_indices.clone(),
                })
                .collect(),
        }
    }
}

/// Monitor output; a failed bound is tagged `COUNTEREXAMPLE`.
#[derive(Debug, Clone, Serialize)]
pub struct MonitorView {
    pub triangles: usize,
    pub bound: usize,
    pub conjecture_holds: bool,
    pub status: &'static str,
}

impl From<&TriangleMonitor> for MonitorView {
    fn from(m: &TriangleMonitor) -> Self {
        MonitorView {
            triangles: m.triangles,
            bound: m.bound,
            conjecture_holds: m.conjecture_holds,
            status: if m.conjecture_holds {
                "ok"
            } else {
                "COUNTEREXAMPLE"
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{grid_construction, spanned_lines, square_grid_points};

    #[test]
    fn grid_document_round_trip() {
        let grid = grid_construction(2).unwrap();
        let doc = ArrangementDocument::from_arrangement(&grid, None);
        assert_eq!(doc.points.len(), 16);
        assert_eq!(doc.lines.len(), 8);
        let (back, meta) = read_arrangement(&doc.to_json_pretty()).unwrap();
        assert_eq!(back, grid);
        assert!(meta.is_none());
    }

    #[test]
    fn big_integers_are_strings() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let pt = Point::new(
            BigRational::from_integer(huge.clone()),
            BigRational::new(1.into(), 3.into()),
        );
        let arr = Arrangement::new(vec![pt], vec![]).unwrap();
        let text =
            serde_json::to_string(&ArrangementDocument::from_arrangement(&arr, None)).unwrap();
        assert!(text.contains("\"123456789012345678901234567890\""));
        assert!(text.contains("[1,3]"));
        assert_eq!(read_arrangement(&text).unwrap().0, arr);
    }

    #[test]
    fn inputs_are_canonicalized() {
        let text = r#"{"schema_version":"1","points":[[[2,4],["-3",-6]]],"lines":[[-2,4,0]]}"#;
        let (arr, _) = read_arrangement(text).unwrap();
        assert_eq!(
            arr.points()[0],
            Point::new(
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 2.into())
            )
        );
        assert_eq!(arr.lines()[0], Line::from_ints(1, -2, 0).unwrap());
        assert_eq!(arr.n_incidences(), 0);
    }

    #[test]
    fn parse_errors_carry_location() {
        let text = r#"{"schema_version":"1","points":[[[0,1],[0,1]],[[0,1],[1.5,1]]],"lines":[]}"#;
        match ArrangementDocument::parse(text) {
            Err(DocumentError::Parse { path, line, .. }) => {
                assert_eq!(path, "points[1][1][0]");
                assert_eq!(line, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            ArrangementDocument::parse("{not json"),
            Err(DocumentError::Parse { .. })
        ));
    }

    #[test]
    fn semantic_errors() {
        let zero = r#"{"schema_version":"1","points":[[[0,0],[0,1]]],"lines":[]}"#;
        assert_eq!(
            read_arrangement(zero).unwrap_err(),
            DocumentError::ZeroDenominator { index: 0 }
        );
        let degenerate = r#"{"schema_version":"1","points":[],"lines":[[0,0,1]]}"#;
        assert_eq!(
            read_arrangement(degenerate).unwrap_err(),
            DocumentError::DegenerateLine { index: 0 }
        );
        let version = r#"{"schema_version":"2","points":[],"lines":[]}"#;
        assert!(matches!(
            read_arrangement(version),
            Err(DocumentError::SchemaVersion(_))
        ));
        let dup = r#"{"schema_version":"1","points":[[[1,1],[0,1]],[[2,2],[0,5]]],"lines":[]}"#;
        assert!(matches!(
            read_arrangement(dup),
            Err(DocumentError::Arrangement(
                ArrangementError::DuplicatePoint { index: 1 }
            ))
        ));
    }

    #[test]
    fn metadata_survives() {
        let arr = spanned_lines(square_grid_points(3)).unwrap();
        let meta = Metadata {
            generator: "spanned".into(),
            params: BTreeMap::from([("side".to_string(), serde_json::json!(3))]),
        };
        let doc = ArrangementDocument::from_arrangement(&arr, Some(meta.clone()));
        let (back, m) = read_arrangement(&doc.to_json_pretty()).unwrap();
        assert_eq!(back, arr);
        assert_eq!(m, Some(meta));
    }
}
