//! End-to-end search for `k` points in general position, pairwise joined by
//! arrangement lines, inside an incidence-rich arrangement.
//!
//! The steps:
//!
//! 1. partition the points into cells with `r = ⌈β_k · n^{2/3}⌉` (clamped to `[1, |P|]`);
//! 2. score every cell by `Σ_ξ ⌊|Δ_i ∩ ξ| / k⌋` and visit cells best first;
//! 3. break each line's run of cell points into consecutive groups of exactly `k`;
//! 4. shear if needed, dualize (cell points, parent lines), and look for complete
//!    `k`-tuples in the dual intersection graph whose edges come from those groups;
//! 5. pull a dual tuple back to `k` cell points, attach the locality counts and
//!    re-validate the result with nothing but the exact predicates.
//!
//! Up to `fallback_cap` cells are tried. If no segment-restricted search succeeds,
//! the same cells are searched again with every cell point pair on a common line
//! joined ([`SearchMode::CellLines`]); small instances whose lines are too poor for
//! `k`-point segments are handled there.
//!
//! Here `n = max(|P|, |L|)`, the size of the balanced arrangement obtained by padding
//! the smaller side with elements that carry no incidences.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError};
use crate::clique::{
    enumerate_complete_tuples, multiplicity_filter, CliqueError, IntersectionGraph,
};
use crate::geom::{collinear, incident, strictly_between, Point, Scalar};
use crate::partition::{partition, PartitionCell, PartitionError, PartitionResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("tuple size k must be at least 3, got {0}")]
    InvalidK(usize),
    #[error("density constant c must be positive")]
    NonPositiveDensity,
    #[error("beta_k must be positive")]
    NonPositiveBeta,
    #[error("slack multiplier must be positive")]
    NonPositiveSlack,
    #[error("multiplicity threshold {threshold} is below k = {k}")]
    ThresholdBelowK { threshold: usize, k: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub k: usize,
    pub c: Scalar,
    pub beta_k: Scalar,
    pub multiplicity_threshold: usize,
    /// Lines with fewer than `slack · √r · k` points are left out of the rich-line
    /// accounting in [`inequality_audit`].
    pub rich_threshold_slack: Scalar,
    /// How many cells to try, best floor-sum first.
    pub fallback_cap: usize,
    /// Dual tuples examined per cell before moving on.
    pub max_tuples_per_cell: usize,
    /// Use this `r` instead of `⌈β_k · n^{2/3}⌉`.
    pub r_override: Option<usize>,
}

impl PipelineConfig {
    /// Defaults: `β_k = c/(2k)`, threshold `⌈100/c⌉` (at least `k`), slack 2, 8 cells.
    pub fn new(k: usize, c: Scalar) -> Result<Self, PipelineError> {
        if k < 3 {
            return Err(PipelineError::InvalidK(k));
        }
        if !c.is_positive() {
            return Err(PipelineError::NonPositiveDensity);
        }
        let beta_k = &c / BigRational::from_integer((2 * k).into());
        let threshold = default_threshold(&c).unwrap_or(usize::MAX).max(k);
        Ok(PipelineConfig {
            k,
            c,
            beta_k,
            multiplicity_threshold: threshold,
            rich_threshold_slack: BigRational::from_integer(2.into()),
            fallback_cap: 8,
            max_tuples_per_cell: 64,
            r_override: None,
        })
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.k < 3 {
            return Err(PipelineError::InvalidK(self.k));
        }
        if !self.c.is_positive() {
            return Err(PipelineError::NonPositiveDensity);
        }
        if !self.beta_k.is_positive() {
            return Err(PipelineError::NonPositiveBeta);
        }
        if !self.rich_threshold_slack.is_positive() {
            return Err(PipelineError::NonPositiveSlack);
        }
        if self.multiplicity_threshold < self.k {
            return Err(PipelineError::ThresholdBelowK {
                threshold: self.multiplicity_threshold,
                k: self.k,
            });
        }
        Ok(())
    }
}

/// `max(|P|, |L|)`
pub fn balanced_size(arr: &Arrangement) -> usize {
    arr.n_points().max(arr.n_lines())
}

/// Whether `incidences >= c · n^{4/3}`, decided exactly as `c³ n⁴ <= incidences³`.
pub fn density_holds(incidences: usize, n: usize, c: &Scalar) -> bool {
    let n4 = BigRational::from_integer(num_traits::pow(BigInt::from(n), 4));
    let i3 = BigRational::from_integer(num_traits::pow(BigInt::from(incidences), 3));
    c * c * c * n4 <= i3
}

/// Smallest integer `r >= 1` with `r >= β · n^{2/3}`, i.e. `r³ >= β³ n²`.
pub fn partition_parameter(n: usize, beta: &Scalar) -> usize {
    let target = beta * beta * beta * BigRational::from_integer(BigInt::from(n) * BigInt::from(n));
    let target = target.ceil().to_integer();
    if !target.is_positive() {
        return 1;
    }
    let mut r = target.cbrt();
    while &r * &r * &r < target {
        r += 1;
    }
    r.to_usize().unwrap_or(usize::MAX).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichCellReport {
    pub cell_index: usize,
    pub floor_sum: usize,
    /// line index -> `|Δ_i ∩ ξ|`, lines missing the cell omitted
    pub per_line_counts: BTreeMap<usize, usize>,
}

/// Floor-sum report for every cell, in cell order.
pub fn cell_reports(arr: &Arrangement, pr: &PartitionResult, k: usize) -> Vec<RichCellReport> {
    let mut cell_of = vec![usize::MAX; arr.n_points()];
    for (c, cell) in pr.cells.iter().enumerate() {
        for &i in &cell.point_indices {
            cell_of[i] = c;
        }
    }
    let mut reports: Vec<RichCellReport> = (0..pr.t())
        .map(|cell_index| RichCellReport {
            cell_index,
            floor_sum: 0,
            per_line_counts: BTreeMap::new(),
        })
        .collect();
    for j in 0..arr.n_lines() {
        for &i in arr.points_on_line(j) {
            if let Some(rep) = reports.get_mut(cell_of[i]) {
                *rep.per_line_counts.entry(j).or_insert(0) += 1;
            }
        }
    }
    for rep in &mut reports {
        rep.floor_sum = rep.per_line_counts.values().map(|&m| m / k.max(1)).sum();
    }
    reports
}

/// The cell with the largest floor-sum, lowest index among ties.
pub fn select_rich_cell(
    arr: &Arrangement,
    pr: &PartitionResult,
    k: usize,
) -> Option<RichCellReport> {
    cell_reports(arr, pr, k).into_iter().reduce(|best, rep| {
        if rep.floor_sum > best.floor_sum {
            rep
        } else {
            best
        }
    })
}

/// `k` consecutive cell points of one arrangement line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentLine {
    pub parent_line: usize,
    /// Point indices ordered along the line.
    pub points: Vec<usize>,
    pub start: usize,
    pub end: usize,
}

/// For every line meeting the cell in `m` points, cut its `⌊m/k⌋` leading groups of
/// `k` consecutive points; the trailing `m mod k` points are dropped.
pub fn break_into_segments(
    arr: &Arrangement,
    cell: &PartitionCell,
    k: usize,
) -> Result<Vec<SegmentLine>, PipelineError> {
    if k < 3 {
        return Err(PipelineError::InvalidK(k));
    }
    let members: BTreeSet<usize> = cell.point_indices.iter().copied().collect();
    let pts = arr.points();
    let mut out = Vec::new();
    for j in 0..arr.n_lines() {
        let mut on: Vec<usize> = arr
            .points_on_line(j)
            .iter()
            .copied()
            .filter(|i| members.contains(i))
            .collect();
        if on.len() < k {
            continue;
        }
        // lexicographic order is the order along any line
        on.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
        for chunk in on.chunks_exact(k) {
            out.push(SegmentLine {
                parent_line: j,
                points: chunk.to_vec(),
                start: chunk[0],
                end: chunk[k - 1],
            });
        }
    }
    Ok(out)
}

/// For each pair of `pts`, how many arrangement points lie strictly inside the open
/// segment between them. Keys are positions in `pts`.
pub fn locality_check(arr: &Arrangement, pts: &[Point]) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for (a, p) in pts.iter().enumerate() {
        for (b, q) in pts.iter().enumerate().skip(a + 1) {
            let count = arr
                .points()
                .iter()
                .filter(|s| strictly_between(p, q, s))
                .count();
            out.insert((a, b), count);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Certificate {
    pub point_indices: Vec<usize>,
    pub points: Vec<Point>,
    /// `(a, b)` positions in `points` -> arrangement line through both
    pub connecting_lines: BTreeMap<(usize, usize), usize>,
    pub general_position: bool,
    /// `(a, b)` -> arrangement points strictly between `points[a]` and `points[b]`
    pub locality: BTreeMap<(usize, usize), usize>,
    pub source_cell: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("expected {expected} points, certificate has {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("certificate point {0} does not match the arrangement")]
    UnknownPoint(usize),
    #[error("certificate repeats a point")]
    RepeatedPoint,
    #[error("pair ({0}, {1}) has no connecting arrangement line")]
    MissingLine(usize, usize),
    #[error("line for pair ({0}, {1}) misses one of its points")]
    LineMissesPoint(usize, usize),
    #[error("points {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("pair ({a}, {b}) has {count} points strictly between, not fewer than {k}")]
    NotLocal {
        a: usize,
        b: usize,
        count: usize,
        k: usize,
    },
    #[error("locality map disagrees with a recount")]
    LocalityMismatch,
    #[error("general-position flag is not set")]
    FlagUnset,
}

/// Check every claim of a certificate from scratch with exact predicates.
pub fn validate_certificate(
    arr: &Arrangement,
    cert: &Theorem1Certificate,
    k: usize,
) -> Result<(), CertificateError> {
    let n = cert.points.len();
    if n != k || cert.point_indices.len() != k {
        return Err(CertificateError::WrongSize {
            expected: k,
            found: n,
        });
    }
    for (pos, (&i, p)) in cert.point_indices.iter().zip(&cert.points).enumerate() {
        if arr.points().get(i) != Some(p) {
            return Err(CertificateError::UnknownPoint(pos));
        }
    }
    let distinct: BTreeSet<usize> = cert.point_indices.iter().copied().collect();
    if distinct.len() != k {
        return Err(CertificateError::RepeatedPoint);
    }
    for a in 0..n {
        for b in a + 1..n {
            let j = *cert
                .connecting_lines
                .get(&(a, b))
                .ok_or(CertificateError::MissingLine(a, b))?;
            let l = arr
                .lines()
                .get(j)
                .ok_or(CertificateError::MissingLine(a, b))?;
            if !incident(&cert.points[a], l) || !incident(&cert.points[b], l) {
                return Err(CertificateError::LineMissesPoint(a, b));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if collinear(&cert.points[a], &cert.points[b], &cert.points[c]) {
                    return Err(CertificateError::Collinear(a, b, c));
                }
            }
        }
    }
    let recount = locality_check(arr, &cert.points);
    if recount != cert.locality {
        return Err(CertificateError::LocalityMismatch);
    }
    if let Some((&(a, b), &count)) = recount.iter().find(|(_, &c)| c >= k) {
        return Err(CertificateError::NotLocal { a, b, count, k });
    }
    if !cert.general_position {
        return Err(CertificateError::FlagUnset);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellAttempt {
    pub cell_index: usize,
    pub floor_sum: usize,
    pub mode: SearchMode,
    pub segments: usize,
    pub dual_vertices: usize,
    pub dual_edges: usize,
    pub shear: Scalar,
    pub tuples_examined: usize,
    pub tuples_rejected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub n: usize,
    pub n_incidences: usize,
    /// `I >= c · n^{4/3}`; the run proceeds either way.
    pub density_precondition_holds: bool,
    pub r: usize,
    pub t: usize,
    pub floor_sums: Vec<usize>,
    pub attempts: Vec<CellAttempt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theorem1Outcome {
    Found {
        certificate: Theorem1Certificate,
        trace: PipelineTrace,
    },
    NotFound {
        trace: PipelineTrace,
    },
}

impl Theorem1Outcome {
    pub fn trace(&self) -> &PipelineTrace {
        match self {
            Theorem1Outcome::Found { trace, .. } | Theorem1Outcome::NotFound { trace } => trace,
        }
    }

    pub fn certificate(&self) -> Option<&Theorem1Certificate> {
        match self {
            Theorem1Outcome::Found { certificate, .. } => Some(certificate),
            Theorem1Outcome::NotFound { .. } => None,
        }
    }
}

/// Where the dual graph takes its edges from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Only pairs inside one `k`-point segment are joined.
    Segments,
    /// Any two cell points on a common line are joined; used once segments fail.
    CellLines,
}

/// `(line, points)` groups: each group's points are joined pairwise through the line.
type LineGroups = Vec<(usize, Vec<usize>)>;

fn cell_groups(
    arr: &Arrangement,
    cell: &PartitionCell,
    k: usize,
    mode: SearchMode,
) -> Result<(usize, LineGroups), PipelineError> {
    match mode {
        SearchMode::Segments => {
            let segments = break_into_segments(arr, cell, k)?;
            let n = segments.len();
            Ok((
                n,
                segments
                    .into_iter()
                    .map(|s| (s.parent_line, s.points))
                    .collect(),
            ))
        }
        SearchMode::CellLines => {
            let members: BTreeSet<usize> = cell.point_indices.iter().copied().collect();
            let groups: Vec<(usize, Vec<usize>)> = (0..arr.n_lines())
                .map(|j| {
                    let on = arr.points_on_line(j);
                    (
                        j,
                        on.iter()
                            .copied()
                            .filter(|i| members.contains(i))
                            .collect::<Vec<_>>(),
                    )
                })
                .filter(|(_, on)| on.len() >= 2)
                .collect();
            Ok((0, groups))
        }
    }
}

fn search_cell(
    arr: &Arrangement,
    cell: &PartitionCell,
    cell_index: usize,
    floor_sum: usize,
    mode: SearchMode,
    cfg: &PipelineConfig,
) -> Result<(CellAttempt, Option<Theorem1Certificate>), PipelineError> {
    let k = cfg.k;
    let (n_segments, line_groups) = cell_groups(arr, cell, k, mode)?;
    let sub_points: Vec<usize> = line_groups
        .iter()
        .flat_map(|(_, pts)| pts.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let sub_lines: Vec<usize> = line_groups
        .iter()
        .map(|&(j, _)| j)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let local_point: BTreeMap<usize, usize> = sub_points
        .iter()
        .enumerate()
        .map(|(l, &g)| (g, l))
        .collect();
    let local_line: BTreeMap<usize, usize> =
        sub_lines.iter().enumerate().map(|(l, &g)| (g, l)).collect();

    let sub = arr.restrict(&sub_points, &sub_lines);
    let shear = sub.generic_shear();
    let dual = sub.shear(&shear).dualize()?;
    // dual points are the parent lines, dual lines are the cell points
    let kept = multiplicity_filter(&dual, cfg.multiplicity_threshold)?;
    let groups = line_groups
        .iter()
        .map(|(j, pts)| (local_line[j], pts.iter().map(|g| local_point[g]).collect()))
        .filter(|(label, _)| kept.contains(label));
    let graph = IntersectionGraph::from_groups(dual.n_lines(), groups)?;

    let mut attempt = CellAttempt {
        cell_index,
        floor_sum,
        mode,
        segments: n_segments,
        dual_vertices: graph.n_vertices(),
        dual_edges: graph.n_edges(),
        shear,
        tuples_examined: 0,
        tuples_rejected: 0,
    };
    let tuples = enumerate_complete_tuples(&graph, &dual, k, Some(cfg.max_tuples_per_cell))?;
    for tuple in tuples {
        attempt.tuples_examined += 1;
        let point_indices: Vec<usize> = tuple.line_indices.iter().map(|&l| sub_points[l]).collect();
        let points: Vec<Point> = point_indices
            .iter()
            .map(|&i| arr.points()[i].clone())
            .collect();
        let mut connecting_lines = BTreeMap::new();
        for (a, &u) in tuple.line_indices.iter().enumerate() {
            for (b, &v) in tuple.line_indices.iter().enumerate().skip(a + 1) {
                let witness = tuple.witness_points[&(u, v)];
                connecting_lines.insert((a, b), sub_lines[witness]);
            }
        }
        let locality = locality_check(arr, &points);
        let certificate = Theorem1Certificate {
            point_indices,
            points,
            connecting_lines,
            general_position: tuple.general_position_certificate,
            locality,
            source_cell: cell_index,
        };
        if validate_certificate(arr, &certificate, k).is_ok() {
            return Ok((attempt, Some(certificate)));
        }
        attempt.tuples_rejected += 1;
    }
    Ok((attempt, None))
}

pub fn run_theorem1(
    arr: &Arrangement,
    cfg: &PipelineConfig,
) -> Result<Theorem1Outcome, PipelineError> {
    cfg.validate()?;
    let n = balanced_size(arr);
    let mut trace = PipelineTrace {
        n,
        n_incidences: arr.n_incidences(),
        density_precondition_holds: density_holds(arr.n_incidences(), n, &cfg.c),
        r: 0,
        t: 0,
        floor_sums: Vec::new(),
        attempts: Vec::new(),
    };
    if arr.n_points() < cfg.k {
        return Ok(Theorem1Outcome::NotFound { trace });
    }
    let r = cfg
        .r_override
        .unwrap_or_else(|| partition_parameter(n, &cfg.beta_k))
        .clamp(1, arr.n_points());
    let pr = partition(arr.points(), r)?;
    let reports = cell_reports(arr, &pr, cfg.k);
    trace.r = r;
    trace.t = pr.t();
    trace.floor_sums = reports.iter().map(|rep| rep.floor_sum).collect();

    let mut order: Vec<&RichCellReport> = reports.iter().collect();
    order.sort_by(|a, b| {
        b.floor_sum
            .cmp(&a.floor_sum)
            .then(a.cell_index.cmp(&b.cell_index))
    });
    order.truncate(cfg.fallback_cap);
    // segment-restricted search over all candidate cells first, then the relaxed one
    for mode in [SearchMode::Segments, SearchMode::CellLines] {
        for rep in &order {
            if mode == SearchMode::Segments && rep.floor_sum == 0 {
                continue;
            }
            let cell = &pr.cells[rep.cell_index];
            let (attempt, found) =
                search_cell(arr, cell, rep.cell_index, rep.floor_sum, mode, cfg)?;
            trace.attempts.push(attempt);
            if let Some(certificate) = found {
                return Ok(Theorem1Outcome::Found { certificate, trace });
            }
        }
    }
    Ok(Theorem1Outcome::NotFound { trace })
}

/// Both sides of the floor-sum inequalities for one instance, decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityAudit {
    pub n: usize,
    pub n_lines: usize,
    pub r: usize,
    pub t: usize,
    /// Rational lower bound on `√r` with denominator `10⁶`.
    pub sqrt_r_lower: Scalar,
    /// `Σ_ξ Σ_i ⌊|Δ_i ∩ ξ|/k⌋`
    pub total_floor_sum: usize,
    /// The same sum over lines with at least `slack · √r · k` points.
    pub rich_floor_sum: usize,
    pub rich_lines: usize,
    /// `((c/k) · n^{4/3})³`
    pub lhs_cubed: Scalar,
    /// `total_floor_sum + |L| · sqrt_r_lower`
    pub rhs: Scalar,
    pub holds: bool,
    /// Same comparison with `rich_floor_sum` in place of the total.
    pub holds_rich_only: bool,
    /// `(c/2k) · n^{4/3} <= total_floor_sum`
    pub halved_holds: bool,
    pub max_cell_floor_sum: usize,
    /// `(c/2k) · n^{2/3} <= max_cell_floor_sum`
    pub pigeonhole_holds: bool,
    /// selected cell floor-sum ≥ total / t
    pub selected_at_least_average: bool,
}

fn cube(v: &Scalar) -> Scalar {
    v * v * v
}

pub fn inequality_audit(
    arr: &Arrangement,
    pr: &PartitionResult,
    cfg: &PipelineConfig,
) -> InequalityAudit {
    let k = cfg.k.max(1);
    let n = balanced_size(arr);
    let r = pr.r_requested;
    let reports = cell_reports(arr, pr, k);
    let total_floor_sum: usize = reports.iter().map(|rep| rep.floor_sum).sum();
    let max_cell_floor_sum = reports.iter().map(|rep| rep.floor_sum).max().unwrap_or(0);

    // richness >= slack·k·√r  <=>  richness² >= (slack·k)²·r
    let slack_k = &cfg.rich_threshold_slack * BigRational::from_integer(k.into());
    let rich_cut = &slack_k * &slack_k * BigRational::from_integer(r.into());
    let is_rich = |j: usize| {
        let m = BigRational::from_integer(arr.richness(j).into());
        &m * &m >= rich_cut
    };
    let rich: BTreeSet<usize> = (0..arr.n_lines()).filter(|&j| is_rich(j)).collect();
    let rich_floor_sum: usize = reports
        .iter()
        .flat_map(|rep| rep.per_line_counts.iter())
        .filter(|(j, _)| rich.contains(j))
        .map(|(_, &m)| m / k)
        .sum();

    let scale: u64 = 1_000_000;
    let sqrt_r_lower = BigRational::new(
        (BigInt::from(r) * BigInt::from(scale) * BigInt::from(scale)).sqrt(),
        BigInt::from(scale),
    );
    let n_big = BigRational::from_integer(n.into());
    let n2 = &n_big * &n_big;
    let n4 = &n2 * &n2;
    let c_over_k = &cfg.c / BigRational::from_integer(k.into());
    let c_over_2k = &c_over_k / BigRational::from_integer(2.into());
    let lhs_cubed = cube(&c_over_k) * &n4;
    let l_term = BigRational::from_integer(arr.n_lines().into()) * &sqrt_r_lower;
    let rhs = BigRational::from_integer(total_floor_sum.into()) + &l_term;
    let rhs_rich = BigRational::from_integer(rich_floor_sum.into()) + &l_term;
    let total = BigRational::from_integer(total_floor_sum.into());
    let max_cell = BigRational::from_integer(max_cell_floor_sum.into());
    let selected_at_least_average = pr.t() == 0
        || BigRational::from_integer(max_cell_floor_sum.into())
            * BigRational::from_integer(pr.t().into())
            >= total;

    InequalityAudit {
        n,
        n_lines: arr.n_lines(),
        r,
        t: pr.t(),
        holds: lhs_cubed <= cube(&rhs),
        holds_rich_only: lhs_cubed <= cube(&rhs_rich),
        halved_holds: cube(&c_over_2k) * &n4 <= cube(&total),
        pigeonhole_holds: cube(&c_over_2k) * &n2 <= cube(&max_cell),
        sqrt_r_lower,
        total_floor_sum,
        rich_floor_sum,
        rich_lines: rich.len(),
        lhs_cubed,
        rhs,
        max_cell_floor_sum,
        selected_at_least_average,
    }
}

/// `⌈100/c⌉`, the default multiplicity threshold.
pub fn default_threshold(c: &Scalar) -> Option<usize> {
    if !c.is_positive() {
        return None;
    }
    (BigRational::from_integer(100.into()) / c)
        .ceil()
        .to_integer()
        .to_usize()
}
