//! Point-line arrangements: storage, the incidence engine, extremal generators,
//! rich-line statistics and the shear/duality transforms.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::geom::{line_through, Line, Point, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("point {index} duplicates an earlier point")]
    DuplicatePoint { index: usize },
    #[error("line {index} duplicates an earlier line")]
    DuplicateLine { index: usize },
    #[error("at least two distinct points are required")]
    FewerThanTwoPoints,
    #[error("line {index} is vertical; shear the arrangement before dualizing")]
    VerticalLinePresent { index: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// A single incident (point, line) pair, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Incidence {
    pub point: usize,
    pub line: usize,
}

#[derive(Debug, Clone)]
struct IncidenceIndex {
    pairs: Vec<Incidence>,
    by_line: Vec<Vec<usize>>,
    by_point: Vec<Vec<usize>>,
}

/// Indexed points and lines plus the incidence relation, computed on first use.
#[derive(Debug, Clone, Default)]
pub struct Arrangement {
    points: Vec<Point>,
    lines: Vec<Line>,
    index: OnceLock<IncidenceIndex>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.lines == other.lines
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    pub fn new(points: Vec<Point>, lines: Vec<Line>) -> Result<Self, ArrangementError> {
        let mut seen = HashSet::with_capacity(points.len());
        for (index, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(ArrangementError::DuplicatePoint { index });
            }
        }
        let mut seen = HashSet::with_capacity(lines.len());
        for (index, l) in lines.iter().enumerate() {
            if !seen.insert(l) {
                return Err(ArrangementError::DuplicateLine { index });
            }
        }
        Ok(Arrangement {
            points,
            lines,
            index: OnceLock::new(),
        })
    }

    pub fn empty() -> Self {
        Arrangement::default()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    fn index(&self) -> &IncidenceIndex {
        self.index.get_or_init(|| {
            let pairs = build_incidences(&self.points, &self.lines);
            let mut by_line = vec![Vec::new(); self.lines.len()];
            let mut by_point = vec![Vec::new(); self.points.len()];
            for inc in &pairs {
                by_line[inc.line].push(inc.point);
                by_point[inc.point].push(inc.line);
            }
            IncidenceIndex {
                pairs,
                by_line,
                by_point,
            }
        })
    }

    /// All incident pairs, sorted by `(line, point)`.
    pub fn incidences(&self) -> &[Incidence] {
        &self.index().pairs
    }

    pub fn n_incidences(&self) -> usize {
        self.incidences().len()
    }

    /// Indices of points on line `j`, ascending.
    pub fn points_on_line(&self, j: usize) -> &[usize] {
        &self.index().by_line[j]
    }

    /// Indices of lines through point `i`, ascending.
    pub fn lines_through(&self, i: usize) -> &[usize] {
        &self.index().by_point[i]
    }

    pub fn richness(&self, j: usize) -> usize {
        self.points_on_line(j).len()
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.lines_through(i).len()
    }

    pub fn max_richness(&self) -> usize {
        (0..self.n_lines())
            .map(|j| self.richness(j))
            .max()
            .unwrap_or(0)
    }

    /// Lines incident to at least `m` points.
    pub fn rich_lines(&self, m: usize) -> BTreeSet<usize> {
        (0..self.n_lines())
            .filter(|&j| self.richness(j) >= m)
            .collect()
    }

    pub fn stats(&self) -> IncidenceStats {
        let mut richness_histogram = BTreeMap::new();
        for j in 0..self.n_lines() {
            *richness_histogram.entry(self.richness(j)).or_insert(0) += 1;
        }
        let n_incidences = self.n_incidences();
        let min = self.n_points().min(self.n_lines());
        let st_ratio_cubed = (min > 0).then(|| {
            let i = BigInt::from(n_incidences);
            let m = BigInt::from(min);
            BigRational::new(&i * &i * &i, num_traits::pow(m, 4))
        });
        IncidenceStats {
            n_points: self.n_points(),
            n_lines: self.n_lines(),
            n_incidences,
            richness_histogram,
            st_ratio_cubed,
        }
    }

    /// Compare the number of `m`-rich lines with `C·(n²/m³ + n/m)`, `n` the number of points.
    pub fn st_bound_report(&self, constant: &Scalar) -> Vec<RichLineBound> {
        let n = BigRational::from_integer(self.n_points().into());
        let mut counts = vec![0usize; self.max_richness() + 1];
        for j in 0..self.n_lines() {
            counts[self.richness(j)] += 1;
        }
        // suffix sums: counts[m] becomes the number of lines with richness >= m
        for m in (0..counts.len().saturating_sub(1)).rev() {
            counts[m] += counts[m + 1];
        }
        (2..counts.len())
            .map(|m| {
                let mr = BigRational::from_integer(m.into());
                let bound = constant * (&n * &n / (&mr * &mr * &mr) + &n / &mr);
                let rich_count = counts[m];
                RichLineBound {
                    m,
                    rich_count,
                    within_bound: BigRational::from_integer(rich_count.into()) <= bound,
                    bound,
                }
            })
            .collect()
    }

    /// Apply `(x, y) -> (x + s·y, y)` to points and the matching map to lines.
    pub fn shear(&self, s: &Scalar) -> Arrangement {
        let points = self
            .points
            .iter()
            .map(|p| Point::new(&p.x + s * &p.y, p.y.clone()))
            .collect();
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let a = BigRational::from_integer(l.a().clone());
                let b = BigRational::from_integer(l.b().clone()) - &a * s;
                let c = BigRational::from_integer(l.c().clone());
                Line::from_rational(&a, &b, &c).expect("shear keeps a line non-degenerate")
            })
            .collect();
        Arrangement {
            points,
            lines,
            index: OnceLock::new(),
        }
    }

    /// Smallest non-negative integer shear after which no line is vertical.
    pub fn generic_shear(&self) -> Scalar {
        // a·x + (b - a·s)·y + c is vertical exactly when s = b/a
        let bad: HashSet<Scalar> = self
            .lines
            .iter()
            .filter(|l| !l.a().is_zero())
            .map(|l| BigRational::new(l.b().clone(), l.a().clone()))
            .collect();
        let mut s = Scalar::zero();
        while bad.contains(&s) {
            s += Scalar::one();
        }
        s
    }

    /// Point `(a, b)` becomes line `y = a·x - b`; line `y = m·x + c` becomes point `(m, -c)`.
    ///
    /// Dual point `j` comes from line `j` and dual line `i` from point `i`, so the
    /// incidence relation is transposed.
    pub fn dualize(&self) -> Result<Arrangement, ArrangementError> {
        let mut points = Vec::with_capacity(self.lines.len());
        for (index, l) in self.lines.iter().enumerate() {
            let (m, c) = l
                .slope_intercept()
                .ok_or(ArrangementError::VerticalLinePresent { index })?;
            points.push(Point::new(m, -c));
        }
        let lines = self
            .points
            .iter()
            .map(|p| Line::from_slope_intercept(&p.x, &-&p.y))
            .collect();
        Ok(Arrangement {
            points,
            lines,
            index: OnceLock::new(),
        })
    }

    /// Sub-arrangement on the given point and line indices, in the given order.
    pub fn restrict(&self, points: &[usize], lines: &[usize]) -> Arrangement {
        Arrangement {
            points: points.iter().map(|&i| self.points[i].clone()).collect(),
            lines: lines.iter().map(|&j| self.lines[j].clone()).collect(),
            index: OnceLock::new(),
        }
    }
}

/// One row of [`Arrangement::st_bound_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichLineBound {
    pub m: usize,
    pub rich_count: usize,
    pub bound: Scalar,
    pub within_bound: bool,
}

impl RichLineBound {
    /// Smallest constant that would put this row within the bound.
    pub fn tightest_constant(&self) -> Scalar {
        if self.bound.is_zero() {
            return Scalar::zero();
        }
        BigRational::from_integer(self.rich_count.into()) / &self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStats {
    pub n_points: usize,
    pub n_lines: usize,
    pub n_incidences: usize,
    /// richness m -> number of lines with exactly m points
    pub richness_histogram: BTreeMap<usize, usize>,
    /// `(I / min(|P|, |L|)^{4/3})³` kept exact; `None` for an empty side.
    pub st_ratio_cubed: Option<Scalar>,
}

impl IncidenceStats {
    pub fn st_ratio_approx(&self) -> Option<f64> {
        self.st_ratio_cubed
            .as_ref()
            .and_then(|r| r.to_f64())
            .map(f64::cbrt)
    }
}

/// Largest `p / denominator` with `(p / denominator) · n^{4/3} <= incidences`.
pub fn density_lower_bound(incidences: usize, n: usize, denominator: u64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    let d = BigInt::from(denominator);
    let target = num_traits::pow(BigInt::from(incidences) * &d, 3);
    let n4 = num_traits::pow(BigInt::from(n), 4);
    let fits = |p: &BigInt| p * p * p * &n4 <= target;
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::one());
    while fits(&hi) {
        hi *= 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    BigRational::new(lo, d)
}

const SMALL: i64 = 1 << 62;

fn small_ints(values: &[BigInt; 3]) -> Option<[i128; 3]> {
    let mut out = [0i128; 3];
    for (o, v) in out.iter_mut().zip(values) {
        let v = v.to_i64()?;
        if v.abs() >= SMALL {
            return None;
        }
        *o = v as i128;
    }
    Some(out)
}

/// Exhaustive exact scan, sorted by `(line, point)`. Coordinates below 2^62 take an
/// `i128` path; the sums of three products then cannot overflow.
pub fn build_incidences(points: &[Point], lines: &[Line]) -> Vec<Incidence> {
    let hp: Vec<[BigInt; 3]> = points.iter().map(Point::homogeneous).collect();
    let hl: Vec<[BigInt; 3]> = lines.iter().map(Line::coefficients).collect();
    let small_p: Option<Vec<[i128; 3]>> = hp.iter().map(small_ints).collect();
    let small_l: Option<Vec<[i128; 3]>> = hl.iter().map(small_ints).collect();
    let mut out = Vec::new();
    match (small_p, small_l) {
        (Some(sp), Some(sl)) => {
            for (line, l) in sl.iter().enumerate() {
                for (point, p) in sp.iter().enumerate() {
                    if l[0] * p[0] + l[1] * p[1] + l[2] * p[2] == 0 {
                        out.push(Incidence { point, line });
                    }
                }
            }
        }
        _ => {
            for (line, l) in hl.iter().enumerate() {
                for (point, p) in hp.iter().enumerate() {
                    if (&l[0] * &p[0] + &l[1] * &p[1] + &l[2] * &p[2]).is_zero() {
                        out.push(Incidence { point, line });
                    }
                }
            }
        }
    }
    out
}

/// Points `[0, N) × [0, 2N²)` and lines `y = m·x + b` with `0 <= m < N`, `0 <= b < N²`.
/// Every line carries exactly `N` points, for `N⁴` incidences in total.
pub fn grid_construction(n: u32) -> Result<Arrangement, ArrangementError> {
    if n == 0 {
        return Err(ArrangementError::InvalidParams(
            "grid side must be >= 1".into(),
        ));
    }
    let n = i64::from(n);
    let mut points = Vec::with_capacity((2 * n * n * n) as usize);
    for x in 0..n {
        for y in 0..2 * n * n {
            points.push(Point::from_ints(x, y));
        }
    }
    let mut lines = Vec::with_capacity((n * n * n) as usize);
    for m in 0..n {
        for b in 0..n * n {
            lines.push(Line::from_ints(m, -1, b).expect("b coefficient is -1"));
        }
    }
    Arrangement::new(points, lines)
}

/// Points of the integer square grid `[0, side)²`.
pub fn square_grid_points(side: u32) -> Vec<Point> {
    let side = i64::from(side);
    (0..side)
        .flat_map(|x| (0..side).map(move |y| Point::from_ints(x, y)))
        .collect()
}

/// All lines spanned by pairs of the given points, in first-seen order.
pub fn spanned_lines(points: Vec<Point>) -> Result<Arrangement, ArrangementError> {
    let mut lines = Vec::new();
    let mut seen = HashSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if let Ok(l) = line_through(p, q) {
                if seen.insert(l.clone()) {
                    lines.push(l);
                }
            }
        }
    }
    if lines.is_empty() {
        return Err(ArrangementError::FewerThanTwoPoints);
    }
    Arrangement::new(points, lines)
}

/// Seeded random arrangement: distinct points uniform on `[0, bound]²`, lines through
/// random pairs of those points.
pub fn random_arrangement(
    seed: u64,
    n_points: usize,
    n_lines: usize,
    bound: u32,
) -> Result<Arrangement, ArrangementError> {
    let side = u64::from(bound) + 1;
    if (n_points as u64) > side * side {
        return Err(ArrangementError::InvalidParams(format!(
            "{n_points} distinct points do not fit in [0, {bound}]^2"
        )));
    }
    if n_lines > 0 && n_points < 2 {
        return Err(ArrangementError::InvalidParams(
            "lines need at least two points".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(n_points);
    while points.len() < n_points {
        let p = Point::from_ints(
            rng.random_range(0..=i64::from(bound)),
            rng.random_range(0..=i64::from(bound)),
        );
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    let mut lines = Vec::with_capacity(n_lines);
    let mut seen = HashSet::new();
    let max_attempts = 100 * (n_lines + 1) + n_points * n_points;
    let mut attempts = 0;
    while lines.len() < n_lines {
        attempts += 1;
        if attempts > max_attempts {
            return Err(ArrangementError::InvalidParams(format!(
                "could not draw {n_lines} distinct lines from {n_points} points"
            )));
        }
        let pair: Vec<&Point> = points.choose_multiple(&mut rng, 2).collect();
        let l = line_through(pair[0], pair[1]).expect("sampled points are distinct");
        if seen.insert(l.clone()) {
            lines.push(l);
        }
    }
    Arrangement::new(points, lines)
}

/// `n` lines through a common point, optionally including that point.
pub fn pencil(center: &Point, n: usize, include_center: bool) -> Arrangement {
    let lines = (0..n as i64)
        .map(|k| {
            // direction (1, k) for k < n-1, plus the vertical direction last
            let (dx, dy) = if k + 1 == n as i64 { (0, 1) } else { (1, k) };
            let a = BigRational::from_integer(dy.into());
            let b = BigRational::from_integer((-dx).into());
            let c = -(&a * &center.x + &b * &center.y);
            Line::from_rational(&a, &b, &c).expect("direction is nonzero")
        })
        .collect();
    let points = if include_center {
        vec![center.clone()]
    } else {
        Vec::new()
    };
    Arrangement::new(points, lines).expect("pencil lines have distinct slopes")
}

pub fn has_vertical_line(arr: &Arrangement) -> bool {
    arr.lines().iter().any(Line::is_vertical)
}
