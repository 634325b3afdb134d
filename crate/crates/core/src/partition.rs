//! Balanced planar partitions with few cells per line.
//!
//! Cells come from recursive exact-median splits that alternate between the two
//! axes, starting with the axis along which the point set is wider. A cell is split
//! while both halves would still hold at least `⌊n/r⌋` points, so every final cell
//! holds between `⌊n/r⌋` and `2⌊n/r⌋ - 1 <= ⌈2n/r⌉` points and there are at most
//! `2r` of them.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geom::{Line, Point, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("point {index} duplicates an earlier point")]
    DegenerateInput { index: usize },
    #[error("r must satisfy 1 <= r <= n (r = {r}, n = {n})")]
    InvalidParameter { r: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }

    fn coord(self, p: &Point) -> &Scalar {
        match self {
            Axis::X => &p.x,
            Axis::Y => &p.y,
        }
    }
}

/// Closed axis-aligned rectangle; `None` marks an unbounded side.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Region {
    pub x_min: Option<Scalar>,
    pub x_max: Option<Scalar>,
    pub y_min: Option<Scalar>,
    pub y_max: Option<Scalar>,
}

impl Region {
    pub fn unbounded() -> Self {
        Region::default()
    }

    pub fn is_unbounded(&self) -> bool {
        self.x_min.is_none() || self.x_max.is_none() || self.y_min.is_none() || self.y_max.is_none()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.x_min.as_ref().is_none_or(|v| &p.x >= v)
            && self.x_max.as_ref().is_none_or(|v| &p.x <= v)
            && self.y_min.as_ref().is_none_or(|v| &p.y >= v)
            && self.y_max.as_ref().is_none_or(|v| &p.y <= v)
    }

    /// Whether the line meets the closed region. Decided from the exact range of
    /// `ax + by + c` over the rectangle.
    pub fn meets(&self, l: &Line) -> bool {
        let a = BigRational::from_integer(l.a().clone());
        let b = BigRational::from_integer(l.b().clone());
        let c = BigRational::from_integer(l.c().clone());
        let (xl, xh) = term_range(&a, &self.x_min, &self.x_max);
        let (yl, yh) = term_range(&b, &self.y_min, &self.y_max);
        let low = xl.zip(yl).map(|(x, y)| x + y + &c);
        let high = xh.zip(yh).map(|(x, y)| x + y + &c);
        low.is_none_or(|v| !v.is_positive()) && high.is_none_or(|v| !v.is_negative())
    }

    fn with_bound(&self, axis: Axis, low: bool, value: Scalar) -> Region {
        let mut r = self.clone();
        let slot = match (axis, low) {
            (Axis::X, true) => &mut r.x_min,
            (Axis::X, false) => &mut r.x_max,
            (Axis::Y, true) => &mut r.y_min,
            (Axis::Y, false) => &mut r.y_max,
        };
        *slot = Some(value);
        r
    }
}

/// Range of `coef · t` for `t` in `[lo, hi]`; `None` stands for -inf on the low side
/// and +inf on the high side.
fn term_range(
    coef: &Scalar,
    lo: &Option<Scalar>,
    hi: &Option<Scalar>,
) -> (Option<Scalar>, Option<Scalar>) {
    if coef.is_zero() {
        return (Some(Scalar::zero()), Some(Scalar::zero()));
    }
    let at = |v: &Option<Scalar>| v.as_ref().map(|t| coef * t);
    if coef.is_positive() {
        (at(lo), at(hi))
    } else {
        (at(hi), at(lo))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCell {
    /// Ascending input indices.
    pub point_indices: Vec<usize>,
    pub region: Region,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionResult {
    pub cells: Vec<PartitionCell>,
    pub r_requested: usize,
    pub n_points: usize,
}

impl PartitionResult {
    pub fn t(&self) -> usize {
        self.cells.len()
    }

    /// `[⌊n/r⌋, ⌈2n/r⌉]`
    pub fn size_window(&self) -> (usize, usize) {
        let (n, r) = (self.n_points, self.r_requested);
        (n / r, (2 * n).div_ceil(r))
    }

    /// Re-check the structural guarantees against the input points.
    pub fn verify(&self, points: &[Point]) -> PartitionCheck {
        let mut seen = vec![false; points.len()];
        let mut covers = self.n_points == points.len();
        let mut regions_contain_members = true;
        for cell in &self.cells {
            for &i in &cell.point_indices {
                if i >= points.len() || seen[i] {
                    covers = false;
                    continue;
                }
                seen[i] = true;
                if !cell.region.contains(&points[i]) {
                    regions_contain_members = false;
                }
            }
        }
        covers &= seen.iter().all(|&s| s);
        let (lo, hi) = self.size_window();
        PartitionCheck {
            covers,
            regions_contain_members,
            sizes_in_window: self
                .cells
                .iter()
                .all(|c| (lo..=hi).contains(&c.point_indices.len())),
            cell_count_within: self.t() <= 4 * self.r_requested,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionCheck {
    pub covers: bool,
    pub regions_contain_members: bool,
    pub sizes_in_window: bool,
    pub cell_count_within: bool,
}

impl PartitionCheck {
    pub fn all_ok(&self) -> bool {
        self.covers
            && self.regions_contain_members
            && self.sizes_in_window
            && self.cell_count_within
    }
}

fn cmp_along(points: &[Point], axis: Axis, i: usize, j: usize) -> Ordering {
    let (p, q) = (&points[i], &points[j]);
    axis.coord(p)
        .cmp(axis.coord(q))
        .then_with(|| axis.other().coord(p).cmp(axis.other().coord(q)))
        .then(i.cmp(&j))
}

fn wider_axis(points: &[Point]) -> Axis {
    let extent = |axis: Axis| {
        let lo = points.iter().map(|p| axis.coord(p)).min();
        let hi = points.iter().map(|p| axis.coord(p)).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => Scalar::zero(),
        }
    };
    if extent(Axis::Y) > extent(Axis::X) {
        Axis::Y
    } else {
        Axis::X
    }
}

pub fn partition(points: &[Point], r: usize) -> Result<PartitionResult, PartitionError> {
    let n = points.len();
    if r == 0 || r > n {
        return Err(PartitionError::InvalidParameter { r, n });
    }
    let mut seen = HashSet::with_capacity(n);
    for (index, p) in points.iter().enumerate() {
        if !seen.insert(p) {
            return Err(PartitionError::DegenerateInput { index });
        }
    }
    let min_size = n / r;
    let mut cells = Vec::new();
    // depth-first, lower half first
    let mut stack = vec![(
        (0..n).collect::<Vec<_>>(),
        Region::unbounded(),
        wider_axis(points),
    )];
    while let Some((mut members, region, axis)) = stack.pop() {
        if members.len() < 2 * min_size.max(1) {
            members.sort_unstable();
            cells.push(PartitionCell {
                point_indices: members,
                region,
            });
            continue;
        }
        members.sort_by(|&i, &j| cmp_along(points, axis, i, j));
        let upper = members.split_off(members.len().div_ceil(2));
        let split = axis
            .coord(&points[*members.last().expect("non-empty")])
            .clone();
        let lower_region = region.with_bound(axis, false, split.clone());
        let upper_region = region.with_bound(axis, true, split);
        stack.push((upper, upper_region, axis.other()));
        stack.push((members, lower_region, axis.other()));
    }
    Ok(PartitionResult {
        cells,
        r_requested: r,
        n_points: n,
    })
}

/// Number of cells whose closed region the line meets.
pub fn crossing_number(pr: &PartitionResult, l: &Line) -> usize {
    pr.cells.iter().filter(|c| c.region.meets(l)).count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingProfile {
    pub max: usize,
    pub mean: Scalar,
    pub per_line: Vec<usize>,
}

pub fn crossing_profile(pr: &PartitionResult, lines: &[Line]) -> CrossingProfile {
    let per_line: Vec<usize> = lines.iter().map(|l| crossing_number(pr, l)).collect();
    let total: usize = per_line.iter().sum();
    let mean = if per_line.is_empty() {
        Scalar::zero()
    } else {
        BigRational::new(total.into(), per_line.len().into())
    };
    CrossingProfile {
        max: per_line.iter().copied().max().unwrap_or(0),
        mean,
        per_line,
    }
}
