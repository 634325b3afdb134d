//! Exact rational points, integer homogeneous lines and the predicates built on them.
//!
//! Nothing in here touches floating point. Lines are stored as primitive integer
//! triples `(a, b, c)` describing `ax + by + c = 0`, normalized so that every
//! geometric line has exactly one representation and can be used as a map key.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("the two lines are identical")]
    IdenticalLines,
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("(a, b) = (0, 0) does not describe a line")]
    DegenerateLine,
}

/// Build a scalar from an integer numerator and denominator.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    /// Integer homogeneous coordinates `(X, Y, W)` with `W > 0` and `x = X/W`, `y = Y/W`.
    pub fn homogeneous(&self) -> [BigInt; 3] {
        let w = self.x.denom().lcm(self.y.denom());
        let x = self.x.numer() * (&w / self.x.denom());
        let y = self.y.numer() * (&w / self.y.denom());
        [x, y, w]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The line `ax + by + c = 0` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Normalize an integer triple: divide out the content and make the first
    /// nonzero of `(a, b)` positive.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, GeomError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::DegenerateLine);
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        let leading = if a.is_zero() { &b } else { &a };
        if leading.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, GeomError> {
        Line::new(a.into(), b.into(), c.into())
    }

    /// Line with rational coefficients; denominators are cleared first.
    pub fn from_rational(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Self, GeomError> {
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |v: &Scalar| v.numer() * (&l / v.denom());
        Line::new(scale(a), scale(b), scale(c))
    }

    /// `y = slope·x + intercept`.
    pub fn from_slope_intercept(slope: &Scalar, intercept: &Scalar) -> Self {
        Line::from_rational(slope, &-Scalar::one(), intercept).expect("b = -1 is nonzero")
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn coefficients(&self) -> [BigInt; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    /// `(slope, intercept)` for non-vertical lines.
    pub fn slope_intercept(&self) -> Option<(Scalar, Scalar)> {
        if self.is_vertical() {
            return None;
        }
        let b = BigRational::from_integer(self.b.clone());
        let slope = -BigRational::from_integer(self.a.clone()) / &b;
        let intercept = -BigRational::from_integer(self.c.clone()) / &b;
        Some((slope, intercept))
    }

    /// Value of `ax + by + c` at a point.
    pub fn eval(&self, p: &Point) -> Scalar {
        BigRational::from_integer(self.a.clone()) * &p.x
            + BigRational::from_integer(self.b.clone()) * &p.y
            + BigRational::from_integer(self.c.clone())
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {} = 0", self.a, self.b, self.c)
    }
}

/// Outcome of intersecting two distinct lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Crossing {
    Point(Point),
    Parallel,
}

fn dot(u: &[BigInt; 3], v: &[BigInt; 3]) -> BigInt {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

fn cross(u: &[BigInt; 3], v: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn det3(u: &[BigInt; 3], v: &[BigInt; 3], w: &[BigInt; 3]) -> BigInt {
    dot(u, &cross(v, w))
}

pub fn incident(p: &Point, l: &Line) -> bool {
    dot(&p.homogeneous(), &l.coefficients()).is_zero()
}

/// Zero homogeneous determinant; repeated points count as collinear.
pub fn collinear(p1: &Point, p2: &Point, p3: &Point) -> bool {
    det3(&p1.homogeneous(), &p2.homogeneous(), &p3.homogeneous()).is_zero()
}

/// Three lines through a common projective point. Mutually parallel lines meet at
/// infinity and therefore count as concurrent.
pub fn concurrent(l1: &Line, l2: &Line, l3: &Line) -> bool {
    det3(&l1.coefficients(), &l2.coefficients(), &l3.coefficients()).is_zero()
}

pub fn intersection(l1: &Line, l2: &Line) -> Result<Crossing, GeomError> {
    if l1 == l2 {
        return Err(GeomError::IdenticalLines);
    }
    let [x, y, w] = cross(&l1.coefficients(), &l2.coefficients());
    if w.is_zero() {
        return Ok(Crossing::Parallel);
    }
    Ok(Crossing::Point(Point::new(
        BigRational::new(x, w.clone()),
        BigRational::new(y, w),
    )))
}

pub fn line_through(p1: &Point, p2: &Point) -> Result<Line, GeomError> {
    if p1 == p2 {
        return Err(GeomError::CoincidentPoints);
    }
    let [a, b, c] = cross(&p1.homogeneous(), &p2.homogeneous());
    Line::new(a, b, c)
}

/// Whether `q` lies strictly inside the open segment `(p1, p2)`.
pub fn strictly_between(p1: &Point, p2: &Point, q: &Point) -> bool {
    if !collinear(p1, p2, q) || q == p1 || q == p2 {
        return false;
    }
    let within = |lo: &Scalar, hi: &Scalar, v: &Scalar| {
        if lo <= hi {
            lo < v && v < hi
        } else {
            hi < v && v < lo
        }
    };
    if p1.x != p2.x {
        within(&p1.x, &p2.x, &q.x)
    } else {
        within(&p1.y, &p2.y, &q.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let x_axis = line(0, 1, 0);
        assert!(incident(&pt(0, 0), &x_axis));
        assert!(!incident(&pt(1, 1), &x_axis));
        let p = Point::new(ratio(1, 2), ratio(3, 2));
        assert!(incident(&p, &line(3, -1, 0)));
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear(&pt(0, 0), &pt(1, 1), &pt(2, 2)));
        assert!(!collinear(&pt(0, 0), &pt(1, 0), &pt(0, 1)));
        assert!(collinear(&pt(0, 0), &pt(1, 2), &pt(2, 4)));
        assert!(collinear(&pt(3, 4), &pt(3, 4), &pt(0, 1)));
    }

    #[test]
    fn concurrent_examples() {
        let (x0, y0) = (line(1, 0, 0), line(0, 1, 0));
        assert!(concurrent(&x0, &y0, &line(1, -1, 0)));
        assert!(!concurrent(&x0, &y0, &line(1, -1, 1)));
        assert!(concurrent(&line(0, 1, 0), &line(0, 1, -1), &line(0, 1, -2)));
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            intersection(&line(0, 1, 0), &line(1, 0, 0)),
            Ok(Crossing::Point(pt(0, 0)))
        );
        assert_eq!(
            intersection(&line(0, 1, 0), &line(0, 1, -1)),
            Ok(Crossing::Parallel)
        );
        assert_eq!(
            intersection(&line(2, 1, -3), &line(1, -1, 0)),
            Ok(Crossing::Point(pt(1, 1)))
        );
        assert_eq!(
            intersection(&line(2, 1, -3), &line(-4, -2, 6)),
            Err(GeomError::IdenticalLines)
        );
    }

    #[test]
    fn line_through_examples() {
        assert_eq!(line_through(&pt(0, 0), &pt(1, 1)).unwrap(), line(1, -1, 0));
        assert_eq!(line_through(&pt(0, 0), &pt(0, 5)).unwrap(), line(1, 0, 0));
        let l = line_through(&pt(1, 2), &pt(3, 3)).unwrap();
        assert_eq!(l.coefficients(), [1.into(), (-2).into(), 3.into()]);
        assert_eq!(
            line_through(&pt(2, 2), &pt(2, 2)),
            Err(GeomError::CoincidentPoints)
        );
    }

    #[test]
    fn canonical_form() {
        let l = line(-4, 6, -2);
        assert_eq!(l.coefficients(), [2.into(), (-3).into(), 1.into()]);
        let v = line(0, -3, 9);
        assert_eq!(v.coefficients(), [0.into(), 1.into(), (-3).into()]);
        assert_eq!(
            Line::new(l.a().clone(), l.b().clone(), l.c().clone()).unwrap(),
            l
        );
        assert_eq!(Line::from_ints(0, 0, 1), Err(GeomError::DegenerateLine));
        let r = Line::from_rational(&ratio(1, 2), &ratio(-1, 3), &int(1)).unwrap();
        assert_eq!(r, line(3, -2, 6));
    }

    #[test]
    fn slope_intercept_round_trip() {
        let l = Line::from_slope_intercept(&ratio(2, 3), &ratio(-1, 4));
        assert_eq!(l.slope_intercept(), Some((ratio(2, 3), ratio(-1, 4))));
        assert_eq!(line(1, 0, -2).slope_intercept(), None);
    }

    #[test]
    fn betweenness() {
        assert!(strictly_between(&pt(0, 0), &pt(2, 2), &pt(1, 1)));
        assert!(!strictly_between(&pt(0, 0), &pt(2, 2), &pt(3, 3)));
        assert!(!strictly_between(&pt(0, 0), &pt(2, 2), &pt(2, 2)));
        assert!(strictly_between(&pt(5, 3), &pt(5, -1), &pt(5, 0)));
        assert!(!strictly_between(&pt(0, 0), &pt(2, 2), &pt(1, 0)));
    }
}
