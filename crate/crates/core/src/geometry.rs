//! Exact rational points, sign-exact orientation and in-circle predicates,
//! and general-position validation.
//!
//! Every predicate here is evaluated without rounding: a misclassified sign
//! shifts a circle count by one, so floating point is never used.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational (always reduced, positive denominator).
pub type Rational = BigRational;

/// Convenience constructor for `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(v: &T) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.as_i8())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    /// The point `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn norm_sq(&self) -> Rational {
        &self.x * &self.x + &self.y * &self.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(serializer)
    }
}

/// Serializes a rational as its exact `num/den` string.
pub(crate) fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&r.to_string())
}

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut fields = s.split_whitespace();
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(format!("expected two coordinates, got {s:?}"));
        };
        let parse = |tok: &str| {
            Rational::from_str(tok).map_err(|_| format!("invalid rational coordinate {tok:?}"))
        };
        Ok(Point::new(parse(x)?, parse(y)?))
    }
}

// Shared determinant formulas, instantiated for i128, BigInt and rationals.
trait Exact:
    Clone + Signed + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}
impl<T> Exact for T where
    T: Clone + Signed + Add<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

fn orient_det<T: Exact>(a: &[T; 2], b: &[T; 2], c: &[T; 2]) -> T {
    (b[0].clone() - a[0].clone()) * (c[1].clone() - a[1].clone())
        - (b[1].clone() - a[1].clone()) * (c[0].clone() - a[0].clone())
}

/// Lifted in-circle determinant: positive iff `p` is inside the circle
/// through `a, b, c` *when `a, b, c` are counterclockwise*.
fn in_circle_det<T: Exact>(a: &[T; 2], b: &[T; 2], c: &[T; 2], p: &[T; 2]) -> T {
    let adx = a[0].clone() - p[0].clone();
    let ady = a[1].clone() - p[1].clone();
    let bdx = b[0].clone() - p[0].clone();
    let bdy = b[1].clone() - p[1].clone();
    let cdx = c[0].clone() - p[0].clone();
    let cdy = c[1].clone() - p[1].clone();
    let alift = adx.clone() * adx.clone() + ady.clone() * ady.clone();
    let blift = bdx.clone() * bdx.clone() + bdy.clone() * bdy.clone();
    let clift = cdx.clone() * cdx.clone() + cdy.clone() * cdy.clone();
    alift * (bdx.clone() * cdy.clone() - cdx.clone() * bdy.clone())
        + blift * (cdx * ady.clone() - adx.clone() * cdy)
        + clift * (adx * bdy - bdx * ady)
}

fn coords(p: &Point) -> [Rational; 2] {
    [p.x.clone(), p.y.clone()]
}

/// Sign of the orientation determinant `|b - a, c - a|`: positive iff
/// `(a, b, c)` is counterclockwise, zero iff collinear.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Sign {
    Sign::of(&orient_det(&coords(a), &coords(b), &coords(c)))
}

/// Position of `p` relative to the circle through `a, b, c`: positive inside,
/// negative outside, zero on the circle. Independent of the order of `a, b, c`.
pub fn in_circle(a: &Point, b: &Point, c: &Point, p: &Point) -> Result<Sign> {
    let o = orientation(a, b, c);
    if o.is_zero() {
        return Err(Error::DegenerateCircle);
    }
    let raw = in_circle_det(&coords(a), &coords(b), &coords(c), &coords(p));
    Ok(Sign::of(&raw) * o)
}

/// Exact circle through three non-collinear points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle {
    pub center: Point,
    pub radius_sq: Rational,
}

impl Circle {
    pub fn through(a: &Point, b: &Point, c: &Point) -> Result<Circle> {
        let d = (&a.x * (&b.y - &c.y) + &b.x * (&c.y - &a.y) + &c.x * (&a.y - &b.y)) * int(2);
        if d.is_zero() {
            return Err(Error::DegenerateCircle);
        }
        let (la, lb, lc) = (a.norm_sq(), b.norm_sq(), c.norm_sq());
        let ux = (&la * (&b.y - &c.y) + &lb * (&c.y - &a.y) + &lc * (&a.y - &b.y)) / &d;
        let uy = (&la * (&c.x - &b.x) + &lb * (&a.x - &c.x) + &lc * (&b.x - &a.x)) / &d;
        let center = Point::new(ux, uy);
        let dx = &a.x - &center.x;
        let dy = &a.y - &center.y;
        let radius_sq = &dx * &dx + &dy * &dy;
        Ok(Circle { center, radius_sq })
    }

    /// Positive inside, negative outside, zero on the circle.
    pub fn side(&self, p: &Point) -> Sign {
        let dx = &p.x - &self.center.x;
        let dy = &p.y - &self.center.y;
        Sign::of(&(&self.radius_sq - (&dx * &dx + &dy * &dy)))
    }
}

/// Integer image of a point set under a positive scaling that clears all
/// denominators. Scaling preserves every orientation and in-circle sign.
#[derive(Debug, Clone)]
pub(crate) enum Kernel {
    Small(Vec<[i128; 2]>),
    Big(Vec<[BigInt; 2]>),
}

// |coord| < 2^28 keeps every in-circle term below 2^127.
const SMALL_COORD_LIMIT: i64 = 1 << 28;

impl Kernel {
    pub(crate) fn new(points: &[Point]) -> Kernel {
        let lcm = points.iter().fold(BigInt::one(), |acc, p| {
            acc.lcm(p.x.denom()).lcm(p.y.denom())
        });
        let scale = |r: &Rational| r.numer() * (&lcm / r.denom());
        let big: Vec<[BigInt; 2]> = points.iter().map(|p| [scale(&p.x), scale(&p.y)]).collect();
        let limit = BigInt::from(SMALL_COORD_LIMIT);
        if big.iter().flatten().all(|v| v.abs() < limit) {
            Kernel::Small(
                big.iter()
                    .map(|[x, y]| [x.to_i128().unwrap(), y.to_i128().unwrap()])
                    .collect(),
            )
        } else {
            Kernel::Big(big)
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Kernel::Small(v) => v.len(),
            Kernel::Big(v) => v.len(),
        }
    }

    pub(crate) fn orientation(&self, i: usize, j: usize, k: usize) -> Sign {
        match self {
            Kernel::Small(v) => Sign::of(&orient_det(&v[i], &v[j], &v[k])),
            Kernel::Big(v) => Sign::of(&orient_det(&v[i], &v[j], &v[k])),
        }
    }

    /// Uncanonicalized in-circle sign; multiply by `orientation(i, j, k)`.
    pub(crate) fn in_circle_raw(&self, i: usize, j: usize, k: usize, l: usize) -> Sign {
        match self {
            Kernel::Small(v) => Sign::of(&in_circle_det(&v[i], &v[j], &v[k], &v[l])),
            Kernel::Big(v) => Sign::of(&in_circle_det(&v[i], &v[j], &v[k], &v[l])),
        }
    }

    pub(crate) fn in_circle(&self, i: usize, j: usize, k: usize, l: usize) -> Sign {
        self.in_circle_raw(i, j, k, l) * self.orientation(i, j, k)
    }

    pub(crate) fn quadruple_concyclic(&self, q: [usize; 4]) -> bool {
        let [i, j, k, l] = q;
        let triples = [(i, j, k, l), (i, j, l, k), (i, k, l, j), (j, k, l, i)];
        triples
            .into_iter()
            .find(|&(a, b, c, _)| !self.orientation(a, b, c).is_zero())
            .is_some_and(|(a, b, c, d)| self.in_circle_raw(a, b, c, d).is_zero())
    }
}

/// Result of checking a point set for general position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GpStatus {
    GeneralPosition,
    CollinearTriple([usize; 3]),
    ConcyclicQuadruple([usize; 4]),
}

impl GpStatus {
    pub fn is_general_position(&self) -> bool {
        *self == GpStatus::GeneralPosition
    }
}

impl fmt::Display for GpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GpStatus::GeneralPosition => write!(f, "GENERAL_POSITION"),
            GpStatus::CollinearTriple([i, j, k]) => write!(f, "COLLINEAR_TRIPLE({i},{j},{k})"),
            GpStatus::ConcyclicQuadruple([i, j, k, l]) => {
                write!(f, "CONCYCLIC_QUADRUPLE({i},{j},{k},{l})")
            }
        }
    }
}

fn find_duplicate(points: &[Point]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(points.len());
    for (idx, p) in points.iter().enumerate() {
        if let Some(&first) = seen.get(p) {
            return Some((first, idx));
        }
        seen.insert(p, idx);
    }
    None
}

pub(crate) fn general_position_status(kernel: &Kernel) -> GpStatus {
    // Walking (i, j, k) then (i, j, k, l) in nested order visits violating
    // tuples in lexicographic order, prefixes first.
    let n = kernel.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if kernel.orientation(i, j, k).is_zero() {
                    return GpStatus::CollinearTriple([i, j, k]);
                }
                for l in k + 1..n {
                    if kernel.in_circle_raw(i, j, k, l).is_zero() {
                        return GpStatus::ConcyclicQuadruple([i, j, k, l]);
                    }
                }
            }
        }
    }
    GpStatus::GeneralPosition
}

/// Reports the lexicographically smallest collinear triple or concyclic
/// quadruple, or `GeneralPosition`.
pub fn validate_general_position(points: &[Point]) -> Result<GpStatus> {
    if let Some((first, second)) = find_duplicate(points) {
        return Err(Error::DuplicatePoint { first, second });
    }
    Ok(general_position_status(&Kernel::new(points)))
}

/// All collinear triples, in lexicographic order.
pub fn collinear_triples(points: &[Point]) -> Vec<[usize; 3]> {
    let kernel = Kernel::new(points);
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if kernel.orientation(i, j, k).is_zero() {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// All 4-subsets lying on a common circle, in lexicographic order.
pub fn concyclic_quadruples(points: &[Point]) -> Vec<[usize; 4]> {
    let kernel = Kernel::new(points);
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if kernel.quadruple_concyclic([i, j, k, l]) {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

/// Ordered list of pairwise-distinct points with its general-position status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    gp_status: GpStatus,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<PointSet> {
        let gp_status = validate_general_position(&points)?;
        Ok(PointSet { points, gp_status })
    }

    pub fn from_integers(coords: &[(i64, i64)]) -> Result<PointSet> {
        PointSet::new(coords.iter().map(|&(x, y)| Point::from_integers(x, y)).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn gp_status(&self) -> &GpStatus {
        &self.gp_status
    }

    pub fn is_general_position(&self) -> bool {
        self.gp_status.is_general_position()
    }

    /// `n` such that `len() == 2n + 1`, if the cardinality is odd.
    pub fn half_size(&self) -> Option<usize> {
        (self.len() % 2 == 1).then(|| (self.len() - 1) / 2)
    }

    pub fn with_point_replaced(&self, index: usize, p: Point) -> Result<PointSet> {
        self.check_index(index)?;
        let mut points = self.points.clone();
        points[index] = p;
        PointSet::new(points)
    }

    /// The points at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<PointSet> {
        let mut points = Vec::with_capacity(indices.len());
        for &i in indices {
            self.check_index(i)?;
            points.push(self.points[i].clone());
        }
        PointSet::new(points)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, len: self.len() });
        }
        Ok(())
    }

    pub(crate) fn kernel(&self) -> Kernel {
        Kernel::new(&self.points)
    }

    /// Parses the point-set text format: one `x y` pair per line, each
    /// coordinate `num/den` or `num`; blank lines and `#` comments skipped.
    pub fn from_text(text: &str) -> Result<PointSet> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = line
                .parse::<Point>()
                .map_err(|message| Error::Parse { line: lineno + 1, message })?;
            points.push(p);
        }
        PointSet::new(points)
    }

    pub fn to_text(&self) -> String {
        self.points.iter().map(|p| format!("{p}\n")).collect()
    }
}
