//! Point-set generators: seeded random sets in general position, the
//! recursive polygon-plus-center configuration, and seven-point sets with a
//! single concyclic quadruple.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha)
//! sampled through `rand::Rng::gen_range`; identical arguments reproduce
//! identical point sets.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::census::build_census;
use crate::census::Census;
use crate::error::{Error, Result};
use crate::geometry::{
    collinear_triples, concyclic_quadruples, int, ratio, Circle, Kernel, Point, PointSet, Rational, Sign,
};

const DRAWS_PER_POINT: usize = 10_000;
const MAX_COORDINATE_BOUND: i64 = 1 << 27;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` integer points drawn uniformly from `[-bound, bound]^2`, resampling
/// any draw that would create a duplicate, a collinear triple or a concyclic
/// quadruple.
pub fn generate_random_general_position(count: usize, seed: u64, coordinate_bound: i64) -> Result<PointSet> {
    if count < 3 {
        return Err(Error::InvalidArgument(format!("count must be at least 3, got {count}")));
    }
    if coordinate_bound < count as i64 || coordinate_bound > MAX_COORDINATE_BOUND {
        return Err(Error::InvalidArgument(format!(
            "coordinate bound must lie in [{count}, {MAX_COORDINATE_BOUND}], got {coordinate_bound}"
        )));
    }
    let mut rng = rng_for(seed);
    let mut accepted: Vec<[i128; 2]> = Vec::with_capacity(count);
    while accepted.len() < count {
        let mut placed = false;
        for _ in 0..DRAWS_PER_POINT {
            let x = rng.gen_range(-coordinate_bound..=coordinate_bound) as i128;
            let y = rng.gen_range(-coordinate_bound..=coordinate_bound) as i128;
            let mut candidate = accepted.clone();
            candidate.push([x, y]);
            if keeps_general_position(&Kernel::Small(candidate)) {
                accepted.push([x, y]);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::ExhaustedRetries {
                what: format!("placing point {} with coordinate bound {coordinate_bound}", accepted.len()),
                attempts: DRAWS_PER_POINT,
            });
        }
    }
    PointSet::new(
        accepted
            .into_iter()
            .map(|[x, y]| Point::from_integers(x as i64, y as i64))
            .collect(),
    )
}

/// Whether the last point of `kernel` is new and in general position with
/// the ones before it (which are assumed to be).
fn keeps_general_position(kernel: &Kernel) -> bool {
    let m = kernel.len() - 1;
    for i in 0..m {
        for j in i + 1..m {
            if kernel.orientation(i, j, m).is_zero() {
                return false;
            }
            for k in j + 1..m {
                if kernel.in_circle_raw(i, j, k, m).is_zero() {
                    return false;
                }
            }
        }
    }
    // Equal points are collinear with anything; with fewer than two
    // predecessors that case is not caught above.
    match kernel {
        Kernel::Small(v) => !v[..m].contains(&v[m]),
        Kernel::Big(v) => !v[..m].contains(&v[m]),
    }
}

/// The recursive configuration: center `O` at index 0, a slightly perturbed
/// regular `(2n-1)`-gon `P_1..P_{2n-1}` at indices `1..=2n-1`, and a far point
/// `Q` on the positive x-axis at index `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveConfig {
    pub set: PointSet,
    pub n: usize,
    pub epsilon: Rational,
    pub q_distance: Rational,
}

/// Outcome of every structural claim about [`RecursiveConfig`], each
/// evaluated with exact predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RecursiveChecks {
    pub general_position: bool,
    /// Each line `O P_i` leaves `n - 1` polygon vertices on either side.
    pub lines_split_evenly: bool,
    /// Each circle `P_i P_j P_k` strictly contains `O`.
    pub polygon_circles_contain_center: bool,
    /// `Q` is strictly outside every circle through three of `O, P_1..`.
    pub far_point_outside: bool,
    /// Each circle `O P_i P_j` contains at most `n - 2` polygon vertices and not `Q`.
    pub center_circles_small: bool,
    /// Circle `Q X Y` contains `P` iff `P` and `Q` lie on the same side of line `XY`.
    pub far_circles_match_lines: bool,
    /// All circles `O P_i Q` are point-splitting.
    pub center_far_circles_splitting: bool,
    /// No circle `P_i P_j Q` is point-splitting.
    pub polygon_far_circles_not_splitting: bool,
}

impl RecursiveChecks {
    pub fn all(&self) -> bool {
        self.general_position
            && self.lines_split_evenly
            && self.polygon_circles_contain_center
            && self.far_point_outside
            && self.center_circles_small
            && self.far_circles_match_lines
            && self.center_far_circles_splitting
            && self.polygon_far_circles_not_splitting
    }
}

/// Circles of one census class broken down by which special points they use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FormCounts {
    /// `P_i P_j P_k`
    pub polygon: usize,
    /// `O P_i P_j`
    pub center_polygon: usize,
    /// `Q P_i P_j`
    pub far_polygon: usize,
    /// `O P_i Q`
    pub center_far: usize,
}

fn signature_of(kernel: &Kernel, i: usize, j: usize, k: usize) -> (usize, usize) {
    let (mut inside, mut outside) = (0, 0);
    for l in (0..kernel.len()).filter(|l| ![i, j, k].contains(l)) {
        match kernel.in_circle(i, j, k, l) {
            Sign::Positive => inside += 1,
            Sign::Negative => outside += 1,
            Sign::Zero => {}
        }
    }
    (inside, outside)
}

impl RecursiveConfig {
    pub fn o_index(&self) -> usize {
        0
    }

    pub fn q_index(&self) -> usize {
        2 * self.n
    }

    pub fn polygon_indices(&self) -> RangeInclusive<usize> {
        1..=2 * self.n - 1
    }

    /// Set index of `P_{i + step}` (subscripts mod `2n - 1`), for polygon index `i`.
    pub fn polygon_step(&self, i: usize, step: usize) -> usize {
        let m = 2 * self.n - 1;
        (i - 1 + step) % m + 1
    }

    pub fn check(&self) -> RecursiveChecks {
        let kernel = self.set.kernel();
        let n = self.n;
        let (o, q) = (self.o_index(), self.q_index());
        let poly: Vec<usize> = self.polygon_indices().collect();
        let base: Vec<usize> = std::iter::once(o).chain(poly.iter().copied()).collect();
        let general_position = self.set.is_general_position() && self.set.len() == 2 * n + 1;
        if !general_position {
            return RecursiveChecks {
                general_position,
                lines_split_evenly: false,
                polygon_circles_contain_center: false,
                far_point_outside: false,
                center_circles_small: false,
                far_circles_match_lines: false,
                center_far_circles_splitting: false,
                polygon_far_circles_not_splitting: false,
            };
        }

        let lines_split_evenly = poly.iter().all(|&i| {
            let left = poly
                .iter()
                .filter(|&&k| k != i && kernel.orientation(o, i, k) == Sign::Positive)
                .count();
            left == n - 1
        });

        let mut polygon_circles_contain_center = true;
        for (a, &i) in poly.iter().enumerate() {
            for (b, &j) in poly.iter().enumerate().skip(a + 1) {
                for &k in &poly[b + 1..] {
                    polygon_circles_contain_center &= kernel.in_circle(i, j, k, o) == Sign::Positive;
                }
            }
        }

        let mut far_point_outside = true;
        for (a, &i) in base.iter().enumerate() {
            for (b, &j) in base.iter().enumerate().skip(a + 1) {
                for &k in &base[b + 1..] {
                    far_point_outside &= kernel.in_circle(i, j, k, q) == Sign::Negative;
                }
            }
        }

        let mut center_circles_small = true;
        for (a, &i) in poly.iter().enumerate() {
            for &j in &poly[a + 1..] {
                let inside = poly
                    .iter()
                    .filter(|&&k| k != i && k != j && kernel.in_circle(o, i, j, k) == Sign::Positive)
                    .count();
                center_circles_small &= inside + 2 <= n && kernel.in_circle(o, i, j, q) == Sign::Negative;
            }
        }

        let mut far_circles_match_lines = true;
        for (a, &x) in base.iter().enumerate() {
            for &y in &base[a + 1..] {
                let q_side = kernel.orientation(x, y, q);
                for &p in base.iter().filter(|&&p| p != x && p != y) {
                    let inside = kernel.in_circle(q, x, y, p) == Sign::Positive;
                    far_circles_match_lines &= inside == (kernel.orientation(x, y, p) == q_side);
                }
            }
        }

        let center_far_circles_splitting = poly
            .iter()
            .all(|&i| signature_of(&kernel, o, i, q) == (n - 1, n - 1));

        let mut polygon_far_circles_not_splitting = true;
        for (a, &i) in poly.iter().enumerate() {
            for &j in &poly[a + 1..] {
                polygon_far_circles_not_splitting &= signature_of(&kernel, i, j, q) != (n - 1, n - 1);
            }
        }

        RecursiveChecks {
            general_position,
            lines_split_evenly,
            polygon_circles_contain_center,
            far_point_outside,
            center_circles_small,
            far_circles_match_lines,
            center_far_circles_splitting,
            polygon_far_circles_not_splitting,
        }
    }

    /// Breakdown of the circles with unordered signature `{a, b}` by form.
    pub fn form_counts(&self, census: &Census, a: usize, b: usize) -> FormCounts {
        let (o, q) = (self.o_index(), self.q_index());
        let mut counts = FormCounts::default();
        for r in census.records.iter().filter(|r| r.signature.unordered() == (a.min(b), a.max(b))) {
            match (r.contains(o), r.contains(q)) {
                (false, false) => counts.polygon += 1,
                (true, false) => counts.center_polygon += 1,
                (false, true) => counts.far_polygon += 1,
                (true, true) => counts.center_far += 1,
            }
        }
        counts
    }

    pub fn sidecar(&self) -> serde_json::Value {
        json!({
            "kind": "recursive",
            "n": self.n,
            "o_index": self.o_index(),
            "q_index": self.q_index(),
            "polygon_indices": self.polygon_indices().collect::<Vec<_>>(),
            "epsilon": self.epsilon.to_string(),
            "q_distance": self.q_distance.to_string(),
        })
    }
}

const POLYGON_SCALE_BITS: u32 = 24;
const OFFSET_STEPS: i64 = 1 << 16;
const MAX_HALVINGS: usize = 48;

fn rational_approx(v: f64) -> Rational {
    let scale = (1i64 << POLYGON_SCALE_BITS) as f64;
    ratio((v * scale).round() as i64, 1i64 << POLYGON_SCALE_BITS)
}

fn ceil_sqrt(r: &Rational) -> BigInt {
    let c = r.ceil().to_integer();
    let mut k = c.sqrt();
    while Rational::from_integer(&k * &k) < *r {
        k += 1;
    }
    k
}

/// Smallest integer `q` beyond every circle through three of `points`, so
/// that `(q, 0)` is strictly outside all of them and collinear with no pair.
fn far_point_distance(points: &[Point]) -> Result<Rational> {
    let mut bound = BigInt::zero();
    let len = points.len();
    for i in 0..len {
        for j in i + 1..len {
            for k in j + 1..len {
                let c = Circle::through(&points[i], &points[j], &points[k])?;
                let reach = c.center.x.ceil().to_integer() + ceil_sqrt(&c.radius_sq);
                bound = bound.max(reach);
            }
        }
    }
    let mut q = bound + BigInt::one();
    'search: loop {
        let candidate = Point::new(Rational::from_integer(q.clone()), int(0));
        for i in 0..len {
            for j in i + 1..len {
                if crate::geometry::orientation(&points[i], &points[j], &candidate).is_zero() {
                    q += 1;
                    continue 'search;
                }
            }
        }
        return Ok(Rational::from_integer(q));
    }
}

/// Builds the recursive configuration for `2n + 1` points, halving the
/// perturbation size until every structural claim holds exactly.
pub fn construct_recursive(n: usize, seed: u64) -> Result<RecursiveConfig> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let m = 2 * n - 1;
    let mut rng = rng_for(seed);
    let mut epsilon = ratio(1, 64);
    for _ in 0..MAX_HALVINGS {
        let mut points = vec![Point::from_integers(0, 0)];
        for i in 0..m {
            let theta = 2.0 * PI * i as f64 / m as f64;
            let dx = ratio(rng.gen_range(1 - OFFSET_STEPS..OFFSET_STEPS), OFFSET_STEPS) * &epsilon;
            let dy = ratio(rng.gen_range(1 - OFFSET_STEPS..OFFSET_STEPS), OFFSET_STEPS) * &epsilon;
            points.push(Point::new(
                rational_approx(theta.cos()) + dx,
                rational_approx(theta.sin()) + dy,
            ));
        }
        let candidate = PointSet::new(points.clone()).ok().filter(|s| s.is_general_position());
        if candidate.is_some() {
            let q_distance = far_point_distance(&points)?;
            points.push(Point::new(q_distance.clone(), int(0)));
            if let Ok(set) = PointSet::new(points) {
                let config = RecursiveConfig { set, n, epsilon: epsilon.clone(), q_distance };
                if config.check().all() {
                    return Ok(config);
                }
            }
        }
        epsilon /= int(2);
    }
    Err(Error::ConstructionFailed(format!(
        "no valid perturbation of the {m}-gon after {MAX_HALVINGS} halvings"
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(identity: impl Into<String>, n: usize, lhs: usize, rhs: usize) -> Self {
        IdentityCheck { identity: identity.into(), n, lhs, rhs, pass: lhs == rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub checks: Vec<IdentityCheck>,
}

impl RecursionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Censuses the recursive configuration for each `2 <= n <= n_max`, together
/// with its polygon-only subset, and checks the three recurrences.
pub fn verify_recursions(n_max: usize, seed: u64) -> Result<RecursionReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!("n_max must be at least 2, got {n_max}")));
    }
    let mut checks = Vec::new();
    for n in 2..=n_max {
        let config = construct_recursive(n, seed)?;
        let full = build_census(&config.set)?;
        let polygon: Vec<usize> = config.polygon_indices().collect();
        let sub = build_census(&config.set.subset(&polygon)?)?;
        if n == 2 {
            checks.push(IdentityCheck::new("N(3) = 1", n, sub.point_splitting(), 1));
        }
        checks.push(IdentityCheck::new(
            format!("N({}) = N({}) + {}", 2 * n + 1, 2 * n - 1, 2 * n - 1),
            n,
            full.point_splitting(),
            sub.point_splitting() + 2 * n - 1,
        ));
        for a in 1..n - 1 {
            let b = 2 * n - 2 - a;
            checks.push(IdentityCheck::new(
                format!("N({a},{b}) = N({},{}) + {}", a - 1, b - 1, 2 * a + 2 * b + 2),
                n,
                full.count_unordered(a, b),
                sub.count_unordered(a - 1, b - 1) + 2 * a + 2 * b + 2,
            ));
        }
        let b = 2 * n - 2;
        checks.push(IdentityCheck::new(
            format!("N(0,{b}) = {}", 2 * b + 2),
            n,
            full.count_unordered(0, b),
            2 * b + 2,
        ));
    }
    Ok(RecursionReport { checks })
}

/// Seven points, four of them exactly on the unit circle (indices 0..4) and
/// `interior_count` of the other three strictly inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateQuadConfig {
    pub set: PointSet,
    pub circle_points: [usize; 4],
    pub interior_count: usize,
}

impl DegenerateQuadConfig {
    pub fn sidecar(&self) -> serde_json::Value {
        json!({
            "kind": "degenerate",
            "circle_points": self.circle_points,
            "interior_count": self.interior_count,
        })
    }
}

/// Rational point `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))` on the unit circle.
pub fn unit_circle_point(t: &Rational) -> Point {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    Point::new((&one - &t2) / &den, (t * int(2)) / den)
}

pub fn construct_degenerate_quad(interior_count: usize, seed: u64) -> Result<DegenerateQuadConfig> {
    if interior_count > 1 {
        return Err(Error::InvalidArgument(format!(
            "interior_count must be 0 or 1, got {interior_count}"
        )));
    }
    const ATTEMPTS: usize = 10_000;
    let mut rng = rng_for(seed);
    for _ in 0..ATTEMPTS {
        let mut ts: Vec<Rational> = Vec::with_capacity(4);
        while ts.len() < 4 {
            let t = ratio(rng.gen_range(-12..=12), rng.gen_range(1..=12));
            if !ts.contains(&t) {
                ts.push(t);
            }
        }
        let mut points: Vec<Point> = ts.iter().map(unit_circle_point).collect();
        for slot in 0..3 {
            points.push(if slot < interior_count {
                loop {
                    let (x, y) = (rng.gen_range(-15..=15i64), rng.gen_range(-15..=15i64));
                    if x * x + y * y < 256 {
                        break Point::new(ratio(x, 16), ratio(y, 16));
                    }
                }
            } else {
                loop {
                    let (x, y) = (rng.gen_range(-16..=16i64), rng.gen_range(-16..=16i64));
                    if x * x + y * y > 16 {
                        break Point::new(ratio(x, 4), ratio(y, 4));
                    }
                }
            });
        }
        let Ok(set) = PointSet::new(points) else { continue };
        if collinear_triples(set.points()).is_empty()
            && concyclic_quadruples(set.points()) == vec![[0, 1, 2, 3]]
        {
            return Ok(DegenerateQuadConfig { set, circle_points: [0, 1, 2, 3], interior_count });
        }
    }
    Err(Error::ExhaustedRetries { what: "placing a seven-point degenerate set".into(), attempts: ATTEMPTS })
}

/// Pushes point `index` off by `(delta, 0)`, then `(0, delta)`, `(-delta, 0)`,
/// `(0, -delta)`, returning the first result in general position.
pub fn nudge_into_general_position(set: &PointSet, index: usize, delta: &Rational) -> Result<PointSet> {
    let p = set.point(index);
    let zero = Rational::zero();
    let offsets = [
        (delta.clone(), zero.clone()),
        (zero.clone(), delta.clone()),
        (-delta.clone(), zero.clone()),
        (zero, -delta.clone()),
    ];
    for (dx, dy) in offsets {
        let moved = Point::new(&p.x + dx, &p.y + dy);
        if let Ok(s) = set.with_point_replaced(index, moved) {
            if s.is_general_position() {
                return Ok(s);
            }
        }
    }
    Err(Error::ExhaustedRetries { what: format!("nudging point {index} into general position"), attempts: 4 })
}
