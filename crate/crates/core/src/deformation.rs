//! One-point deformations: move a single point along a rational segment,
//! isolate every instant at which it crosses a line or circle spanned by the
//! stationary points, and census the set between consecutive crossings.
//!
//! Each boundary predicate is a polynomial of degree at most two in the path
//! parameter `t`, so crossings are located with exact sign bisection and no
//! irrational root is ever evaluated numerically.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use num_traits::{One, Zero};

use crate::census::{census_of_kernel, Census, CensusSummary, SplitSignature};
use crate::error::{Error, Result};
use crate::generators::rng_for;
use crate::geometry::{orientation, ratio, serialize_rational, Kernel, Point, PointSet, Rational, Sign};
use crate::poly::{simplest_between, Poly, RootInterval};

/// Straight-line motion `p(t) = start + t (end - start)`, `t` in `[0, 1]`,
/// of the point at `moving_index`; all other points stay put.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotionPath {
    set: PointSet,
    moving_index: usize,
    start: Point,
    end: Point,
    n: usize,
}

impl MotionPath {
    /// Both endpoint configurations must be in general position.
    pub fn new(set: &PointSet, moving_index: usize, start: Point, end: Point) -> Result<MotionPath> {
        set.check_index(moving_index)?;
        if start == end {
            return Err(Error::InvalidPath("start and end coincide".into()));
        }
        let n = match set.half_size() {
            Some(n) if n >= 1 => n,
            _ if set.len() < 3 => return Err(Error::TooFewPoints(set.len())),
            _ => return Err(Error::EvenCardinality(set.len())),
        };
        let at_start = set.with_point_replaced(moving_index, start.clone())?;
        if !at_start.is_general_position() {
            return Err(Error::DegenerateEndpoint { t: 0, status: at_start.gp_status().clone() });
        }
        let at_end = set.with_point_replaced(moving_index, end.clone())?;
        if !at_end.is_general_position() {
            return Err(Error::DegenerateEndpoint { t: 1, status: at_end.gp_status().clone() });
        }
        Ok(MotionPath { set: at_start, moving_index, start, end, n })
    }

    /// Path from the current position of `moving_index` to `end`.
    pub fn towards(set: &PointSet, moving_index: usize, end: Point) -> Result<MotionPath> {
        set.check_index(moving_index)?;
        MotionPath::new(set, moving_index, set.point(moving_index).clone(), end)
    }

    pub fn set(&self) -> &PointSet {
        &self.set
    }

    pub fn moving_index(&self) -> usize {
        self.moving_index
    }

    pub fn start(&self) -> &Point {
        &self.start
    }

    pub fn end(&self) -> &Point {
        &self.end
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn position(&self, t: &Rational) -> Point {
        self.start.lerp(&self.end, t)
    }

    pub fn points_at(&self, t: &Rational) -> Vec<Point> {
        let mut points = self.set.points().to_vec();
        points[self.moving_index] = self.position(t);
        points
    }

    pub fn stationary(&self) -> Vec<usize> {
        (0..self.set.len()).filter(|&i| i != self.moving_index).collect()
    }
}

/// A line through two, or circle through three, stationary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "indices", rename_all = "UPPERCASE")]
pub enum Boundary {
    Line([usize; 2]),
    Circle([usize; 3]),
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Line([i, j]) => write!(f, "LINE({i},{j})"),
            Boundary::Circle([i, j, k]) => write!(f, "CIRCLE({i},{j},{k})"),
        }
    }
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

impl Boundary {
    /// Circles whose signature may change when the moving point `m` crosses.
    pub fn affected_triples(&self, m: usize) -> Vec<[usize; 3]> {
        match *self {
            Boundary::Line([i, j]) => vec![sorted3([m, i, j])],
            Boundary::Circle([i, j, k]) => vec![
                sorted3([i, j, k]),
                sorted3([m, i, j]),
                sorted3([m, j, k]),
                sorted3([m, k, i]),
            ],
        }
    }
}

/// Predicate polynomials in `t`: for `LINE(i,j)` the orientation of
/// `(p(t), P_i, P_j)`, for `CIRCLE(i,j,k)` the in-circle sign of `p(t)`
/// against the circle `P_i P_j P_k` (positive inside).
pub fn boundary_polynomials(path: &MotionPath) -> Vec<(Boundary, Poly)> {
    let (s, e) = (&path.start, &path.end);
    let px = Poly::linear(s.x.clone(), &e.x - &s.x);
    let py = Poly::linear(s.y.clone(), &e.y - &s.y);
    let stationary = path.stationary();
    let pts = path.set.points();
    let c = |r: &Rational| Poly::constant(r.clone());
    let mut out = Vec::new();

    for (a, &i) in stationary.iter().enumerate() {
        for &j in &stationary[a + 1..] {
            let (pi, pj) = (&pts[i], &pts[j]);
            let line = &(&(&c(&pi.x) - &px) * &(&c(&pj.y) - &py)) - &(&(&c(&pi.y) - &py) * &(&c(&pj.x) - &px));
            out.push((Boundary::Line([i, j]), line));
        }
    }

    for (a, &i) in stationary.iter().enumerate() {
        for (b, &j) in stationary.iter().enumerate().skip(a + 1) {
            for &k in &stationary[b + 1..] {
                let (pi, pj, pk) = (&pts[i], &pts[j], &pts[k]);
                let (adx, ady) = (&c(&pi.x) - &px, &c(&pi.y) - &py);
                let (bdx, bdy) = (&c(&pj.x) - &px, &c(&pj.y) - &py);
                let (cdx, cdy) = (&c(&pk.x) - &px, &c(&pk.y) - &py);
                let alift = &(&adx * &adx) + &(&ady * &ady);
                let blift = &(&bdx * &bdx) + &(&bdy * &bdy);
                let clift = &(&cdx * &cdx) + &(&cdy * &cdy);
                let det = &(&(&alift * &(&(&bdx * &cdy) - &(&cdx * &bdy)))
                    + &(&blift * &(&(&cdx * &ady) - &(&adx * &cdy))))
                    + &(&clift * &(&(&adx * &bdy) - &(&bdx * &ady)));
                let det = match orientation(pi, pj, pk) {
                    Sign::Negative => -&det,
                    _ => det,
                };
                out.push((Boundary::Circle([i, j, k]), det));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    NegToPos,
    PosToNeg,
}

impl Direction {
    /// For circles: the moving point goes from inside to outside.
    pub fn is_exit(self) -> bool {
        self == Direction::PosToNeg
    }
}

/// One isolated sign change of one boundary predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub boundary: Boundary,
    pub interval: RootInterval,
    pub direction: Direction,
}

struct Tracked {
    boundary: Boundary,
    poly: usize,
    interval: RootInterval,
}

fn shares_root(polys: &[(Boundary, Poly)], a: &Tracked, b: &Tracked) -> Result<bool> {
    let g = polys[a.poly].1.gcd(&polys[b.poly].1);
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let lo = (&a.interval.lo).max(&b.interval.lo);
    let hi = (&a.interval.hi).min(&b.interval.hi);
    g.has_root_in(lo, hi)
}

/// Refines isolating intervals until no two overlap. Two boundaries vanishing
/// at the same instant cannot be separated and are reported as an error.
fn separate(polys: &[(Boundary, Poly)], roots: &mut [Tracked]) -> Result<()> {
    loop {
        roots.sort_by(|a, b| a.interval.cmp_position(&b.interval));
        let mut refine = vec![false; roots.len()];
        for w in 1..roots.len() {
            let (a, b) = (&roots[w - 1], &roots[w]);
            if !a.interval.overlaps(&b.interval) {
                continue;
            }
            if shares_root(polys, a, b)? {
                let lo = (&a.interval.lo).max(&b.interval.lo);
                let hi = (&a.interval.hi).min(&b.interval.hi);
                return Err(Error::SimultaneousCrossing {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    first: a.boundary.to_string(),
                    second: b.boundary.to_string(),
                });
            }
            refine[w - 1] = true;
            refine[w] = true;
        }
        if !refine.contains(&true) {
            return Ok(());
        }
        for (root, flag) in roots.iter_mut().zip(refine) {
            if flag {
                root.interval.refine(&polys[root.poly].1);
            }
        }
    }
}

/// Every crossing in `(0, 1)`, sorted by parameter, each in a rational
/// interval that contains no root of any other boundary predicate.
pub fn isolate_events(path: &MotionPath) -> Result<Vec<Crossing>> {
    let polys = boundary_polynomials(path);
    let (zero, one) = (ratio(0, 1), ratio(1, 1));
    let mut roots = Vec::new();
    for (idx, (boundary, poly)) in polys.iter().enumerate() {
        if poly.is_zero() {
            return Err(Error::InvalidPath(format!("the whole path lies on {boundary}")));
        }
        for r in poly.isolate_roots(&zero, &one)? {
            if r.multiplicity > 1 {
                return Err(Error::TangentContact {
                    boundary: boundary.to_string(),
                    t: r.interval.lo.to_string(),
                });
            }
            roots.push(Tracked { boundary: *boundary, poly: idx, interval: r.interval });
        }
    }
    separate(&polys, &mut roots)?;
    // keep every gap between events, and before the first and after the last, nonempty
    for root in &mut roots {
        while root.interval.lo.is_zero() || root.interval.hi.is_one() {
            root.interval.refine(&polys[root.poly].1);
        }
    }
    Ok(roots
        .into_iter()
        .map(|r| {
            let poly = &polys[r.poly].1;
            let rising = if r.interval.is_exact() {
                poly.derivative().sign_at(&r.interval.lo) == Sign::Positive
            } else {
                poly.sign_at(&r.interval.hi) == Sign::Positive
            };
            let direction = if rising { Direction::NegToPos } else { Direction::PosToNeg };
            Crossing { boundary: r.boundary, interval: r.interval, direction }
        })
        .collect())
}

/// Full census of the path's configuration at parameter `t`.
pub fn census_at(path: &MotionPath, t: &Rational) -> Result<Census> {
    let set = PointSet::new(path.points_at(t))?;
    crate::census::build_census(&set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffectedCircle {
    pub triple: [usize; 3],
    pub before: SplitSignature,
    pub after: SplitSignature,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationEvent {
    pub boundary: Boundary,
    pub root_interval: RootInterval,
    pub direction: Direction,
    pub moving_index: usize,
    /// Signatures of the circles the crossing may change.
    pub affected: Vec<AffectedCircle>,
    /// Any other circle whose signature changed; always empty if the
    /// exchange laws hold.
    pub other_changes: Vec<[usize; 3]>,
    /// For circle crossings, the stationary pair whose arc (the one avoiding
    /// the third point) the moving point passes through.
    pub arc_label: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    #[serde(serialize_with = "serialize_rational")]
    pub t: Rational,
    /// The event-free open interval containing `t`.
    #[serde(serialize_with = "serialize_rational")]
    pub gap_lo: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub gap_hi: Rational,
    pub point_splitting: usize,
    pub summary: CensusSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationLog {
    pub moving_index: usize,
    pub start: Point,
    pub end: Point,
    pub n: usize,
    pub events: Vec<DeformationEvent>,
    pub checkpoints: Vec<Checkpoint>,
}

impl DeformationLog {
    /// Whether every checkpoint has the same unordered-signature census.
    pub fn censuses_constant(&self) -> bool {
        self.checkpoints.windows(2).all(|w| w[0].summary == w[1].summary)
    }

    pub fn circle_event_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e.boundary, Boundary::Circle(_)))
            .count()
    }

    pub fn line_event_count(&self) -> usize {
        self.events.len() - self.circle_event_count()
    }

    /// Checks the exchange law at every event.
    pub fn law_results(&self) -> Vec<Result<ExchangeLaw>> {
        self.events.iter().map(check_exchange_law).collect()
    }

    pub fn all_laws_hold(&self) -> bool {
        self.law_results().iter().all(|r| r.is_ok())
    }
}

fn arc_label(path: &MotionPath, boundary: Boundary, interval: &RootInterval) -> Option<[usize; 2]> {
    let Boundary::Circle([i, j, k]) = boundary else { return None };
    // No line boundary changes sign on the closed interval, so every line
    // side test at `lo` agrees with the one at the crossing itself.
    let p = path.position(&interval.lo);
    let pts = path.set.points();
    let crossed: Vec<[usize; 2]> = [(i, j, k), (j, k, i), (k, i, j)]
        .into_iter()
        .filter(|&(x, y, z)| orientation(&pts[x], &pts[y], &p) != orientation(&pts[x], &pts[y], &pts[z]))
        .map(|(x, y, _)| [x.min(y), x.max(y)])
        .collect();
    match crossed.as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

/// Runs the deformation: isolates every crossing, censuses the set once in
/// each event-free interval, and records the signature changes at each event.
pub fn run_deformation(path: &MotionPath) -> Result<DeformationLog> {
    let crossings = isolate_events(path)?;
    let (zero, one) = (ratio(0, 1), ratio(1, 1));
    let gaps: Vec<(Rational, Rational)> = (0..=crossings.len())
        .map(|g| {
            let lo = if g == 0 { zero.clone() } else { crossings[g - 1].interval.hi.clone() };
            let hi = if g == crossings.len() { one.clone() } else { crossings[g].interval.lo.clone() };
            (lo, hi)
        })
        .collect();
    let n = path.n;
    let censuses: Vec<(Rational, Census)> = gaps
        .par_iter()
        .map(|(lo, hi)| {
            let t = simplest_between(lo, hi);
            let census = census_of_kernel(&Kernel::new(&path.points_at(&t)), n);
            (t, census)
        })
        .collect();

    let m = path.moving_index;
    let events = crossings
        .into_iter()
        .enumerate()
        .map(|(g, crossing)| {
            let (before, after) = (&censuses[g].1, &censuses[g + 1].1);
            let triples = crossing.boundary.affected_triples(m);
            let affected = triples
                .iter()
                .map(|&triple| AffectedCircle {
                    triple,
                    before: before.record(triple).unwrap().signature,
                    after: after.record(triple).unwrap().signature,
                })
                .collect();
            let other_changes = before
                .records
                .iter()
                .zip(&after.records)
                .filter(|(b, a)| b.signature != a.signature && !triples.contains(&b.triple))
                .map(|(b, _)| b.triple)
                .collect();
            let arc_label = arc_label(path, crossing.boundary, &crossing.interval);
            DeformationEvent {
                boundary: crossing.boundary,
                root_interval: crossing.interval,
                direction: crossing.direction,
                moving_index: m,
                affected,
                other_changes,
                arc_label,
            }
        })
        .collect();

    let checkpoints = censuses
        .into_iter()
        .zip(gaps)
        .map(|((t, census), (gap_lo, gap_hi))| Checkpoint {
            t,
            gap_lo,
            gap_hi,
            point_splitting: census.point_splitting(),
            summary: census.summary(),
        })
        .collect();

    Ok(DeformationLog {
        moving_index: m,
        start: path.start.clone(),
        end: path.end.clone(),
        n,
        events,
        checkpoints,
    })
}

/// Which exchange law an event was checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeLaw {
    /// Line crossing: the one affected circle goes from `(a, b)` to `(b, a)`.
    LineSwap,
    /// Circle crossing through a labeled arc: the four-circle trade.
    CircleTrade,
    /// Circle crossing without an arc label: only the multiset of unordered
    /// signatures of the affected circles is compared.
    Conservation,
}

fn violation(event: &DeformationEvent, what: &str) -> Error {
    let context = serde_json::to_string(event).unwrap_or_default();
    Error::LawViolation(format!("{what}; event: {context}"))
}

/// Verifies the signature bookkeeping of a single event.
pub fn check_exchange_law(event: &DeformationEvent) -> Result<ExchangeLaw> {
    if !event.other_changes.is_empty() {
        return Err(violation(event, "circles outside the affected set changed signature"));
    }
    let m = event.moving_index;
    let find = |triple: [usize; 3]| {
        let triple = sorted3(triple);
        event.affected.iter().find(|a| a.triple == triple)
    };
    match event.boundary {
        Boundary::Line([i, j]) => {
            let c = find([m, i, j]).ok_or_else(|| violation(event, "missing circle"))?;
            if c.after != c.before.swapped() {
                return Err(violation(event, "line crossing did not swap inside and outside"));
            }
            Ok(ExchangeLaw::LineSwap)
        }
        Boundary::Circle([i, j, k]) => {
            let Some([x, y]) = event.arc_label else {
                let mut before: Vec<_> = event.affected.iter().map(|c| c.before.unordered()).collect();
                let mut after: Vec<_> = event.affected.iter().map(|c| c.after.unordered()).collect();
                before.sort_unstable();
                after.sort_unstable();
                if before != after {
                    return Err(violation(event, "unordered signatures not conserved"));
                }
                return Ok(ExchangeLaw::Conservation);
            };
            let z = [i, j, k].into_iter().find(|v| *v != x && *v != y).unwrap();
            // Read an entering event backwards as an exit.
            let exit = |c: &AffectedCircle| {
                if event.direction.is_exit() {
                    (c.before, c.after)
                } else {
                    (c.after, c.before)
                }
            };
            let circle = find([i, j, k]).ok_or_else(|| violation(event, "missing circle"))?;
            let (pre, _) = exit(circle);
            if pre.inside == 0 {
                return Err(violation(event, "crossed circle did not contain the moving point"));
            }
            let high = pre;
            let low = SplitSignature::new(pre.inside - 1, pre.outside + 1);
            let expected = [
                ([i, j, k], high, low),
                ([m, x, y], high, low),
                ([m, y, z], low, high),
                ([m, z, x], low, high),
            ];
            for (triple, want_pre, want_post) in expected {
                let c = find(triple).ok_or_else(|| violation(event, "missing circle"))?;
                if exit(c) != (want_pre, want_post) {
                    return Err(violation(
                        event,
                        &format!("circle {:?} broke the four-circle trade", sorted3(triple)),
                    ));
                }
            }
            Ok(ExchangeLaw::CircleTrade)
        }
    }
}

/// Retries a deformation with the target nudged by seeded offsets of at most
/// `10^-3` per axis (in steps of `10^-6`) whenever the path is degenerate.
/// Attempt 0 uses the exact target.
pub fn run_with_jitter(
    set: &PointSet,
    moving_index: usize,
    target: &Point,
    seed: u64,
    attempts: usize,
) -> Result<(MotionPath, DeformationLog)> {
    let mut rng = rng_for(seed);
    let mut last_err = Error::InvalidArgument("no attempts made".into());
    for attempt in 0..attempts.max(1) {
        let end = if attempt == 0 {
            target.clone()
        } else {
            let dx = ratio(rng.gen_range(-1000..=1000), 1_000_000);
            let dy = ratio(rng.gen_range(-1000..=1000), 1_000_000);
            Point::new(&target.x + dx, &target.y + dy)
        };
        let outcome = MotionPath::towards(set, moving_index, end).and_then(|p| {
            let log = run_deformation(&p)?;
            Ok((p, log))
        });
        match outcome {
            Ok(done) => return Ok(done),
            Err(
                e @ (Error::SimultaneousCrossing { .. }
                | Error::TangentContact { .. }
                | Error::DegenerateEndpoint { t: 1, .. }
                | Error::DuplicatePoint { .. }
                | Error::InvalidPath(_)),
            ) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}
