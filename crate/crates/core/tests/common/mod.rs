//! Shared fixtures and an independent brute-force oracle.
//!
//! The oracle avoids everything the library does for speed: no integer
//! kernel selection, no orientation canonicalization of the in-circle sign.
//! It scales points to integers, builds each circumcircle's center over a
//! common denominator and compares squared distances in `BigInt`.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use splitcircle::generators::generate_random_general_position;
use splitcircle::{Point, PointSet};

/// Seeded random general-position sets for `n = 1..=n_max`, `per_n` each.
pub fn corpus(n_max: usize, per_n: usize) -> Vec<(usize, u64, PointSet)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 0..per_n {
            let seed = 1_000 * n as u64 + k as u64;
            out.push((n, seed, generate_random_general_position(2 * n + 1, seed, 1000).unwrap()));
        }
    }
    out
}

pub fn to_integers(points: &[Point]) -> Vec<(BigInt, BigInt)> {
    let mut scale = BigInt::one();
    for p in points {
        scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
    }
    points
        .iter()
        .map(|p| {
            let x = p.x.numer() * (&scale / p.x.denom());
            let y = p.y.numer() * (&scale / p.y.denom());
            (x, y)
        })
        .collect()
}

/// Twice the signed area of `abc`.
pub fn cross(a: &(BigInt, BigInt), b: &(BigInt, BigInt), c: &(BigInt, BigInt)) -> BigInt {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

/// Circumcircle of three non-collinear integer points as `(cx, cy, d)` with
/// center `(cx/d, cy/d)`.
pub fn circumcenter(a: &(BigInt, BigInt), b: &(BigInt, BigInt), c: &(BigInt, BigInt)) -> (BigInt, BigInt, BigInt) {
    let sa = &a.0 * &a.0 + &a.1 * &a.1;
    let sb = &b.0 * &b.0 + &b.1 * &b.1;
    let sc = &c.0 * &c.0 + &c.1 * &c.1;
    let d = BigInt::from(2) * (&a.0 * (&b.1 - &c.1) + &b.0 * (&c.1 - &a.1) + &c.0 * (&a.1 - &b.1));
    let cx = &sa * (&b.1 - &c.1) + &sb * (&c.1 - &a.1) + &sc * (&a.1 - &b.1);
    let cy = &sa * (&c.0 - &b.0) + &sb * (&a.0 - &c.0) + &sc * (&b.0 - &a.0);
    (cx, cy, d)
}

pub fn dist_sq_scaled(center: &(BigInt, BigInt, BigInt), p: &(BigInt, BigInt)) -> BigInt {
    let dx = &p.0 * &center.2 - &center.0;
    let dy = &p.1 * &center.2 - &center.1;
    &dx * &dx + &dy * &dy
}

/// `-1`, `0`, `1` for `p` outside, on, inside the circle through `a, b, c`.
pub fn side(a: &(BigInt, BigInt), b: &(BigInt, BigInt), c: &(BigInt, BigInt), p: &(BigInt, BigInt)) -> i8 {
    let center = circumcenter(a, b, c);
    let r = dist_sq_scaled(&center, a);
    let d = dist_sq_scaled(&center, p);
    match r.cmp(&d) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => -1,
    }
}

/// 4x4 in-circle determinant expanded by the Leibniz formula, rows
/// `(x, y, x^2 + y^2, 1)`.
pub fn leibniz_in_circle(pts: [&(BigInt, BigInt); 4]) -> BigInt {
    let rows: Vec<[BigInt; 4]> = pts
        .iter()
        .map(|p| [p.0.clone(), p.1.clone(), &p.0 * &p.0 + &p.1 * &p.1, BigInt::one()])
        .collect();
    let mut total = BigInt::zero();
    let mut perm = [0usize, 1, 2, 3];
    for_each_permutation(&mut perm, 0, &mut |perm| {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = BigInt::one();
        for (row, &col) in perm.iter().enumerate() {
            term *= &rows[row][col];
        }
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    total
}

fn for_each_permutation(perm: &mut [usize; 4], k: usize, f: &mut impl FnMut(&[usize; 4])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        for_each_permutation(perm, k + 1, f);
        perm.swap(k, i);
    }
}

pub struct OracleCensus {
    /// Unordered signature counts.
    pub classes: BTreeMap<(usize, usize), usize>,
    /// Ordered `(inside, outside)` per sorted triple.
    pub signatures: BTreeMap<[usize; 3], (usize, usize)>,
}

impl OracleCensus {
    pub fn point_splitting(&self, n: usize) -> usize {
        self.classes.get(&(n - 1, n - 1)).copied().unwrap_or(0)
    }

    pub fn through_pair(&self, i: usize, j: usize, n: usize) -> usize {
        self.signatures
            .iter()
            .filter(|(t, s)| t.contains(&i) && t.contains(&j) && **s == (n - 1, n - 1))
            .count()
    }
}

/// Sequential census of a general-position set.
pub fn oracle_census(points: &[Point]) -> OracleCensus {
    let pts = to_integers(points);
    let m = pts.len();
    let mut classes = BTreeMap::new();
    let mut signatures = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                assert!(!cross(&pts[i], &pts[j], &pts[k]).is_zero(), "oracle input has collinear triple");
                let (mut inside, mut outside) = (0, 0);
                for l in (0..m).filter(|l| ![i, j, k].contains(l)) {
                    match side(&pts[i], &pts[j], &pts[k], &pts[l]) {
                        1 => inside += 1,
                        -1 => outside += 1,
                        _ => panic!("oracle input has concyclic quadruple"),
                    }
                }
                signatures.insert([i, j, k], (inside, outside));
                *classes.entry((inside.min(outside), inside.max(outside))).or_insert(0) += 1;
            }
        }
    }
    OracleCensus { classes, signatures }
}

/// Distinct point-splitting circles of a set without collinear triples. A
/// circle is identified by the set of points it passes through.
pub fn oracle_degenerate_count(points: &[Point]) -> usize {
    let pts = to_integers(points);
    let m = pts.len();
    let n = (m - 1) / 2;
    let mut seen: BTreeMap<Vec<usize>, bool> = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let mut on = vec![i, j, k];
                let (mut inside, mut outside) = (0, 0);
                for l in (0..m).filter(|l| ![i, j, k].contains(l)) {
                    match side(&pts[i], &pts[j], &pts[k], &pts[l]) {
                        1 => inside += 1,
                        -1 => outside += 1,
                        _ => on.push(l),
                    }
                }
                on.sort_unstable();
                seen.insert(on, inside < n && outside < n);
            }
        }
    }
    seen.values().filter(|q| **q).count()
}
