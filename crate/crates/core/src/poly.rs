//! Univariate polynomials with exact rational coefficients, and real-root
//! isolation for degree at most two by sign bisection.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{serialize_rational, Rational, Sign};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::new(vec![c])
    }

    /// `c0 + c1 * t`
    pub fn linear(c0: Rational, c1: Rational) -> Poly {
        Poly::new(vec![c0, c1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn sign_at(&self, t: &Rational) -> Sign {
        Sign::of(&self.eval(t))
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Poly) -> Poly {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let q = &r[top] / lead;
            let shift = top - d;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => a.scale(&(Rational::one() / lead)),
            None => a,
        }
    }

    fn require_low_degree(&self) -> Result<()> {
        match self.degree() {
            None => Err(Error::InvalidArgument("root isolation of the zero polynomial".into())),
            Some(d) if d > 2 => Err(Error::InvalidArgument(format!(
                "root isolation supports degree at most 2, got {d}"
            ))),
            _ => Ok(()),
        }
    }

    fn discriminant(&self) -> Rational {
        let (c0, c1, c2) = (self.coeff(0), self.coeff(1), self.coeff(2));
        &c1 * &c1 - Rational::from_integer(4.into()) * c2 * c0
    }

    /// Abscissa of the vertex `-c1 / (2 c2)` of a quadratic.
    fn vertex(&self) -> Rational {
        -self.coeff(1) / (self.coeff(2) * Rational::from_integer(2.into()))
    }

    /// Monotone pieces of the polynomial over `[lo, hi]`.
    fn monotone_pieces(&self, lo: &Rational, hi: &Rational) -> Vec<(Rational, Rational)> {
        if self.degree() == Some(2) {
            let v = self.vertex();
            if *lo < v && v < *hi {
                return vec![(lo.clone(), v.clone()), (v, hi.clone())];
            }
        }
        vec![(lo.clone(), hi.clone())]
    }

    /// Every real root in the open interval `(lo, hi)`, ascending, each in its
    /// own isolating interval. Degree must be 1 or 2 (or a nonzero constant).
    pub fn isolate_roots(&self, lo: &Rational, hi: &Rational) -> Result<Vec<IsolatedRoot>> {
        self.require_low_degree()?;
        let inside = |r: &Rational| lo < r && r < hi;
        let mut out = Vec::new();
        match self.degree() {
            Some(1) => {
                let r = -self.coeff(0) / self.coeff(1);
                if inside(&r) {
                    out.push(IsolatedRoot { interval: RootInterval::exact(r), multiplicity: 1 });
                }
            }
            Some(2) => match Sign::of(&self.discriminant()) {
                Sign::Negative => {}
                Sign::Zero => {
                    let r = self.vertex();
                    if inside(&r) {
                        out.push(IsolatedRoot { interval: RootInterval::exact(r), multiplicity: 2 });
                    }
                }
                Sign::Positive => {
                    for (l, r) in self.monotone_pieces(lo, hi) {
                        let (sl, sr) = (self.sign_at(&l), self.sign_at(&r));
                        if sl * sr == Sign::Negative {
                            out.push(IsolatedRoot { interval: RootInterval { lo: l, hi: r }, multiplicity: 1 });
                        }
                    }
                }
            },
            _ => {}
        }
        Ok(out)
    }

    /// Whether some root lies in the closed interval `[lo, hi]`.
    pub fn has_root_in(&self, lo: &Rational, hi: &Rational) -> Result<bool> {
        self.require_low_degree()?;
        if lo > hi {
            return Ok(false);
        }
        if self.sign_at(lo).is_zero() || self.sign_at(hi).is_zero() {
            return Ok(true);
        }
        if self.degree() == Some(2) && self.discriminant().is_zero() {
            let v = self.vertex();
            return Ok(*lo <= v && v <= *hi);
        }
        Ok(self
            .monotone_pieces(lo, hi)
            .iter()
            .any(|(l, r)| self.sign_at(l) * self.sign_at(r) == Sign::Negative))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Either an exact root `[r, r]`, or an open interval `(lo, hi)` whose
/// endpoints are not roots and carry opposite signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "serialize_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub hi: Rational,
}

impl RootInterval {
    pub fn exact(r: Rational) -> Self {
        RootInterval { lo: r.clone(), hi: r }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Closed-interval intersection test.
    pub fn overlaps(&self, other: &RootInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Halves the interval around the root of `poly`.
    pub fn refine(&mut self, poly: &Poly) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let s = poly.sign_at(&mid);
        if s.is_zero() {
            *self = RootInterval::exact(mid);
        } else if s == poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn cmp_position(&self, other: &RootInterval) -> Ordering {
        self.lo.cmp(&other.lo).then_with(|| self.hi.cmp(&other.hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub interval: RootInterval,
    pub multiplicity: u8,
}

/// The rational with the smallest denominator strictly between `lo` and
/// `hi` (`0 <= lo < hi`), found by continued-fraction descent.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(!lo.is_negative() && lo < hi, "expected 0 <= lo < hi");
    let fl = lo.floor();
    let next = &fl + Rational::one();
    if next < *hi {
        return next;
    }
    // lo < x < hi <= fl + 1, so x = fl + 1/y with y > 1.
    let y_lo = Rational::one() / (hi - &fl);
    let y = if *lo == fl {
        y_lo.floor() + Rational::one()
    } else {
        simplest_between(&y_lo, &(Rational::one() / (lo - &fl)))
    };
    fl + Rational::one() / y
}
