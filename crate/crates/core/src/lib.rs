//! Exact enumeration of point-splitting circles.
//!
//! A circle through three points of a set `S` of `2n + 1` points is
//! `(a, b)`-splitting when `a` of the remaining points lie strictly inside it
//! and `b` strictly outside. This crate enumerates every such circle with
//! exact rational predicates, checks the counting identities
//! `N_S = n^2` and `N(a, b) + N(b, a) = 2(a + 1)(b + 1)`, builds the
//! recursive polygon-plus-center configuration and the one-concyclic-quadruple
//! sets, and replays a one-point deformation event by event.
//!
//! ```
//! use splitcircle::{census::build_census, generators::generate_random_general_position};
//!
//! let set = generate_random_general_position(7, 1, 1000).unwrap();
//! let census = build_census(&set).unwrap();
//! assert_eq!(census.point_splitting(), 9);
//! ```

pub mod census;
pub mod cli;
pub mod deformation;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod poly;

pub use error::{Error, Result};
pub use geometry::{Point, PointSet, Rational};
