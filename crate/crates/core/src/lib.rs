//! Exact computation of F-polynomials, quiver Grassmannian Euler
//! characteristics, and cluster characters of type-A cluster categories,
//! together with the cluster-algebra side (seed mutation and enumeration)
//! they are checked against.

#![allow(clippy::needless_range_loop)]

pub mod artype_a;
pub mod catalog;
pub mod charcat;
pub mod clusteralg;
pub mod error;
pub mod exactalg;
pub mod fpoly;
pub mod grass;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
/// Laurent polynomials with integer coefficients: values of cluster characters.
pub type Laurent = exactalg::LaurentPoly<Integer>;
/// Integer polynomials in `y1..yn`: F-polynomials.
pub type IntPolyY = exactalg::YPoly<Integer>;
/// Counting polynomials `N(q)`.
pub type UniPolyQ = exactalg::UniPoly<Rational>;
pub type QMatrix = linalg::Matrix<Rational>;
