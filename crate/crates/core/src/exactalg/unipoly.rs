//! Univariate polynomials over a field and exact interpolation of point counts.

use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::Rational;

/// Polynomial in `q`, coefficients stored from the constant term up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Unique polynomial of degree at most `points.len() - 1` through all
    /// points (Newton divided differences). The abscissae must be distinct.
    pub fn interpolate_exact(points: &[(F, F)]) -> Result<Self> {
        let xs: Vec<F> = points.iter().map(|p| p.0.clone()).collect();
        let mut dd: Vec<F> = points.iter().map(|p| p.1.clone()).collect();
        let n = points.len();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = xs[i].clone() - xs[i - level].clone();
                let inv = den.inv().ok_or_else(|| Error::BadDims("repeated interpolation node".into()))?;
                dd[i] = (dd[i].clone() - dd[i - 1].clone()) * inv;
            }
        }
        // expand the Newton form from the innermost coefficient outwards
        let mut coeffs: Vec<F> = Vec::new();
        for i in (0..n).rev() {
            let mut next = vec![F::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - c.clone() * xs[i].clone();
            }
            next[0] = next[0].clone() + dd[i].clone();
            coeffs = next;
        }
        Ok(Self::new(coeffs))
    }
}

impl<F: Field> Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Recovers an integer counting polynomial from sampled counts.
///
/// Interpolates through the first `degree_bound + 1` points, then requires
/// every further point to lie on the curve and every coefficient to be an
/// integer.
pub fn interpolate(points: &[(BigInt, BigInt)], degree_bound: usize) -> Result<UniPoly<Rational>> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(Error::InsufficientPoints { needed, got: points.len() });
    }
    let as_q = |v: &BigInt| Rational::from_integer(v.clone());
    let base: Vec<(Rational, Rational)> = points[..needed].iter().map(|(x, y)| (as_q(x), as_q(y))).collect();
    let poly = UniPoly::interpolate_exact(&base)?;
    for (x, y) in &points[needed..] {
        if poly.eval(&as_q(x)) != as_q(y) {
            return Err(Error::InconsistentExtraPoint(x.to_string()));
        }
    }
    if poly.coeffs.iter().any(|c| !c.is_integer()) {
        return Err(Error::NonIntegerCoefficients(poly.to_string()));
    }
    Ok(poly)
}

/// Value at `q = 1` of an integer polynomial.
pub fn value_at_one(p: &UniPoly<Rational>) -> BigInt {
    p.coeffs.iter().fold(BigInt::zero(), |acc, c| acc + c.to_integer())
}
