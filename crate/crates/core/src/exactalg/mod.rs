//! Exact integer, rational and Laurent-polynomial arithmetic.

mod laurent;
mod unipoly;

pub use laurent::{ExpVec, LaurentPoly, YPoly};
pub use unipoly::{interpolate, value_at_one, UniPoly};
