//! Exact arithmetic: cyclotomic numbers and Laurent polynomials over them.

mod cyclotomic;
pub(crate) mod expr;
mod laurent;

pub use cyclotomic::{cyclotomic_polynomial, totient, CycNum};
pub use laurent::LaurentPoly;
