//! Mahler measures of integer Laurent polynomials and of their monomial
//! substitutions `F_A`, with the lattice machinery (Hermite and saturated
//! Hermite normal forms) used to canonicalize substitutions, and tools for
//! exploring the closed sets of measures such substitutions produce.

mod error;
mod json_int;
mod numeric;

pub mod lattice;
pub mod laurent;

pub use error::{Error, Result};
pub use lattice::IntMatrix;
pub use laurent::{Coefficient, ExponentVector, LaurentPoly};
pub mod measure_multi;
pub mod measure_uni;
pub mod spectrum;
