//! Homogeneous polynomials in three variables: an exact layer over the
//! rationals and a complex floating layer used by the numeric census.

mod homogeneous;
mod monomial;
mod numeric;

pub use homogeneous::{rat, ratio, HomogeneousPoly, Rational};
pub use monomial::{graded_dim, monomial_basis, Monomial, Var};
pub use numeric::{cross, ComplexPoint, NumericPoly};
