//! Exact and numeric tools for arrangements of smooth cubics and lines in the
//! complex projective plane.
//!
//! The exact side computes minimal degrees of Jacobian syzygies, Hilbert
//! functions of Jacobian algebras, total Tjurina numbers and du Plessis-Wall
//! freeness verdicts by graded linear algebra over the rationals. The integer
//! side handles the combinatorics of weak combinatorics vectors. The numeric
//! side intersects components over the complex numbers and classifies the
//! singular points as nodes, ordinary triple points or `A5` tacnodes.

pub mod builders;
pub mod census;
pub mod combinatorics;
pub mod error;
pub mod jacobian;
pub mod linalg;
pub mod poly;
pub mod reproduce;

pub use error::{Error, Result};
pub use poly::{ComplexPoint, HomogeneousPoly, Monomial, NumericPoly, Rational, Var};
