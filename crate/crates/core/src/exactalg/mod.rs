//! Exact arithmetic: coefficient rings, Laurent and truncated polynomials,
//! dense matrices, and Smith normal form lattices.

mod coefficient;
pub mod laurent;
pub mod lattice;
mod matrix;
mod scalar;
pub mod truncpoly;

pub use coefficient::Coefficient;
pub use laurent::{tk_polynomial, tk_remainder, LaurentPoly};
pub use lattice::{lattice_solve, IntegerLattice, SmithForm};
pub use matrix::Matrix;
pub use scalar::{Integer, Scalar, F2};
pub use truncpoly::{invert_unipotent, TruncPoly};
