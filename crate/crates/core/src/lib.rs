//! Exact Adams operations, Bott classes and the first Steenrod square on
//! projective spaces, split quadrics and their products.

pub mod adams;
pub mod connective;
pub mod error;
pub mod exactalg;
pub mod steenrod;
pub mod varieties;

pub use error::{Error, Result};

/// Integral Chow classes.
pub type IntChowClass = varieties::ChowClass<exactalg::Integer>;
/// Mod-2 Chow classes.
pub type Mod2ChowClass = varieties::ChowClass<exactalg::F2>;
/// Integral K₀ classes.
pub type IntKClass = varieties::KClass<exactalg::Integer>;
/// K₀ classes with an inverted integer.
pub type LocalKClass = varieties::KClass<exactalg::Coefficient>;
