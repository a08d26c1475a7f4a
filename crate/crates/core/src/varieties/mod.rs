//! Split cellular varieties: projective spaces, split quadrics and their
//! products, with Chow and K₀ presentations on the cell basis.

mod catalog;
mod classes;
mod factor;
mod filtration;
mod morphism;
mod variety;

pub use catalog::{catalog, catalog_morphisms};
pub(crate) use classes::check_same;
pub use classes::{ChowClass, KClass, LineBundle, SplitKClass};
pub use factor::{Cell, FactorKind};
pub use filtration::{filtration_subgroup, phi, GrClass};
pub use morphism::{CatalogMorphism, MorphismKind};
pub use variety::{SplitVariety, Variety, MAX_FACTORS};

use std::sync::Arc;

use crate::error::Result;

/// Shared presentation of `x`.
pub fn chow_ring(x: &SplitVariety) -> Result<Arc<Variety>> {
    Variety::shared(x)
}

/// Same presentation; CH and K₀ share the cell basis.
pub fn k0_ring(x: &SplitVariety) -> Result<Arc<Variety>> {
    Variety::shared(x)
}

/// `T_X`.
pub fn tangent_class(x: &Arc<Variety>) -> SplitKClass {
    SplitKClass::tangent(x)
}

/// `T_f = T_source - f^* T_target`.
pub fn tangent_of_morphism(f: &CatalogMorphism) -> SplitKClass {
    f.tangent().clone()
}
