//! Named lattices: ADE root lattices, glued overlattices, the Leech lattice
//! and the shipped catalog.

mod catalog;
mod glued;
mod leech;
mod modular;
mod root;

pub use catalog::{
    direct_sum, integer_lattice, CatalogEntry, ClassificationEntry, Construction, Expected,
    NamedLatticeCatalog,
};
pub use glued::{component_offsets, gamma_spec, make_glued, GluedLatticeSpec};
pub use leech::{from_scaled_model, golay_code, golay_generators, make_leech, scaled_model_generators};
pub use modular::theta_by_modular_identity;
pub use root::{e8_roots, make_root_lattice, Family, RootComponentSpec};
