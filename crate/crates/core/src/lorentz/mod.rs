//! Lorentzian classes in `Z^{1,n}`, their orthogonal complements, root
//! system identification and plumbing verification.

mod class;
mod identify;
mod plumbing;
mod roots;

pub use class::{adjunction_genus, complement_lattice, even_complement_test, LorentzClass};
pub use identify::{
    identify_overlattice, identify_unimodular, HalfSumTest, Identification, IdentificationStatus,
};
pub use plumbing::{
    builtin_plumbings, plumbing_gram, verify_embedding, EmbeddingReport, PlumbingFile, PlumbingGraph,
};
pub use roots::{root_fingerprint, root_system, DynkinComponent, Functional, RootSystem, RootSystemFingerprint};
