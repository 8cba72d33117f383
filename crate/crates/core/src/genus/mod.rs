//! Invariants of definite unimodular lattices bounding the genus of
//! surfaces: extremal vectors, `S_i^w` censuses, `eta`, `f_n`
//! certificates, characteristic vectors and `delta`.

mod bound;
mod census;
mod cert;
mod delta;
mod eta;

pub use bound::{adjunction_genus_bound, g4_lower_bound, Branch, G4Bound, G4_ASSUMPTION};
pub use census::{is_extremal, s_census, ExtremalityCertificate};
pub use cert::{
    f2_certificate, f_certificate, f_search, fn_certificate, fn_exhaustive, ExhaustiveBudget,
    FInvariantCertificate, FnExhaustiveReport,
};
pub use delta::{characteristic_coset, characteristic_vector, DeltaReport};
pub use eta::{eta, eta_direct, eta_general, min_set, residue, Convention, EtaReport};
