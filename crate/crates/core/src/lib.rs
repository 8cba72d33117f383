//! Exact lattice computations for unimodular lattices: construction of the
//! Niemeier and related lattices, short-vector and coset enumeration, the
//! instanton-style invariants `eta`, `f_n` and `delta`, the Munoz-ring
//! polynomial reductions, and Lorentzian complement verification.

pub mod enumerate;
pub mod error;
pub mod exact;
pub mod genus;
pub mod lorentz;
pub mod munoz;
pub mod zoo;

pub use error::{Error, Result};
pub use exact::{AmbientForm, IntMatrix, LatticeHandle, ScaledVector};

/// Exact integer type used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational type used throughout.
pub type Rational = num_rational::BigRational;
