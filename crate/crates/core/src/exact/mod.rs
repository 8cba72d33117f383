//! Exact arithmetic substrate: rational vectors, integer matrices, Hermite
//! normal form and the lattice handle.

mod form;
mod hnf;
pub mod io;
mod lattice;
mod matrix;
pub mod syntax;
mod vector;

pub use form::{integral_pairing, pairing, AmbientForm};
pub use hnf::{hnf_rows, integer_coordinates, integer_kernel, pivot_columns};
pub use lattice::{LatticeHandle, Orientation, Presentation};
pub use matrix::{isqrt, round_div, IntMatrix};
pub use vector::ScaledVector;
