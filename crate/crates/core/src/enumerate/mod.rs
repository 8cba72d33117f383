//! Exact short-vector and coset-minimum enumeration.

mod cache;
mod coset;
mod engine;
mod ldl;
mod lll;
mod query;

pub use cache::CensusCache;
pub use coset::{coset_minima, CosetMinSet};
pub use engine::{Center, Control, Enumerator, Lane, LeafSink, Query, Scalar, Sink};
pub use ldl::{fraction_free, ldl_decompose, FractionFree, Ldl};
pub use lll::{lll_gram, Reduced};
pub use query::{
    count_short_vectors, collect_short_vectors, short_vectors, theta_coefficients,
    visit_short_vectors, Mode, ShortVector, ShortVectorQuery, ShortVectors,
};

/// Default cap on the number of vectors a collect-mode query may return.
pub const DEFAULT_MEMORY_CAP: usize = 1 << 27;

/// Runtime knobs shared by all enumeration entry points.
#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub threads: usize,
    pub memory_cap: usize,
    pub cache: Option<CensusCache>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            memory_cap: DEFAULT_MEMORY_CAP,
            cache: None,
        }
    }
}

impl EnumConfig {
    pub fn single_threaded() -> Self {
        Self {
            threads: 1,
            ..Self::default()
        }
    }
}
