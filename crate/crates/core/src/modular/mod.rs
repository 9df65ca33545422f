//! Concrete modular representations of symmetric groups.

pub mod decomposition;
pub mod fp;
pub mod meataxe;
pub mod rep;
pub mod specht;

pub use decomposition::{decomposition_matrix, DecompositionMatrix, DecompositionStore, SimpleCatalog};
pub use fp::{FpMatrix, Subspace};
pub use meataxe::{certify, chop, chop_with, is_isomorphic, IrreducibleRep, PeakWord};
pub use rep::{cycle_word, GroupRep};
pub use specht::{build_simple, build_simple_with, build_specht, build_specht_with, gram_rank, SpechtModuleData};

/// Size limits for the explicit-module machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which Specht modules are built (tabloid space `≤ n!`).
    pub max_specht_n: usize,
    /// Largest `n` for which decomposition matrices are computed.
    pub max_decomposition_n: usize,
    /// Largest module dimension accepted by [`chop`].
    pub max_chop_dim: usize,
    /// Random algebra elements tried per split before giving up.
    pub max_trials: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_specht_n: 8, max_decomposition_n: 8, max_chop_dim: 1500, max_trials: 2000 }
    }
}
