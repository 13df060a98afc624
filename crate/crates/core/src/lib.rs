//! Computational engine for finite permutation groups: stabilizer-chain
//! construction, subgroup algebra, quotients, chief series, and the
//! normalizer-index membership condition the companion CLI verifies.

pub mod bitset;
pub mod chief;
pub mod classes;
pub mod corpus;
pub mod error;
pub mod group;
pub mod kernel;
pub mod naive;
pub mod perm;
pub mod pi;
pub mod primes;
pub mod quotient;
pub mod subgroup;

pub use bitset::ElementBitset;
pub use chief::{ChiefSeries, ChiefSeriesIter};
pub use classes::{PrimeProfile, StructureProfile};
pub use corpus::{builtin_corpus, find_entry, load_corpus, serialize_corpus, CorpusEntry, CorpusError};
pub use error::GroupError;
pub use group::{same_element_set, ElementIndex, Group};
pub use perm::Permutation;
pub use pi::{factor_condition, satisfies_partial_pi, FactorCheck, PiVerdict};
pub use primes::PrimeSet;
pub use quotient::QuotientMap;
pub use subgroup::Subgroup;

/// Explicit resource caps threaded through every operation that enumerates.
///
/// Nothing truncates silently: an operation that would exceed its cap returns
/// a typed error naming the cap instead.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Largest group order that may be enumerated element-by-element.
    pub element: u64,
    /// Most normal subgroups a lattice walk may collect.
    pub lattice: usize,
    /// Most memo entries a membership-condition search may record.
    pub memo: usize,
    /// Largest factor-group order the intersection fallback may filter over.
    pub filter: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element: 20_000,
            lattice: 10_000,
            memo: 10_000,
            filter: 5_000,
        }
    }
}

impl Caps {
    /// Caps scaled for brute-force cross-checks in tests: small enough to
    /// keep runs quick, large enough for every bundled desk-size group.
    pub fn desk() -> Self {
        Caps::default()
    }
}
