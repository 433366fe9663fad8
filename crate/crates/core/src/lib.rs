//! Additive bases of order two: ranges, arithmetic extension, symmetric
//! closures and exhaustive searches for extremal bases.
//!
//! A basis `A = {1 = a_1 < a_2 < ... < a_k}` covers `x` when `x` is `0`, an
//! element, or the sum of two elements. Its range `n(A)` is the largest `n`
//! with `1..=n` all covered.
//!
//! ```
//! use stampbase_core::{range, Basis};
//!
//! let basis: Basis = "1,3,4,6,11".parse().unwrap();
//! assert_eq!(range(&basis).n, 12);
//! ```

pub mod basis;
mod bits;
pub mod error;
pub mod extension;
pub mod optimize;
pub mod reach;
pub mod search;
pub mod stohr;
pub mod symmetric;

pub use basis::{
    is_p_basis, is_symmetric, residue_profile, symmetrize, Basis, Parity, ResidueProfile,
    MAX_MODULUS,
};
pub use error::{Error, Result};
pub use extension::{
    check_settled_ranges, extend_arithmetic, extensible_completion, extension_ranges,
    extension_threshold, is_extensible, Completion, ExtensionLimit, ExtensionReport,
};
pub use optimize::{
    best_segments, maximal_symmetricisable, range_table, MaximalBasisSet, Mode, RangeEntry,
    RangeTable, Segment,
};
pub use reach::{extend_reach, range, RangeResult, ReachSet};
pub use search::{
    census, classify, enumerate_free, enumerate_p_bases, enumerate_p_plus, for_each_free_extension,
    maxima_record, p_basis_records, par_subtrees, plus_depth_search, range_comparison_stats,
    tail_distribution, Census, Checkpoint, ClassStats, DepthSearchOutcome, Frontier, MaximaRecord,
    PBasisRecord, PBasisWalker, PlusBasisRecord, RangeComparison, SearchConfig, TailDistribution,
    TailRow, DEFAULT_NODE_BUDGET,
};
pub use stohr::{period_bound, periodic_scan, stohr_sequence, PeriodReport, StohrSequence};
pub use symmetric::{
    build_symmetric_closure, closure_range, is_symmetricisable, is_symmetricisable_free,
    is_symmetricisable_plus, m_zero, SymmetricClosure, SymmetricisabilityReport,
};
