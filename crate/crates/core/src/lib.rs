//! Finite-depth computations on subshifts: word complexity and special words,
//! n-branch words and bounded-range automorphism search, block-concatenation
//! constructions driven by chains of finite groups, and threshold indicators
//! for complexity growth.
//!
//! ```
//! use subshift_core::{build_language, complexity_profile, SubshiftSource};
//!
//! let table = build_language(&SubshiftSource::golden_mean(), 6).unwrap();
//! assert_eq!(complexity_profile(&table).c, vec![2, 3, 5, 8, 13, 21]);
//! ```

pub mod analysis;
pub mod branch;
pub mod construct;
pub mod error;
pub mod io;
pub mod lang;
pub mod report;
pub mod scalar;

pub use analysis::{find_diff_indices, threshold_stats, ThresholdPoint, ThresholdReport, ThresholdTag};
pub use branch::{
    apply_code, autbd_bound, branch_words, compose_codes, enumerate_automorphisms, periodic_witnesses,
    verify_autbd, verify_branch_facts, BlockMapCode, EnumerationConfig,
};
pub use construct::{
    construction_complexity_audit, derive_spec, group_isomorphism_check, required_b_lower_bounds,
    validate_chain, verify_structure, Construction, GroupChain,
};
pub use error::{Error, Result};
pub use lang::{
    build_language, complexity_profile, special_words, verify_special_bound, Alphabet, ComplexityProfile,
    LanguageTable, Side, SubshiftSource, Symbol, Word,
};
pub use report::{emit_report, Format, Report};
pub use scalar::{Real, SequenceValue};

/// Arbitrary-precision bound values.
pub type Bound = num_bigint::BigUint;
/// Threshold indicators in double precision.
pub type ThresholdReportF64 = ThresholdReport<f64>;
/// Threshold indicators in single precision.
pub type ThresholdReportF32 = ThresholdReport<f32>;
