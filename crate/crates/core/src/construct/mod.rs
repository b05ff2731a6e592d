//! Block concatenation subshifts realizing a finite chain of groups.
//!
//! Each level `k` has one word `w_g^(k)` of length `n_k` per element `g` of
//! `H_k`; level-`(k+1)` words are concatenations of level-`k` words chosen so
//! that left multiplication on subscripts acts consistently across levels.

mod audit;
mod family;
mod group;
mod spec;
mod verify;

pub use audit::{
    construction_complexity_audit, required_b_lower_bounds, AuditReport, AuditRow, BThreshold,
    GrowthFunction, LeastB, Regime,
};
pub use family::{build_ak, pi_apply, AkWordFamily, BlockWord, Construction, Run};
pub use group::{validate_chain, ChainReport, FiniteGroup, GroupChain};
pub use spec::{derive_spec, ConstructionSpec, CosetData, LevelParams};
pub use verify::{
    group_isomorphism_check, verify_structure, verify_structure_of, IsomorphismReport,
    StructureChecks, StructureReport,
};
