//! Branch words, sliding block codes, and bounded-range automorphism counts.

mod bound;
mod code;
mod enumerate;
mod words;

pub use bound::{autbd_bound, verify_autbd, AutBoundCounts, AutBoundInputs, AutBoundReport, BoundValue};
pub use code::{apply_code, compose_codes, compose_codes_on, BlockMapCode};
pub use enumerate::{
    action_on, enumerate_automorphisms, find_inverse, verify_certificate, AutomorphismCertificate,
    Enumeration, EnumerationConfig, DEFAULT_NODE_BUDGET,
};
pub use words::{
    branch_words, periodic_witnesses, verify_branch_facts, BranchFactsReport, BranchWordSet,
    PeriodicFinding, PeriodicReport, PeriodicWitness,
};
