//! Finite-range indicator sequences for complexity growth hypotheses.

mod diff;
mod thresholds;

pub use diff::find_diff_indices;
pub use thresholds::{threshold_stats, ThresholdPoint, ThresholdReport, ThresholdTag};
