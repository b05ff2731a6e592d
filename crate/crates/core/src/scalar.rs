//! Scalar abstractions shared by the numeric reports.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, ToPrimitive, Zero};

/// Floating point type used for threshold indicators (`f32`, `f64`, or an
/// extended-precision type implementing [`Float`]).
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Send + Sync {}

impl<T> Real for T where T: Float + FromPrimitive + ToPrimitive + Debug + Send + Sync {}

/// Ordered additive values for sequence comparisons: integers, floats, or
/// exact rationals.
pub trait SequenceValue: Clone + PartialOrd + Zero + Debug {}

impl<T> SequenceValue for T where T: Clone + PartialOrd + Zero + Debug {}
