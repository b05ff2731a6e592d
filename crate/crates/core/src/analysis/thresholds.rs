use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::ComplexityProfile;
use crate::scalar::Real;

/// Normalizations of `c_n` whose lim inf (or limit) is of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdTag {
    /// `log(c_n / n) / log log log n`.
    LogLogLog,
    /// `c_n / (n^1.25 (log n)^-0.5)`.
    N125,
    /// `c_n / (n^1.5 (log n)^-1)`.
    N15,
    /// `c_n / (n^2 (log n)^-1)`.
    N2,
}

impl ThresholdTag {
    pub const ALL: [ThresholdTag; 4] = [Self::LogLogLog, Self::N125, Self::N15, Self::N2];

    /// Smallest `n` at which the indicator's denominator is positive (natural logs).
    pub fn first_n(self) -> usize {
        match self {
            Self::LogLogLog => 16,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::LogLogLog => "log-log-log",
            Self::N125 => "n1.25",
            Self::N15 => "n1.5",
            Self::N2 => "n2",
        }
    }

    pub fn indicator<T: Real>(self, n: usize, c_n: u64) -> T {
        let n_f = T::from_usize(n).expect("n representable");
        let c = T::from_u64(c_n).expect("c_n representable");
        let ln_n = n_f.ln();
        match self {
            Self::LogLogLog => (c / n_f).ln() / ln_n.ln().ln(),
            Self::N125 => c * ln_n.sqrt() / n_f.powf(T::from_f64(1.25).unwrap()),
            Self::N15 => c * ln_n / n_f.powf(T::from_f64(1.5).unwrap()),
            Self::N2 => c * ln_n / (n_f * n_f),
        }
    }
}

impl fmt::Display for ThresholdTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThresholdTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown threshold tag {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdPoint<T> {
    pub n: usize,
    pub c_n: u64,
    pub value: T,
    pub running_min: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport<T> {
    pub tag: ThresholdTag,
    pub points: Vec<ThresholdPoint<T>>,
}

/// Indicator values and their running minimum for every admissible `n` of the profile.
pub fn threshold_stats<T: Real>(profile: &ComplexityProfile, tag: ThresholdTag) -> Result<ThresholdReport<T>> {
    let first = tag.first_n();
    if profile.depth < first {
        return Err(Error::InvalidParameter(format!(
            "{tag} indicator starts at n = {first}, profile depth is {}",
            profile.depth
        )));
    }
    let mut points = Vec::with_capacity(profile.depth - first + 1);
    let mut running_min = T::infinity();
    for n in first..=profile.depth {
        let c_n = profile.c(n);
        let value: T = tag.indicator(n, c_n);
        running_min = running_min.min(value);
        points.push(ThresholdPoint { n, c_n, value, running_min });
    }
    Ok(ThresholdReport { tag, points })
}
