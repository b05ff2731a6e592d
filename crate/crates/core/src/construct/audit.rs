use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lang::LanguageTable;

use super::family::Construction;
use super::group::GroupChain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `n_k <= n < b_{k+1} n_k`: bound `n |H_k|^2`.
    TwoBlocks,
    /// `b_{k+1} n_k <= n < n_{k+1}`: bound `b_{k+1} n_k |H_k|^(j+1)`.
    ManyRuns,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub n: usize,
    pub c_n: u64,
    pub regime: Regime,
    /// Number of full runs `j`, only in the [`Regime::ManyRuns`] regime.
    pub j: Option<usize>,
    #[serde(serialize_with = "crate::report::decimal")]
    pub bound: BigUint,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub level: usize,
    pub rows: Vec<AuditRow>,
    /// `5 |H_{k+1}| + 2 |H_k|^2`, the cap on `j`.
    pub j_cap: usize,
    pub pass: bool,
}

/// Compares `c_n` of `table` with the counting bounds for every
/// `n in [n_k, n_{k+1})` that the table covers.
pub fn construction_complexity_audit(
    construction: &Construction,
    table: &LanguageTable,
    k: usize,
) -> Result<AuditReport> {
    let spec = construction.spec();
    spec.check_level(k)?;
    if k + 1 > spec.levels() {
        return Err(Error::InvalidParameter(format!(
            "audit at level {k} needs H_{} in the chain",
            k + 1
        )));
    }
    let n_k = spec.block_len(k);
    let n_next = spec.block_len(k + 1);
    table.require_depth(n_k)?;
    let order = spec.level(k).order;
    let b = spec.cosets(k + 1).b;
    let j_cap = 5 * spec.level(k + 1).order + 2 * order * order;
    let square = BigUint::from(order * order);
    let run_len = b * n_k;

    let mut rows = Vec::new();
    for n in n_k..n_next.min(table.depth() + 1) {
        let c_n = table.count(n) as u64;
        let row = if n < run_len {
            let bound = BigUint::from(n) * &square;
            AuditRow { n, c_n, regime: Regime::TwoBlocks, j: None, pass: BigUint::from(c_n) <= bound, bound }
        } else {
            let j = n.div_ceil(run_len) + 1;
            let bound = BigUint::from(run_len) * BigUint::from(order).pow((j + 1) as u32);
            AuditRow {
                n,
                c_n,
                regime: Regime::ManyRuns,
                j: Some(j),
                pass: BigUint::from(c_n) <= bound && j < j_cap,
                bound,
            }
        };
        rows.push(row);
    }
    Ok(AuditReport { level: k, pass: rows.iter().all(|r| r.pass), rows, j_cap })
}

/// A monotone function `f` constraining the growth of `b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthFunction {
    /// `f(n) = n`.
    Identity,
    /// `f(n) = floor(log2 n)`.
    FloorLog2,
    /// Sampled values: `values[i]` is `f(i + 1)`.
    Table(Vec<u64>),
}

impl GrowthFunction {
    fn validate(&self) -> Result<()> {
        if let Self::Table(v) = self {
            if v.is_empty() {
                return Err(Error::InvalidParameter("empty growth table".into()));
            }
            if let Some(i) = v.windows(2).position(|w| w[1] < w[0]) {
                return Err(Error::InvalidParameter(format!(
                    "growth table not monotone: f({}) = {} > f({}) = {}",
                    i + 1,
                    v[i],
                    i + 2,
                    v[i + 1]
                )));
            }
        }
        Ok(())
    }
}

/// Least admissible `b`, or a symbolic constraint when it is out of practical reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeastB {
    Exact(BigUint),
    Symbolic(String),
}

impl Serialize for LeastB {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LeastB::Exact(v) => s.collect_str(v),
            LeastB::Symbolic(text) => s.serialize_str(text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BThreshold {
    pub k: usize,
    /// `T_k = k |H_k|^(5|H_{k+1}| + 2|H_k|^2)`.
    #[serde(serialize_with = "crate::report::decimal")]
    pub threshold: BigUint,
    pub least_b: LeastB,
}

// 2^(T+1) is expanded only while T stays below this many bits.
const MAX_EXACT_EXPONENT: u64 = 4096;

/// For each `k < K`, the threshold `T_k` that `f(b_k)` must exceed, and the
/// least `b >= 2` doing so when it can be computed.
pub fn required_b_lower_bounds(chain: &GroupChain, f: &GrowthFunction) -> Result<Vec<BThreshold>> {
    f.validate()?;
    let mut out = Vec::new();
    for k in 1..chain.len() {
        let h = chain.group(k).order();
        let h_next = chain.group(k + 1).order();
        let exponent = 5 * h_next + 2 * h * h;
        let threshold = BigUint::from(k) * BigUint::from(h).pow(exponent as u32);
        let symbolic = || LeastB::Symbolic(format!("b must satisfy f(b) > {threshold}"));
        let two = BigUint::from(2u32);
        let least_b = match f {
            GrowthFunction::Identity => LeastB::Exact((&threshold + 1u32).max(two)),
            GrowthFunction::FloorLog2 => match threshold.to_u64() {
                // floor(log2 b) > T  iff  b >= 2^(T+1)
                Some(t) if t < MAX_EXACT_EXPONENT => LeastB::Exact(BigUint::one() << (t + 1)),
                _ => symbolic(),
            },
            GrowthFunction::Table(values) => values
                .iter()
                .enumerate()
                .skip(1)
                .find(|(_, &v)| BigUint::from(v) > threshold)
                .map_or_else(symbolic, |(i, _)| LeastB::Exact(BigUint::from(i + 1))),
        };
        out.push(BThreshold { k, threshold, least_b });
    }
    Ok(out)
}
