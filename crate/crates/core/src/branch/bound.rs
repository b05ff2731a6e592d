use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{LanguageTable, Symbol};

use super::code::apply_code;
use super::enumerate::{action_on, enumerate_automorphisms, EnumerationConfig};
use super::words::{branch_words, periodic_witnesses_with};

/// `(c_{1+c_n})^(2|A|(c_{n+1} - c_n))`, or an upper bound for it when the
/// table is too shallow to read `c_{1+c_n}` directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    #[serde(serialize_with = "crate::report::decimal")]
    pub value: BigUint,
    /// `c_{1+c_n}` when exact, otherwise `c_L^ceil((1+c_n)/L)` for depth `L`.
    #[serde(serialize_with = "crate::report::decimal")]
    pub base: BigUint,
    pub alphabet_size: usize,
    /// `c_{n+1} - c_n`.
    pub diff: u64,
    pub exponent: u64,
    #[serde(rename = "exact")]
    pub certified_exact: bool,
}

// Refuse to expand bounds with more bits than this.
const MAX_BOUND_BITS: u64 = 1 << 32;

pub fn autbd_bound(table: &LanguageTable, n: usize) -> Result<BoundValue> {
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    table.require_depth(n + 1)?;
    let c_n = table.count(n);
    let c_next = table.count(n + 1);
    let diff = c_next.checked_sub(c_n).ok_or_else(|| {
        Error::Invariant(format!("c_{} = {c_next} < c_{n} = {c_n}", n + 1))
    })? as u64;
    let alphabet_size = table.alphabet().len();
    let exponent = 2 * alphabet_size as u64 * diff;
    let index = 1 + c_n;
    let depth = table.depth();
    let (base, certified_exact) = if index <= depth {
        (BigUint::from(table.count(index)), true)
    } else {
        // Subadditivity: c_{a+b} <= c_a c_b, and c is nondecreasing.
        let reps = index.div_ceil(depth);
        let base = BigUint::from(table.count(depth)).pow(reps as u32);
        (base, false)
    };
    let bits = base.bits().saturating_mul(exponent);
    if bits > MAX_BOUND_BITS {
        return Err(Error::InvalidParameter(format!("bound would need about {bits} bits")));
    }
    let value = if exponent == 0 {
        BigUint::one()
    } else {
        base.pow(exponent as u32)
    };
    Ok(BoundValue { value, base, alphabet_size, diff, exponent, certified_exact })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutBoundInputs {
    pub n: usize,
    pub range: usize,
    pub inverse_range_cap: usize,
    pub check_depth: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutBoundCounts {
    pub certified: usize,
    pub candidates: usize,
    pub certified_classes: usize,
    /// Count compared against the bound.
    pub compared: usize,
    pub branch_words: usize,
    pub periodic_witnesses: usize,
    pub determination_groups: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutBoundReport {
    pub inputs: AutBoundInputs,
    pub counts: AutBoundCounts,
    pub bound: BoundValue,
    pub count_ok: bool,
    pub determination_ok: bool,
    /// Branch words or periodic points detected on a table shallower than `n + c_n`.
    pub detection_depth_limited: bool,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

/// Counts periodic-point-fixing codes of range `floor((n-1)/2)` against
/// [`autbd_bound`], and checks that codes agreeing on all branch words and
/// periodic witnesses act identically on `L_M`.
pub fn verify_autbd(
    table: &LanguageTable,
    n: usize,
    inverse_range_cap: usize,
    check_depth: usize,
    budget: u64,
) -> Result<AutBoundReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    let range = (n - 1) / 2;
    let bound = autbd_bound(table, n)?;
    let config = EnumerationConfig::new(range, inverse_range_cap, check_depth)
        .fip_only(true)
        .budget(budget);
    let enumeration = enumerate_automorphisms(table, &config)?;
    let branches = branch_words(table, n)?;
    let periodic = periodic_witnesses_with(table, &branches)?;

    let mut witnesses = Vec::new();
    let compared = enumeration.compared_count;
    let count_ok = BigUint::from(compared) <= bound.value;
    if !count_ok {
        witnesses.push(format!("{compared} codes exceed the bound {}", bound.value));
    }
    for f in &periodic.findings {
        witnesses.push(format!("uncertified uncovered word {}: {}", f.word, f.reason));
    }

    // Signature: images of every branch word and of every periodic point window.
    let probes: Vec<Vec<Symbol>> = branches
        .iter()
        .map(|w| w.to_vec())
        .chain(periodic.witnesses.iter().map(|p| p.periodic_word(p.period + 2 * range).0))
        .collect();
    let mut groups: HashMap<Vec<Vec<Symbol>>, (Vec<Symbol>, usize)> = HashMap::new();
    let mut determination_ok = true;
    for (i, code) in enumeration.codes().enumerate() {
        let signature = probes
            .iter()
            .map(|p| apply_code(code, p).map(|w| w.0))
            .collect::<Result<Vec<_>>>()?;
        let action = action_on(table, code, check_depth)?;
        match groups.get(&signature) {
            Some((other, j)) if *other != action => {
                determination_ok = false;
                witnesses.push(format!(
                    "codes #{j} and #{i} agree on branch words and periodic points but act differently"
                ));
            }
            Some(_) => {}
            None => {
                groups.insert(signature, (action, i));
            }
        }
    }

    let detection_depth_limited = branches.depth_limited || enumeration.periodic_depth_limited;
    Ok(AutBoundReport {
        inputs: AutBoundInputs { n, range, inverse_range_cap, check_depth, depth: table.depth() },
        counts: AutBoundCounts {
            certified: enumeration.certified.len(),
            candidates: enumeration.candidates.len(),
            certified_classes: enumeration.certified_classes,
            compared,
            branch_words: branches.len(),
            periodic_witnesses: periodic.witnesses.len(),
            determination_groups: groups.len(),
        },
        bound,
        count_ok,
        determination_ok,
        detection_depth_limited,
        pass: count_ok && determination_ok,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::DEFAULT_NODE_BUDGET;
    use crate::lang::{build_language, SubshiftSource};

    #[test]
    fn zero_difference_gives_one() {
        let t = build_language(&SubshiftSource::period_two(40), 20).unwrap();
        let b = autbd_bound(&t, 3).unwrap();
        assert_eq!(b.value, BigUint::one());
        assert!(b.certified_exact);
    }

    #[test]
    fn golden_mean_exact_and_estimated() {
        let t = build_language(&SubshiftSource::golden_mean(), 14).unwrap();
        let b = autbd_bound(&t, 5).unwrap();
        assert!(b.certified_exact);
        assert_eq!(b.base, BigUint::from(987u32));
        assert_eq!(b.exponent, 32);
        assert_eq!(b.value, BigUint::from(987u32).pow(32));

        let t = build_language(&SubshiftSource::golden_mean(), 10).unwrap();
        let b = autbd_bound(&t, 5).unwrap();
        assert!(!b.certified_exact);
        assert_eq!(b.base, BigUint::from(144u32 * 144));
        assert!(b.value >= BigUint::from(987u32).pow(32));
    }

    #[test]
    fn period_two_verify() {
        let t = build_language(&SubshiftSource::period_two(40), 20).unwrap();
        let r = verify_autbd(&t, 5, 2, 12, DEFAULT_NODE_BUDGET).unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
        assert_eq!(r.counts.compared, 1);
        assert_eq!(r.bound.value, BigUint::one());
    }
}
