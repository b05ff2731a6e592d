use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use super::family::{pi_apply, AkWordFamily, BlockWord, Construction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureChecks {
    /// Every `A_{k+1}` word contains every `A_k` word as a block.
    pub min: bool,
    /// Leading and trailing runs reach `d_{k+1}`; no interior run does.
    pub decomp: bool,
    /// `pi_{k,h}` and `pi_{k+1,h}` agree on every `A_{k+1}` word.
    pub consist: bool,
    /// No nontrivial `pi_{k,h}` acts as a shift on the doubled identity word.
    pub not_shift: bool,
}

impl StructureChecks {
    pub fn all(&self) -> bool {
        self.min && self.decomp && self.consist && self.not_shift
    }
}

/// Structural checks on the family `A_{k+1}` viewed as sequences of `A_k` blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub level: usize,
    pub d: usize,
    pub leading_runs: Vec<usize>,
    pub trailing_runs: Vec<usize>,
    pub max_interior_run: usize,
    pub checks: StructureChecks,
    pub witnesses: Vec<String>,
    pub pass: bool,
}

/// Runs the four structural checks on the generated family `A_{k+1}`.
pub fn verify_structure(construction: &Construction, k: usize) -> Result<StructureReport> {
    construction.spec().check_level(k + 1)?;
    verify_structure_of(construction, k, construction.family(k + 1))
}

/// As [`verify_structure`], but on an arbitrary candidate family for level `k + 1`
/// (used to check perturbed families).
pub fn verify_structure_of(
    construction: &Construction,
    k: usize,
    family: &AkWordFamily,
) -> Result<StructureReport> {
    let spec = construction.spec();
    spec.check_level(k + 1)?;
    let d = spec.cosets(k + 1).d;
    let lower_order = spec.level(k).order;
    let mut witnesses = Vec::new();

    let mut min = true;
    for (g, w) in family.words.iter().enumerate() {
        let mut seen = vec![false; lower_order];
        for r in &w.runs {
            if r.block < lower_order {
                seen[r.block] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            min = false;
            witnesses.push(format!("min: w_{g}^({}) lacks block w_{missing}^({k})", k + 1));
        }
    }

    let mut decomp = true;
    let mut leading_runs = Vec::new();
    let mut trailing_runs = Vec::new();
    let mut max_interior_run = 0;
    for (g, w) in family.words.iter().enumerate() {
        let w = BlockWord::from_runs(w.runs.iter().copied());
        let runs = &w.runs;
        let lead = runs.first().map_or(0, |r| r.count);
        let trail = runs.last().map_or(0, |r| r.count);
        leading_runs.push(lead);
        trailing_runs.push(trail);
        if lead < d {
            decomp = false;
            witnesses.push(format!("decomp: w_{g}^({}) leading run {lead} < d = {d}", k + 1));
        }
        if trail < d || runs.len() < 2 {
            decomp = false;
            witnesses.push(format!("decomp: w_{g}^({}) trailing run {trail} < d = {d}", k + 1));
        }
        let mut offset = lead;
        for r in runs.iter().skip(1).take(runs.len().saturating_sub(2)) {
            max_interior_run = max_interior_run.max(r.count);
            if r.count >= d {
                decomp = false;
                witnesses.push(format!(
                    "decomp: w_{g}^({}) interior run of {} at block {offset}",
                    k + 1,
                    r.count
                ));
            }
            offset += r.count;
        }
    }

    let chain = spec.chain();
    let expanded: Vec<Vec<u8>> = family
        .words
        .iter()
        .map(|w| construction.expand(k + 1, w))
        .collect::<Result<_>>()?;
    let consist_failures: Vec<String> = (0..lower_order)
        .into_par_iter()
        .flat_map_iter(|h| {
            let lifted = chain.embed(k, h);
            expanded
                .iter()
                .enumerate()
                .filter_map(|(g, w)| {
                    let low = pi_apply(construction, k, h, w);
                    let high = pi_apply(construction, k + 1, lifted, w);
                    match (low, high) {
                        (Ok(a), Ok(b)) if a == b => None,
                        (Ok(a), Ok(b)) => {
                            let pos = a.iter().zip(b.iter()).position(|(x, y)| x != y).unwrap_or(0);
                            Some(format!("consist: h={h}, w_{g}^({}) differs at position {pos}", k + 1))
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            Some(format!("consist: h={h}, w_{g}^({}): {e}", k + 1))
                        }
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let consist = consist_failures.is_empty();
    witnesses.extend(consist_failures);

    let shift_failures = not_a_shift_failures(construction, k, family)?;
    let not_shift = shift_failures.is_empty();
    witnesses.extend(shift_failures);

    let checks = StructureChecks { min, decomp, consist, not_shift };
    Ok(StructureReport {
        level: k,
        d,
        leading_runs,
        trailing_runs,
        max_interior_run,
        pass: checks.all(),
        checks,
        witnesses,
    })
}

// For h != id and |m| < n_{k+1}, pi_{k,h}(ww) must differ from the m-shift of ww
// somewhere on their overlap, where w is the identity word of the family.
fn not_a_shift_failures(
    construction: &Construction,
    k: usize,
    family: &AkWordFamily,
) -> Result<Vec<String>> {
    let spec = construction.spec();
    let id_word = construction.expand(k + 1, &family.words[0])?;
    let n = id_word.len();
    let mut doubled = id_word.clone();
    doubled.extend_from_slice(&id_word);
    let order = spec.level(k).order;
    let failures = (1..order)
        .into_par_iter()
        .map(|h| -> Result<Vec<String>> {
            let image = pi_apply(construction, k, h, &doubled)?;
            let len = doubled.len() as isize;
            let mut out = Vec::new();
            for m in -(n as isize - 1)..(n as isize) {
                let lo = 0.max(-m);
                let hi = len.min(len - m);
                let agrees = (lo..hi).all(|i| image[i as usize] == doubled[(i + m) as usize]);
                if agrees {
                    out.push(format!("not_shift: pi_{{{k},{h}}} equals shift by {m}"));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(failures.into_iter().flatten().collect())
}

/// Checks that `h -> pi_{k,h}` is an injective homomorphism into permutations of `A_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub level: usize,
    pub order: usize,
    pub identities_checked: usize,
    pub injective: bool,
    pub witnesses: Vec<String>,
    pub pass: bool,
}

pub fn group_isomorphism_check(construction: &Construction, k: usize) -> Result<IsomorphismReport> {
    let spec = construction.spec();
    spec.check_level(k)?;
    let group = spec.chain().group(k);
    let order = group.order();
    let words = construction.try_symbols(k)?;

    // perms[h][g] = index of pi_{k,h}(w_g).
    let mut perms = Vec::with_capacity(order);
    let mut witnesses = Vec::new();
    for h in 0..order {
        let mut perm = Vec::with_capacity(order);
        for w in words {
            let image = pi_apply(construction, k, h, w)?;
            match construction.index_of(k, &image)? {
                Some(x) => perm.push(x),
                None => {
                    witnesses.push(format!("pi_{{{k},{h}}} leaves A_{k}"));
                    perm.push(usize::MAX);
                }
            }
        }
        perms.push(perm);
    }

    let mut identities_checked = 0;
    for h in 0..order {
        for h2 in 0..order {
            identities_checked += 1;
            let composed: Vec<usize> = perms[h2]
                .iter()
                .map(|&x| perms[h].get(x).copied().unwrap_or(usize::MAX))
                .collect();
            if composed != perms[group.mul(h, h2)] {
                witnesses.push(format!("pi_{h} o pi_{h2} != pi_{}", group.mul(h, h2)));
            }
        }
    }
    let mut sorted = perms.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == order;
    if !injective {
        witnesses.push("distinct elements induce the same permutation".to_string());
    }
    Ok(IsomorphismReport {
        level: k,
        order,
        identities_checked,
        injective,
        pass: witnesses.is_empty(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{derive_spec, GroupChain, Run};

    fn tower() -> Construction {
        Construction::new(derive_spec(&GroupChain::cyclic_tower(&[2, 4, 8]), &[2, 2]).unwrap()).unwrap()
    }

    #[test]
    fn level_one_to_two_passes() {
        let c = tower();
        let r = verify_structure(&c, 1).unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
        assert_eq!(r.d, 8);
        assert!(r.leading_runs.iter().all(|&x| x == 8));
        assert_eq!(r.max_interior_run, 6);
    }

    #[test]
    fn level_two_to_three_passes() {
        let c = tower();
        let r = verify_structure(&c, 2).unwrap();
        assert!(r.pass, "{:?}", r.witnesses);
        assert_eq!(r.leading_runs.len(), 8);
    }

    #[test]
    fn corrupted_leading_block_detected() {
        let c = tower();
        let mut family = c.family(2).clone();
        // Replace the first block of w_0 with the other symbol.
        let mut blocks = family.words[0].blocks();
        blocks[0] ^= 1;
        family.words[0] = BlockWord::from_blocks(&blocks);
        let r = verify_structure_of(&c, 1, &family).unwrap();
        assert!(!r.checks.decomp);
        assert!(!r.checks.consist);
        assert!(r.witnesses.iter().any(|w| w.starts_with("decomp: w_0")));
    }

    #[test]
    fn missing_block_breaks_minimality() {
        let c = tower();
        let mut family = c.family(2).clone();
        family.words[1].runs = vec![Run { block: 1, count: 36 }];
        let r = verify_structure_of(&c, 1, &family).unwrap();
        assert!(!r.checks.min);
    }

    #[test]
    fn isomorphism_z4_and_z8() {
        let c = tower();
        let r = group_isomorphism_check(&c, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.identities_checked, 16);
        let r = group_isomorphism_check(&c, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.identities_checked, 64);
    }
}
