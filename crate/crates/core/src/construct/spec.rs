use serde::Serialize;

use crate::error::{Error, Result};

use super::group::{validate_chain, GroupChain};

/// Coset data for `H_{k-1} < H_k`, `k >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetData {
    /// Repetition parameter `b_k >= 2`.
    pub b: usize,
    /// Index `q_k = |H_k| / |H_{k-1}|`.
    pub q: usize,
    /// Run threshold `d_k = 2 b_k q_k`.
    pub d: usize,
    /// Right coset representatives in `H_k`; `reps[0]` is the identity.
    pub reps: Vec<usize>,
    /// For each `g in H_k`, the 0-based coset index `i` with `g in H_{k-1} reps[i]`.
    pub coset_of: Vec<usize>,
    /// For each `g in H_k`, the element `g' in H_{k-1}` with `g = g' reps[coset_of[g]]`.
    pub lower: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelParams {
    pub level: usize,
    pub order: usize,
    /// Length `n_k` of every `A_k` word.
    pub block_len: usize,
    /// Absent at level 1.
    pub cosets: Option<CosetData>,
}

/// A validated group chain with the derived lengths, indices and coset representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    chain: GroupChain,
    levels: Vec<LevelParams>,
}

impl ConstructionSpec {
    pub fn chain(&self) -> &GroupChain {
        &self.chain
    }

    /// Number of levels `K`.
    pub fn levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &LevelParams {
        &self.levels[k - 1]
    }

    pub fn block_len(&self, k: usize) -> usize {
        self.level(k).block_len
    }

    /// Coset data for `k >= 2`.
    pub fn cosets(&self, k: usize) -> &CosetData {
        self.level(k).cosets.as_ref().expect("no coset data at level 1")
    }

    pub(crate) fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.levels() {
            Err(Error::InvalidParameter(format!("level {k} outside 1..={}", self.levels())))
        } else {
            Ok(())
        }
    }
}

/// Derives `q_k`, `n_k`, `d_k` and coset representatives. `b[i]` is `b_{i+2}`.
pub fn derive_spec(chain: &GroupChain, b: &[usize]) -> Result<ConstructionSpec> {
    let report = validate_chain(chain);
    if !report.pass {
        return Err(Error::InvalidChain(report.violations.join("; ")));
    }
    if b.len() + 1 != chain.len() {
        return Err(Error::InvalidParameter(format!(
            "{} groups need {} repetition parameters, got {}",
            chain.len(),
            chain.len() - 1,
            b.len()
        )));
    }
    if let Some(pos) = b.iter().position(|&x| x < 2) {
        return Err(Error::InvalidParameter(format!("b_{} = {} must be at least 2", pos + 2, b[pos])));
    }

    let mut levels = vec![LevelParams {
        level: 1,
        order: chain.group(1).order(),
        block_len: 1,
        cosets: None,
    }];
    for k in 2..=chain.len() {
        let (lower, upper) = (chain.group(k - 1), chain.group(k));
        let emb = &chain.embeddings[k - 2];
        let q = upper.order() / lower.order();
        let bk = b[k - 2];

        let mut reps = Vec::with_capacity(q);
        let mut coset_of = vec![usize::MAX; upper.order()];
        let mut lower_part = vec![usize::MAX; upper.order()];
        // Identity first, then the least uncovered element in index order.
        for r in 0..upper.order() {
            if coset_of[r] != usize::MAX {
                continue;
            }
            let i = reps.len();
            reps.push(r);
            for (h, &img) in emb.iter().enumerate() {
                let g = upper.mul(img, r);
                if coset_of[g] != usize::MAX {
                    return Err(Error::Invariant(format!("right cosets of H_{} overlap at {g}", k - 1)));
                }
                coset_of[g] = i;
                lower_part[g] = h;
            }
        }
        if reps.len() != q || reps[0] != 0 {
            return Err(Error::Invariant(format!("found {} cosets, expected {q}", reps.len())));
        }

        let prev_len = levels[k - 2].block_len;
        let templ = 2usize
            .checked_mul(lower.order() * lower.order())
            .and_then(|x| x.checked_add(5 * q));
        let block_len = templ
            .and_then(|t| t.checked_mul(bk))
            .and_then(|t| t.checked_mul(prev_len))
            .ok_or_else(|| Error::InvalidParameter(format!("block length n_{k} overflows")))?;
        levels.push(LevelParams {
            level: k,
            order: upper.order(),
            block_len,
            cosets: Some(CosetData {
                b: bk,
                q,
                d: 2 * bk * q,
                reps,
                coset_of,
                lower: lower_part,
            }),
        });
    }
    Ok(ConstructionSpec { chain: chain.clone(), levels })
}
