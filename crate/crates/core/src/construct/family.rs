use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{Alphabet, Symbol, Word};

use super::spec::ConstructionSpec;

// Refuse to expand families whose flat form would exceed this many symbols.
const MAX_EXPANDED_SYMBOLS: usize = 1 << 28;

/// `count` consecutive copies of the lower-level block `block`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Run {
    pub block: usize,
    pub count: usize,
}

/// An `A_k` word as a run-length encoded sequence of `A_{k-1}` blocks.
/// At level 1 the single run names the symbol itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockWord {
    pub runs: Vec<Run>,
}

impl BlockWord {
    pub fn from_runs(runs: impl IntoIterator<Item = Run>) -> Self {
        let mut out: Vec<Run> = Vec::new();
        for r in runs {
            if r.count == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.block == r.block => last.count += r.count,
                _ => out.push(r),
            }
        }
        Self { runs: out }
    }

    pub fn from_blocks(blocks: &[usize]) -> Self {
        Self::from_runs(blocks.iter().map(|&b| Run { block: b, count: 1 }))
    }

    pub fn blocks(&self) -> Vec<usize> {
        self.runs.iter().flat_map(|r| std::iter::repeat_n(r.block, r.count)).collect()
    }

    pub fn block_count(&self) -> usize {
        self.runs.iter().map(|r| r.count).sum()
    }
}

/// The words `w_g^(k)`, indexed by the elements `g` of `H_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AkWordFamily {
    pub level: usize,
    pub block_len: usize,
    pub words: Vec<BlockWord>,
}

/// Builds the level-`k` family in block form.
pub fn build_ak(spec: &ConstructionSpec, k: usize) -> Result<AkWordFamily> {
    spec.check_level(k)?;
    if k == 1 {
        let words = (0..spec.level(1).order)
            .map(|g| BlockWord { runs: vec![Run { block: g, count: 1 }] })
            .collect();
        return Ok(AkWordFamily { level: 1, block_len: 1, words });
    }
    let lower = spec.chain().group(k - 1);
    let c = spec.cosets(k);
    let (b, q) = (c.b, c.q);
    let order = spec.level(k).order;
    let mut words = Vec::with_capacity(order);
    for g in 0..order {
        let (gp, i) = (c.lower[g], c.coset_of[g] + 1);
        // h_1 is the identity (index 0), h_2 is index 1.
        let left = |h: usize| lower.mul(gp, h);
        let mut runs = vec![Run { block: left(1), count: 2 * b * q }];
        for a in 0..lower.order() {
            for bb in 0..lower.order() {
                runs.push(Run { block: left(a), count: b });
                runs.push(Run { block: left(bb), count: b });
            }
        }
        runs.push(Run { block: left(0), count: i * b });
        runs.push(Run { block: left(1), count: b * (3 * q - i) });
        let word = BlockWord::from_runs(runs);
        let expected = b * (2 * lower.order() * lower.order() + 5 * q);
        if word.block_count() != expected {
            return Err(Error::Invariant(format!(
                "w_{g}^({k}) has {} blocks, expected {expected}",
                word.block_count()
            )));
        }
        words.push(word);
    }
    Ok(AkWordFamily { level: k, block_len: spec.block_len(k), words })
}

/// A construction spec together with its word families and cached symbol expansions.
#[derive(Debug)]
pub struct Construction {
    spec: ConstructionSpec,
    families: Vec<AkWordFamily>,
    expanded: Vec<OnceLock<std::result::Result<Vec<Vec<Symbol>>, String>>>,
    lookup: Vec<OnceLock<HashMap<Vec<Symbol>, usize>>>,
}

impl Construction {
    pub fn new(spec: ConstructionSpec) -> Result<Self> {
        let families = (1..=spec.levels()).map(|k| build_ak(&spec, k)).collect::<Result<Vec<_>>>()?;
        let levels = spec.levels();
        Ok(Self {
            spec,
            families,
            expanded: (0..levels).map(|_| OnceLock::new()).collect(),
            lookup: (0..levels).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn spec(&self) -> &ConstructionSpec {
        &self.spec
    }

    pub fn family(&self, k: usize) -> &AkWordFamily {
        &self.families[k - 1]
    }

    /// Base alphabet `A_1`, one symbol per element of `H_1`.
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::numeric(self.spec.level(1).order).expect("H_1 fits the symbol type")
    }

    /// Expands one block word of level `k` into base symbols.
    pub fn expand(&self, k: usize, word: &BlockWord) -> Result<Vec<Symbol>> {
        if k == 1 {
            return Ok(word.blocks().into_iter().map(|g| g as Symbol).collect());
        }
        let lower = self.try_symbols(k - 1)?;
        let mut out = Vec::with_capacity(word.block_count() * self.spec.block_len(k - 1));
        for r in &word.runs {
            let block = lower.get(r.block).ok_or_else(|| {
                Error::Invariant(format!("block index {} outside A_{}", r.block, k - 1))
            })?;
            for _ in 0..r.count {
                out.extend_from_slice(block);
            }
        }
        Ok(out)
    }

    /// All level-`k` words over the base alphabet, indexed by `H_k` element.
    pub fn try_symbols(&self, k: usize) -> Result<&[Vec<Symbol>]> {
        self.spec.check_level(k)?;
        let cell = self.expanded[k - 1].get_or_init(|| {
            let total = self.spec.block_len(k).saturating_mul(self.spec.level(k).order);
            if total > MAX_EXPANDED_SYMBOLS {
                return Err(format!("level {k} expands to {total} symbols"));
            }
            self.family(k)
                .words
                .iter()
                .map(|w| self.expand(k, w).map_err(|e| e.to_string()))
                .collect()
        });
        match cell {
            Ok(v) => Ok(v),
            Err(msg) => Err(Error::InvalidParameter(msg.clone())),
        }
    }

    pub fn symbols(&self, k: usize) -> &[Vec<Symbol>] {
        self.try_symbols(k).expect("level expands within memory limits")
    }

    /// The element `g` with `w_g^(k) == word`, if any.
    pub fn index_of(&self, k: usize, word: &[Symbol]) -> Result<Option<usize>> {
        let words = self.try_symbols(k)?;
        let map = self.lookup[k - 1]
            .get_or_init(|| words.iter().enumerate().map(|(g, w)| (w.clone(), g)).collect());
        Ok(map.get(word).copied())
    }
}

/// Applies `pi_{k,h}`: replaces every `A_k` block `w_g` of `w` by `w_{hg}`.
pub fn pi_apply(construction: &Construction, k: usize, h: usize, w: &[Symbol]) -> Result<Word> {
    let spec = construction.spec();
    spec.check_level(k)?;
    let group = spec.chain().group(k);
    if h >= group.order() {
        return Err(Error::InvalidParameter(format!("element {h} outside H_{k}")));
    }
    let n = spec.block_len(k);
    if !w.len().is_multiple_of(n) {
        return Err(Error::Alignment { len: w.len(), block_len: n });
    }
    let words = construction.try_symbols(k)?;
    let mut out = Vec::with_capacity(w.len());
    for (j, block) in w.chunks(n).enumerate() {
        let g = construction
            .index_of(k, block)?
            .ok_or(Error::UnknownBlock { level: k, offset: j * n })?;
        out.extend_from_slice(&words[group.mul(h, g)]);
    }
    Ok(Word(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{derive_spec, GroupChain};

    fn z2_z4() -> Construction {
        Construction::new(derive_spec(&GroupChain::cyclic_tower(&[2, 4]), &[2]).unwrap()).unwrap()
    }

    // Writes a word given as (symbol, repeat) pairs.
    fn rle(parts: &[(u8, usize)]) -> Vec<Symbol> {
        parts.iter().flat_map(|&(s, n)| std::iter::repeat_n(s, n)).collect()
    }

    #[test]
    fn identity_word_level_two() {
        let c = z2_z4();
        let (a, b) = (0, 1);
        let expected = rle(&[(b, 8), (a, 6), (b, 4), (a, 2), (b, 4), (a, 2), (b, 10)]);
        assert_eq!(c.symbols(2)[0], expected);
        assert_eq!(expected.len(), 36);
    }

    #[test]
    fn second_coset_representative_word() {
        let c = z2_z4();
        let r2 = c.spec().cosets(2).reps[1];
        assert_eq!(r2, 1);
        let expected = rle(&[(1, 8), (0, 6), (1, 4), (0, 2), (1, 4), (0, 4), (1, 8)]);
        assert_eq!(c.symbols(2)[r2], expected);
    }

    #[test]
    fn embedded_generator_swaps_symbols() {
        let c = z2_z4();
        // h_2 of H_1 sits at index 2 of Z/4.
        let expected = rle(&[(0, 8), (1, 6), (0, 4), (1, 2), (0, 4), (1, 2), (0, 10)]);
        assert_eq!(c.symbols(2)[2], expected);
    }

    #[test]
    fn pi_apply_matches_family() {
        let c = z2_z4();
        let w = &c.symbols(2)[0];
        assert_eq!(pi_apply(&c, 1, 1, w).unwrap().0, c.symbols(2)[2]);
        for g in 0..4 {
            let w = &c.symbols(2)[g];
            assert_eq!(&pi_apply(&c, 2, 0, w).unwrap().0, w);
        }
    }

    #[test]
    fn pi_apply_rejects_misaligned_input() {
        let c = z2_z4();
        let w = &c.symbols(2)[0][..35];
        assert!(matches!(pi_apply(&c, 2, 1, w), Err(Error::Alignment { len: 35, block_len: 36 })));
        let mut bad = c.symbols(2)[0].clone();
        bad[0] = 0;
        assert!(matches!(pi_apply(&c, 2, 1, &bad), Err(Error::UnknownBlock { level: 2, offset: 0 })));
    }

    #[test]
    fn level_three_pi_matches_regeneration() {
        let spec = derive_spec(&GroupChain::cyclic_tower(&[2, 4, 8]), &[2, 2]).unwrap();
        let c = Construction::new(spec).unwrap();
        let group = c.spec().chain().group(2);
        for g in 0..4 {
            for x in 0..8 {
                let image = pi_apply(&c, 2, g, &c.symbols(3)[x]).unwrap();
                let gx = c.spec().chain().group(3).mul(c.spec().chain().embed(2, g), x);
                assert_eq!(image.0, c.symbols(3)[gx], "g={g} x={x}");
            }
        }
        assert_eq!(group.order(), 4);
    }
}
