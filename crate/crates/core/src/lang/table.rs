use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::{Alphabet, SubshiftSource, Symbol, Word};

pub const DEFAULT_SUBSTITUTION_ITERATIONS: usize = 64;

// Iterates beyond this many symbols are treated as non-stabilizing.
const MAX_SUBSTITUTION_LEN: usize = 1 << 26;

/// All admitted words of one length, stored contiguously in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    len: usize,
    data: Vec<Symbol>,
}

impl Level {
    /// Builds a level from arbitrary words of length `len`; sorts and deduplicates.
    pub fn from_words<'a>(len: usize, words: impl IntoIterator<Item = &'a [Symbol]>) -> Self {
        let mut v: Vec<&[Symbol]> = words.into_iter().collect();
        debug_assert!(v.iter().all(|w| w.len() == len));
        v.sort_unstable();
        v.dedup();
        Self::from_sorted(len, v)
    }

    fn from_sorted(len: usize, words: Vec<&[Symbol]>) -> Self {
        let mut data = Vec::with_capacity(words.len() * len);
        for w in words {
            data.extend_from_slice(w);
        }
        Self { len, data }
    }

    /// Word length of this level.
    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn count(&self) -> usize {
        self.data.len().checked_div(self.len).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn get(&self, i: usize) -> &[Symbol] {
        &self.data[i * self.len..(i + 1) * self.len]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[Symbol]> + '_ {
        (0..self.count()).map(move |i| self.get(i))
    }

    pub fn position(&self, w: &[Symbol]) -> Option<usize> {
        if w.len() != self.len {
            return None;
        }
        let (mut lo, mut hi) = (0, self.count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(w) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.position(w).is_some()
    }

    pub fn words(&self) -> Vec<Word> {
        self.iter().map(Word::from).collect()
    }

    fn reversed(&self) -> Level {
        let rev: Vec<Vec<Symbol>> = self.iter().map(|w| w.iter().rev().copied().collect()).collect();
        Level::from_words(self.len, rev.iter().map(|w| w.as_slice()))
    }
}

/// The words of lengths `1..=depth` of a subshift language.
#[derive(Debug)]
pub struct LanguageTable {
    alphabet: Alphabet,
    levels: Vec<Level>,
    reversed: OnceLock<Box<LanguageTable>>,
}

impl Clone for LanguageTable {
    fn clone(&self) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            levels: self.levels.clone(),
            reversed: OnceLock::new(),
        }
    }
}

impl LanguageTable {
    /// Wraps precomputed levels; `levels[i]` must hold the words of length `i + 1`.
    pub fn from_levels(alphabet: Alphabet, levels: Vec<Level>) -> Result<Self> {
        for (i, level) in levels.iter().enumerate() {
            if level.word_len() != i + 1 {
                return Err(Error::Invariant(format!(
                    "level {i} holds words of length {}",
                    level.word_len()
                )));
            }
            if level.is_empty() {
                return Err(Error::EmptyLanguage(i + 1));
            }
        }
        if levels.is_empty() {
            return Err(Error::InvalidParameter("depth must be at least 1".into()));
        }
        Ok(Self { alphabet, levels, reversed: OnceLock::new() })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Words of length `n`, for `1 <= n <= depth`.
    pub fn level(&self, n: usize) -> &Level {
        assert!(n >= 1 && n <= self.depth(), "level {n} outside 1..={}", self.depth());
        &self.levels[n - 1]
    }

    pub fn try_level(&self, n: usize) -> Result<&Level> {
        if n == 0 || n > self.depth() {
            return Err(Error::DepthExceeded { needed: n, depth: self.depth() });
        }
        Ok(&self.levels[n - 1])
    }

    /// `c_n`, the number of words of length `n`.
    pub fn count(&self, n: usize) -> usize {
        self.level(n).count()
    }

    /// Membership for any word up to the table depth. Longer words are not decided.
    pub fn contains(&self, w: &[Symbol]) -> bool {
        !w.is_empty() && w.len() <= self.depth() && self.level(w.len()).contains(w)
    }

    pub fn require_depth(&self, needed: usize) -> Result<()> {
        if needed > self.depth() {
            Err(Error::DepthExceeded { needed, depth: self.depth() })
        } else {
            Ok(())
        }
    }

    /// The language of the mirror-image subshift. Cached after the first call.
    pub fn reversed(&self) -> &LanguageTable {
        self.reversed.get_or_init(|| {
            Box::new(LanguageTable {
                alphabet: self.alphabet.clone(),
                levels: self.levels.iter().map(Level::reversed).collect(),
                reversed: OnceLock::new(),
            })
        })
    }

    /// Checks factor-closedness and that every word occurs inside a longer one.
    /// Returns a description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for n in 2..=self.depth() {
            let lower = self.level(n - 1);
            let mut seen = vec![false; lower.count()];
            for w in self.level(n).iter() {
                for part in [&w[..n - 1], &w[1..]] {
                    match lower.position(part) {
                        Some(i) => seen[i] = true,
                        None => {
                            return Err(format!(
                                "factor {} of {} missing at length {}",
                                Word::from(part),
                                Word::from(w),
                                n - 1
                            ))
                        }
                    }
                }
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(format!(
                    "{} at length {} does not occur in any word of length {n}",
                    Word::from(lower.get(i)),
                    n - 1
                ));
            }
        }
        Ok(())
    }
}

/// Builds the truncated language of `source` up to words of length `depth`.
pub fn build_language(source: &SubshiftSource, depth: usize) -> Result<LanguageTable> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    match source {
        SubshiftSource::Sft { alphabet, forbidden } => {
            LanguageTable::from_levels(alphabet.clone(), sft_levels(alphabet, forbidden, depth))
        }
        SubshiftSource::Substitution { alphabet, rules, seed, max_iterations } => {
            let levels = substitution_levels(rules, *seed, depth, *max_iterations)?;
            LanguageTable::from_levels(alphabet.clone(), levels)
        }
        SubshiftSource::Seeds { alphabet, seeds } => {
            let shortest = seeds.iter().map(|s| s.len()).min().unwrap_or(0);
            if shortest < depth {
                return Err(Error::InsufficientGeneratorDepth { requested: depth, available: shortest });
            }
            let slices: Vec<&[Symbol]> = seeds.iter().map(|s| s.as_ref()).collect();
            LanguageTable::from_levels(alphabet.clone(), factor_levels(&slices, depth))
        }
        SubshiftSource::Construction { construction, level } => {
            let block_len = construction.spec().block_len(*level);
            if block_len < depth {
                return Err(Error::InsufficientGeneratorDepth { requested: depth, available: block_len });
            }
            let words = construction.try_symbols(*level)?;
            let mut pairs = Vec::with_capacity(words.len() * words.len());
            for u in words {
                for v in words {
                    let mut uv = Vec::with_capacity(2 * block_len);
                    uv.extend_from_slice(u);
                    uv.extend_from_slice(v);
                    pairs.push(uv);
                }
            }
            let slices: Vec<&[Symbol]> = pairs.iter().map(|s| s.as_slice()).collect();
            LanguageTable::from_levels(construction.alphabet(), factor_levels(&slices, depth))
        }
    }
}

fn sft_levels(alphabet: &Alphabet, forbidden: &[Word], depth: usize) -> Vec<Level> {
    let mut levels: Vec<Level> = Vec::with_capacity(depth);
    let mut current: Vec<Symbol> = Vec::new();
    let mut cur_len = 0;
    // Extending sorted words by symbols in increasing order keeps the level sorted.
    let mut next = Vec::new();
    for n in 1..=depth {
        next.clear();
        let prev_count = if n == 1 { 1 } else { current.len() / cur_len };
        for i in 0..prev_count {
            let prefix = if n == 1 { &[][..] } else { &current[i * cur_len..(i + 1) * cur_len] };
            for a in alphabet.symbols() {
                let start = next.len();
                next.extend_from_slice(prefix);
                next.push(a);
                let w = &next[start..];
                if forbidden.iter().any(|f| w.ends_with(f)) {
                    next.truncate(start);
                }
            }
        }
        std::mem::swap(&mut current, &mut next);
        cur_len = n;
        levels.push(Level { len: n, data: current.clone() });
    }
    levels
}

fn factor_levels(sources: &[&[Symbol]], depth: usize) -> Vec<Level> {
    (1..=depth)
        .map(|n| Level::from_words(n, sources.iter().flat_map(|s| s.windows(n))))
        .collect()
}

fn substitute(rules: &[Word], w: &[Symbol]) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &a in w {
        out.extend_from_slice(&rules[a as usize]);
    }
    out
}

fn substitution_levels(
    rules: &[Word],
    seed: Symbol,
    depth: usize,
    max_iterations: usize,
) -> Result<Vec<Level>> {
    let mut word = vec![seed];
    let mut previous: Option<Vec<Level>> = None;
    for _ in 0..max_iterations {
        if word.len() >= depth {
            let levels = factor_levels(&[&word], depth);
            if previous.as_ref() == Some(&levels) {
                return Ok(levels);
            }
            previous = Some(levels);
        }
        word = substitute(rules, &word);
        if word.len() > MAX_SUBSTITUTION_LEN {
            break;
        }
    }
    Err(Error::NoStabilization(max_iterations))
}
