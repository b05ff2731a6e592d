use std::sync::Arc;

use crate::construct::Construction;
use crate::error::{Error, Result};

use super::{Alphabet, Symbol, Word};

/// A generator for a subshift language.
#[derive(Debug, Clone)]
pub enum SubshiftSource {
    /// Shift of finite type given by forbidden words.
    Sft { alphabet: Alphabet, forbidden: Vec<Word> },
    /// Fixed points / orbit closure of a substitution iterated from `seed`.
    /// `rules[a]` is the image of symbol `a`.
    Substitution {
        alphabet: Alphabet,
        rules: Vec<Word>,
        seed: Symbol,
        max_iterations: usize,
    },
    /// Language of all factors of the given (long) words.
    Seeds { alphabet: Alphabet, seeds: Vec<Word> },
    /// Block concatenation subshift truncated at level `level`.
    Construction { construction: Arc<Construction>, level: usize },
}

impl SubshiftSource {
    pub fn sft(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self> {
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidSource("forbidden word of length 0".into()));
            }
            check_symbols(&alphabet, w)?;
        }
        Ok(Self::Sft { alphabet, forbidden })
    }

    pub fn substitution(alphabet: Alphabet, rules: Vec<Word>, seed: Symbol) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::InvalidSource(format!(
                "substitution has {} rules for {} symbols",
                rules.len(),
                alphabet.len()
            )));
        }
        for (a, img) in rules.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidSource(format!(
                    "rule for {} has an empty image",
                    alphabet.names()[a]
                )));
            }
            check_symbols(&alphabet, img)?;
        }
        if seed as usize >= alphabet.len() {
            return Err(Error::InvalidSource(format!("seed symbol {seed} not in alphabet")));
        }
        Ok(Self::Substitution {
            alphabet,
            rules,
            seed,
            max_iterations: super::DEFAULT_SUBSTITUTION_ITERATIONS,
        })
    }

    pub fn with_max_iterations(mut self, cap: usize) -> Self {
        if let Self::Substitution { max_iterations, .. } = &mut self {
            *max_iterations = cap;
        }
        self
    }

    pub fn seeds(alphabet: Alphabet, seeds: Vec<Word>) -> Result<Self> {
        if seeds.is_empty() {
            return Err(Error::InvalidSource("no seed words".into()));
        }
        for w in &seeds {
            check_symbols(&alphabet, w)?;
        }
        Ok(Self::Seeds { alphabet, seeds })
    }

    pub fn construction(construction: Arc<Construction>, level: usize) -> Result<Self> {
        if level == 0 || level > construction.spec().levels() {
            return Err(Error::InvalidSource(format!(
                "construction level {level} outside 1..={}",
                construction.spec().levels()
            )));
        }
        Ok(Self::Construction { construction, level })
    }

    // Convenience sources used throughout tests and docs.

    /// Full shift on `size` symbols.
    pub fn full_shift(size: usize) -> Result<Self> {
        Self::sft(Alphabet::numeric(size)?, Vec::new())
    }

    /// Binary golden mean shift (no two consecutive 1s).
    pub fn golden_mean() -> Self {
        Self::sft(Alphabet::numeric(2).unwrap(), vec![Word(vec![1, 1])]).unwrap()
    }

    /// Thue-Morse substitution 0 -> 01, 1 -> 10 seeded at 0.
    pub fn thue_morse() -> Self {
        Self::substitution(
            Alphabet::numeric(2).unwrap(),
            vec![Word(vec![0, 1]), Word(vec![1, 0])],
            0,
        )
        .unwrap()
    }

    /// Fibonacci substitution 0 -> 01, 1 -> 0 seeded at 0.
    pub fn fibonacci() -> Self {
        Self::substitution(Alphabet::numeric(2).unwrap(), vec![Word(vec![0, 1]), Word(vec![0])], 0)
            .unwrap()
    }

    /// Orbit of the period-2 point `...0101...`, represented by a seed of length `len`.
    pub fn period_two(len: usize) -> Self {
        let seed = (0..len).map(|i| (i % 2) as Symbol).collect();
        Self::seeds(Alphabet::numeric(2).unwrap(), vec![Word(seed)]).unwrap()
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Self::Sft { alphabet, .. }
            | Self::Substitution { alphabet, .. }
            | Self::Seeds { alphabet, .. } => alphabet.clone(),
            Self::Construction { construction, .. } => construction.alphabet(),
        }
    }
}

fn check_symbols(alphabet: &Alphabet, w: &[Symbol]) -> Result<()> {
    match w.iter().find(|&&s| s as usize >= alphabet.len()) {
        Some(s) => Err(Error::InvalidSource(format!(
            "symbol index {s} outside alphabet of size {}",
            alphabet.len()
        ))),
        None => Ok(()),
    }
}
