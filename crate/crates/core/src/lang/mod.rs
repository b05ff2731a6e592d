//! Finite truncations of subshift languages.
//!
//! A [`LanguageTable`] stores, for every length `n` up to its depth, the sorted
//! set of admitted words of that length. Tables are built from a
//! [`SubshiftSource`] and are immutable afterwards.

mod source;
mod special;
mod table;

use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use source::SubshiftSource;
pub use special::{
    complexity_profile, special_words, verify_special_bound, ComplexityProfile, Side,
    SpecialBoundReport, SpecialBoundRow,
};
pub use table::{build_language, LanguageTable, Level, DEFAULT_SUBSTITUTION_ITERATIONS};

/// Index of a symbol in its alphabet.
pub type Symbol = u8;

/// An ordered set of symbol names. Symbol `i` is displayed as `names[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidSource("alphabet is empty".into()));
        }
        if names.len() > Symbol::MAX as usize + 1 {
            return Err(Error::InvalidSource(format!(
                "alphabet has {} symbols, at most {} supported",
                names.len(),
                Symbol::MAX as usize + 1
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidSource("empty symbol name".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidSource(format!("duplicate symbol {a:?}")));
            }
        }
        Ok(Self { names })
    }

    /// The alphabet `{0, 1, ..., size - 1}` with decimal names.
    pub fn numeric(size: usize) -> Result<Self> {
        Self::new((0..size).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.names.len()).map(|i| i as Symbol)
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(|i| i as Symbol)
    }

    /// Parses a word written as a concatenation of single-character names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let mut buf = [0u8; 4];
            let name: &str = ch.encode_utf8(&mut buf);
            let sym = self
                .index_of(name)
                .ok_or_else(|| Error::InvalidSource(format!("unknown symbol {name:?} in {text:?}")))?;
            out.push(sym);
        }
        Ok(Word(out))
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.names[s as usize].as_str()).collect()
    }
}

/// A finite sequence of symbol indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    /// Parses a word of decimal digits, e.g. `"0110"`.
    pub fn from_digits(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| Error::InvalidSource(format!("not a digit word: {text:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<&[Symbol]> for Word {
    fn from(s: &[Symbol]) -> Self {
        Word(s.to_vec())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(s: Vec<Symbol>) -> Self {
        Word(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// True when `needle` occurs as a contiguous factor of `hay`.
pub fn is_factor(needle: &[Symbol], hay: &[Symbol]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}
