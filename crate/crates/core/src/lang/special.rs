use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::{LanguageTable, Word};

/// Word counts `c_1..c_L` and their first differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    /// `c[i]` is `c_{i+1}`.
    pub c: Vec<u64>,
    /// `diff[i]` is `c_{i+2} - c_{i+1}`; one entry shorter than `c`.
    pub diff: Vec<i64>,
    pub depth: usize,
}

impl ComplexityProfile {
    /// `c_n` for `1 <= n <= depth`.
    pub fn c(&self, n: usize) -> u64 {
        self.c[n - 1]
    }

    pub fn from_counts(c: Vec<u64>) -> Self {
        let diff = c.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
        let depth = c.len();
        Self { c, diff, depth }
    }
}

pub fn complexity_profile(table: &LanguageTable) -> ComplexityProfile {
    ComplexityProfile::from_counts((1..=table.depth()).map(|n| table.count(n) as u64).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Right-special (`RS_n`) or left-special (`LS_n`) words of length `n`, sorted.
pub fn special_words(table: &LanguageTable, n: usize, side: Side) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    table.require_depth(n + 1)?;
    let longer = table.level(n + 1);
    let mut out = Vec::new();
    match side {
        Side::Right => {
            // Extensions of one prefix are contiguous in sorted order.
            let mut i = 0;
            while i < longer.count() {
                let prefix = &longer.get(i)[..n];
                let mut j = i + 1;
                while j < longer.count() && &longer.get(j)[..n] == prefix {
                    j += 1;
                }
                if j - i >= 2 {
                    out.push(Word::from(prefix));
                }
                i = j;
            }
        }
        Side::Left => {
            let mut extensions: HashMap<&[u8], usize> = HashMap::new();
            for w in longer.iter() {
                *extensions.entry(&w[1..]).or_default() += 1;
            }
            out.extend(extensions.into_iter().filter(|&(_, k)| k >= 2).map(|(w, _)| Word::from(w)));
            out.sort();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialBoundRow {
    pub n: usize,
    pub right: usize,
    pub left: usize,
    /// `c_{n+1} - c_n`.
    pub diff: i64,
    pub pass: bool,
}

/// Per-level comparison of special-word counts against the complexity difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialBoundReport {
    pub rows: Vec<SpecialBoundRow>,
    pub pass: bool,
}

/// Checks `|RS_n| <= c_{n+1} - c_n` and `|LS_n| <= c_{n+1} - c_n` for `1 <= n <= n_max`.
pub fn verify_special_bound(table: &LanguageTable, n_max: usize) -> Result<SpecialBoundReport> {
    table.require_depth(n_max + 1)?;
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let right = special_words(table, n, Side::Right)?.len();
        let left = special_words(table, n, Side::Left)?.len();
        let diff = table.count(n + 1) as i64 - table.count(n) as i64;
        let pass = right as i64 <= diff && left as i64 <= diff;
        rows.push(SpecialBoundRow { n, right, left, diff, pass });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(SpecialBoundReport { rows, pass })
}
