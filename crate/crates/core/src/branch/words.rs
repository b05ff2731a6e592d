use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{is_factor, special_words, LanguageTable, Side, Symbol, Word};

/// The `n`-right and `n`-left branch words of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchWordSet {
    pub level: usize,
    pub right: Vec<Word>,
    pub left: Vec<Word>,
    /// Set when `depth < n + c_n`: maximality is only certified relative to the depth.
    pub depth_limited: bool,
}

impl BranchWordSet {
    pub fn len(&self) -> usize {
        self.right.len() + self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.right.iter().chain(self.left.iter())
    }

    pub fn max_len(&self) -> usize {
        self.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// All length-`n` factors of all branch words.
    pub fn covered(&self) -> HashSet<Vec<Symbol>> {
        let n = self.level;
        self.iter().flat_map(|w| w.windows(n).map(<[Symbol]>::to_vec)).collect()
    }
}

fn check_level(table: &LanguageTable, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    table.require_depth(n + 1)
}

/// Computes branch words by extending each right-special seed and its next
/// symbol one step at a time (leftward for left branch words).
pub fn branch_words(table: &LanguageTable, n: usize) -> Result<BranchWordSet> {
    check_level(table, n)?;
    let (right, right_limited) = right_branch_words(table, n)?;
    let (left_rev, left_limited) = right_branch_words(table.reversed(), n)?;
    let mut left: Vec<Word> = left_rev.iter().map(Word::reversed).collect();
    left.sort();
    let depth_limited = table.depth() < n + table.count(n) || right_limited || left_limited;
    Ok(BranchWordSet { level: n, right, left, depth_limited })
}

fn right_branch_words(table: &LanguageTable, n: usize) -> Result<(Vec<Word>, bool)> {
    let rs = special_words(table, n, Side::Right)?;
    let is_rs = |s: &[Symbol]| rs.binary_search_by(|w| w.as_ref().cmp(s)).is_ok();
    let depth = table.depth();
    let mut limited = false;
    let mut candidates: Vec<Word> = Vec::new();

    for seed in &rs {
        for a in table.alphabet().symbols() {
            let mut x = seed.to_vec();
            x.push(a);
            if !table.level(n + 1).contains(&x) {
                continue;
            }
            let mut seen: HashSet<Vec<Symbol>> = HashSet::from([seed.to_vec()]);
            // A new trailing factor must be fresh and not right-special.
            let admissible = |x: &[Symbol], seen: &HashSet<Vec<Symbol>>| {
                let tail = &x[x.len() - n..];
                !seen.contains(tail) && !is_rs(tail)
            };
            if !admissible(&x, &seen) {
                candidates.push(seed.clone());
                continue;
            }
            seen.insert(x[x.len() - n..].to_vec());
            loop {
                if x.len() >= depth {
                    limited = true;
                    break;
                }
                let next = table.alphabet().symbols().find_map(|b| {
                    let mut y = x.clone();
                    y.push(b);
                    (table.contains(&y) && admissible(&y, &seen)).then_some(y)
                });
                match next {
                    Some(y) => {
                        seen.insert(y[y.len() - n..].to_vec());
                        x = y;
                    }
                    None => break,
                }
            }
            candidates.push(Word(x));
        }
    }

    candidates.sort();
    candidates.dedup();
    let maximal = candidates
        .iter()
        .filter(|w| !candidates.iter().any(|v| v.len() > w.len() && is_factor(w, v)))
        .cloned()
        .collect();
    Ok((maximal, limited))
}

/// Both sides of the count and length inequalities for branch words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchFactsReport {
    pub level: usize,
    pub count: usize,
    /// `2 |A| (c_{n+1} - c_n)`.
    pub count_bound: i64,
    pub max_len: usize,
    /// `n + c_n`; every branch word must be strictly shorter.
    pub len_bound: usize,
    pub depth_limited: bool,
    pub pass: bool,
}

pub fn verify_branch_facts(table: &LanguageTable, n: usize) -> Result<BranchFactsReport> {
    let words = branch_words(table, n)?;
    Ok(facts_for(table, &words))
}

pub(crate) fn facts_for(table: &LanguageTable, words: &BranchWordSet) -> BranchFactsReport {
    let n = words.level;
    let diff = table.count(n + 1) as i64 - table.count(n) as i64;
    let count_bound = 2 * table.alphabet().len() as i64 * diff;
    let len_bound = n + table.count(n);
    let count = words.len();
    let max_len = words.max_len();
    BranchFactsReport {
        level: n,
        count,
        count_bound,
        max_len,
        len_bound,
        depth_limited: words.depth_limited,
        pass: count as i64 <= count_bound && max_len < len_bound,
    }
}

/// A word not covered by branch words, with the period it forces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicWitness {
    pub word: Word,
    pub period: usize,
    /// The forced extension `x[0, m)`, which begins and ends with `word`.
    pub pattern: Word,
}

impl PeriodicWitness {
    /// `len` symbols of the periodic point, starting at the witness.
    pub fn periodic_word(&self, len: usize) -> Word {
        Word((0..len).map(|i| self.pattern[i % self.period]).collect())
    }
}

/// An uncovered word for which periodicity could not be certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicFinding {
    pub word: Word,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub level: usize,
    pub witnesses: Vec<PeriodicWitness>,
    pub findings: Vec<PeriodicFinding>,
    pub depth_limited: bool,
}

/// Words of length `n` that lie in no branch word, each paired with the
/// period of the isolated periodic point it forces.
pub fn periodic_witnesses(table: &LanguageTable, n: usize) -> Result<PeriodicReport> {
    let branches = branch_words(table, n)?;
    periodic_witnesses_with(table, &branches)
}

pub(crate) fn periodic_witnesses_with(
    table: &LanguageTable,
    branches: &BranchWordSet,
) -> Result<PeriodicReport> {
    let n = branches.level;
    let covered = branches.covered();
    let rs: HashSet<Word> = special_words(table, n, Side::Right)?.into_iter().collect();
    let ls: HashSet<Word> = special_words(table, n, Side::Left)?.into_iter().collect();
    let mut witnesses = Vec::new();
    let mut findings = Vec::new();
    for w in table.level(n).iter() {
        if covered.contains(w) {
            continue;
        }
        match certify_periodic(table, w, &rs, &ls) {
            Ok(witness) => witnesses.push(witness),
            Err(reason) => findings.push(PeriodicFinding { word: Word::from(w), reason }),
        }
    }
    Ok(PeriodicReport {
        level: n,
        witnesses,
        findings,
        depth_limited: branches.depth_limited,
    })
}

fn certify_periodic(
    table: &LanguageTable,
    w: &[Symbol],
    rs: &HashSet<Word>,
    ls: &HashSet<Word>,
) -> std::result::Result<PeriodicWitness, String> {
    let n = w.len();
    let next_level = table.level(n + 1);
    let mut x = w.to_vec();
    let mut first_seen: HashMap<Vec<Symbol>, usize> = HashMap::from([(w.to_vec(), 0)]);
    loop {
        let tail = x[x.len() - n..].to_vec();
        if rs.contains(&Word(tail.clone())) {
            return Err(format!("extension reaches right-special factor {}", Word(tail)));
        }
        let mut forced = table.alphabet().symbols().filter(|&b| {
            let mut t = tail.clone();
            t.push(b);
            next_level.contains(&t)
        });
        let b = forced.next().ok_or_else(|| format!("{} has no extension", Word(tail.clone())))?;
        x.push(b);
        if x.len() <= table.depth() && !table.contains(&x) {
            return Err(format!("forced extension {} leaves the table", Word(x)));
        }
        let new_tail = x[x.len() - n..].to_vec();
        if let Some(&i) = first_seen.get(&new_tail) {
            if i != 0 {
                return Err(format!("first repeated factor {} is not the witness", Word(new_tail)));
            }
            break;
        }
        first_seen.insert(new_tail, x.len() - n);
    }

    let m = x.len();
    let period = m - n;
    if let Some(f) = x.windows(n).find(|f| ls.contains(&Word::from(*f)) || rs.contains(&Word::from(*f))) {
        return Err(format!("pattern contains special factor {}", Word::from(f)));
    }
    for d in m..=table.depth() {
        for u in table.level(d).iter() {
            if is_factor(&x, u) && (0..d - period).any(|i| u[i] != u[i + period]) {
                return Err(format!("continuation {} is not {period}-periodic", Word::from(u)));
            }
        }
    }
    Ok(PeriodicWitness { word: Word::from(w), period, pattern: Word(x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{build_language, SubshiftSource};

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|w| Word::from_digits(w).unwrap()).collect()
    }

    #[test]
    fn golden_mean_level_two() {
        let t = build_language(&SubshiftSource::golden_mean(), 6).unwrap();
        let b = branch_words(&t, 2).unwrap();
        assert_eq!(b.right, words(&["001", "101"]));
        assert_eq!(b.left, words(&["100", "101"]));
        assert!(!b.depth_limited);
    }

    #[test]
    fn period_two_has_no_branch_words() {
        let t = build_language(&SubshiftSource::period_two(24), 12).unwrap();
        let b = branch_words(&t, 2).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn full_shift_level_one() {
        let t = build_language(&SubshiftSource::full_shift(2).unwrap(), 4).unwrap();
        let b = branch_words(&t, 1).unwrap();
        assert_eq!(b.right, words(&["0", "1"]));
        assert_eq!(b.left, words(&["0", "1"]));
    }

    #[test]
    fn facts_examples() {
        let gm = build_language(&SubshiftSource::golden_mean(), 6).unwrap();
        let r = verify_branch_facts(&gm, 2).unwrap();
        assert_eq!((r.count, r.count_bound, r.max_len, r.len_bound), (4, 8, 3, 5));
        assert!(r.pass);

        let full = build_language(&SubshiftSource::full_shift(2).unwrap(), 4).unwrap();
        let r = verify_branch_facts(&full, 1).unwrap();
        assert_eq!((r.count, r.count_bound, r.max_len, r.len_bound), (4, 8, 1, 3));

        let p2 = build_language(&SubshiftSource::period_two(24), 12).unwrap();
        let r = verify_branch_facts(&p2, 3).unwrap();
        assert_eq!((r.count, r.count_bound), (0, 0));
        assert!(r.pass);
    }

    #[test]
    fn periodic_witness_examples() {
        let gm = build_language(&SubshiftSource::golden_mean(), 6).unwrap();
        assert!(periodic_witnesses(&gm, 2).unwrap().witnesses.is_empty());

        let full = build_language(&SubshiftSource::full_shift(2).unwrap(), 4).unwrap();
        assert!(periodic_witnesses(&full, 1).unwrap().witnesses.is_empty());

        let p2 = build_language(&SubshiftSource::period_two(24), 12).unwrap();
        let r = periodic_witnesses(&p2, 2).unwrap();
        assert!(r.findings.is_empty());
        let got: Vec<(String, usize)> = r.witnesses.iter().map(|w| (w.word.to_string(), w.period)).collect();
        assert_eq!(got, vec![("01".to_string(), 2), ("10".to_string(), 2)]);
    }

    #[test]
    fn isolated_period_inside_larger_shift() {
        // Two isolated fixed points: every word is a witness of period 1.
        let alpha = crate::lang::Alphabet::numeric(2).unwrap();
        let src = SubshiftSource::seeds(alpha, vec![Word(vec![0; 20]), Word(vec![1; 20])]).unwrap();
        let t = build_language(&src, 10).unwrap();
        let r = periodic_witnesses(&t, 3).unwrap();
        assert_eq!(r.witnesses.len(), 2);
        assert!(r.witnesses.iter().all(|w| w.period == 1));
    }
}
