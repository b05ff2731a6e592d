//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Words = BTreeSet<Vec<u8>>;

/// Every word of length `n` over `{0, .., k-1}`.
pub fn all_words(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn contains_factor(hay: &[u8], needle: &[u8]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// Words of length `n` avoiding every forbidden word.
pub fn sft_words(k: u8, forbidden: &[&[u8]], n: usize) -> Words {
    all_words(k, n)
        .into_iter()
        .filter(|w| forbidden.iter().all(|f| !contains_factor(w, f)))
        .collect()
}

pub fn factors(words: &[Vec<u8>], n: usize) -> Words {
    words.iter().flat_map(|w| w.windows(n).map(<[u8]>::to_vec)).collect()
}

/// Prefix of the Thue-Morse sequence: bit parity of the index.
pub fn thue_morse_prefix(len: usize) -> Vec<u8> {
    (0..len).map(|i| (i.count_ones() % 2) as u8).collect()
}

/// Fibonacci word prefix from the substitution 0 -> 01, 1 -> 0.
pub fn fibonacci_prefix(len: usize) -> Vec<u8> {
    let mut w = vec![0u8];
    while w.len() < len {
        w = w.iter().flat_map(|&a| if a == 0 { vec![0, 1] } else { vec![0] }).collect();
    }
    w.truncate(len);
    w
}

pub fn period_two_prefix(len: usize) -> Vec<u8> {
    (0..len).map(|i| (i % 2) as u8).collect()
}

/// Right special words of length `n` in a word set of lengths `n` and `n + 1`.
pub fn right_special(longer: &Words, n: usize) -> Words {
    let mut seen = std::collections::BTreeMap::<Vec<u8>, usize>::new();
    for w in longer {
        *seen.entry(w[..n].to_vec()).or_default() += 1;
    }
    seen.into_iter().filter(|&(_, c)| c >= 2).map(|(w, _)| w).collect()
}

pub fn left_special(longer: &Words, _n: usize) -> Words {
    let mut seen = std::collections::BTreeMap::<Vec<u8>, usize>::new();
    for w in longer {
        *seen.entry(w[1..].to_vec()).or_default() += 1;
    }
    seen.into_iter().filter(|&(_, c)| c >= 2).map(|(w, _)| w).collect()
}

/// Lengths of maximal runs of equal consecutive entries.
pub fn runs<T: PartialEq>(xs: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i + 1;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        out.push(j - i);
        i = j;
    }
    out
}
