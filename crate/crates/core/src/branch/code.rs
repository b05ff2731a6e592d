use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lang::{LanguageTable, Level, Symbol, Word};

/// A sliding block code: a local rule on windows of width `2 * range + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockMapCode {
    range: usize,
    windows: Level,
    images: Vec<Symbol>,
}

impl BlockMapCode {
    pub fn new(range: usize, windows: Level, images: Vec<Symbol>) -> Result<Self> {
        if windows.word_len() != 2 * range + 1 {
            return Err(Error::InvalidParameter(format!(
                "range {range} needs windows of length {}, got {}",
                2 * range + 1,
                windows.word_len()
            )));
        }
        if windows.count() != images.len() {
            return Err(Error::InvalidParameter(format!(
                "{} windows but {} images",
                windows.count(),
                images.len()
            )));
        }
        Ok(Self { range, windows, images })
    }

    pub fn from_fn(range: usize, windows: &Level, f: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        let images = windows.iter().map(f).collect();
        Self::new(range, windows.clone(), images)
    }

    /// The code `x[-range..=range] -> x[offset]` on the table's windows.
    /// `offset = 0` is the identity, `offset = 1` the left shift.
    pub fn shift_power(table: &LanguageTable, range: usize, offset: isize) -> Result<Self> {
        if offset.unsigned_abs() > range {
            return Err(Error::InvalidParameter(format!("shift {offset} exceeds range {range}")));
        }
        let windows = table.try_level(2 * range + 1)?;
        Self::from_fn(range, windows, |w| w[(range as isize + offset) as usize])
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn windows(&self) -> &Level {
        &self.windows
    }

    pub fn images(&self) -> &[Symbol] {
        &self.images
    }

    pub fn image(&self, window: &[Symbol]) -> Option<Symbol> {
        self.windows.position(window).map(|i| self.images[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[Symbol], Symbol)> + '_ {
        self.windows.iter().zip(self.images.iter().copied())
    }
}

impl fmt::Debug for BlockMapCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockMapCode(r={}; ", self.range)?;
        for (i, (w, s)) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{s}", Word::from(w))?;
        }
        write!(f, ")")
    }
}

impl Serialize for BlockMapCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Table<'a>(&'a BlockMapCode);
        impl Serialize for Table<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.images.len()))?;
                for (w, img) in self.0.entries() {
                    map.serialize_entry(&Word::from(w).to_string(), &img)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("range", &self.range)?;
        map.serialize_entry("table", &Table(self))?;
        map.end()
    }
}

/// Slides the code across `w`, producing a word of length `|w| - 2r`.
pub fn apply_code(code: &BlockMapCode, w: &[Symbol]) -> Result<Word> {
    let width = 2 * code.range + 1;
    if w.len() < width {
        return Err(Error::InvalidParameter(format!(
            "word of length {} is shorter than the window width {width}",
            w.len()
        )));
    }
    w.windows(width)
        .map(|win| code.image(win).ok_or_else(|| Error::Domain { window: Word::from(win) }))
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

/// `outer o inner` on every window of width `2(r_o + r_i) + 1` for which both
/// applications are defined. The domain is generated from overlaps of the
/// inner code's windows.
pub fn compose_codes(outer: &BlockMapCode, inner: &BlockMapCode) -> Result<BlockMapCode> {
    let range = outer.range + inner.range;
    let inner_width = 2 * inner.range + 1;
    let width = 2 * range + 1;
    let mut symbols: Vec<Symbol> = inner.windows.iter().flatten().copied().collect();
    symbols.sort_unstable();
    symbols.dedup();

    let mut frontier: Vec<Vec<Symbol>> = inner.windows.iter().map(<[Symbol]>::to_vec).collect();
    for _ in inner_width..width {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in &symbols {
                let mut v = w.clone();
                v.push(a);
                if inner.windows.contains(&v[v.len() - inner_width..]) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut domain = Vec::new();
    let mut images = Vec::new();
    for w in &frontier {
        let mid = apply_code(inner, w)?;
        if let Ok(img) = apply_code(outer, &mid) {
            domain.push(w.as_slice());
            images.push(img[0]);
        }
    }
    // Frontier is generated in lexicographic order.
    let windows = Level::from_words(width, domain.iter().copied());
    debug_assert_eq!(windows.count(), images.len());
    BlockMapCode::new(range, windows, images)
}

/// `outer o inner` on the table's words of width `2(r_o + r_i) + 1`; any window
/// on which either code is undefined is an error.
pub fn compose_codes_on(
    outer: &BlockMapCode,
    inner: &BlockMapCode,
    table: &LanguageTable,
) -> Result<BlockMapCode> {
    let range = outer.range + inner.range;
    let windows = table.try_level(2 * range + 1)?;
    let images = windows
        .iter()
        .map(|w| apply_code(outer, &apply_code(inner, w)?).map(|img| img[0]))
        .collect::<Result<Vec<_>>>()?;
    BlockMapCode::new(range, windows.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{build_language, SubshiftSource};

    fn full(depth: usize) -> LanguageTable {
        build_language(&SubshiftSource::full_shift(2).unwrap(), depth).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    #[test]
    fn apply_examples() {
        let t = full(5);
        let id = BlockMapCode::shift_power(&t, 0, 0).unwrap();
        assert_eq!(apply_code(&id, &w("0110")).unwrap(), w("0110"));
        let sigma = BlockMapCode::shift_power(&t, 1, 1).unwrap();
        assert_eq!(apply_code(&sigma, &w("00101")).unwrap(), w("101"));
        let swap = BlockMapCode::from_fn(0, t.level(1), |x| 1 - x[0]).unwrap();
        assert_eq!(apply_code(&swap, &w("0010")).unwrap(), w("1101"));
    }

    #[test]
    fn apply_reports_offending_window() {
        let gm = build_language(&SubshiftSource::golden_mean(), 5).unwrap();
        let id = BlockMapCode::shift_power(&gm, 1, 0).unwrap();
        match apply_code(&id, &w("0110")) {
            Err(Error::Domain { window }) => assert_eq!(window, w("011")),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn compose_examples() {
        let t = full(5);
        let sigma = BlockMapCode::shift_power(&t, 1, 1).unwrap();
        let twice = compose_codes(&sigma, &sigma).unwrap();
        assert_eq!(twice.range(), 2);
        assert_eq!(twice, BlockMapCode::shift_power(&t, 2, 2).unwrap());

        let id = BlockMapCode::shift_power(&t, 0, 0).unwrap();
        assert_eq!(compose_codes(&id, &sigma).unwrap(), sigma);

        let swap = BlockMapCode::from_fn(0, t.level(1), |x| 1 - x[0]).unwrap();
        assert_eq!(compose_codes(&swap, &swap).unwrap(), id);
    }

    #[test]
    fn compose_on_table_matches_sequential_application() {
        let gm = build_language(&SubshiftSource::golden_mean(), 9).unwrap();
        let sigma = BlockMapCode::shift_power(&gm, 1, 1).unwrap();
        let inv = BlockMapCode::shift_power(&gm, 1, -1).unwrap();
        let c = compose_codes_on(&sigma, &inv, &gm).unwrap();
        assert_eq!(c.range(), 2);
        for u in gm.level(9).iter() {
            let direct = apply_code(&c, u).unwrap();
            let seq = apply_code(&sigma, &apply_code(&inv, u).unwrap()).unwrap();
            assert_eq!(direct, seq);
            assert_eq!(direct.as_ref(), &u[2..7]);
        }
    }
}
