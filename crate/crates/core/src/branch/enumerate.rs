use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{LanguageTable, Level, Symbol};

use super::code::{apply_code, BlockMapCode};
use super::words::periodic_witnesses;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationConfig {
    /// Range `r` of the enumerated codes.
    pub range: usize,
    /// Largest inverse range tried when certifying.
    pub inverse_range_cap: usize,
    /// Length `M` up to which language preservation and round trips are checked.
    pub check_depth: usize,
    /// Keep only codes fixing every detected isolated periodic point.
    pub fip_only: bool,
    /// Maximum number of partial assignments explored.
    pub budget: u64,
}

impl EnumerationConfig {
    pub fn new(range: usize, inverse_range_cap: usize, check_depth: usize) -> Self {
        Self { range, inverse_range_cap, check_depth, fip_only: false, budget: DEFAULT_NODE_BUDGET }
    }

    pub fn fip_only(mut self, on: bool) -> Self {
        self.fip_only = on;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// A code with an inverse whose round trip was checked on all words of length `verified_depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismCertificate {
    pub forward: BlockMapCode,
    pub inverse: BlockMapCode,
    pub verified_depth: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub config: EnumerationConfig,
    pub certified: Vec<AutomorphismCertificate>,
    /// Language-preserving codes without a certified inverse.
    pub candidates: Vec<BlockMapCode>,
    pub nodes: u64,
    /// Distinct actions on `L_M` among certified codes.
    pub certified_classes: usize,
    /// Certified classes plus candidate actions matching no certified class.
    pub compared_count: usize,
    /// Windows whose image was fixed by periodic points (`fip_only`).
    pub fixed_windows: usize,
    /// Periodic-point detection ran on a table shallower than `n + c_n`.
    pub periodic_depth_limited: bool,
}

impl Enumeration {
    /// Every enumerated code, certified first.
    pub fn codes(&self) -> impl Iterator<Item = &BlockMapCode> {
        self.certified.iter().map(|c| &c.forward).chain(self.candidates.iter())
    }
}

// Language constraint: the images of the listed windows, in order, form a word of `target`.
struct Constraint {
    windows: Vec<u32>,
    target: usize,
}

struct Search<'a> {
    table: &'a LanguageTable,
    alphabet: Vec<Symbol>,
    forced: Vec<Option<Symbol>>,
    // Constraints whose largest window index is `i` are checked when window `i` is assigned.
    triggers: Vec<Vec<Constraint>>,
    budget: u64,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl Search<'_> {
    fn consistent(&self, assigned: &[Symbol], idx: usize, buf: &mut Vec<Symbol>) -> bool {
        self.triggers[idx].iter().all(|c| {
            buf.clear();
            buf.extend(c.windows.iter().map(|&w| assigned[w as usize]));
            self.table.level(c.target).contains(buf)
        })
    }

    fn choices(&self, idx: usize) -> Vec<Symbol> {
        match self.forced[idx] {
            Some(s) => vec![s],
            None => self.alphabet.clone(),
        }
    }

    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn dfs(&self, assigned: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>, buf: &mut Vec<Symbol>) {
        let idx = assigned.len();
        if idx == self.forced.len() {
            out.push(assigned.clone());
            return;
        }
        for s in self.choices(idx) {
            if !self.tick() {
                return;
            }
            assigned.push(s);
            if self.consistent(assigned, idx, buf) {
                self.dfs(assigned, out, buf);
            }
            assigned.pop();
        }
    }

    // Consistent partial assignments of the first `len` windows.
    fn prefixes(&self, len: usize) -> Vec<Vec<Symbol>> {
        let mut level = vec![Vec::new()];
        let mut buf = Vec::new();
        for idx in 0..len {
            let mut next = Vec::new();
            for p in &level {
                for s in self.choices(idx) {
                    if !self.tick() {
                        return next;
                    }
                    let mut q = p.clone();
                    q.push(s);
                    if self.consistent(&q, idx, &mut buf) {
                        next.push(q);
                    }
                }
            }
            level = next;
        }
        level
    }
}

fn window_indices(windows: &Level, u: &[Symbol], width: usize) -> Option<Vec<u32>> {
    u.windows(width).map(|w| windows.position(w).map(|i| i as u32)).collect()
}

/// Enumerates every range-`r` code mapping `L_m` into `L_{m-2r}` for
/// `2r+1 <= m <= M`, and certifies those with an inverse of range at most `R`.
pub fn enumerate_automorphisms(table: &LanguageTable, config: &EnumerationConfig) -> Result<Enumeration> {
    let r = config.range;
    let width = 2 * r + 1;
    let m_max = config.check_depth;
    table.require_depth(width)?;
    table.require_depth(m_max)?;
    if m_max < 2 * (r + config.inverse_range_cap) + 1 {
        return Err(Error::InvalidParameter(format!(
            "check depth {m_max} below 2(r + R) + 1 = {}",
            2 * (r + config.inverse_range_cap) + 1
        )));
    }
    let windows = table.level(width);

    let mut forced = vec![None; windows.count()];
    let mut periodic_depth_limited = false;
    let mut fixed_windows = 0;
    if config.fip_only {
        let report = periodic_witnesses(table, width)?;
        periodic_depth_limited = report.depth_limited;
        for witness in &report.witnesses {
            let point = witness.periodic_word(witness.period + 2 * r);
            for (phase, win) in point.windows(width).enumerate() {
                let centre = point[phase + r];
                let i = windows.position(win).ok_or_else(|| {
                    Error::Invariant(format!("periodic window {} missing from table", crate::lang::Word::from(win)))
                })?;
                match forced[i] {
                    Some(s) if s != centre => {
                        return Err(Error::Invariant("periodic points force conflicting images".into()))
                    }
                    Some(_) => {}
                    None => {
                        forced[i] = Some(centre);
                        fixed_windows += 1;
                    }
                }
            }
        }
    }

    let mut triggers: Vec<Vec<Constraint>> = (0..windows.count()).map(|_| Vec::new()).collect();
    for m in width..=m_max {
        for u in table.level(m).iter() {
            let idx = window_indices(windows, u, width)
                .ok_or_else(|| Error::Invariant(format!("table not factor-closed at length {m}")))?;
            let last = *idx.iter().max().expect("at least one window") as usize;
            triggers[last].push(Constraint { windows: idx, target: m - 2 * r });
        }
    }

    let search = Search {
        table,
        alphabet: table.alphabet().symbols().collect(),
        forced,
        triggers,
        budget: config.budget,
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };

    // Split the tree into independent subtrees for the thread pool.
    let split = (0..=search.forced.len())
        .find(|&d| search.alphabet.len().saturating_pow(d as u32) >= 256)
        .unwrap_or(search.forced.len());
    let prefixes = search.prefixes(split);
    let mut found: Vec<Vec<Symbol>> = prefixes
        .into_par_iter()
        .flat_map_iter(|mut p| {
            let mut out = Vec::new();
            let mut buf = Vec::new();
            search.dfs(&mut p, &mut out, &mut buf);
            out
        })
        .collect();
    let nodes = search.nodes.load(Ordering::Relaxed);
    if search.aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { budget: config.budget, found: found.len() });
    }
    found.sort();

    let codes: Vec<BlockMapCode> = found
        .into_iter()
        .map(|images| BlockMapCode::new(r, windows.clone(), images))
        .collect::<Result<_>>()?;
    let outcomes: Vec<Result<Option<BlockMapCode>>> = codes
        .par_iter()
        .map(|f| find_inverse(table, f, config.inverse_range_cap, m_max))
        .collect();

    let mut certified = Vec::new();
    let mut candidates = Vec::new();
    for (forward, inverse) in codes.into_iter().zip(outcomes) {
        match inverse? {
            Some(inverse) => {
                let cert = AutomorphismCertificate { forward, inverse, verified_depth: m_max };
                if !verify_certificate(table, &cert)? {
                    return Err(Error::Invariant(format!(
                        "independent check rejects certificate for {:?}",
                        cert.forward
                    )));
                }
                certified.push(cert);
            }
            None => candidates.push(forward),
        }
    }

    let mut classes: HashMap<Vec<Symbol>, bool> = HashMap::new();
    for c in &certified {
        classes.insert(action_on(table, &c.forward, m_max)?, true);
    }
    let certified_classes = classes.len();
    for c in &candidates {
        classes.entry(action_on(table, c, m_max)?).or_insert(false);
    }
    let compared_count = classes.len();

    Ok(Enumeration {
        config: *config,
        certified,
        candidates,
        nodes,
        certified_classes,
        compared_count,
        fixed_windows,
        periodic_depth_limited,
    })
}

/// Concatenated images of every word of length `m`.
pub fn action_on(table: &LanguageTable, code: &BlockMapCode, m: usize) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    for u in table.try_level(m)?.iter() {
        out.extend(apply_code(code, u)?.0);
    }
    Ok(out)
}

/// Looks for a code `g` of range at most `cap` with `g(f(u))` equal to the
/// centre of `u` for every `u` of length `m`. Entries of `g` are read off
/// from the round trip; a conflict or an unconstrained window rules out that range.
pub fn find_inverse(
    table: &LanguageTable,
    forward: &BlockMapCode,
    cap: usize,
    m: usize,
) -> Result<Option<BlockMapCode>> {
    let r = forward.range();
    let images: Vec<(Vec<Symbol>, &[Symbol])> = table
        .try_level(m)?
        .iter()
        .map(|u| apply_code(forward, u).map(|v| (v.0, u)))
        .collect::<Result<_>>()?;
    'ranges: for inv in 0..=cap {
        let width = 2 * inv + 1;
        if m < 2 * (r + inv) + 1 {
            break;
        }
        let Ok(domain) = table.try_level(width) else { break };
        let mut entries: Vec<Option<Symbol>> = vec![None; domain.count()];
        for (v, u) in &images {
            for (i, win) in v.windows(width).enumerate() {
                let Some(pos) = domain.position(win) else { continue 'ranges };
                let want = u[r + inv + i];
                match entries[pos] {
                    Some(s) if s != want => continue 'ranges,
                    _ => entries[pos] = Some(want),
                }
            }
        }
        if let Some(images) = entries.into_iter().collect::<Option<Vec<_>>>() {
            return BlockMapCode::new(inv, domain.clone(), images).map(Some);
        }
    }
    Ok(None)
}

/// Re-checks a certificate by direct application: both compositions must
/// return the centre of every word of length `verified_depth`.
pub fn verify_certificate(table: &LanguageTable, cert: &AutomorphismCertificate) -> Result<bool> {
    let m = cert.verified_depth;
    let shrink = cert.forward.range() + cert.inverse.range();
    for u in table.try_level(m)?.iter() {
        let centre = &u[shrink..m - shrink];
        let there = apply_code(&cert.forward, u)?;
        if !table.contains(&there) {
            return Ok(false);
        }
        let back = match apply_code(&cert.inverse, &there) {
            Ok(w) => w,
            Err(Error::Domain { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        if back.as_ref() != centre {
            return Ok(false);
        }
        let other = match apply_code(&cert.inverse, u) {
            Ok(w) => w,
            Err(Error::Domain { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        match apply_code(&cert.forward, &other) {
            Ok(w) if w.as_ref() == centre => {}
            Ok(_) | Err(Error::Domain { .. }) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}
