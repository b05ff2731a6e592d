//! Desk-scale acceptance criteria. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use subshift_core::branch::{
    branch_words, enumerate_automorphisms, periodic_witnesses, verify_autbd, verify_branch_facts,
    EnumerationConfig, DEFAULT_NODE_BUDGET,
};
use subshift_core::construct::{
    derive_spec, group_isomorphism_check, required_b_lower_bounds, verify_structure, Construction,
    GrowthFunction, GroupChain, LeastB,
};
use subshift_core::lang::{build_language, verify_special_bound, LanguageTable, SubshiftSource};
use subshift_core::find_diff_indices;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn table(source: &SubshiftSource, depth: usize) -> LanguageTable {
    build_language(source, depth).expect("language builds")
}

fn level_set(t: &LanguageTable, n: usize) -> Words {
    t.level(n).iter().map(<[u8]>::to_vec).collect()
}

/// The three reference sources with their brute-force languages.
type Oracle = Box<dyn Fn(usize) -> Words>;

fn reference_sources() -> Vec<(&'static str, SubshiftSource, Oracle)> {
    let tm = thue_morse_prefix(1 << 16);
    vec![
        ("golden mean", SubshiftSource::golden_mean(), Box::new(|n| sft_words(2, &[&[1, 1]], n))),
        ("Thue-Morse", SubshiftSource::thue_morse(), Box::new(move |n| factors(std::slice::from_ref(&tm), n))),
        ("full 2-shift", SubshiftSource::full_shift(2).unwrap(), Box::new(|n| sft_words(2, &[], n))),
    ]
}

fn complexity_oracle() -> Outcome {
    let mut problems = Vec::new();
    for (name, source, oracle) in reference_sources() {
        let t = table(&source, 12);
        for n in 1..=12 {
            if level_set(&t, n) != oracle(n) {
                problems.push(format!("{name} differs at n={n}"));
            }
        }
    }
    let golden: Vec<usize> = {
        let t = table(&SubshiftSource::golden_mean(), 12);
        (1..=12).map(|n| t.count(n)).collect()
    };
    if golden != [2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377] {
        problems.push(format!("golden mean c_n = {golden:?}"));
    }
    outcome(problems.is_empty(), if problems.is_empty() { "3 sources match brute force, n <= 12".into() } else { problems.join("; ") })
}

fn special_bound() -> Outcome {
    let mut problems = Vec::new();
    for (name, source, oracle) in reference_sources() {
        let t = table(&source, 12);
        let report = verify_special_bound(&t, 11).unwrap();
        for row in &report.rows {
            let longer = oracle(row.n + 1);
            let diff = (oracle(row.n + 1).len() - oracle(row.n).len()) as i64;
            let (rs, ls) = (right_special(&longer, row.n).len(), left_special(&longer, row.n).len());
            if rs != row.right || ls != row.left || diff != row.diff || rs as i64 > diff || ls as i64 > diff {
                problems.push(format!("{name} n={}: |RS|={rs} |LS|={ls} diff={diff}", row.n));
            }
        }
        if !report.pass {
            problems.push(format!("{name} report fails"));
        }
    }
    outcome(problems.is_empty(), if problems.is_empty() { "|RS_n|, |LS_n| <= c_{n+1} - c_n for n <= 11".into() } else { problems.join("; ") })
}

const BRANCH_DEPTH: usize = 20;

fn branch_levels(t: &LanguageTable) -> Vec<usize> {
    (1..BRANCH_DEPTH).filter(|&n| n + t.count(n) <= BRANCH_DEPTH).collect()
}

fn branch_facts() -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for (name, source, _) in reference_sources() {
        let t = table(&source, BRANCH_DEPTH);
        for n in branch_levels(&t) {
            let words = branch_words(&t, n).unwrap();
            let facts = verify_branch_facts(&t, n).unwrap();
            let bound = 2 * 2 * (t.count(n + 1) - t.count(n));
            let max_len = words.iter().map(|w| w.len()).max().unwrap_or(0);
            checked += 1;
            if words.len() > bound || max_len >= n + t.count(n) || !facts.pass {
                problems.push(format!("{name} n={n}: {} words (bound {bound}), max length {max_len}", words.len()));
            }
        }
    }
    let t = table(&SubshiftSource::golden_mean(), BRANCH_DEPTH);
    let words = branch_words(&t, 2).unwrap();
    let right: Vec<String> = words.right.iter().map(|w| w.to_string()).collect();
    let left: Vec<String> = words.left.iter().map(|w| w.to_string()).collect();
    if right != ["001", "101"] || left != ["100", "101"] {
        problems.push(format!("golden mean n=2: right {right:?}, left {left:?}"));
    }
    outcome(problems.is_empty(), if problems.is_empty() { format!("{checked} (source, n) pairs; golden mean n=2 sets exact") } else { problems.join("; ") })
}

fn coverage() -> Outcome {
    let mut problems = Vec::new();
    let mut sources: Vec<(&str, SubshiftSource)> =
        reference_sources().into_iter().map(|(name, s, _)| (name, s)).collect();
    sources.push(("period-2 orbit", SubshiftSource::period_two(60)));
    for (name, source) in sources {
        let t = table(&source, BRANCH_DEPTH);
        for n in branch_levels(&t) {
            let words = branch_words(&t, n).unwrap();
            let report = periodic_witnesses(&t, n).unwrap();
            if !report.findings.is_empty() {
                problems.push(format!("{name} n={n}: {} uncertified words", report.findings.len()));
            }
            for w in t.level(n).iter() {
                let covered = words.iter().any(|b| contains_factor(b, w));
                let witness = report.witnesses.iter().find(|p| p.word.as_ref() == w);
                let certified = witness.is_some_and(|p| {
                    let long: Vec<u8> = (0..BRANCH_DEPTH).map(|i| p.pattern[i % p.period]).collect();
                    t.contains(&long) && contains_factor(&long, w)
                });
                if !covered && !certified {
                    problems.push(format!("{name} n={n}: {w:?} neither covered nor periodic"));
                }
                if name == "period-2 orbit" && witness.map(|p| p.period) != Some(2) {
                    problems.push(format!("period-2 orbit n={n}: {w:?} is not a period-2 witness"));
                }
            }
        }
    }
    outcome(problems.is_empty(), if problems.is_empty() { "every word covered or certified periodic".into() } else { problems.join("; ") })
}

fn autbd_desk_scale() -> Outcome {
    let cases: Vec<(&str, SubshiftSource, usize, usize)> = vec![
        ("golden mean", SubshiftSource::golden_mean(), 3, 18),
        ("golden mean", SubshiftSource::golden_mean(), 5, 18),
        ("full 2-shift", SubshiftSource::full_shift(2).unwrap(), 3, 11),
        ("period-2 orbit", SubshiftSource::period_two(60), 3, 20),
        ("period-2 orbit", SubshiftSource::period_two(60), 5, 20),
    ];
    let mut problems = Vec::new();
    let mut lines = Vec::new();
    for (name, source, n, depth) in cases {
        let t = table(&source, depth);
        let r = (n - 1) / 2;
        let report = verify_autbd(&t, n, r, 4 * r + 5, DEFAULT_NODE_BUDGET).unwrap();
        // Independent evaluation of (c_{1+c_n})^{2|A|(c_{n+1} - c_n)}.
        let c = |m: usize| t.count(m);
        let expected = BigUint::from(c(1 + c(n))).pow((2 * 2 * (c(n + 1) - c(n))) as u32);
        let count = BigUint::from(report.counts.compared);
        let ok = report.bound.value == expected
            && report.bound.certified_exact
            && count <= expected
            && report.determination_ok
            && report.pass;
        let period_two_ok = name != "period-2 orbit" || (report.counts.compared == 1 && expected.is_one());
        if !ok || !period_two_ok {
            problems.push(format!("{name} n={n}: count {count}, bound {}", report.bound.value));
        }
        lines.push(format!("{name} n={n}: {count} <= {}^{}", report.bound.base, report.bound.exponent));
    }
    outcome(problems.is_empty(), if problems.is_empty() { lines.join(", ") } else { problems.join("; ") })
}

fn known_counts() -> Outcome {
    let full = table(&SubshiftSource::full_shift(2).unwrap(), 8);
    let a = enumerate_automorphisms(&full, &EnumerationConfig::new(0, 0, 8)).unwrap();
    let golden = table(&SubshiftSource::golden_mean(), 12);
    let b = enumerate_automorphisms(&golden, &EnumerationConfig::new(1, 1, 12)).unwrap();
    let pass = a.certified_classes == 2 && b.certified_classes == 3;
    outcome(pass, format!("full 2-shift r=0: {} classes; golden mean r=1: {} classes", a.certified_classes, b.certified_classes))
}

fn tower() -> Construction {
    let chain = GroupChain::cyclic_tower(&[2, 4, 8]);
    Construction::new(derive_spec(&chain, &[2, 2]).unwrap()).unwrap()
}

fn construction_structure() -> Outcome {
    let c = tower();
    let spec = c.spec();
    let mut problems = Vec::new();
    if spec.block_len(2) != 36 || spec.block_len(3) != 3024 {
        problems.push(format!("n_2 = {}, n_3 = {}", spec.block_len(2), spec.block_len(3)));
    }
    for k in 1..=3 {
        let words = c.symbols(k);
        let distinct: std::collections::BTreeSet<_> = words.iter().collect();
        if words.len() != spec.level(k).order || distinct.len() != words.len() {
            problems.push(format!("level {k}: {} words, {} distinct", words.len(), distinct.len()));
        }
        if words.iter().any(|w| w.len() != spec.block_len(k)) {
            problems.push(format!("level {k}: wrong word length"));
        }
    }
    for k in 1..=2 {
        let d = spec.cosets(k + 1).d;
        for w in &c.family(k + 1).words {
            let r = runs(&w.blocks());
            let interior = &r[1..r.len() - 1];
            if r[0] != d || *r.last().unwrap() < d || interior.iter().any(|&x| x >= d) {
                problems.push(format!("level {}: runs {r:?} against d = {d}", k + 1));
            }
        }
        let report = verify_structure(&c, k).unwrap();
        if !report.pass || !report.checks.all() {
            problems.push(format!("structure {k} -> {}: {:?} {:?}", k + 1, report.checks, report.witnesses));
        }
    }
    for k in 1..=3 {
        let iso = group_isomorphism_check(&c, k).unwrap();
        let order = spec.level(k).order;
        if !iso.pass || iso.identities_checked != order * order {
            problems.push(format!("homomorphism law at level {k}: {:?}", iso.witnesses));
        }
    }
    outcome(problems.is_empty(), if problems.is_empty() { "n_2 = 36, n_3 = 3024; all structural checks pass".into() } else { problems.join("; ") })
}

fn construction_complexity() -> Outcome {
    let c = std::sync::Arc::new(tower());
    let t = table(&SubshiftSource::construction(c.clone(), 3).unwrap(), 36);
    let order = c.spec().level(1).order;
    let violations: Vec<String> = (1..36)
        .filter(|&n| t.count(n) > n * order * order)
        .map(|n| format!("c_{n} = {} > {}", t.count(n), n * order * order))
        .collect();
    let c36 = t.count(36);
    let pass = violations.is_empty() && c36 <= 576;
    let detail = if violations.is_empty() {
        format!("c_n <= 4n on [1, 36), c_36 = {c36} <= 576")
    } else {
        format!("{} violations of c_n <= 4n, first {}; c_36 = {c36} <= 576: {}", violations.len(), violations[0], c36 <= 576)
    };
    outcome(pass, detail)
}

fn b_thresholds() -> Outcome {
    let chain = GroupChain::cyclic_tower(&[2, 4]);
    let t = required_b_lower_bounds(&chain, &GrowthFunction::Identity).unwrap();
    let expected = BigUint::from(2u32).pow(5 * 4 + 2 * 4);
    let pass = t.len() == 1
        && t[0].threshold == expected
        && t[0].threshold == BigUint::from(268_435_456u64)
        && t[0].least_b == LeastB::Exact(BigUint::from(268_435_457u64));
    outcome(pass, format!("T_1 = {}, least b = {:?}", t[0].threshold, t[0].least_b))
}

fn diff_indices_random() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut problems = Vec::new();
    for trial in 0..1000 {
        let g: Vec<u64> = (0..200).map(|_| rng.gen_range(1..=20)).collect();
        let total: u64 = g.iter().sum();
        let mut f: Vec<u64> = (0..200).map(|_| rng.gen_range(1..=3000)).collect();
        f[199] = rng.gen_range(1..total - 50);
        let found = find_diff_indices(&f, &g, 200).unwrap();
        if found.is_empty() {
            problems.push(format!("trial {trial}: empty"));
        }
        for &n in &found {
            let partial: u64 = g[..n].iter().sum();
            let ok = n >= 2 && f[n - 1] < partial && (f[n - 1] as i64 - f[n - 2] as i64) < g[n - 1] as i64;
            if !ok {
                problems.push(format!("trial {trial}: index {n} fails re-evaluation"));
            }
        }
    }
    outcome(problems.is_empty(), if problems.is_empty() { "1000 random pairs".into() } else { problems.join("; ") })
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("complexity oracle equivalence", Duration::from_secs(5), complexity_oracle),
        ("special word bound", Duration::from_secs(5), special_bound),
        ("branch word facts", Duration::from_secs(10), branch_facts),
        ("coverage dichotomy", Duration::from_secs(10), coverage),
        ("automorphism count bound", Duration::from_secs(60), autbd_desk_scale),
        ("known automorphism counts", Duration::from_secs(30), known_counts),
        ("construction structure", Duration::from_secs(30), construction_structure),
        ("construction complexity", Duration::from_secs(30), construction_complexity),
        ("b thresholds", Duration::from_secs(1), b_thresholds),
        ("difference indices", Duration::from_secs(5), diff_indices_random),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed <= limit;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({:.2?} of {:?}) {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed,
            limit,
            result.detail
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
