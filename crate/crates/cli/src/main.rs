use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use subshift_core::analysis::{find_diff_indices, threshold_stats, ThresholdTag};
use subshift_core::branch::{
    branch_words, enumerate_automorphisms, periodic_witnesses, verify_autbd, verify_branch_facts,
    BranchFactsReport, EnumerationConfig, PeriodicFinding, PeriodicWitness, DEFAULT_NODE_BUDGET,
};
use subshift_core::construct::{
    construction_complexity_audit, group_isomorphism_check, required_b_lower_bounds, validate_chain,
    verify_structure, AuditReport, ChainReport, Construction, GrowthFunction, IsomorphismReport, StructureReport,
};
use subshift_core::io::{read_chain, read_source, ChainInput};
use subshift_core::lang::{build_language, complexity_profile, verify_special_bound, LanguageTable, Word};
use subshift_core::report::{emit_report, BThresholdReport, Format, Report};
use subshift_core::{Error, SubshiftSource, ThresholdReport};

/// Automatic table depths never exceed this.
const MAX_AUTO_DEPTH: usize = 24;

#[derive(Parser, Debug)]
#[command(name = "subshift", version, about = "Complexity, branch words, automorphisms and group constructions for subshifts")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Node budget for automorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Word complexity c_n and first differences.
    Complexity {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        depth: usize,
        /// Also write the profile as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Left/right special word counts against c_{n+1} - c_n.
    Special {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        depth: usize,
        /// Largest level checked (defaults to depth - 1).
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// n-branch words, their counting facts and periodic witnesses.
    Branch {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive search for range-bounded automorphism codes.
    Autcount {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        range: usize,
        /// Largest inverse range searched (defaults to --range).
        #[arg(long)]
        inv_range: Option<usize>,
        /// Length of the words on which actions are compared.
        #[arg(long)]
        check_depth: Option<usize>,
        /// Table depth (defaults to the check depth).
        #[arg(long)]
        depth: Option<usize>,
        /// Only codes fixing every isolated periodic point.
        #[arg(long)]
        fip: bool,
    },
    /// Compares the FIP code count at range (n-1)/2 with the branch-word bound.
    VerifyAutbd {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        inv_range: Option<usize>,
        #[arg(long)]
        check_depth: Option<usize>,
        /// Table depth (chosen automatically when omitted).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Generates the level-K words of a construction.
    Construct {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        level: usize,
        /// File receiving one word per line (standard output when omitted).
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Structural and group-law checks of a construction up to level K.
    ConstructVerify {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        level: usize,
    },
    /// Complexity bounds of the level-K construction language.
    ConstructAudit {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        depth: usize,
        /// Also report least admissible b per level for this growth function.
        #[arg(long, value_enum)]
        growth: Option<GrowthArg>,
    },
    /// Indicator sequences for the complexity growth thresholds.
    Thresholds {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        depth: usize,
        /// One of log-log-log, n1.25, n1.5, n2 (all when omitted).
        #[arg(long)]
        tag: Option<ThresholdTag>,
    },
    /// Indices n with f(n) < g(1)+...+g(n) and f(n) - f(n-1) < g(n).
    DiffIndices {
        /// Comma-separated values of f, or @file with one value per line.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Defaults to the sequence length.
        #[arg(long)]
        horizon: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Subshift source JSON file.
    #[arg(long)]
    source: PathBuf,
}

#[derive(Args, Debug)]
struct ChainArgs {
    /// Group chain JSON file.
    #[arg(long)]
    chain: PathBuf,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GrowthArg {
    Identity,
    FloorLog2,
}

struct Output {
    format: Format,
    out: Option<PathBuf>,
}

impl Output {
    fn emit<R: Report>(&self, report: &R) -> anyhow::Result<bool> {
        emit_report(report, self.format, self.out.as_deref())?;
        Ok(report.pass().unwrap_or(true))
    }
}

#[derive(Serialize)]
struct BranchReport {
    level: usize,
    depth: usize,
    right: Vec<Word>,
    left: Vec<Word>,
    depth_limited: bool,
    facts: BranchFactsReport,
    periodic: Vec<PeriodicWitness>,
    findings: Vec<PeriodicFinding>,
    pass: bool,
}

impl Report for BranchReport {
    fn schema(&self) -> &'static str {
        "branch"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["kind", "word", "period"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let right = self.right.iter().map(|w| vec!["right".into(), w.to_string(), String::new()]);
        let left = self.left.iter().map(|w| vec!["left".into(), w.to_string(), String::new()]);
        let periodic = self
            .periodic
            .iter()
            .map(|p| vec!["periodic".into(), p.word.to_string(), p.period.to_string()]);
        let findings = self.findings.iter().map(|f| vec!["finding".into(), f.word.to_string(), f.reason.clone()]);
        right.chain(left).chain(periodic).chain(findings).collect()
    }
}

#[derive(Serialize)]
struct ConstructReport {
    level: usize,
    block_lengths: Vec<usize>,
    words: usize,
    word_length: usize,
    emitted_to: Option<PathBuf>,
}

impl Report for ConstructReport {
    fn schema(&self) -> &'static str {
        "construction"
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["level", "block_length"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.block_lengths
            .iter()
            .enumerate()
            .map(|(i, n)| vec![(i + 1).to_string(), n.to_string()])
            .collect()
    }
}

#[derive(Serialize)]
struct ConstructVerifyReport {
    level: usize,
    chain: ChainReport,
    structure: Vec<StructureReport>,
    isomorphism: Vec<IsomorphismReport>,
    pass: bool,
}

impl Report for ConstructVerifyReport {
    fn schema(&self) -> &'static str {
        "construction-verify"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["check", "level", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![vec!["chain".into(), String::new(), self.chain.pass.to_string()]];
        for s in &self.structure {
            let c = &s.checks;
            for (name, ok) in [("min", c.min), ("decomp", c.decomp), ("consist", c.consist), ("not_shift", c.not_shift)] {
                rows.push(vec![name.into(), s.level.to_string(), ok.to_string()]);
            }
        }
        for i in &self.isomorphism {
            rows.push(vec!["homomorphism".into(), i.level.to_string(), i.pass.to_string()]);
        }
        rows
    }
}

#[derive(Serialize)]
struct ConstructAuditReport {
    level: usize,
    depth: usize,
    audits: Vec<AuditReport>,
    thresholds: Option<BThresholdReport>,
    pass: bool,
}

impl Report for ConstructAuditReport {
    fn schema(&self) -> &'static str {
        "construction-audit"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        self.audits.first().map(|a| a.csv_header()).unwrap_or_else(|| vec!["level", "n", "c_n", "regime", "j", "bound", "pass"])
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.audits.iter().flat_map(|a| a.csv_rows()).collect()
    }
}

#[derive(Serialize)]
struct ThresholdSet {
    reports: Vec<ThresholdReport<f64>>,
}

impl Report for ThresholdSet {
    fn schema(&self) -> &'static str {
        "thresholds"
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["tag", "n", "c_n", "value", "running_min"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.reports.iter().flat_map(|r| r.csv_rows()).collect()
    }
}

#[derive(Serialize)]
struct DiffReport {
    horizon: usize,
    indices: Vec<usize>,
}

impl Report for DiffReport {
    fn schema(&self) -> &'static str {
        "diff-indices"
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.indices.iter().map(|n| vec![n.to_string()]).collect()
    }
}

fn load_source(args: &SourceArgs) -> anyhow::Result<SubshiftSource> {
    read_source(&args.source).with_context(|| format!("reading source {}", args.source.display()))
}

fn load_chain(args: &ChainArgs) -> anyhow::Result<(ChainInput, Construction)> {
    let input = read_chain(&args.chain).with_context(|| format!("reading chain {}", args.chain.display()))?;
    let construction = input.construction()?;
    Ok((input, construction))
}

fn check_level(construction: &Construction, level: usize) -> anyhow::Result<()> {
    let levels = construction.spec().levels();
    if level == 0 || level > levels {
        return Err(Error::InvalidParameter(format!("level {level} outside 1..={levels}")).into());
    }
    Ok(())
}

fn parse_sequence(arg: &str) -> anyhow::Result<Vec<i128>> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => arg.to_string(),
    };
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i128>()
                .map_err(|_| Error::InvalidParameter(format!("not an integer: {t:?}")).into())
        })
        .collect()
}

/// Smallest table depth that makes the branch-word bound exact, within limits.
fn autbd_depth(source: &SubshiftSource, n: usize, check_depth: usize) -> anyhow::Result<usize> {
    let base = check_depth.max(n + 1);
    let probe = build_language(source, base)?;
    let c_n = probe.count(n);
    Ok(base.max((n + c_n).min(MAX_AUTO_DEPTH)))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let output = Output { format: cli.format.into(), out: cli.out.clone() };
    let budget = cli.budget;

    match cli.command {
        Command::Complexity { source, depth, csv } => {
            let table = build_language(&load_source(&source)?, depth)?;
            let profile = complexity_profile(&table);
            if let Some(path) = csv {
                emit_report(&profile, Format::Csv, Some(&path))?;
            }
            output.emit(&profile)
        }
        Command::Special { source, depth, n_max } => {
            let table = build_language(&load_source(&source)?, depth)?;
            let n_max = n_max.unwrap_or(depth.saturating_sub(1));
            output.emit(&verify_special_bound(&table, n_max)?)
        }
        Command::Branch { source, depth, n } => {
            let table = build_language(&load_source(&source)?, depth)?;
            output.emit(&branch_report(&table, n)?)
        }
        Command::Autcount { source, range, inv_range, check_depth, depth, fip } => {
            let inv_range = inv_range.unwrap_or(range);
            let check_depth = check_depth.unwrap_or(2 * (range + inv_range) + 5);
            let table = build_language(&load_source(&source)?, depth.unwrap_or(check_depth))?;
            let config = EnumerationConfig::new(range, inv_range, check_depth).fip_only(fip).budget(budget);
            output.emit(&enumerate_automorphisms(&table, &config)?)
        }
        Command::VerifyAutbd { source, n, inv_range, check_depth, depth } => {
            if n == 0 {
                bail!(Error::InvalidParameter("n must be at least 1".into()));
            }
            let range = (n - 1) / 2;
            let inv_range = inv_range.unwrap_or(range);
            let check_depth = check_depth.unwrap_or(2 * (range + inv_range) + 5);
            let source = load_source(&source)?;
            let depth = match depth {
                Some(d) => d,
                None => autbd_depth(&source, n, check_depth)?,
            };
            let table = build_language(&source, depth)?;
            output.emit(&verify_autbd(&table, n, inv_range, check_depth, budget)?)
        }
        Command::Construct { chain, level, emit } => {
            let (_, construction) = load_chain(&chain)?;
            check_level(&construction, level)?;
            let words = construction.try_symbols(level)?;
            let mut text = String::new();
            for w in words {
                text.push_str(&Word::from(w.as_slice()).to_string());
                text.push('\n');
            }
            let spec = construction.spec();
            let report = ConstructReport {
                level,
                block_lengths: (1..=spec.levels()).map(|k| spec.block_len(k)).collect(),
                words: words.len(),
                word_length: spec.block_len(level),
                emitted_to: emit.clone(),
            };
            match emit {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    output.emit(&report)
                }
                None => {
                    print!("{text}");
                    Ok(true)
                }
            }
        }
        Command::ConstructVerify { chain, level } => {
            let (input, construction) = load_chain(&chain)?;
            check_level(&construction, level)?;
            let chain_report = validate_chain(&input.chain);
            let structure = (1..level)
                .map(|k| verify_structure(&construction, k))
                .collect::<subshift_core::Result<Vec<_>>>()?;
            let isomorphism = (1..=level)
                .map(|k| group_isomorphism_check(&construction, k))
                .collect::<subshift_core::Result<Vec<_>>>()?;
            let pass = chain_report.pass && structure.iter().all(|s| s.pass) && isomorphism.iter().all(|i| i.pass);
            output.emit(&ConstructVerifyReport { level, chain: chain_report, structure, isomorphism, pass })
        }
        Command::ConstructAudit { chain, level, depth, growth } => {
            let (input, construction) = load_chain(&chain)?;
            check_level(&construction, level)?;
            let construction = std::sync::Arc::new(construction);
            let source = SubshiftSource::construction(construction.clone(), level)?;
            let table = build_language(&source, depth)?;
            let audits = (1..level)
                .filter(|&k| construction.spec().block_len(k) <= depth)
                .map(|k| construction_complexity_audit(&construction, &table, k))
                .collect::<subshift_core::Result<Vec<_>>>()?;
            let thresholds = growth
                .map(|g| {
                    let f = match g {
                        GrowthArg::Identity => GrowthFunction::Identity,
                        GrowthArg::FloorLog2 => GrowthFunction::FloorLog2,
                    };
                    required_b_lower_bounds(&input.chain, &f).map(|thresholds| BThresholdReport { thresholds })
                })
                .transpose()?;
            let pass = audits.iter().all(|a| a.pass);
            output.emit(&ConstructAuditReport { level, depth, audits, thresholds, pass })
        }
        Command::Thresholds { source, depth, tag } => {
            let table = build_language(&load_source(&source)?, depth)?;
            let profile = complexity_profile(&table);
            let tags = match tag {
                Some(t) => vec![t],
                None => ThresholdTag::ALL.into_iter().filter(|t| t.first_n() <= depth).collect(),
            };
            let reports = tags
                .into_iter()
                .map(|t| threshold_stats::<f64>(&profile, t))
                .collect::<subshift_core::Result<Vec<_>>>()?;
            output.emit(&ThresholdSet { reports })
        }
        Command::DiffIndices { f, g, horizon } => {
            let f = parse_sequence(&f)?;
            let g = parse_sequence(&g)?;
            let horizon = horizon.unwrap_or(f.len());
            let indices = find_diff_indices(&f, &g, horizon)?;
            output.emit(&DiffReport { horizon, indices })
        }
    }
}

fn branch_report(table: &LanguageTable, n: usize) -> anyhow::Result<BranchReport> {
    let words = branch_words(table, n)?;
    let facts = verify_branch_facts(table, n)?;
    let periodic = periodic_witnesses(table, n)?;
    let pass = facts.pass && periodic.findings.is_empty();
    Ok(BranchReport {
        level: n,
        depth: table.depth(),
        right: words.right,
        left: words.left,
        depth_limited: words.depth_limited,
        facts,
        periodic: periodic.witnesses,
        findings: periodic.findings,
        pass,
    })
}

/// Exit status for an error: 1 for failed internal checks, 2 for bad input.
fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Invariant(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}
