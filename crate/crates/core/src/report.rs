//! CSV and JSON emission for every report type.

use std::fmt::Display;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::analysis::ThresholdReport;
use crate::branch::{AutBoundReport, BranchFactsReport, Enumeration, PeriodicReport};
use crate::construct::{AuditReport, BThreshold, ChainReport, IsomorphismReport, StructureReport};
use crate::error::{Error, Result};
use crate::lang::{ComplexityProfile, SpecialBoundReport};
use crate::scalar::Real;

/// Serializes an arbitrary-precision integer as a decimal string.
pub fn decimal<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Csv,
    #[default]
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?}"))),
        }
    }
}

/// A serializable result with a tabular view.
pub trait Report: Serialize {
    /// Name of the report kind, written to the `schema` field of JSON output.
    fn schema(&self) -> &'static str;

    /// Overall verdict, if the report carries one.
    fn pass(&self) -> Option<bool> {
        None
    }

    fn csv_header(&self) -> Vec<&'static str>;

    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn to_json<R: Report + ?Sized>(report: &R) -> Result<Value> {
    let mut value = serde_json::to_value(report)?;
    let body = match value {
        Value::Object(ref mut map) => map,
        _ => {
            value = serde_json::json!({ "data": value });
            value.as_object_mut().expect("object")
        }
    };
    body.insert("schema".into(), Value::String(report.schema().into()));
    if let Some(pass) = report.pass() {
        body.insert("pass".into(), Value::Bool(pass));
    }
    Ok(value)
}

pub fn write_csv<R: Report + ?Sized, W: Write>(report: &R, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(report.csv_header())?;
    for row in report.csv_rows() {
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn render<R: Report + ?Sized>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&to_json(report)?)?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(report, &mut buf)?;
            Ok(String::from_utf8(buf).expect("csv output is utf-8"))
        }
    }
}

/// Writes `report` to `destination`, or standard output when `None`.
pub fn emit_report<R: Report + ?Sized>(report: &R, format: Format, destination: Option<&Path>) -> Result<()> {
    let text = render(report, format)?;
    match destination {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cell(v: impl Display) -> String {
    v.to_string()
}

fn opt(v: Option<impl Display>) -> String {
    v.map(cell).unwrap_or_default()
}

impl Report for ComplexityProfile {
    fn schema(&self) -> &'static str {
        "complexity"
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "c_n", "diff_n"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        (1..=self.depth)
            .map(|n| vec![cell(n), cell(self.c(n)), opt(self.diff.get(n - 1))])
            .collect()
    }
}

impl Report for SpecialBoundReport {
    fn schema(&self) -> &'static str {
        "special-bound"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "right", "left", "diff", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| vec![cell(r.n), cell(r.right), cell(r.left), cell(r.diff), cell(r.pass)])
            .collect()
    }
}

impl Report for BranchFactsReport {
    fn schema(&self) -> &'static str {
        "branch-facts"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["level", "count", "count_bound", "max_len", "len_bound", "depth_limited", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            cell(self.level),
            cell(self.count),
            cell(self.count_bound),
            cell(self.max_len),
            cell(self.len_bound),
            cell(self.depth_limited),
            cell(self.pass),
        ]]
    }
}

impl Report for PeriodicReport {
    fn schema(&self) -> &'static str {
        "periodic-witnesses"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.findings.is_empty())
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["word", "period", "pattern", "finding"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let witnesses = self
            .witnesses
            .iter()
            .map(|w| vec![cell(&w.word), cell(w.period), cell(&w.pattern), String::new()]);
        let findings = self
            .findings
            .iter()
            .map(|f| vec![cell(&f.word), String::new(), String::new(), f.reason.clone()]);
        witnesses.chain(findings).collect()
    }
}

impl Report for Enumeration {
    fn schema(&self) -> &'static str {
        "automorphism-enumeration"
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["status", "range", "table", "inverse_range", "inverse_table"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let certified = self.certified.iter().map(|c| {
            vec![
                "certified".into(),
                cell(c.forward.range()),
                code_table(&c.forward),
                cell(c.inverse.range()),
                code_table(&c.inverse),
            ]
        });
        let candidates = self.candidates.iter().map(|c| {
            vec!["candidate".into(), cell(c.range()), code_table(c), String::new(), String::new()]
        });
        certified.chain(candidates).collect()
    }
}

fn code_table(code: &crate::branch::BlockMapCode) -> String {
    code.entries().map(|(w, s)| format!("{}:{s}", crate::lang::Word::from(w))).collect::<Vec<_>>().join(" ")
}

impl Report for AutBoundReport {
    fn schema(&self) -> &'static str {
        "autbd"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "range", "certified", "candidates", "compared", "bound", "exact", "count_ok", "determination_ok", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            cell(self.inputs.n),
            cell(self.inputs.range),
            cell(self.counts.certified),
            cell(self.counts.candidates),
            cell(self.counts.compared),
            cell(&self.bound.value),
            cell(self.bound.certified_exact),
            cell(self.count_ok),
            cell(self.determination_ok),
            cell(self.pass),
        ]]
    }
}

impl Report for ChainReport {
    fn schema(&self) -> &'static str {
        "group-chain"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["level", "order"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.orders.iter().enumerate().map(|(i, o)| vec![cell(i + 1), cell(o)]).collect()
    }
}

impl Report for StructureReport {
    fn schema(&self) -> &'static str {
        "construction-structure"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["level", "d", "max_interior_run", "min", "decomp", "consist", "not_shift", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let c = &self.checks;
        vec![vec![
            cell(self.level),
            cell(self.d),
            cell(self.max_interior_run),
            cell(c.min),
            cell(c.decomp),
            cell(c.consist),
            cell(c.not_shift),
            cell(self.pass),
        ]]
    }
}

impl Report for IsomorphismReport {
    fn schema(&self) -> &'static str {
        "construction-isomorphism"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["level", "order", "identities_checked", "injective", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            cell(self.level),
            cell(self.order),
            cell(self.identities_checked),
            cell(self.injective),
            cell(self.pass),
        ]]
    }
}

impl Report for AuditReport {
    fn schema(&self) -> &'static str {
        "construction-audit"
    }
    fn pass(&self) -> Option<bool> {
        Some(self.pass)
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["level", "n", "c_n", "regime", "j", "bound", "pass"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let regime = match r.regime {
                    crate::construct::Regime::TwoBlocks => "two_blocks",
                    crate::construct::Regime::ManyRuns => "many_runs",
                };
                vec![cell(self.level), cell(r.n), cell(r.c_n), regime.into(), opt(r.j), cell(&r.bound), cell(r.pass)]
            })
            .collect()
    }
}

/// Least admissible `b` per level for a growth function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BThresholdReport {
    pub thresholds: Vec<BThreshold>,
}

impl Report for BThresholdReport {
    fn schema(&self) -> &'static str {
        "b-thresholds"
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["k", "threshold", "least_b"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.thresholds
            .iter()
            .map(|t| {
                let least = match &t.least_b {
                    crate::construct::LeastB::Exact(v) => v.to_string(),
                    crate::construct::LeastB::Symbolic(s) => s.clone(),
                };
                vec![cell(t.k), cell(&t.threshold), least]
            })
            .collect()
    }
}

impl<T: Real + Serialize + Display> Report for ThresholdReport<T> {
    fn schema(&self) -> &'static str {
        "thresholds"
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["tag", "n", "c_n", "value", "running_min"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| vec![cell(self.tag), cell(p.n), cell(p.c_n), cell(p.value), cell(p.running_min)])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexity_csv() {
        let p = ComplexityProfile::from_counts(vec![2, 3, 5]);
        let text = render(&p, Format::Csv).unwrap();
        assert_eq!(text, "n,c_n,diff_n\n1,2,1\n2,3,2\n3,5,\n");
    }

    #[test]
    fn json_has_schema() {
        let p = ComplexityProfile::from_counts(vec![2, 3]);
        let v = to_json(&p).unwrap();
        assert_eq!(v["schema"], "complexity");
        assert_eq!(v["c"], serde_json::json!([2, 3]));
        assert!(v.get("pass").is_none());
    }

    #[test]
    fn big_integers_are_strings() {
        #[derive(Serialize)]
        struct Holder {
            #[serde(serialize_with = "decimal")]
            v: BigUint,
        }
        let v = BigUint::from(987u32).pow(32);
        let text = serde_json::to_string(&Holder { v: v.clone() }).unwrap();
        assert_eq!(text, format!("{{\"v\":\"{v}\"}}"));
    }

    #[test]
    fn csv_quotes_commas() {
        let r = PeriodicReport {
            level: 2,
            witnesses: vec![],
            findings: vec![crate::branch::PeriodicFinding { word: vec![0u8, 1].into(), reason: "a, \"b\"".into() }],
            depth_limited: false,
        };
        let text = render(&r, Format::Csv).unwrap();
        assert!(text.ends_with("01,,,\"a, \"\"b\"\"\"\n"));
    }
}
