//! Report rows, their CSV / JSON-lines / table encodings, and the
//! quarantine dump for counterexamples.

use std::cmp::Ordering;
use std::io::{self, Write};

use serde::Serialize;

use crate::bounds::{BoundReport, CheckRecord, CheckStatus, Verdict};

pub const CSV_COLUMNS: [&str; 12] = [
    "graph_id",
    "n",
    "m",
    "lambda1",
    "s_plus",
    "wilf",
    "ew",
    "omega",
    "omega_status",
    "verdict",
    "family_check",
    "elapsed_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    #[value(alias = "json-lines")]
    Jsonl,
    #[value(alias = "pretty-table")]
    Table,
}

/// One output row. Field order matches [`CSV_COLUMNS`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub lambda1: Option<f64>,
    pub s_plus: Option<f64>,
    pub wilf: Option<f64>,
    pub ew: Option<f64>,
    pub omega: Option<usize>,
    pub omega_status: String,
    pub verdict: Verdict,
    pub family_check: String,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub detail: Detail,
}

/// Data kept for the quarantine file only.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Detail {
    pub graph6: String,
    pub eigenvalues: Vec<f64>,
    pub witness: Vec<usize>,
    pub checks: Vec<CheckRecord>,
    pub anomaly: Option<String>,
}

impl Row {
    pub fn from_report(report: BoundReport, elapsed_ms: u64) -> Row {
        Row {
            family_check: report.family_summary(),
            graph_id: report.graph_id,
            n: report.n,
            m: report.m,
            lambda1: Some(report.lambda1),
            s_plus: Some(report.s_plus),
            wilf: Some(report.wilf),
            ew: report.ew,
            omega: Some(report.omega.omega),
            omega_status: report.omega.status.to_string(),
            verdict: report.verdict,
            elapsed_ms,
            detail: Detail {
                graph6: report.graph6,
                eigenvalues: report.spectrum.eigenvalues().to_vec(),
                witness: report.omega.witness,
                checks: report.family_checks,
                anomaly: report.anomaly,
            },
        }
    }

    pub fn infeasible(graph_id: String, reason: &str) -> Row {
        Row {
            graph_id,
            n: 0,
            m: 0,
            lambda1: None,
            s_plus: None,
            wilf: None,
            ew: None,
            omega: None,
            omega_status: "-".into(),
            verdict: Verdict::Infeasible,
            family_check: format!("infeasible: {reason}"),
            elapsed_ms: 0,
            detail: Detail::default(),
        }
    }

    /// A failed conjecture verdict or any failed family inequality.
    pub fn is_counterexample(&self) -> bool {
        self.verdict == Verdict::Fails || self.detail.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

/// Orders ids so that embedded numbers compare numerically
/// (`paley-5 < paley-13`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, _) => return Ordering::Less,
            (_, None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let dx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let dy = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let (nx, ny) = (trim_zeros(&x[..dx]), trim_zeros(&y[..dy]));
                let ord = nx.len().cmp(&ny.len()).then_with(|| nx.cmp(ny));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[dx..];
                y = &y[dy..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let k = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[k..]
}

pub fn sort_rows(rows: &mut [Row]) {
    rows.sort_by(|a, b| natural_cmp(&a.graph_id, &b.graph_id));
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub holds: usize,
    pub inconclusive: usize,
    pub out_of_scope: usize,
    pub fails: usize,
    pub infeasible: usize,
    pub failed_checks: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Summary {
        let mut s = Summary::default();
        for r in rows {
            match r.verdict {
                Verdict::Holds => s.holds += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
                Verdict::OutOfScope => s.out_of_scope += 1,
                Verdict::Fails => s.fails += 1,
                Verdict::Infeasible => s.infeasible += 1,
            }
            s.failed_checks += r.detail.checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        }
        s
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "holds={} inconclusive={} out-of-scope={} fails={} infeasible={} failed-checks={}",
            self.holds, self.inconclusive, self.out_of_scope, self.fails, self.infeasible, self.failed_checks
        )
    }
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cells(r: &Row) -> [String; 12] {
    [
        r.graph_id.clone(),
        r.n.to_string(),
        r.m.to_string(),
        opt_f64(r.lambda1),
        opt_f64(r.s_plus),
        opt_f64(r.wilf),
        opt_f64(r.ew),
        r.omega.map(|w| w.to_string()).unwrap_or_default(),
        r.omega_status.clone(),
        r.verdict.to_string(),
        r.family_check.clone(),
        r.elapsed_ms.to_string(),
    ]
}

pub fn write_csv(mut out: impl Write, rows: &[Row]) -> io::Result<()> {
    writeln!(out, "{}", CSV_COLUMNS.join(","))?;
    for r in rows {
        let line: Vec<String> = cells(r).iter().map(|c| csv_field(c)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_jsonl(mut out: impl Write, rows: &[Row]) -> io::Result<()> {
    for r in rows {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_table(mut out: impl Write, rows: &[Row], summary: &Summary) -> io::Result<()> {
    let fixed = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into());
    let body: Vec<[String; 12]> = rows
        .iter()
        .map(|r| {
            let mut c = cells(r);
            c[3] = fixed(r.lambda1);
            c[4] = fixed(r.s_plus);
            c[5] = fixed(r.wilf);
            c[6] = fixed(r.ew);
            c
        })
        .collect();
    let mut widths: Vec<usize> = CSV_COLUMNS.iter().map(|c| c.len()).collect();
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let render = |cols: Vec<String>| {
        let padded: Vec<String> = cols.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", render(CSV_COLUMNS.iter().map(|c| c.to_string()).collect()))?;
    writeln!(out, "{}", render(widths.iter().map(|&w| "-".repeat(w)).collect()))?;
    for row in body {
        writeln!(out, "{}", render(row.to_vec()))?;
    }
    writeln!(out)?;
    writeln!(out, "summary: {summary}")
}

pub fn write_rows(out: impl Write, format: Format, rows: &[Row]) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(out, rows),
        Format::Jsonl => write_jsonl(out, rows),
        Format::Table => write_table(out, rows, &Summary::of(rows)),
    }
}

#[derive(Serialize)]
struct QuarantineEntry<'a> {
    graph_id: &'a str,
    graph6: &'a str,
    verdict: Verdict,
    eigenvalues: &'a [f64],
    witness: &'a [usize],
    failed_checks: Vec<&'a CheckRecord>,
    anomaly: Option<&'a str>,
}

/// One JSON object per counterexample row.
pub fn write_quarantine(mut out: impl Write, rows: &[Row]) -> io::Result<usize> {
    let mut count = 0;
    for r in rows.iter().filter(|r| r.is_counterexample()) {
        let entry = QuarantineEntry {
            graph_id: &r.graph_id,
            graph6: &r.detail.graph6,
            verdict: r.verdict,
            eigenvalues: &r.detail.eigenvalues,
            witness: &r.detail.witness,
            failed_checks: r.detail.checks.iter().filter(|c| c.status == CheckStatus::Fail).collect(),
            anomaly: r.detail.anomaly.as_deref(),
        };
        serde_json::to_writer(&mut out, &entry)?;
        writeln!(out)?;
        count += 1;
    }
    Ok(count)
}
