//! The `scv` command line: `check`, `sweep` and `srg`.

pub mod config;
pub mod families;
pub mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{
    conference_check, ew_from, lambda_eq_mu_check, lambda_eq_mu_splus_given_mu, srg_lambda_eq_mu_splus, wilf_from,
    CheckRecord, VERDICT_TOL,
};
use crate::clique::{Budget, DEFAULT_MAX_NODES};
use crate::generators::{srg_spectrum, SrgParams};
use crate::graph::{parse_graph6, read_graph6, Graph6ReadError};

use config::{ConfigError, FileConfig};
use families::{evaluate, family_items, Family, FamilyCheck, FamilyQuery, Item};
use report::{sort_rows, write_quarantine, write_rows, Format, Row, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

pub const DEFAULT_BUDGET_MS: u64 = 60_000;
pub const DEFAULT_QUARANTINE: &str = "scv-quarantine.jsonl";

#[derive(Debug, Parser)]
#[command(name = "scv", version, about = "Spectral clique-number bounds and conjecture checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every graph in a graph6 file (`-` for stdin) or a single graph6 string.
    Check(CheckArgs),
    /// Generate a graph family and check each member.
    Sweep(SweepArgs),
    /// Report closed-form data for srg(n, d, lambda, mu).
    Srg(SrgArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Wall-clock limit per graph for the clique search.
    #[arg(long, env = "SCV_BUDGET_MS")]
    pub budget_ms: Option<u64>,
    /// Search-node limit per graph for the clique search.
    #[arg(long, env = "SCV_MAX_NODES")]
    pub max_nodes: Option<u64>,
    #[arg(long, env = "SCV_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, env = "SCV_FORMAT")]
    pub format: Option<Format>,
    /// Worker threads.
    #[arg(long, env = "SCV_JOBS")]
    pub jobs: Option<usize>,
    /// Where counterexamples are written.
    #[arg(long, env = "SCV_QUARANTINE")]
    pub quarantine: Option<PathBuf>,
    /// Write 0 in elapsed_ms so reports are byte-reproducible.
    #[arg(long, env = "SCV_NO_TIMING")]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    pub input: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, env = "SCV_FAMILY")]
    pub family: Option<Family>,
    /// Inclusive parameter range `A..B`.
    #[arg(long, env = "SCV_RANGE")]
    pub range: Option<String>,
    /// Random graphs per order (gnp).
    #[arg(long, env = "SCV_COUNT")]
    pub count: Option<usize>,
    /// Edge probability (gnp).
    #[arg(long, env = "SCV_P")]
    pub p: Option<f64>,
    /// Subset size (kneser).
    #[arg(long, env = "SCV_K")]
    pub k: Option<usize>,
    #[arg(long, env = "SCV_SEED")]
    pub seed: Option<u64>,
    /// Input for the graph6_file family.
    #[arg(long, env = "SCV_FILE")]
    pub file: Option<PathBuf>,
    /// Flat key = value file; flags and environment take precedence.
    #[arg(long, env = "SCV_CONFIG")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SrgArgs {
    pub n: u64,
    pub d: u64,
    pub lambda: u64,
    pub mu: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: line {line}: {message}")]
    Format { path: String, line: usize, message: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

fn io_err(path: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}

/// Fully resolved sweep settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    pub lo: u64,
    pub hi: u64,
    pub count: usize,
    pub p: f64,
    pub k: usize,
    pub seed: u64,
    pub file: Option<PathBuf>,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub budget: Budget,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
    pub quarantine: PathBuf,
    pub timing: bool,
}

/// Parses `A..B`, `A..=B` or a single `A`; both ends inclusive.
pub fn parse_range(text: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("invalid range `{text}`; expected A..B"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (text.trim(), text.trim()),
    };
    let lo: u64 = lo.parse().map_err(|_| bad())?;
    let hi: u64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Usage(format!("range `{text}` is empty")));
    }
    Ok((lo, hi))
}

/// Flag or environment value if set, else the config file value, else `None`.
fn pick<T: std::str::FromStr>(flag: Option<T>, file: &FileConfig, key: &str) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("config: invalid value `{v}` for {key}"))),
    }
}

fn pick_enum<T: ValueEnum>(flag: Option<T>, file: &FileConfig, key: &str) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        None => Ok(None),
        Some(v) => T::from_str(v, true)
            .map(Some)
            .map_err(|_| CliError::Usage(format!("config: invalid value `{v}` for {key}"))),
    }
}

fn parse_bool(v: &str) -> Option<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" | "" => Some(false),
        _ => None,
    }
}

impl OutputArgs {
    fn resolve(self, file: &FileConfig) -> Result<OutputConfig, CliError> {
        let budget_ms = pick(self.budget_ms, file, "budget_ms")?.unwrap_or(DEFAULT_BUDGET_MS);
        if budget_ms == 0 {
            return Err(CliError::Usage("budget must be positive".into()));
        }
        let max_nodes = pick(self.max_nodes, file, "max_nodes")?.unwrap_or(DEFAULT_MAX_NODES);
        let jobs = pick(self.jobs, file, "jobs")?.unwrap_or(0);
        let no_timing = if self.no_timing {
            true
        } else {
            match file.get("no_timing") {
                None => false,
                Some(v) => parse_bool(v).ok_or_else(|| CliError::Usage(format!("config: invalid value `{v}` for no_timing")))?,
            }
        };
        Ok(OutputConfig {
            budget: Budget::nodes(max_nodes).with_time_limit(Duration::from_millis(budget_ms)),
            out: pick(self.out, file, "out")?,
            format: pick_enum(self.format, file, "format")?.unwrap_or(Format::Csv),
            jobs,
            quarantine: pick(self.quarantine, file, "quarantine")?.unwrap_or_else(|| PathBuf::from(DEFAULT_QUARANTINE)),
            timing: !no_timing,
        })
    }
}

impl SweepArgs {
    /// Merges flags (already merged with `SCV_*` variables by clap) over the
    /// config file over defaults.
    pub fn resolve(self) -> Result<SweepConfig, CliError> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let family = pick_enum(self.family, &file, "family")?.ok_or_else(|| CliError::Usage("--family is required".into()))?;
        let p = pick(self.p, &file, "p")?.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&p) {
            return Err(CliError::Usage(format!("p = {p} is not a probability")));
        }
        let source = pick(self.file, &file, "file")?;
        let (lo, hi) = match pick::<String>(self.range, &file, "range")? {
            Some(r) => parse_range(&r)?,
            None if family == Family::Graph6File => (0, 0),
            None => return Err(CliError::Usage("--range is required".into())),
        };
        if family == Family::Graph6File && source.is_none() {
            return Err(CliError::Usage("the graph6_file family needs --file".into()));
        }
        Ok(SweepConfig {
            family,
            lo,
            hi,
            count: pick(self.count, &file, "count")?.unwrap_or(1),
            p,
            k: pick(self.k, &file, "k")?.unwrap_or(2),
            seed: pick(self.seed, &file, "seed")?.unwrap_or(0),
            file: source,
            output: self.output.resolve(&file)?,
        })
    }
}

/// Reads graph6 lines into items named `line-<number>`.
fn graph6_items(reader: impl BufRead, path: &str) -> Result<Vec<Item>, CliError> {
    let mut items = Vec::new();
    for entry in read_graph6(reader) {
        match entry {
            Ok((line, graph)) => items.push(Item {
                graph_id: format!("line-{line}"),
                member: families::Member::Graph {
                    graph,
                    check: FamilyCheck::Generic,
                },
            }),
            Err(Graph6ReadError::Io(source)) => return Err(CliError::Io { path: path.into(), source }),
            Err(Graph6ReadError::Line { line, source }) => {
                return Err(CliError::Format {
                    path: path.into(),
                    line,
                    message: source.to_string(),
                })
            }
        }
    }
    Ok(items)
}

fn graph6_file_items(path: &Path) -> Result<Vec<Item>, CliError> {
    let shown = path.display().to_string();
    let file = File::open(path).map_err(io_err(shown.clone()))?;
    graph6_items(BufReader::new(file), &shown)
}

/// Evaluates items on `jobs` threads (0 = all cores) and sorts by graph id.
pub fn evaluate_all(items: Vec<Item>, out: &OutputConfig) -> Result<Vec<Row>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(out.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let budget = out.budget;
    let timing = out.timing;
    let mut rows: Vec<Row> = pool.install(|| items.into_par_iter().map(|item| evaluate(item, &budget, timing)).collect());
    sort_rows(&mut rows);
    Ok(rows)
}

/// Writes rows, the summary and the quarantine file; returns the exit code.
fn emit(rows: &[Row], out: &OutputConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match &out.out {
        Some(path) => {
            let shown = path.display().to_string();
            let file = File::create(path).map_err(io_err(shown.clone()))?;
            let mut w = BufWriter::new(file);
            write_rows(&mut w, out.format, rows).and_then(|_| w.flush()).map_err(io_err(shown))?;
        }
        None => write_rows(&mut *stdout, out.format, rows).map_err(io_err("<stdout>"))?,
    }
    let summary = Summary::of(rows);
    if !(out.format == Format::Table && out.out.is_none()) {
        let _ = writeln!(stderr, "summary: {summary}");
    }
    if summary.inconclusive > 0 {
        let _ = writeln!(stderr, "warning: {} inconclusive verdict(s)", summary.inconclusive);
    }
    if rows.iter().any(Row::is_counterexample) {
        let shown = out.quarantine.display().to_string();
        let file = File::create(&out.quarantine).map_err(io_err(shown.clone()))?;
        let mut w = BufWriter::new(file);
        let n = write_quarantine(&mut w, rows).and_then(|n| w.flush().map(|_| n)).map_err(io_err(shown.clone()))?;
        let _ = writeln!(stderr, "COUNTEREXAMPLE: {n} graph(s) written to {shown}");
        return Ok(EXIT_COUNTEREXAMPLE);
    }
    Ok(EXIT_OK)
}

pub fn cmd_check(args: CheckArgs, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let out = args.output.resolve(&FileConfig::default())?;
    let items = if args.input == "-" {
        graph6_items(stdin, "<stdin>")?
    } else if Path::new(&args.input).exists() {
        graph6_file_items(Path::new(&args.input))?
    } else {
        match parse_graph6(&args.input) {
            Ok(graph) => vec![Item {
                graph_id: args.input.clone(),
                member: families::Member::Graph {
                    graph,
                    check: FamilyCheck::Generic,
                },
            }],
            Err(_) => {
                return Err(CliError::Io {
                    path: args.input,
                    source: io::Error::new(io::ErrorKind::NotFound, "no such file and not a graph6 string"),
                })
            }
        }
    };
    let rows = evaluate_all(items, &out)?;
    emit(&rows, &out, stdout, stderr)
}

pub fn cmd_sweep(cfg: SweepConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let items = match cfg.family {
        Family::Graph6File => graph6_file_items(cfg.file.as_deref().expect("checked in resolve"))?,
        family => family_items(&FamilyQuery {
            family,
            lo: cfg.lo,
            hi: cfg.hi,
            count: cfg.count,
            p: cfg.p,
            k: cfg.k,
            seed: cfg.seed,
        }),
    };
    let rows = evaluate_all(items, &cfg.output)?;
    emit(&rows, &cfg.output, stdout, stderr)
}

fn write_record(out: &mut dyn Write, rec: &CheckRecord) -> io::Result<()> {
    writeln!(out, "  {}: {}", rec.name, rec.status)?;
    for (k, v) in &rec.values {
        writeln!(out, "    {k} = {v}")?;
    }
    for (k, ok) in &rec.claims {
        writeln!(out, "    [{}] {k}", if *ok { "ok" } else { "FAILED" })?;
    }
    for note in &rec.notes {
        writeln!(out, "    note: {note}")?;
    }
    Ok(())
}

/// Closed-form report for srg parameters; infeasibility is an outcome, not
/// an error.
pub fn cmd_srg(args: &SrgArgs, out: &mut dyn Write) -> io::Result<i32> {
    let p = SrgParams::new(args.n, args.d, args.lambda, args.mu);
    writeln!(out, "{p}")?;
    let (lhs, rhs) = p.relation_sides();
    writeln!(out, "relation: (n-d-1)mu = {lhs}, d(d-lambda-1) = {rhs}")?;
    let mut failed = false;
    match srg_spectrum(&p) {
        Ok(sp) => {
            writeln!(out, "feasible: yes")?;
            let groups: Vec<String> = sp.groups().iter().map(|(v, m)| format!("{v}^{m}")).collect();
            writeln!(out, "spectrum: {}", groups.join(", "))?;
            let s_plus = sp.s_plus();
            writeln!(out, "s_plus: {s_plus}")?;
            writeln!(out, "wilf: {}", wilf_from(p.n as usize, sp.d))?;
            match ew_from(p.n as usize, s_plus) {
                Ok(ew) => writeln!(out, "ew: {ew}")?,
                Err(e) => writeln!(out, "ew: anomaly ({e})")?,
            }
            let mut records = Vec::new();
            if p.mu >= 1 && p == SrgParams::conference(p.mu) {
                records.push(conference_check(p.mu));
            }
            if p.lambda == p.mu {
                records.push(lambda_eq_mu_check(&p));
            }
            if !records.is_empty() {
                writeln!(out, "family checks:")?;
            }
            for rec in records {
                match rec {
                    Ok(rec) => {
                        failed |= rec.status == crate::bounds::CheckStatus::Fail;
                        write_record(out, &rec)?;
                    }
                    Err(e) => writeln!(out, "  error: {e}")?,
                }
            }
        }
        Err(e) => {
            writeln!(out, "feasible: no ({e})")?;
            if p.lambda == p.mu && p.d > p.mu && p.n >= 2 * p.d {
                let s_plus = lambda_eq_mu_splus_given_mu(p.n, p.d, p.mu);
                writeln!(out, "lambda = mu route evaluated formally with the given mu:")?;
                writeln!(out, "  s_plus = d^2 + (d-mu)/2 ((n-1) - d/sqrt(d-mu)) = {s_plus}")?;
                writeln!(out, "  4n^2/9 = {}", 4.0 * (p.n * p.n) as f64 / 9.0)?;
                if let Ok(ew) = ew_from(p.n as usize, s_plus) {
                    writeln!(out, "  ew = {ew} ({})", if ew <= 3.0 + VERDICT_TOL { "<= 3" } else { "> 3" })?;
                }
                match srg_lambda_eq_mu_splus(p.n, p.d) {
                    Ok(v) => writeln!(out, "  substituted mu = d(d-1)/(n-1) = {} (differs from the given mu)", v.mu)?,
                    Err(e) => writeln!(out, "  substituted form: {e}")?,
                }
                writeln!(out, "  warning: parameters are infeasible; these values describe no graph")?;
            }
        }
    }
    Ok(if failed { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
}

/// Parses arguments and runs a command; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_ERROR;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Check(args) => cmd_check(args, stdin, stdout, stderr),
        Command::Sweep(args) => args.resolve().and_then(|cfg| cmd_sweep(cfg, stdout, stderr)),
        Command::Srg(args) => cmd_srg(&args, stdout).map_err(io_err("<stdout>")),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut stdin = io::empty();
        let argv: Vec<String> = std::iter::once("scv").chain(args.iter().copied()).map(String::from).collect();
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..101").unwrap(), (5, 101));
        assert_eq!(parse_range("6..=12").unwrap(), (6, 12));
        assert_eq!(parse_range("20").unwrap(), (20, 20));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn srg_command_reports() {
        let (code, out, _) = run_capture(&["srg", "10", "3", "0", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("spectrum: 3^1, 1^5, -2^4"), "{out}");
        assert!(out.contains("s_plus: 14"));
        assert!(out.contains("ew: 1.5978"));

        let (code, out, _) = run_capture(&["srg", "5", "2", "0", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("feasible: no"));
        assert!(out.contains("(n-d-1)mu = 4, d(d-lambda-1) = 2"));

        let (_, out, _) = run_capture(&["srg", "56", "10", "2", "2"]);
        assert!(out.contains("feasible: no"));
        assert!(out.contains("ew = 1.45"), "{out}");
        assert!(out.contains("(<= 3)"));
        assert!(out.contains("not an integer"));

        let (_, out, _) = run_capture(&["srg", "16", "6", "2", "2"]);
        assert!(out.contains("lambda-eq-mu(srg(16,6,2,2)): pass"), "{out}");
        let (_, out, _) = run_capture(&["srg", "13", "6", "2", "3"]);
        assert!(out.contains("conference(mu=3): pass"), "{out}");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["sweep", "--range", "5..9"]).0, EXIT_ERROR);
        assert_eq!(run_capture(&["sweep", "--family", "paley"]).0, EXIT_ERROR);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_ERROR);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["check", "definitely/not/here.g6"]).0, EXIT_ERROR);
    }

    #[test]
    fn counterexample_rows_exit_two_and_quarantine() {
        let dir = std::env::temp_dir().join(format!("scv-quarantine-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let out = OutputConfig {
            budget: Budget::default(),
            out: Some(dir.join("rows.csv")),
            format: Format::Csv,
            jobs: 1,
            quarantine: dir.join("q.jsonl"),
            timing: false,
        };
        let mut row = Row::infeasible("fake-1".into(), "");
        row.verdict = crate::bounds::Verdict::Fails;
        row.detail.graph6 = "C~".into();
        let mut err = Vec::new();
        assert_eq!(emit(&[row], &out, &mut Vec::new(), &mut err).unwrap(), EXIT_COUNTEREXAMPLE);
        let q = std::fs::read_to_string(dir.join("q.jsonl")).unwrap();
        assert!(q.contains("\"graph6\":\"C~\""));
        assert!(String::from_utf8(err).unwrap().contains("COUNTEREXAMPLE"));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn check_reads_stdin() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut stdin = io::Cursor::new(b"DQc\n\nC~\n".to_vec());
        let code = run(["scv", "check", "-", "--no-timing"], &mut stdin, &mut out, &mut err);
        assert_eq!(code, 0);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("line-1,5,4,"));
        assert!(text.contains("line-3,4,6,"));

        let mut stdin = io::Cursor::new(b"C~\nC~x\n".to_vec());
        let code = run(["scv", "check", "-"], &mut stdin, &mut Vec::new(), &mut err);
        assert_eq!(code, EXIT_ERROR);
        assert!(String::from_utf8(err).unwrap().contains("line 2"));
    }
}
