//! Command-line interface: `moment`, `predict`, `verify`, `report`.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ffmoments_core::moments::{Method, MomentOptions, DEFAULT_BUDGET};
use ffmoments_core::verify::SuiteReport;
use ffmoments_core::FieldParams;

use crate::cache::Cache;
use crate::error::{Error, Result};
use crate::experiment::{obtain, Outcome, RunOptions};
use crate::predict::{self, Predictor, Status, Table};
use crate::report::{self, Row};
use crate::suites::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "ffmoments", version, about = "Exact moments of quadratic L-functions over F_q[x] and their predicted asymptotics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute (or fetch from the cache) one moment and compare it with the prediction.
    Moment(MomentArgs),
    /// Print the prediction polynomials and constants with their consistency checks.
    Predict(PredictArgs),
    /// Run verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Tabulate moments against predictions over a grid.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A prime `q ≡ 1 (mod 4)`.
fn parse_q(s: &str) -> std::result::Result<u32, String> {
    let q: u32 = s.trim().parse().map_err(|e| format!("{s:?} is not a number: {e}"))?;
    if q % 4 != 1 {
        return Err(format!("q must be ≡ 1 (mod 4), got {q}"));
    }
    FieldParams::for_characters(q).map_err(|e| e.to_string())?;
    Ok(q)
}

/// `""`, `"3"`, `"1,2,4"` or an inclusive range `"1..4"` / `"1-4"`.
fn parse_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    if let Some((a, b)) = s.split_once("..").or_else(|| s.split_once('-')) {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Euler-product truncation degree (default: automatic with a 1e-12 certificate).
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Output format.
    #[arg(long)]
    pub out: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[arg(long, default_value = "pointcount", value_parser = parse_method)]
    pub method: Method,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Refuse runs estimated above this many field operations.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: f64,
    /// Cache root (default: $FFMOMENTS_CACHE, else ./cache).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: ffmoments_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(long, value_parser = parse_q)]
    pub q: u32,
    #[arg(long)]
    pub g: usize,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    pub k: u32,
    #[command(flatten)]
    pub compute: ComputeArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long, value_parser = parse_q)]
    pub q: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    pub k: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "5", value_parser = parse_q)]
    pub q: u32,
    /// Suites to run (repeatable; default: all).
    #[arg(long, value_enum)]
    pub suite: Vec<Suite>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Comma-separated list of q.
    #[arg(long, default_value = "5")]
    pub q: String,
    /// Genera: list or inclusive range such as 1..4.
    #[arg(long)]
    pub g: String,
    /// Moment orders: list or range.
    #[arg(long, default_value = "2")]
    pub k: String,
    /// Compute missing records instead of failing.
    #[arg(long)]
    pub compute: bool,
    #[command(flatten)]
    pub run: ComputeArgs,
    #[command(flatten)]
    pub common: Common,
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli, &mut io::stdout().lock()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Core(ffmoments_core::Error::BudgetExceeded { .. }) = e {
                eprintln!("hint: pass --budget with a larger value, or use a faster --method");
            }
            e.exit_code()
        }
    }
}

/// Output piped into `head` and friends is not an error.
fn is_broken_pipe(e: &Error) -> bool {
    let io = match e {
        Error::Io(io) => Some(io.kind()),
        Error::Json(j) => j.io_error_kind(),
        _ => None,
    };
    io == Some(io::ErrorKind::BrokenPipe)
}

/// Runs one command, writing its report to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Moment(a) => moment(a, out),
        Command::Predict(a) => predict_cmd(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Report(a) => report_cmd(a, out),
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Usage(e.to_string()))
}

fn run_options(c: &ComputeArgs, cached_only: bool) -> RunOptions {
    RunOptions {
        method: c.method,
        moment: MomentOptions { budget: Some(c.budget), ..MomentOptions::default() },
        cached_only,
    }
}

fn moment(a: MomentArgs, out: &mut dyn Write) -> Result<i32> {
    let cache = Cache::resolve(a.compute.cache_dir.as_deref());
    let mut p = Predictor::new(a.q, a.common.max_degree)?;
    let outcome = pool(a.compute.threads)?.install(|| {
        // built inside the pool so the partition count follows its size
        let opts = run_options(&a.compute, false);
        obtain(&cache, &mut p, a.g, &[a.k], &opts)
    })?;
    let (rec, tag) = match &outcome[0] {
        Outcome::Cached(r) => (r, "cached"),
        Outcome::Computed(r) => (r, "computed"),
        Outcome::Missing => unreachable!("computation was allowed"),
    };
    match a.common.out.unwrap_or(Format::Json) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rec)?;
            writeln!(out)?;
        }
        Format::Csv => report::write_csv(&[Row::new(rec, None)], &mut *out)?,
        Format::Text => writeln!(out, "{}", summary(rec))?,
    }
    eprintln!("{} [{tag}]", summary(rec));
    Ok(0)
}

fn summary(r: &crate::record::ExperimentRecord) -> String {
    format!(
        "q={} g={} k={} {}: moment {} prediction {:.6} deviation {:.6e} ({} ms)",
        r.q, r.g, r.k, r.method, r.float, r.prediction, r.deviation, r.runtime_ms
    )
}

fn write_table(t: &Table, fmt: Format, out: &mut dyn Write) -> Result<()> {
    match fmt {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &t.entries)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for e in &t.entries {
                w.serialize(e)?;
            }
            w.flush()?;
        }
        Format::Text => {
            let mut section = "";
            for e in &t.entries {
                if e.section != section {
                    section = e.section;
                    writeln!(out, "[{section}]")?;
                }
                let status = match e.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "",
                };
                write!(out, "  {:<44} {:>24.16e}", e.name, e.value)?;
                if let (Some(d), Some(tol)) = (e.deviation, e.tolerance) {
                    write!(out, "  dev {d:.2e} (tol {tol:.0e}) {status}")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

fn predict_cmd(a: PredictArgs, out: &mut dyn Write) -> Result<i32> {
    let mut p = Predictor::new(a.q, a.common.max_degree)?;
    let t = predict::table(&mut p, a.k)?;
    write_table(&t, a.common.out.unwrap_or(Format::Text), out)?;
    Ok(if t.passed() { 0 } else { 1 })
}

#[derive(Serialize)]
struct SuiteRow<'a> {
    suite: &'a str,
    q: u32,
    passed: bool,
    checked: u64,
    failures: u64,
    max_deviation: f64,
    detail: &'a str,
}

fn suite_row(q: u32, r: &SuiteReport) -> SuiteRow<'_> {
    SuiteRow {
        suite: &r.name,
        q,
        passed: r.passed(),
        checked: r.checked,
        failures: r.failures,
        max_deviation: r.max_deviation,
        detail: &r.detail,
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let list = if a.suite.is_empty() { Suite::ALL.to_vec() } else { a.suite.clone() };
    let mut reports = Vec::new();
    for s in list {
        let r = suites::run(s, a.q, a.common.max_degree)?;
        eprintln!("{:<11} {}", r.name, if r.passed() { "PASS" } else { "FAIL" });
        reports.push(r);
    }
    let rows: Vec<SuiteRow> = reports.iter().map(|r| suite_row(a.q, r)).collect();
    match a.common.out.unwrap_or(Format::Text) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &rows {
                writeln!(
                    out,
                    "{:<11} {} checked {:>8} failures {:>4} max deviation {:.3e}  {}",
                    r.suite,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.checked,
                    r.failures,
                    r.max_deviation,
                    r.detail
                )?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}

fn report_cmd(a: ReportArgs, out: &mut dyn Write) -> Result<i32> {
    let qs = a
        .q
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_q(s).map_err(Error::Usage))
        .collect::<Result<Vec<_>>>()?;
    let gs: Vec<usize> = parse_list(&a.g).map_err(Error::Usage)?.into_iter().map(|g| g as usize).collect();
    let ks = parse_list(&a.k).map_err(Error::Usage)?;
    if let Some(&k) = ks.iter().find(|&&k| !(1..=3).contains(&k)) {
        return Err(Error::Usage(format!("k must be 1, 2 or 3, got {k}")));
    }
    if gs.contains(&0) {
        return Err(Error::Usage("g must be >= 1".into()));
    }
    let cache = Cache::resolve(a.run.cache_dir.as_deref());
    let workers = pool(a.run.threads)?;
    let mut rows = Vec::new();
    let mut missing = Vec::new();
    for &q in &qs {
        if gs.is_empty() || ks.is_empty() {
            continue;
        }
        let mut p = Predictor::new(q, a.common.max_degree)?;
        for &g in &gs {
            let outcomes = workers.install(|| {
                let opts = run_options(&a.run, !a.compute);
                obtain(&cache, &mut p, g, &ks, &opts)
            })?;
            for (o, &k) in outcomes.iter().zip(&ks) {
                match o.record() {
                    Some(r) => {
                        let lead = if k == 3 { Some(p.third_leading_only(g)?) } else { None };
                        rows.push(Row::new(r, lead));
                    }
                    None => missing.push(format!("q={q} g={g} k={k} ({})", a.run.method)),
                }
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingRecords(missing));
    }
    match a.common.out.unwrap_or(Format::Csv) {
        Format::Json => report::write_json(&rows, &mut *out)?,
        Format::Csv | Format::Text => report::write_csv(&rows, &mut *out)?,
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_list("1-3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_list("2,5").unwrap(), vec![2, 5]);
        assert_eq!(parse_list(" ").unwrap(), Vec::<u32>::new());
        assert!(parse_list("a").is_err());
    }

    #[test]
    fn q_validation() {
        assert_eq!(parse_q("13").unwrap(), 13);
        assert!(parse_q("7").unwrap_err().contains("q must be ≡ 1 (mod 4)"));
        assert!(parse_q("9").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn flags_parse() {
        let c = Cli::try_parse_from(["ffmoments", "moment", "--q", "5", "--g", "2", "--k", "2", "--threads", "8"]).unwrap();
        let Command::Moment(m) = c.command else { panic!("moment") };
        assert_eq!((m.q, m.g, m.k, m.compute.threads), (5, 2, 2, Some(8)));
        assert_eq!(m.compute.method, Method::PointCount);
        let e = Cli::try_parse_from(["ffmoments", "moment", "--q", "7", "--g", "2", "--k", "2"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(Cli::try_parse_from(["ffmoments", "verify", "--suite", "fe", "--suite", "genid"]).is_ok());
        assert!(Cli::try_parse_from(["ffmoments", "verify", "--suite", "nope"]).is_err());
    }
}
