//! Command-line front end for `maxsub-core`.
//!
//! [`run`] does all the work and returns the text and exit code, so the
//! binary is a thin wrapper and tests can drive commands in-process.

pub mod record;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use maxsub_core::bkm::{b_direct, b_recursive, BQuery};
use maxsub_core::checks::{self, Level};
use maxsub_core::maxsub::{count_with, CountOptions, CountQuery};
use maxsub_core::poly::Polynomial;
use maxsub_core::twisted::{
    decompose_degree, reduce_to_grassmannian, s_invariants, twisted_invariant, GromovQuery,
    SInvariants,
};
use maxsub_core::Error;

pub use record::{OutputRecord, Paths, Query, SReport, SCHEMA};

pub const THREADS_ENV: &str = "MAXSUB_THREADS";

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const CONDITION: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(
    name = "maxsub",
    version,
    about = "Exact counts of maximal subbundles and twisted Gromov invariants"
)]
pub struct Cli {
    /// Worker threads (overrides MAXSUB_THREADS; default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of maximal rank-k subbundles m(r, d, k, g).
    Count(CountArgs),
    /// Twisted Gromov invariant N_{d,e}(P).
    Gromov(GromovArgs),
    /// The auxiliary sum B(k, m) over nontrivial r-th roots of unity.
    Bkm(BkmArgs),
    /// m(r, d, k, g) over a grid of r and d mod r.
    Table(TableArgs),
    /// Run the built-in consistency suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit a JSON record instead of plain text.
    #[arg(long)]
    pub json: bool,
    /// Print evaluation details after the value.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub g: i64,
    /// Skip the direct root-of-unity formula and use the reduction only.
    #[arg(long)]
    pub no_direct: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GromovArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub g: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub e: i64,
    /// Weighted-homogeneous polynomial in X1..Xk, e.g. "3*X1^2*X2 + 1/2*X1^4".
    #[arg(long)]
    pub poly: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BkmArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSelect {
    All,
    One(u32),
}

fn parse_k(s: &str) -> Result<KSelect, String> {
    if s == "all" {
        return Ok(KSelect::All);
    }
    match s.parse::<u32>() {
        Ok(k) if k >= 1 => Ok(KSelect::One(k)),
        _ => Err(format!("expected a positive integer or 'all', got '{s}'")),
    }
}

/// `A..B`, inclusive on both ends, with 2 <= A <= B.
pub fn parse_r_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("'{t}' is not a nonnegative integer"))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a < 2 || a > b {
        return Err(format!("need 2 <= A <= B, got {a}..{b}"));
    }
    Ok(a..=b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Inclusive range of ranks, e.g. 2..5.
    #[arg(long, value_parser = parse_r_range)]
    pub r_range: RangeInclusive<u32>,
    /// Subbundle rank, or "all" for every 1 <= k < r.
    #[arg(long, value_parser = parse_k)]
    pub k: KSelect,
    #[arg(long)]
    pub g: i64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: LevelArg,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: exit::USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }

    fn with_warnings(mut self, warnings: &[String]) -> Self {
        for w in warnings {
            let _ = writeln!(self.stderr, "warning: {w}");
        }
        self
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ConditionViolated { .. } => exit::CONDITION,
        e if e.is_internal() => exit::INTERNAL,
        _ => exit::USAGE,
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("error: {THREADS_ENV}='{v}' is not a thread count\n")),
        _ => Ok(None),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Outcome::usage(e.render().to_string()),
        Err(e) => return Outcome::ok(e.render().to_string()),
    };
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(msg) => return Outcome::usage(msg),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| dispatch(cli.command)),
        Err(e) => Outcome::usage(format!("error: cannot start thread pool: {e}\n")),
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Count(a) => cmd_count(&a),
        Command::Gromov(a) => cmd_gromov(&a),
        Command::Bkm(a) => cmd_bkm(&a),
        Command::Table(a) => cmd_table(&a),
        Command::Selftest(a) => cmd_selftest(&a),
    }
}

fn s_report(s: &SInvariants) -> SReport {
    let (a, b) = decompose_degree(s.d, s.r);
    SReport {
        a,
        b,
        s_min: s.s_min,
        epsilon: s.epsilon,
        e_max: s.e_max,
    }
}

fn render(record: &OutputRecord, output: &Output) -> Outcome {
    if output.json {
        return Outcome::ok(format!("{}\n", record.to_json())).with_warnings(&record.warnings);
    }
    let mut out = format!("{}\n", record.value.as_deref().unwrap_or(""));
    if output.verbose {
        if let Some(s) = &record.s_report {
            let _ = writeln!(
                out,
                "  a = {}, b = {}, s_min = {}, epsilon = {}, e_max = {}",
                s.a, s.b, s.s_min, s.epsilon, s.e_max
            );
        }
        if let Some(p) = &record.paths {
            let routes = [
                ("direct", &p.direct),
                ("reduction", &p.reduction),
                ("closed form", &p.closed_form),
                ("recursive", &p.recursive),
                ("grassmannian", &p.grassmannian),
            ];
            for (name, v) in routes {
                if let Some(v) = v {
                    let _ = writeln!(out, "  {name}: {v}");
                }
            }
        }
    }
    Outcome::ok(out).with_warnings(&record.warnings)
}

fn count_query(r: u32, d: i64, k: u32, g: i64) -> Query {
    Query {
        r: Some(r),
        d: Some(d),
        k: Some(k),
        g: Some(g),
        ..Query::default()
    }
}

fn count_record(q: &CountQuery, direct: bool) -> Result<OutputRecord, Error> {
    let opts = CountOptions {
        direct,
        ..CountOptions::default()
    };
    let res = count_with(q, opts)?;
    let mut record = OutputRecord::new("count", count_query(q.r, q.d, q.k, q.g));
    record.value = Some(res.value.to_string());
    record.s_report = Some(s_report(&res.s_report));
    record.paths = Some(Paths {
        direct: res.paths.direct.map(|v| v.to_string()),
        reduction: Some(res.paths.reduction.to_string()),
        closed_form: res.paths.closed_form.map(|v| v.to_string()),
        ..Paths::default()
    });
    record.warnings = res.warnings;
    Ok(record)
}

fn cmd_count(a: &CountArgs) -> Outcome {
    let result = CountQuery::new(a.r, a.d, a.k, a.g).and_then(|q| count_record(&q, !a.no_direct));
    match result {
        Ok(record) => render(&record, &a.output),
        Err(e) => Outcome::error(&e),
    }
}

fn cmd_gromov(a: &GromovArgs) -> Outcome {
    let run = || -> Result<OutputRecord, Error> {
        let p = Polynomial::parse(&a.poly, a.k as usize)?;
        let q = GromovQuery::new(a.r, a.k, a.g, a.d, a.e, p)?;
        let value = twisted_invariant(&q)?;
        let (e0, p0) = reduce_to_grassmannian(&q)?;
        let mut record = OutputRecord::new(
            "gromov",
            Query {
                r: Some(a.r),
                k: Some(a.k),
                g: Some(a.g),
                d: Some(a.d),
                e: Some(a.e),
                poly: Some(q.p.to_string()),
                ..Query::default()
            },
        );
        record.value = Some(value.to_string());
        if a.g >= 2 {
            record.s_report = s_invariants(a.r, a.k, a.d, a.g).ok().map(|s| s_report(&s));
        }
        record.paths = Some(Paths {
            grassmannian: Some(format!("N_{{0,{e0}}}({p0})")),
            ..Paths::default()
        });
        record.warnings = q.warnings().iter().map(ToString::to_string).collect();
        Ok(record)
    };
    match run() {
        Ok(record) => render(&record, &a.output),
        Err(e) => Outcome::error(&e),
    }
}

fn cmd_bkm(a: &BkmArgs) -> Outcome {
    let run = || -> Result<OutputRecord, Error> {
        let q = BQuery::new(a.r, a.k, a.m)?;
        let direct = b_direct(&q)?;
        let recursive = b_recursive(&q);
        if direct != recursive {
            return Err(Error::PathMismatch(format!(
                "B({}, {}) at r = {}: direct {direct} vs recursive {recursive}",
                a.k, a.m, a.r
            )));
        }
        let mut record = OutputRecord::new(
            "bkm",
            Query {
                r: Some(a.r),
                k: Some(a.k),
                m: Some(a.m),
                ..Query::default()
            },
        );
        record.value = Some(direct.to_string());
        record.paths = Some(Paths {
            direct: Some(direct.to_string()),
            recursive: Some(recursive.to_string()),
            ..Paths::default()
        });
        Ok(record)
    };
    match run() {
        Ok(record) => render(&record, &a.output),
        Err(e) => Outcome::error(&e),
    }
}

/// One table row: a record plus the exit code it contributes.
fn table_row(r: u32, d: i64, k: u32, g: i64) -> (OutputRecord, i32) {
    let q = match CountQuery::new(r, d, k, g) {
        Ok(q) => q,
        Err(e) => {
            let mut record = OutputRecord::new("table", count_query(r, d, k, g));
            record.status = format!("error: {e}");
            return (record, exit_code(&e));
        }
    };
    let s = q.s_invariants();
    if s.epsilon != 0 {
        let mut record = OutputRecord::new("table", count_query(r, d, k, g));
        record.status = "skipped".to_string();
        record.s_report = Some(s_report(&s));
        return (record, exit::OK);
    }
    match count_record(&q, true) {
        Ok(mut record) => {
            record.command = "table".to_string();
            (record, exit::OK)
        }
        Err(e) => {
            let mut record = OutputRecord::new("table", count_query(r, d, k, g));
            record.status = format!("error: {e}");
            record.s_report = Some(s_report(&s));
            (record, exit_code(&e))
        }
    }
}

fn csv_status(record: &OutputRecord) -> String {
    match (&record.status[..], &record.s_report) {
        ("skipped", Some(s)) => format!("skipped(epsilon={})", s.epsilon),
        (status, _) => status.to_string(),
    }
}

fn cmd_table(a: &TableArgs) -> Outcome {
    let mut points = Vec::new();
    for r in a.r_range.clone() {
        for d in 0..i64::from(r) {
            let ks = match a.k {
                KSelect::All => (1..r).collect::<Vec<_>>(),
                KSelect::One(k) if k < r => vec![k],
                KSelect::One(_) => Vec::new(),
            };
            points.extend(ks.into_iter().map(|k| (r, d, k, a.g)));
        }
    }
    let rows: Vec<(OutputRecord, i32)> = points
        .par_iter()
        .map(|&(r, d, k, g)| table_row(r, d, k, g))
        .collect();
    let code = rows.iter().map(|(_, c)| *c).max().unwrap_or(exit::OK);

    let stdout = match a.format {
        Format::Json => {
            let records: Vec<&OutputRecord> = rows.iter().map(|(rec, _)| rec).collect();
            format!(
                "{}\n",
                serde_json::to_string(&records).expect("records serialize")
            )
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["r", "d", "k", "g", "b", "s_min", "e_max", "m", "status"])
                .expect("in-memory write");
            for (rec, _) in &rows {
                let q = &rec.query;
                let s = rec.s_report.as_ref();
                let field = |v: Option<i64>| v.map(|v| v.to_string()).unwrap_or_default();
                w.write_record([
                    field(q.r.map(i64::from)),
                    field(q.d),
                    field(q.k.map(i64::from)),
                    field(q.g),
                    field(s.map(|s| s.b)),
                    field(s.map(|s| s.s_min)),
                    field(s.map(|s| s.e_max)),
                    rec.value.clone().unwrap_or_default(),
                    csv_status(rec),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
        }
    };
    let mut stderr = String::new();
    for (rec, c) in &rows {
        if *c != exit::OK {
            let _ = writeln!(stderr, "{}", rec.status);
        }
    }
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn cmd_selftest(a: &SelftestArgs) -> Outcome {
    let level = match a.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let reports = checks::run_all(level, a.seed);
    let mut out = String::new();
    for rep in &reports {
        let _ = writeln!(
            out,
            "{}  {} ({} cases, {} ms)",
            if rep.passed() { "PASS" } else { "FAIL" },
            rep.name,
            rep.cases,
            rep.elapsed.as_millis()
        );
        for f in rep.failures.iter().take(5) {
            let _ = writeln!(out, "      {f}");
        }
        if rep.failures.len() > 5 {
            let _ = writeln!(out, "      ... {} more", rep.failures.len() - 5);
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} suites passed", reports.len());
    Outcome {
        code: if passed == reports.len() {
            exit::OK
        } else {
            exit::INTERNAL
        },
        stdout: out,
        stderr: String::new(),
    }
}
