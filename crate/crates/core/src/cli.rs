//! Command-line front end.
//!
//! Exit status: 0 on success, 2 when results disagree (formula vs oracle,
//! closed form vs brute force, or a failed verification suite), 1 on any
//! error including usage errors.

use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bsymbol::{dist_b_formula, dist_b_oracle, pi_b, weight_b_oracle};
use crate::codes::{build_record, CyclicCodeSpec, DistanceRecord, CSV_HEADER, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::gf::{make_field, FieldParams};
use crate::polyring::{format_symbol, parse_word};
use crate::verify::{run_suites, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

/// Environment variable overriding the default enumeration cap.
pub const CAP_ENV: &str = "BSYM_CAP";

#[derive(Debug, Parser)]
#[command(name = "bsym", version, about = "b-symbol weights and distances of repeated-root cyclic codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the b-symbol read vector of a word.
    Pi(PiArgs),
    /// b-distance of two words.
    Dist(DistArgs),
    /// Distances of one code C_i.
    Code(CodeArgs),
    /// Distance table over ranges of i and b.
    Table(TableArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistMethod {
    Formula,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeMethod {
    Closed,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Formula,
    Code,
    Lemma,
    Bounds,
}

/// Optional field for parsing extension-field symbols.
#[derive(Debug, Args)]
pub struct WordFieldArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1, requires = "p")]
    pub m: u32,
    /// Modulus coefficients, constant term first.
    #[arg(long, requires = "p")]
    pub modulus: Option<String>,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Modulus coefficients, constant term first (e.g. 1,1,1 for x^2+x+1).
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Args)]
pub struct PiArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub b: usize,
    #[arg(long)]
    pub word: String,
    #[command(flatten)]
    pub field: WordFieldArgs,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub b: usize,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long, value_enum, default_value_t = DistMethod::Both)]
    pub method: DistMethod,
    #[command(flatten)]
    pub field: WordFieldArgs,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub e: u32,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long, value_enum, default_value_t = CodeMethod::Both)]
    pub method: CodeMethod,
    #[arg(long)]
    pub cap: Option<u128>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub e: u32,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long)]
    pub b: String,
    /// Inclusive range `a..b`; defaults to `0..p^e`.
    #[arg(long)]
    pub i: Option<String>,
    #[arg(long, value_enum, default_value_t = CodeMethod::Both)]
    pub method: CodeMethod,
    #[arg(long)]
    pub cap: Option<u128>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long)]
    pub cap: Option<u128>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Also run the formula suite against a broken formula and require that
    /// it is caught.
    #[arg(long)]
    pub self_check: bool,
    #[arg(long)]
    pub out: Option<String>,
}

/// Parses `a..b` (inclusive) or a single integer. `b < a` is an empty range.
pub fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad range {text:?}, expected a..b"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            Ok((a, b))
        }
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn parse_modulus(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|c| c.trim().parse().map_err(|_| Error::Parse(format!("bad modulus {text:?}"))))
        .collect()
}

fn field_from(p: u32, m: u32, modulus: Option<&str>) -> Result<FieldParams> {
    let modulus = modulus.map(parse_modulus).transpose()?;
    make_field(p, m, modulus.as_deref())
}

/// Enumeration cap: flag, then `BSYM_CAP`, then the default.
fn resolve_cap(flag: Option<u128>) -> Result<u128> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{CAP_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn word_field(args: &WordFieldArgs) -> Result<Option<FieldParams>> {
    args.p
        .map(|p| field_from(p, args.m, args.modulus.as_deref()))
        .transpose()
}

/// Executes a parsed command, returning the exit status.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Pi(a) => cmd_pi(a, out),
        Command::Dist(a) => cmd_dist(a, out),
        Command::Code(a) => cmd_code(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn cmd_pi(a: PiArgs, out: &mut dyn Write) -> Result<i32> {
    let field = word_field(&a.field)?;
    let word = parse_word(&a.word, field.as_ref())?;
    if let Some(n) = a.n {
        if n != word.len() {
            return Err(Error::LengthMismatch(n, word.len()));
        }
    }
    let windows = pi_b(&word, a.b)?;
    let weight = weight_b_oracle(&word, a.b)?;
    let fmt = |w: &Vec<u32>| w.iter().map(|&s| format_symbol(s, field.as_ref())).collect::<Vec<_>>();
    match a.format {
        Format::Json => {
            let windows: Vec<Vec<String>> = windows.iter().map(fmt).collect();
            let v = serde_json::json!({ "n": word.len(), "b": a.b, "windows": windows, "weight": weight });
            writeln!(out, "{}", to_json(&v)).map_err(io)?;
        }
        _ => {
            for w in &windows {
                writeln!(out, "({})", fmt(w).join(",")).map_err(io)?;
            }
            writeln!(out, "weight: {weight}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DistOutput {
    b: usize,
    formula: Option<usize>,
    oracle: Option<usize>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

fn cmd_dist(a: DistArgs, out: &mut dyn Write) -> Result<i32> {
    let field = word_field(&a.field)?;
    let mut x = parse_word(&a.x, field.as_ref())?;
    let mut y = parse_word(&a.y, field.as_ref())?;
    if field.is_none() {
        let q = x.q().max(y.q());
        x = x.widen(q);
        y = y.widen(q);
    }
    let formula = matches!(a.method, DistMethod::Formula | DistMethod::Both)
        .then(|| dist_b_formula(&x, &y, a.b))
        .transpose()?;
    let oracle = matches!(a.method, DistMethod::Oracle | DistMethod::Both)
        .then(|| dist_b_oracle(&x, &y, a.b))
        .transpose()?;
    let matches = formula.zip(oracle).map(|(f, o)| f == o);
    let result = DistOutput { b: a.b, formula, oracle, matches };
    match a.format {
        Format::Json => writeln!(out, "{}", to_json(&result)).map_err(io)?,
        _ => {
            if let Some(v) = formula {
                writeln!(out, "formula: {v}").map_err(io)?;
            }
            if let Some(v) = oracle {
                writeln!(out, "oracle: {v}").map_err(io)?;
            }
            if let Some(m) = matches {
                writeln!(out, "match: {m}").map_err(io)?;
            }
        }
    }
    Ok(if matches == Some(false) { EXIT_INCONSISTENT } else { EXIT_OK })
}

fn record_for(spec: &CyclicCodeSpec, b: usize, method: CodeMethod, cap: u128) -> Result<DistanceRecord> {
    let mut record = build_record(spec, b, cap, method != CodeMethod::Closed)?;
    if method == CodeMethod::Brute {
        record.db_closed.value = None;
        record.db_closed.rule = None;
        record.db_closed.matches.clear();
    }
    Ok(record)
}

fn plain_record(r: &DistanceRecord) -> String {
    let mut s = format!(
        "p={} e={} m={} i={} b={} n={} dim={}\ndH: {}\n",
        r.p, r.e, r.m, r.i, r.b, r.n, r.k_dim, r.dh_formula
    );
    let c = &r.db_closed;
    match (c.value, c.rule) {
        (Some(v), Some(rule)) => {
            s += &format!("db closed: {v} ({}", rule.id());
            if let (Some(k), Some(res)) = (c.params_echo.k, c.params_echo.residual) {
                s += &format!(", k={k}, i'={res}");
            }
            s += ")\n";
        }
        _ => s += "db closed: none\n",
    }
    if let Some((lo, hi)) = c.interval {
        s += &format!("db interval: [{lo}, {hi}]\n");
    }
    if let Some(v) = r.db_brute {
        s += &format!("db brute: {v}\n");
    }
    if let Some((lo, hi)) = r.bounds {
        s += &format!("bounds: [{lo}, {hi}]\n");
    }
    s += &format!("consistent: {}", r.consistent);
    s
}

fn cmd_code(a: CodeArgs, out: &mut dyn Write) -> Result<i32> {
    let field = field_from(a.field.p, a.field.m, a.field.modulus.as_deref())?;
    let spec = CyclicCodeSpec::new(&field, a.e, a.i)?;
    let cap = resolve_cap(a.cap)?;
    let record = record_for(&spec, a.b, a.method, cap)?;
    let text = match a.format {
        Format::Plain => plain_record(&record),
        Format::Csv => format!("{CSV_HEADER}\n{}", record.csv_row()),
        Format::Json => to_json(&record),
    };
    writeln!(out, "{text}").map_err(io)?;
    Ok(if record.consistent { EXIT_OK } else { EXIT_INCONSISTENT })
}

/// All table rows, `i` outer and `b` inner.
pub fn table_records(
    field: &FieldParams,
    e: u32,
    i_range: (usize, usize),
    b_range: (usize, usize),
    method: CodeMethod,
    cap: u128,
) -> Result<Vec<DistanceRecord>> {
    let mut rows = Vec::new();
    for i in i_range.0..=i_range.1 {
        let spec = CyclicCodeSpec::new(field, e, i)?;
        for b in b_range.0..=b_range.1 {
            let record = match record_for(&spec, b, method, cap) {
                Err(Error::EnumerationTooLarge { .. }) => record_for(&spec, b, CodeMethod::Closed, cap)?,
                other => other?,
            };
            rows.push(record);
        }
    }
    Ok(rows)
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Result<i32> {
    let field = field_from(a.field.p, a.field.m, a.field.modulus.as_deref())?;
    let n = (field.p() as usize)
        .checked_pow(a.e)
        .ok_or_else(|| Error::InvalidField("length overflow".into()))?;
    let b_range = parse_range(&a.b)?;
    let i_range = match &a.i {
        Some(t) => parse_range(t)?,
        None => (0, n),
    };
    let cap = resolve_cap(a.cap)?;
    let rows = table_records(&field, a.e, i_range, b_range, a.method, cap)?;
    let text = match a.format {
        Format::Json => to_json(&rows),
        _ => {
            let mut s = String::from(CSV_HEADER);
            for r in &rows {
                s.push('\n');
                s += &r.csv_row();
            }
            s
        }
    };
    match &a.out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(io)?,
        None => writeln!(out, "{text}").map_err(io)?,
    }
    Ok(if rows.iter().all(|r| r.consistent) { EXIT_OK } else { EXIT_INCONSISTENT })
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = SuiteConfig {
        seed: a.seed,
        trials: a.trials,
        cap: resolve_cap(a.cap)?,
        ..SuiteConfig::default()
    };
    let suite = match a.suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Formula => Suite::Formula,
        SuiteArg::Code => Suite::Code,
        SuiteArg::Lemma => Suite::Lemma,
        SuiteArg::Bounds => Suite::Bounds,
    };
    let report = run_suites(&cfg, suite, a.self_check)?;
    for s in &report.suites {
        eprintln!("{}: {:.2?}", s.suite, s.elapsed);
    }
    let text = match a.format {
        Format::Json => to_json(&report),
        _ => {
            let mut lines: Vec<String> = report
                .suites
                .iter()
                .map(|s| {
                    let mut line = format!(
                        "{}: {} ({} cases, {} failures)",
                        s.suite,
                        if s.passed { "PASS" } else { "FAIL" },
                        s.cases,
                        s.failure_count
                    );
                    if !s.uncovered.is_empty() {
                        line += &format!(" uncovered: {}", s.uncovered.join(", "));
                    }
                    line
                })
                .collect();
            lines.push(format!("overall: {}", if report.passed { "PASS" } else { "FAIL" }));
            lines.join("\n")
        }
    };
    match &a.out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(io)?,
        None => writeln!(out, "{text}").map_err(io)?,
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_INCONSISTENT })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
