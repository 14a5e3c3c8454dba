//! `expdioph`: check candidates, print the bound cascade, run searches and the
//! auxiliary verifiers.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use expdioph_core::bounds::build_bound_set;
use expdioph_core::filters::first_exclusion;
use expdioph_core::search::{
    corollary_search, oracle_search, theorem_search, verify_aux, AuxId, AuxQuery, ReportKind, SearchBox, SearchOptions,
    SearchReport,
};
use expdioph_core::{check_family, Error, ExponentTriple, Instance};

const EXIT_OK: u8 = 0;
const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAIL: u8 = 3;
const EXIT_NOT_SOLUTION: u8 = 10;

/// Environment variable naming the default checkpoint directory.
const CKPT_DIR_ENV: &str = "EXPDIOPH_CKPT_DIR";

#[derive(Parser)]
#[command(name = "expdioph", version, about = "Exact tools for (2am+1)^x + (2m)^y = (2am-1)^z")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one tuple exactly; exit 0 if it is a solution, 10 if not.
    Check { a: u64, m: u64, x: u32, y: u32, z: u32 },
    /// Print the bound cascade as JSON.
    Bounds,
    /// Run a search and write its report.
    Search {
        kind: SearchKind,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Enumerate an auxiliary equation and compare with its known solutions.
    VerifyAux {
        /// One of na53, pillai35, le, terai4, fhyz, trivial-eq1.
        id: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    Oracle,
    Theorem,
    Corollary,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
struct SearchFlags {
    /// Fixed y for the region search (2..=10).
    #[arg(long)]
    y: Option<u32>,
    #[arg(long)]
    a_max: Option<u64>,
    #[arg(long)]
    m_max: Option<u64>,
    /// Cap on every exponent (oracle, corollary).
    #[arg(long)]
    exp_max: Option<u32>,
    /// Largest odd b (corollary).
    #[arg(long)]
    b_max: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// JSON Lines file of completed units (theorem); defaults to a file under $EXPDIOPH_CKPT_DIR.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInstance(_)
            | Error::InvalidExponents(_)
            | Error::InvalidBox(_)
            | Error::InvalidY { .. }
            | Error::EvenBMax(_)
            | Error::UnknownAuxId(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Self { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::Check { a, m, x, y, z } => cmd_check(a, m, x, y, z),
        Command::Bounds => cmd_bounds(),
        Command::Search { kind, flags } => cmd_search(kind, &flags),
        Command::VerifyAux { id } => cmd_verify_aux(&id),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_check(a: u64, m: u64, x: u32, y: u32, z: u32) -> Result<u8, Failure> {
    let inst = Instance::new(a, m)?;
    let e = ExponentTriple::new(x, y, z)?;
    if check_family(inst, e) {
        println!("solution: (a, m, x, y, z) = ({a}, {m}, {x}, {y}, {z})");
        return Ok(EXIT_OK);
    }
    println!("not a solution: (a, m, x, y, z) = ({a}, {m}, {x}, {y}, {z})");
    if let Some(v) = first_exclusion(inst, e) {
        println!("excluded by {}", v.reason());
    }
    Ok(EXIT_NOT_SOLUTION)
}

fn cmd_bounds() -> Result<u8, Failure> {
    let set = build_bound_set()?;
    let text = serde_json::to_string_pretty(&set.to_json()).map_err(Error::from)?;
    println!("{text}");
    Ok(EXIT_OK)
}

fn require<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("search {kind} requires {flag}")))
}

fn cmd_search(kind: SearchKind, flags: &SearchFlags) -> Result<u8, Failure> {
    let start = Instant::now();
    let report = match kind {
        SearchKind::Oracle => {
            let a_max = require(flags.a_max, "--a-max", "oracle")?;
            let m_max = require(flags.m_max, "--m-max", "oracle")?;
            let e_max = require(flags.exp_max, "--exp-max", "oracle")?;
            let sbox = SearchBox::cube(a_max, m_max, e_max)?;
            let solutions = oracle_search(&sbox)?;
            let units = a_max.saturating_sub(1) * m_max;
            SearchReport {
                kind: ReportKind::Oracle,
                region: json!({
                    "a": [2, a_max], "m": [1, m_max],
                    "x": [1, e_max], "y": [1, e_max], "z": [1, e_max],
                    "filters": [],
                }),
                solutions,
                units_done: units,
                units_total: units,
                wall_ms: start.elapsed().as_millis() as u64,
            }
        }
        SearchKind::Theorem => {
            let y = require(flags.y, "--y", "theorem")?;
            let bounds = build_bound_set()?;
            let checkpoint = flags.checkpoint.clone().or_else(|| {
                std::env::var_os(CKPT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("theorem-y{y}.jsonl")))
            });
            let mut opts = SearchOptions { checkpoint, ..SearchOptions::default() };
            if let Some(t) = flags.threads {
                opts.threads = t as usize;
            }
            theorem_search(&bounds, y, &opts)?
        }
        SearchKind::Corollary => {
            let b_max = require(flags.b_max, "--b-max", "corollary")?;
            let e_max = flags.exp_max.unwrap_or(60);
            let solutions = corollary_search(b_max, e_max)?;
            let units = b_max.saturating_sub(3) / 2;
            SearchReport {
                kind: ReportKind::Corollary,
                region: json!({
                    "b": ["odd", 5, b_max], "x": [1, e_max], "y": [1, e_max], "z": [1, e_max],
                    "filters": ["exact power test against b - 2"],
                }),
                solutions,
                units_done: units,
                units_total: units,
                wall_ms: start.elapsed().as_millis() as u64,
            }
        }
    };

    let body = match flags.format {
        Format::Json => report.to_json()?,
        Format::Csv => to_csv(&report)?,
    };
    match &flags.out {
        Some(path) => std::fs::write(path, format!("{body}\n"))
            .map_err(|e| Failure { code: EXIT_INTERNAL, message: format!("writing {}: {e}", path.display()) })?,
        None => println!("{body}"),
    }
    eprintln!(
        "{} solution(s), {}/{} units, {} ms",
        report.solutions.len(),
        report.units_done,
        report.units_total,
        report.wall_ms
    );
    Ok(EXIT_OK)
}

fn to_csv(report: &SearchReport) -> Result<String, Failure> {
    let internal = |e: csv::Error| Failure { code: EXIT_INTERNAL, message: e.to_string() };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(report.kind.columns()).map_err(internal)?;
    for row in report.rows()? {
        w.write_record(row.iter().map(u64::to_string)).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() })?;
    Ok(String::from_utf8(bytes).expect("csv of integers is ASCII").trim_end().to_string())
}

fn cmd_verify_aux(id: &str) -> Result<u8, Failure> {
    let id: AuxId = id.parse()?;
    let r = verify_aux(&AuxQuery::default_for(id));
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}: {}", r.id, r.equation);
    let _ = writeln!(out, "region: {}", r.region);
    let _ = writeln!(out, "found {} solution(s)", r.solutions.len());
    if id == AuxId::TrivialEq1 {
        for (t, family) in &r.classified {
            let _ = writeln!(out, "  {t:?} {family:?}");
        }
        for t in &r.unclassified {
            let _ = writeln!(out, "  {t:?} UNCLASSIFIED");
        }
    } else {
        for t in &r.solutions {
            let _ = writeln!(out, "  {t:?}");
        }
        let _ = writeln!(out, "expected {:?}", r.expected);
    }
    let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
    Ok(if r.pass { EXIT_OK } else { EXIT_VERIFY_FAIL })
}
