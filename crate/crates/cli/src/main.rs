mod enumerate;
mod tables;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use stampbase_core::{
    is_extensible, is_p_basis, is_symmetricisable, is_symmetricisable_free, periodic_scan, range,
    stohr_sequence, Basis, Error, Mode, SearchConfig, DEFAULT_NODE_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "stampbase",
    version,
    about = "Extremal additive bases of order two"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Worker threads for enumeration and tables (STAMPBASE_THREADS overrides)
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// Maximum search nodes before giving up with exit code 3
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: u64,
    /// Output format; not every command supports every format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Whole periods a periodic scan must observe
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
    verify_periods: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Jsonl,
    Wide,
}

#[derive(Subcommand)]
enum Command {
    /// Range and admissibility of a basis
    Range {
        /// Comma-separated elements, e.g. 1,3,4,6,11
        basis: String,
    },
    /// Check p-basis, extensibility and symmetricisability predicates
    Check(CheckArgs),
    /// Stream every p-basis (or p+ basis) as JSON lines
    Enumerate(enumerate::EnumerateArgs),
    /// Emit a census or optimisation table as CSV
    Tables(tables::TableArgs),
    /// Greedy continuation of a basis, or its periodic structure
    Stohr {
        basis: String,
        /// Number of terms to print
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Report the period of the increments instead of the terms
        #[arg(long)]
        scan_period: bool,
        /// Terms generated for the periodic scan
        #[arg(long, default_value_t = 400)]
        max_terms: usize,
    },
}

#[derive(Args)]
struct CheckArgs {
    basis: String,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    p_basis: bool,
    #[arg(long)]
    extensible: bool,
    #[arg(long)]
    symmetricisable: bool,
    /// Include the closure admissibility profile
    #[arg(long)]
    profile: bool,
}

/// Resolved run configuration.
#[derive(Clone)]
pub struct RunConfig {
    pub threads: usize,
    pub node_budget: u64,
    pub format: Option<Format>,
    pub verify_periods: usize,
}

impl RunConfig {
    fn resolve(args: &RunArgs) -> Result<Self, CliError> {
        let threads = match std::env::var("STAMPBASE_THREADS") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n >= 1 => n,
                _ => {
                    return Err(CliError::Usage(format!(
                        "STAMPBASE_THREADS must be a positive integer, got {v:?}"
                    )))
                }
            },
            Err(_) => args.threads as usize,
        };
        Ok(RunConfig {
            threads,
            node_budget: args.node_budget,
            format: args.format,
            verify_periods: args.verify_periods as usize,
        })
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig::default()
            .with_threads(self.threads)
            .with_budget(self.node_budget)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            Error::Io(io) => CliError::Io(io),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

/// What a successful command reports back to the shell.
pub enum Outcome {
    Ok,
    False,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(&cli.run).and_then(|cfg| run(cli.command, &cfg));
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::False) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Range { basis } => cmd_range(&basis, cfg),
        Command::Check(args) => cmd_check(&args),
        Command::Enumerate(args) => enumerate::run(&args, cfg),
        Command::Tables(args) => tables::run(&args, cfg),
        Command::Stohr {
            basis,
            count,
            scan_period,
            max_terms,
        } => cmd_stohr(&basis, count, scan_period, max_terms, cfg),
    }
}

fn parse_basis(text: &str) -> Result<Basis, CliError> {
    Ok(text.parse::<Basis>()?)
}

fn cmd_range(text: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let basis = parse_basis(text)?;
    let r = range(&basis);
    match cfg.format {
        Some(Format::Json) | Some(Format::Jsonl) => println!("{}", serde_json::to_string(&r)?),
        _ => println!("n={} admissible={}", r.n, r.admissible),
    }
    Ok(Outcome::Ok)
}

fn cmd_check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let basis = parse_basis(&args.basis)?;
    let p = args.p;
    let none = !(args.p_basis || args.extensible || args.symmetricisable || args.profile);
    let mut report = Map::new();
    report.insert("basis".into(), json!(basis.elements()));
    report.insert("p".into(), json!(p));
    let mut all_true = true;

    if args.p_basis || none {
        let v = is_p_basis(&basis, p);
        all_true &= v;
        report.insert("p_basis".into(), json!(v));
    }
    if args.extensible || none {
        let r = is_extensible(&basis, p)?;
        all_true &= r.extensible;
        report.insert("extensible".into(), json!(r.extensible));
        report.insert("extension".into(), serde_json::to_value(r)?);
    }
    if args.symmetricisable || args.profile {
        let len = basis.len() as u32;
        let r = if len + 1 > p {
            is_symmetricisable_free(&basis, p, len + 1 - p)?
        } else {
            is_symmetricisable(&basis, p)?
        };
        if args.symmetricisable {
            all_true &= r.symmetricisable;
            report.insert("symmetricisable".into(), json!(r.symmetricisable));
        }
        report.insert("m0".into(), json!(r.m0));
        if args.profile {
            report.insert("profile".into(), json!(r.profile));
        }
    }
    println!("{}", Value::Object(report));
    Ok(if all_true {
        Outcome::Ok
    } else {
        Outcome::False
    })
}

fn cmd_stohr(
    text: &str,
    count: usize,
    scan_period: bool,
    max_terms: usize,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let seed = parse_basis(text)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if scan_period {
        let report = periodic_scan(&seed, max_terms, cfg.verify_periods)?;
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
        out.flush()?;
        return Ok(if report.is_some() {
            Outcome::Ok
        } else {
            Outcome::False
        });
    }
    let seq = stohr_sequence(&seed, count);
    match cfg.format {
        Some(Format::Json) | Some(Format::Jsonl) => {
            let v = json!({ "seed": seed.elements(), "terms": seq.terms, "increments": seq.increments });
            writeln!(out, "{v}")?;
        }
        _ if seq.terms.is_empty() => {}
        _ => {
            let line: Vec<String> = seq.terms.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(","))?;
        }
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

/// `--out FILE` or standard output.
pub fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse::<Mode>().map_err(|e| e.to_string())
}
