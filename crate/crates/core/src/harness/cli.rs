//! Command-line front end.
//!
//! Exit codes: `0` run completed without counterexamples, `1` at least one
//! counterexample (the report is still written), `2` usage or configuration
//! error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::config::{Filters, Mode, RunConfig, DEFAULT_MAX_COUNTEREXAMPLES};
use super::enumerate::run;
use super::search::{extremal_search, SearchCriterion};
use crate::davenport::build_context;
use crate::error::{Result, ZpError};
use crate::theorems::TheoremId;
use crate::zp::{diameter, is_ap, min_cover_ap, parse_members, sumset, PrimeModulus, ResidueSet};
use crate::RationalGate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "zp-sumsets",
    version,
    about = "Sumsets and inverse theorems modulo a prime"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print A + B.
    Sumset(PairArgs),
    /// Print diam(A) and its canonical shortest covering progression.
    Diam(SetArgs),
    /// Print S = A+B, C, E and every split (B_e, B^e).
    Transform(PairArgs),
    /// Check a theorem exhaustively or on random instances.
    Verify(VerifyArgs),
    /// List canonical extremal instances.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct SetArgs {
    #[arg(long)]
    p: u64,
    /// Comma-separated members.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    p: u64,
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV export of the retained counterexamples.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_COUNTEREXAMPLES)]
    max_counterexamples: usize,
    #[arg(long)]
    a_min: Option<usize>,
    #[arg(long)]
    a_max: Option<usize>,
    #[arg(long)]
    b_min: Option<usize>,
    #[arg(long)]
    b_max: Option<usize>,
    /// Doubling constant of the freiman_24 gate (`2.4`, `12/5`, ...).
    #[arg(long, default_value = "2.4")]
    constant: String,
    /// Size bound divisor of the freiman_24 gate.
    #[arg(long, default_value = "35")]
    divisor: String,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    /// cd_equality, near_3k3 or hsz_tight.
    #[arg(long)]
    criterion: String,
    /// Only report instances with |A| = k.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_set(p: PrimeModulus, csv: &str) -> Result<ResidueSet> {
    parse_members(p, csv)
}

fn io_err(e: std::io::Error) -> ZpError {
    ZpError::InvalidConfig(e.to_string())
}

fn cmd_sumset(args: PairArgs, out: &mut dyn Write) -> Result<i32> {
    let p = PrimeModulus::new(args.p)?;
    let s = sumset(&parse_set(p, &args.a)?, &parse_set(p, &args.b)?)?;
    writeln!(out, "{s}").map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_diam(args: SetArgs, out: &mut dyn Write) -> Result<i32> {
    let p = PrimeModulus::new(args.p)?;
    let a = parse_set(p, &args.a)?;
    let d = diameter(&a)?;
    let cover = min_cover_ap(&a)?;
    writeln!(out, "{a}").map_err(io_err)?;
    writeln!(
        out,
        "diam={d} cover=(start={}, d={}, k={}) ap={}",
        cover.start(),
        cover.difference(),
        cover.len(),
        is_ap(&a)?.is_some()
    )
    .map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_transform(args: PairArgs, out: &mut dyn Write) -> Result<i32> {
    let p = PrimeModulus::new(args.p)?;
    let ctx = build_context(&parse_set(p, &args.a)?, &parse_set(p, &args.b)?)?;
    let mut lines = vec![
        format!("S={}", ctx.sum()),
        format!("C={}", ctx.companion()),
        format!("E={}", ctx.excess()),
        format!("r={}", ctx.deficiency()),
    ];
    for s in ctx.splits() {
        lines.push(format!("e={} lower={} upper={}", s.e, s.lower, s.upper));
    }
    for l in lines {
        writeln!(out, "{l}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let theorem: TheoremId = args.theorem.parse()?;
    if !TheoremId::RUNNABLE.contains(&theorem) {
        return Err(ZpError::UnknownTheorem(args.theorem));
    }
    let p = PrimeModulus::new(args.p)?;
    let mode = match (args.exhaustive, args.samples) {
        (true, None) => Mode::Exhaustive,
        (false, Some(count)) => Mode::Sample {
            count,
            seed: args.seed,
        },
        _ => {
            return Err(ZpError::InvalidConfig(
                "pass exactly one of --exhaustive or --samples N".into(),
            ))
        }
    };
    let mut config = RunConfig::exhaustive(theorem, p)
        .with_workers(args.workers)
        .with_filters(Filters {
            a_min: args.a_min,
            a_max: args.a_max,
            b_min: args.b_min,
            b_max: args.b_max,
        });
    config.mode = mode;
    config.max_counterexamples = args.max_counterexamples;
    if theorem == TheoremId::Freiman24 {
        config = config.with_gate(RationalGate::parse(&args.constant, &args.divisor)?);
    }
    let report = run(&config)?;
    if let Some(path) = &args.out {
        std::fs::write(path, report.to_json()).map_err(io_err)?;
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, report.to_csv()).map_err(io_err)?;
    }
    writeln!(out, "{}", report.summary()).map_err(io_err)?;
    writeln!(err, "elapsed_ms={}", report.elapsed_ms).map_err(io_err)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

fn cmd_search(args: SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let p = PrimeModulus::new(args.p)?;
    let criterion: SearchCriterion = args.criterion.parse()?;
    let found = extremal_search(p, criterion, args.k)?;
    if let Some(path) = &args.out {
        let doc = serde_json::json!({
            "schema": super::report::SCHEMA_VERSION,
            "p": p,
            "criterion": criterion,
            "witnesses": found,
        });
        let text = serde_json::to_string_pretty(&doc).expect("serializes") + "\n";
        std::fs::write(path, text).map_err(io_err)?;
    }
    for w in &found {
        writeln!(out, "{w}").map_err(io_err)?;
    }
    writeln!(out, "{} witnesses", found.len()).map_err(io_err)?;
    Ok(EXIT_OK)
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Sumset(a) => cmd_sumset(a, out),
        Command::Diam(a) => cmd_diam(a, out),
        Command::Transform(a) => cmd_transform(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Search(a) => cmd_search(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
