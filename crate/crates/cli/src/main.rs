//! `bchlab`: command-line front end over `bchlab-core`.
//!
//! Every command writes one document to stdout in the chosen format. Errors
//! go to stderr as `{"schema": 1, "error": {...}}`; usage errors exit 2,
//! failed computations and failed verifications exit 1.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bchlab_core::oracle::DistanceOptions;
use bchlab_core::Family;

mod commands;
mod report;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "bchlab",
    version,
    about = "Cosets, dual-distance bounds and dually-BCH checks for BCH codes of length q^m+1 and (q^m+1)/2"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format [default: csv for `sweep`, json otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Threads for minimum-distance enumeration [default: available parallelism]
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
    /// Largest q^k enumerated directly before switching to the support search
    #[arg(long, global = true)]
    pub max_codewords: Option<u128>,
    /// Column-reduction budget for the support search
    #[arg(long, global = true)]
    pub max_nodes: Option<u128>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    Cyclic,
    Negacyclic,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Cyclic => Family::Cyclic,
            FamilyArg::Negacyclic => Family::Negacyclic,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    Cyclic,
    Negacyclic,
    Both,
}

/// Comma-separated list, e.g. `3,5,7`.
#[derive(Debug, Clone)]
pub struct List<T>(pub Vec<T>);

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<List<T>, String> {
    let items: Result<Vec<T>, _> = s.split(',').map(|x| x.trim().parse::<T>()).collect();
    match items {
        Ok(v) if !v.is_empty() => Ok(List(v)),
        _ => Err(format!("expected a comma-separated list of integers, got {s:?}")),
    }
}

/// `a..b` (half-open) or `a..=b`.
fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let bad = || format!("expected a..b or a..=b, got {s:?}");
    let (a, b, inclusive) = match s.split_once("..=") {
        Some((a, b)) => (a, b, true),
        None => {
            let (a, b) = s.split_once("..").ok_or_else(bad)?;
            (a, b, false)
        }
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    let hi = if inclusive { b.checked_add(1).ok_or_else(bad)? } else { b };
    if hi <= a {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, hi))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All q-cyclotomic cosets modulo N
    Cosets {
        q: u64,
        #[arg(value_name = "N")]
        n: u64,
        /// Only cosets with odd leaders
        #[arg(long)]
        odd: bool,
    },
    /// Largest coset leaders modulo q^m + 1, closed form against the sweep
    Leaders {
        q: u64,
        m: u32,
        /// Odd leaders only
        #[arg(long)]
        odd: bool,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Parameters of one BCH code and its dual
    CodeInfo {
        q: u64,
        m: u32,
        #[arg(value_enum)]
        family: FamilyArg,
        delta: u64,
        /// Offset of the defining run [default: 1]
        b: Option<u64>,
        /// Also compute the exact minimum distances of the code and its dual
        #[arg(long)]
        distance: bool,
    },
    /// Dual-distance lower bound for the narrow-sense code, formula against oracle
    Bound {
        q: u64,
        m: u32,
        #[arg(value_enum)]
        family: FamilyArg,
        delta: u64,
    },
    /// Per-delta dually-BCH verdicts, formula against oracle
    Dually {
        q: u64,
        m: u32,
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long, value_parser = parse_range, value_name = "A..B")]
        delta_range: (u64, u64),
        /// Use the even-like subcodes (cyclic only)
        #[arg(long)]
        even_like: bool,
    },
    /// Check the pinned worked examples
    Verify {
        #[arg(value_name = "EXAMPLE_ID", required_unless_present = "all")]
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// List the example ids and exit
        #[arg(long, exclusive = true)]
        list: bool,
    },
    /// Formula-vs-oracle grid over every valid delta
    Sweep {
        #[arg(value_parser = parse_list::<u64>, value_name = "Q_LIST")]
        qs: List<u64>,
        #[arg(value_parser = parse_list::<u32>, value_name = "M_LIST")]
        ms: List<u32>,
        #[arg(value_enum)]
        family: SweepFamily,
    },
}

/// Input rejected before any computation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn emit_error(kind: &str, message: &str, code: u8) {
    let doc = json!({ "schema": 1, "error": { "kind": kind, "message": message, "exit_code": code } });
    let mut err = io::stderr().lock();
    let _ = serde_json::to_writer(&mut err, &doc);
    let _ = writeln!(err);
}

fn classify(e: &anyhow::Error) -> (String, u8) {
    if let Some(core) = e.downcast_ref::<bchlab_core::Error>() {
        return (core.kind().to_string(), if core.is_usage() { 2 } else { 1 });
    }
    if e.downcast_ref::<UsageError>().is_some() {
        return ("Usage".into(), 2);
    }
    if e.downcast_ref::<io::Error>().is_some() {
        return ("Io".into(), 1);
    }
    ("Internal".into(), 1)
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
        || e.downcast_ref::<csv::Error>().is_some_and(|c| matches!(c.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    return ExitCode::from(2);
                }
                _ => {}
            }
            // drop clap's usage and tip trailer, keep the sentence
            let rendered = e.to_string();
            let head = rendered.split("\n\n").next().unwrap_or_default();
            let msg = head.trim_start_matches("error: ").split_whitespace().collect::<Vec<_>>().join(" ");
            emit_error("Usage", &msg, 2);
            return ExitCode::from(2);
        }
    };

    let mut opts = DistanceOptions::default();
    if let Some(w) = cli.global.workers {
        opts.workers = w as usize;
    }
    if let Some(c) = cli.global.max_codewords {
        opts.max_codewords = c;
    }
    if let Some(c) = cli.global.max_nodes {
        opts.max_nodes = c;
    }

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = commands::run(&cli.command, cli.global.format, &opts, &mut out).and_then(|o| {
        out.flush()?;
        Ok(o)
    });
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(msg)) => {
            emit_error("VerificationFailed", &msg, 1);
            ExitCode::from(1)
        }
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            let (kind, code) = classify(&e);
            emit_error(&kind, &e.to_string(), code);
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..14"), Ok((2, 14)));
        assert_eq!(parse_range("2..=13"), Ok((2, 14)));
        assert!(parse_range("5..5").is_err());
        assert!(parse_range("5").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<u64>("3, 5,7").unwrap().0, vec![3, 5, 7]);
        assert!(parse_list::<u64>("3,,5").is_err());
    }

    #[test]
    fn clap_config_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
