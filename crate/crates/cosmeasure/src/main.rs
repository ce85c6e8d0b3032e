//! Command-line driver.
//!
//! Exit codes are a stable contract: 0 success, 2 not a positive spanning
//! set, 3 enumeration limit exceeded, 4 parse or parameter error, 5 wrong
//! classification for abridged mode.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cosmeasure::cosine::ComputeOptions;
use cosmeasure::registry::StrategyRegistry;
use cosmeasure::report::{CheckDocument, OracleOnlyDocument, ReportDocument};
use cosmeasure::{
    classify, io, normalize, paper_example, tol, Error, OracleEstimate, SpanSet,
    Tolerances, VectorSet,
};

/// Environment variable overriding the default subset limit.
const LIMIT_ENV: &str = "COSMEASURE_SUBSET_LIMIT";

#[derive(Parser)]
#[command(name = "cosmeasure", version, about = "Cosine measures of positive spanning sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a direction set and print its classification.
    Check {
        /// Input file (CSV or JSON).
        path: PathBuf,
    },
    /// Compute the cosine measure, cosine vectors, and active sets.
    Cm {
        path: PathBuf,
        /// Score bases by gamma alone; requires a minimal or maximal
        /// positive basis.
        #[arg(long)]
        abridged: bool,
        /// Cap on the number of subsets to examine.
        #[arg(long)]
        limit: Option<u64>,
        /// Worker threads for per-basis evaluation.
        #[arg(long)]
        workers: Option<usize>,
        /// Tolerance override, repeatable: key=value with keys tie-rel,
        /// tie-abs, dedup, active-set.
        #[arg(long = "tol", value_parser = parse_tol)]
        tol: Vec<(TolKey, f64)>,
        /// Certification oracle: auto, off, or samples=N,seed=S.
        #[arg(long, default_value = "auto", value_parser = parse_oracle)]
        oracle: OracleChoice,
    },
    /// Write a canonical direction set.
    Gen {
        kind: GenKind,
        /// Ambient dimension (ignored for paper-example).
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Comma-separated positive scale factors for the mirrored block.
        #[arg(long, value_delimiter = ',')]
        deltas: Option<Vec<f64>>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
        format: FileFormat,
    },
    /// Run only the brute-force oracle on a direction set.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Minimal,
    Maximal,
    #[value(name = "paper-example")]
    PaperExample,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug)]
enum OracleChoice {
    Auto,
    Off,
    Sampling { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum TolKey {
    TieRel,
    TieAbs,
    Dedup,
    ActiveSet,
}

fn parse_tol(arg: &str) -> Result<(TolKey, f64), String> {
    let (key, value) = arg
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got {arg:?}"))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("bad tolerance value {value:?}"))?;
    if !(value.is_finite() && value >= 0.0) {
        return Err(format!("tolerance must be finite and nonnegative, got {value}"));
    }
    let key = match key.trim() {
        "tie-rel" => TolKey::TieRel,
        "tie-abs" => TolKey::TieAbs,
        "dedup" => TolKey::Dedup,
        "active-set" => TolKey::ActiveSet,
        other => return Err(format!("unknown tolerance key {other:?}")),
    };
    Ok((key, value))
}

fn parse_oracle(arg: &str) -> Result<OracleChoice, String> {
    match arg {
        "auto" => Ok(OracleChoice::Auto),
        "off" => Ok(OracleChoice::Off),
        other => {
            let mut samples = None;
            let mut seed = 0u64;
            for part in other.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| format!("expected samples=N[,seed=S], got {other:?}"))?;
                match key.trim() {
                    "samples" => {
                        samples = Some(value.trim().parse::<u64>().map_err(|e| e.to_string())?)
                    }
                    "seed" => seed = value.trim().parse::<u64>().map_err(|e| e.to_string())?,
                    k => return Err(format!("unknown oracle key {k:?}")),
                }
            }
            let samples = samples.ok_or("missing samples=N")?;
            if samples == 0 {
                return Err("samples must be at least 1".into());
            }
            Ok(OracleChoice::Sampling { samples, seed })
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NotSpanning { .. } | Error::NotPositivelySpanning | Error::ZeroVector(_) => 2,
        Error::LimitExceeded { .. } => 3,
        Error::WrongClassification(_) => 5,
        Error::Parse(_) | Error::NonPositiveDelta { .. } | Error::WrongDimension { .. } => 4,
        _ => 1,
    }
}

fn default_limit() -> u64 {
    std::env::var(LIMIT_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(tol::DEFAULT_SUBSET_LIMIT)
}

fn load_set(path: &Path) -> Result<SpanSet, Error> {
    let matrix = io::read_matrix_file(path)?;
    classify(&VectorSet::new(matrix))
}

fn attach_oracle(
    registry: &StrategyRegistry,
    set: &SpanSet,
    choice: OracleChoice,
) -> Result<Option<OracleEstimate>, Error> {
    match choice {
        OracleChoice::Off => Ok(None),
        OracleChoice::Sampling { samples, seed } => {
            let est = registry
                .estimator("sphere-sampling")
                .expect("built-in")
                .estimate(set.base(), samples, seed)?;
            Ok(Some(est))
        }
        OracleChoice::Auto => {
            // Certification is cheap up to three dimensions.
            if set.n() > 3 {
                return Ok(None);
            }
            let est = registry
                .estimator_for(set.n())
                .expect("sampling covers every dimension")
                .estimate(set.base(), 1_000_000, 0)?;
            Ok(Some(est))
        }
    }
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    let registry = StrategyRegistry::with_builtins();
    match cli.command {
        Command::Check { path } => {
            let set = load_set(&path)?;
            let doc = CheckDocument {
                classification: set.classification(),
                n: set.n(),
                s: set.s(),
                positively_independent: set.positively_independent(),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
            Ok(())
        }
        Command::Cm {
            path,
            abridged,
            limit,
            workers,
            tol: tol_overrides,
            oracle,
        } => {
            let set = load_set(&path)?;
            let mut tolerances = Tolerances::default();
            for (key, value) in tol_overrides {
                match key {
                    TolKey::TieRel => tolerances.tie_rel = value,
                    TolKey::TieAbs => tolerances.tie_abs = value,
                    TolKey::Dedup => tolerances.dedup = value,
                    TolKey::ActiveSet => tolerances.active_set = value,
                }
            }
            let opts = ComputeOptions {
                limit: limit.unwrap_or_else(default_limit),
                workers,
                tolerances,
            };
            let engine = registry
                .engine(if abridged { "abridged" } else { "full" })
                .expect("built-in");
            let report = engine.compute(&set, &opts)?;
            let estimate = attach_oracle(&registry, &set, oracle)?;
            let doc = ReportDocument::new(&report, set.classification(), estimate.as_ref());
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
            Ok(())
        }
        Command::Gen {
            kind,
            n,
            deltas,
            out,
            format,
        } => {
            if n == 0 {
                return Err(Error::Parse("dimension must be at least 1".into()));
            }
            let set: VectorSet = match kind {
                GenKind::Minimal => cosmeasure::gen_minimal(n),
                GenKind::Maximal => cosmeasure::gen_maximal(n, None, deltas.as_deref())?,
                GenKind::PaperExample => paper_example(),
            };
            let text = match format {
                FileFormat::Csv => io::write_csv(set.columns()),
                FileFormat::Json => io::write_json(set.columns()),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Oracle {
            path,
            samples,
            seed,
        } => {
            // The oracle runs on the normalized set without requiring the
            // positive-spanning property: a nonpositive sampled value is
            // itself the evidence that the property fails.
            let matrix = io::read_matrix_file(&path)?;
            let columns = normalize(&VectorSet::new(matrix))?;
            let estimator = registry
                .estimator_for(columns.n())
                .expect("sampling covers every dimension");
            let estimate = estimator.estimate(&columns, samples, seed)?;
            let doc = OracleOnlyDocument::from(&estimate);
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes (`... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
