//! Command-line front end. `run` parses arguments, resolves the run
//! configuration and writes a deterministic text or JSON report.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 usage or configuration error.

mod commands;
mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MEMORY_CAP: u64 = 50_000;
pub const MEMORY_CAP_ENV: &str = "SABININ_MEMORY_CAP";

#[derive(Parser, Debug)]
#[command(name = "sabinin", version, about = "Exact computations with formal loops and their bialgebras")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// JSON file with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Loop spec: builtin:NAME, file:PATH or inline JSON.
    #[arg(long = "loop", global = true, value_name = "SPEC")]
    loop_spec: Option<String>,
    /// Truncation degree N.
    #[arg(long, short = 'N', global = true)]
    degree: Option<usize>,
    /// Seed for random sample distributions.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of random samples in bialgebra mode.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Largest dense table size, in rational entries.
    #[arg(long, global = true)]
    memory_cap: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks an identity in a loop or, linearized, in its bialgebra.
    VerifyIdentity {
        #[arg(long)]
        identity: String,
        #[arg(long, value_enum, default_value_t = Mode::Loop)]
        mode: Mode,
        /// Degree up to which basis tuples are checked in bialgebra mode.
        #[arg(long, default_value_t = 2)]
        exhaustive_degree: usize,
    },
    /// Bracket tables with `arity` arguments before `y, z`.
    Brackets {
        #[arg(long)]
        arity: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Tree coefficients of the logarithm, optionally checked against exp.
    Explog {
        #[arg(long)]
        check: bool,
    },
    /// Sums of tree Bernoulli weights against (-1)^(n+1)/n.
    Bernoulli {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// The right alternative loop similar to the given one.
    Raltify,
    /// A bidegree component of the multioperator of the free loop.
    Multioperator {
        #[arg(long, num_args = 2, value_names = ["I", "J"], default_values_t = [1, 3])]
        bidegree: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Loop,
    Bialgebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Su,
    Ms,
    Both,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(rename = "loop")]
    loop_spec: Option<String>,
    degree: Option<usize>,
    seed: Option<u64>,
    samples: Option<usize>,
    format: Option<OutputFormat>,
    memory_cap: Option<u64>,
}

/// The resolved configuration: flags over the environment over the config file over defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub degree: usize,
    pub seed: u64,
    pub samples: usize,
    pub format: OutputFormat,
    pub memory_cap: u64,
    #[serde(rename = "loop")]
    pub loop_spec: Option<String>,
}

impl RunConfig {
    fn resolve(args: &CommonArgs) -> Result<RunConfig> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<ConfigFile>(&text)?
            }
            None => ConfigFile::default(),
        };
        let env_cap = match std::env::var(MEMORY_CAP_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("{MEMORY_CAP_ENV} must be an integer, got `{s}`")))?,
            ),
            Err(_) => None,
        };
        let cfg = RunConfig {
            degree: args.degree.or(file.degree).unwrap_or(4),
            seed: args.seed.or(file.seed).unwrap_or(0),
            samples: args.samples.or(file.samples).unwrap_or(25),
            format: args.format.or(file.format).unwrap_or(OutputFormat::Text),
            memory_cap: args.memory_cap.or(env_cap).or(file.memory_cap).unwrap_or(DEFAULT_MEMORY_CAP),
            loop_spec: args.loop_spec.clone().or(file.loop_spec),
        };
        if cfg.degree == 0 {
            return Err(Error::InvalidArgument("the degree must be at least 1".into()));
        }
        Ok(cfg)
    }
}

/// What a command hands back for printing.
pub(crate) struct Report {
    pub pass: bool,
    pub result: serde_json::Value,
    pub text: Vec<String>,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = RunConfig::resolve(&cli.common).and_then(|cfg| {
        let report = dispatch(&cli.command, &cfg)?;
        Ok((cfg, report))
    });
    match outcome {
        Ok((cfg, report)) => {
            let _ = emit(out, &cli.command, &cfg, &report);
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyIdentity { .. } => "verify-identity",
        Command::Brackets { .. } => "brackets",
        Command::Explog { .. } => "explog",
        Command::Bernoulli { .. } => "bernoulli",
        Command::Raltify => "raltify",
        Command::Multioperator { .. } => "multioperator",
    }
}

fn dispatch(c: &Command, cfg: &RunConfig) -> Result<Report> {
    match c {
        Command::VerifyIdentity { identity, mode, exhaustive_degree } => {
            commands::verify_identity(cfg, identity, *mode, *exhaustive_degree)
        }
        Command::Brackets { arity, method } => commands::brackets(cfg, *arity, *method),
        Command::Explog { check } => commands::explog(cfg, *check),
        Command::Bernoulli { max_degree } => commands::bernoulli(*max_degree),
        Command::Raltify => commands::raltify(cfg),
        Command::Multioperator { bidegree, method } => {
            commands::multioperator(cfg, (bidegree[0], bidegree[1]), *method)
        }
    }
}

fn emit(out: &mut dyn Write, c: &Command, cfg: &RunConfig, report: &Report) -> std::io::Result<()> {
    match cfg.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "command": command_name(c),
                "config": cfg,
                "pass": report.pass,
                "result": report.result,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("plain data serializes"))
        }
        OutputFormat::Text => {
            for line in &report.text {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "result: {}", if report.pass { "PASS" } else { "FAIL" })
        }
    }
}
