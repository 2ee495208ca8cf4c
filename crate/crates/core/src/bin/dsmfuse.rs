//! `dsmfuse` command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use dsmfuse::bayesnet::{Evidence, NetworkDocument};
use dsmfuse::commands::{self, read_json, Binding, Format, PipelineOverrides};
use dsmfuse::frame::FrameDocument;
use dsmfuse::mass::BbaDocument;
use dsmfuse::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "dsmfuse", version, about = "DSm fusion, pignistic probabilities and Bayesian network decisions")]
struct Cli {
    /// Decimal places in text tables (half-up rounding).
    #[arg(long, global = true)]
    round: Option<u32>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// How the pipeline feeds BetP into the Bayesian network.
    #[arg(long, global = true, value_enum)]
    binding: Option<Binding>,
    /// Rank intersections and unions alongside single hypotheses.
    #[arg(long, global = true)]
    include_composites: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Combine two sources with DSmC and redistribute conflict with PCR5.
    Fuse {
        frame: PathBuf,
        bba1: PathBuf,
        bba2: PathBuf,
    },
    /// Pignistic probabilities of a mass function.
    Betp {
        frame: PathBuf,
        mass: PathBuf,
        /// Proposition such as "E&F" or "(A|B)&C"; repeatable.
        #[arg(long = "prop")]
        propositions: Vec<String>,
    },
    /// Run staging, aggregation, the Bayesian network and ranking.
    Pipeline { config: PathBuf },
    /// List the hyper-power set under a model with DSm cardinalities.
    Dpow { frame: PathBuf },
    /// Exact posterior marginals of a Bayesian network.
    BnInfer {
        network: PathBuf,
        /// Evidence file with "hard" and "soft" maps.
        #[arg(long)]
        evidence: Option<PathBuf>,
        /// Hard observation NODE=STATE; repeatable.
        #[arg(long = "observe", value_name = "NODE=STATE")]
        observe: Vec<String>,
    },
}

fn emit<T: Serialize>(report: &T, text: impl FnOnce(u32) -> String, format: Format, round: u32) -> Result<String> {
    match format {
        Format::Table => Ok(text(round)),
        Format::Json => serde_json::to_string_pretty(report)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| Error::Config(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<String> {
    let round = cli.round.unwrap_or(dsmfuse::report::DEFAULT_DIGITS);
    let format = cli.format.unwrap_or_default();
    match cli.command {
        Command::Fuse { frame, bba1, bba2 } => {
            let frame: FrameDocument = read_json(&frame)?;
            let s1: BbaDocument = read_json(&bba1)?;
            let s2: BbaDocument = read_json(&bba2)?;
            let report = commands::fuse_report(frame, s1, s2)?;
            emit(&report, |d| report.render_text(d), format, round)
        }
        Command::Betp { frame, mass, propositions } => {
            let frame: FrameDocument = read_json(&frame)?;
            let mass: BbaDocument = read_json(&mass)?;
            let report = commands::betp_report(frame, mass, &propositions)?;
            emit(&report, |d| report.render_text(d), format, round)
        }
        Command::Pipeline { config } => {
            let overrides = PipelineOverrides {
                binding: cli.binding,
                include_composites: cli.include_composites,
            };
            let (config, report) = commands::run_pipeline_file(&config, &overrides)?;
            let round = cli.round.unwrap_or(config.output.round);
            let format = cli.format.unwrap_or(config.output.format);
            emit(&report, |d| report.render_text(d), format, round)
        }
        Command::Dpow { frame } => {
            let frame: FrameDocument = read_json(&frame)?;
            let report = commands::dpow_report(frame)?;
            emit(&report, |d| report.render_text(d), format, round)
        }
        Command::BnInfer { network, evidence, observe } => {
            let network: NetworkDocument = read_json(&network)?;
            let mut ev = match evidence {
                Some(path) => read_json::<Evidence>(&path)?,
                None => Evidence::default(),
            };
            for obs in observe {
                let (node, state) = obs
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("--observe expects NODE=STATE, got {obs:?}")))?;
                ev.hard.insert(node.trim().to_string(), state.trim().to_string());
            }
            let report = commands::bn_report(network, ev)?;
            emit(&report, |d| report.render_text(d), format, round)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
