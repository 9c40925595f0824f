//! `glsm`: chambers, state spaces, I-functions and wall-crossing for the
//! `[C^13 //_θ (C*)^4]` model.

mod commands;
mod config;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use glsm_core::verify::{precision_from_env, VerifyConfig, DEFAULT_SEED};
use glsm_core::{Degree, Epsilon};

use crate::config::{parse_chamber, parse_cutoff, parse_hbar, parse_point, Format, RunConfig};

#[derive(Parser)]
#[command(name = "glsm", version, about = "GLSM chamber analysis and LG/CY wall-crossing")]
struct Cli {
    /// Output format; text by default, JSON for `ifunction`.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 16 sign patterns, or describe one chamber.
    Chambers {
        /// Chamber to describe, e.g. `++-+` or `3,3,-3,3`.
        #[arg(long, allow_hyphen_values = true)]
        detail: Option<String>,
    },
    /// Narrow state space of a chamber.
    Statespace {
        #[arg(allow_hyphen_values = true)]
        chamber: String,
    },
    /// I-function summation degrees, or the predicates for one tuple.
    Degrees {
        #[arg(allow_hyphen_values = true)]
        chamber: String,
        #[arg(long, default_value = "2")]
        cutoff: String,
        /// Check a single degree `bx,by,bz,ba` instead of listing.
        #[arg(long, allow_hyphen_values = true)]
        check: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        m: i64,
        /// Stability parameter: `0+`, `inf` or a positive rational.
        #[arg(long, default_value = "0+")]
        eps: String,
    },
    /// I-function series as JSON (or text).
    Ifunction {
        #[arg(allow_hyphen_values = true)]
        chamber: String,
        #[arg(long, default_value = "2")]
        cutoff: String,
        /// Nonzero hbar, `a`, `a+bi` or a rational.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        hbar: String,
        /// Givental form with logarithms instead of the plain series.
        #[arg(long)]
        givental: bool,
        /// Evaluate at `q_x,q_y,q_z,q_a`.
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// Term match and LG/CY matrix between adjacent chambers.
    Wallcross {
        #[arg(allow_hyphen_values = true)]
        from: String,
        #[arg(allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value = "2")]
        cutoff: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        hbar: String,
    },
    /// Run the acceptance suite.
    Verify {
        /// Run every criterion (the default).
        #[arg(long)]
        all: bool,
        /// Run only these criteria.
        #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=11))]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print every check, not only those of failing criteria.
        #[arg(long)]
        verbose: bool,
    },
}

/// Outcome of a successful run: output plus whether verification passed.
struct Outcome {
    output: String,
    ok: bool,
}

fn run_config(chambers: &[&str], cutoff: &str, hbar: &str, format: Format, eval: Option<&str>) -> Result<RunConfig> {
    Ok(RunConfig {
        chambers: chambers.iter().map(|c| parse_chamber(c)).collect::<Result<_>>()?,
        cutoff: parse_cutoff(cutoff)?,
        hbar: parse_hbar(hbar)?,
        format,
        eval: eval.map(parse_point).transpose()?,
        seed: DEFAULT_SEED,
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format.unwrap_or(Format::Text);
    let output = match cli.command {
        Command::Chambers { detail: None } => commands::chambers(format)?,
        Command::Chambers { detail: Some(c) } => commands::chamber_detail(&parse_chamber(&c)?, format)?,
        Command::Statespace { chamber } => commands::statespace(&parse_chamber(&chamber)?, format)?,
        Command::Degrees {
            chamber,
            cutoff,
            check,
            m,
            eps,
        } => {
            let theta = parse_chamber(&chamber)?;
            let query = match check {
                Some(b) => Some(commands::DegreeQuery {
                    beta: Degree::parse(&b)?,
                    m,
                    eps: Epsilon::parse(&eps)?,
                }),
                None => None,
            };
            commands::degrees(&theta, parse_cutoff(&cutoff)?, query.as_ref(), format)?
        }
        Command::Ifunction {
            chamber,
            cutoff,
            hbar,
            givental,
            eval,
        } => {
            let format = cli.format.unwrap_or(Format::Json);
            let cfg = run_config(&[&chamber], &cutoff, &hbar, format, eval.as_deref())?;
            commands::ifunction(&cfg, givental)?
        }
        Command::Wallcross { from, to, cutoff, hbar } => {
            let cfg = run_config(&[&from, &to], &cutoff, &hbar, format, None)?;
            commands::wallcross(&cfg)?
        }
        Command::Verify {
            all: _,
            criteria,
            seed,
            verbose,
        } => {
            let quad_tol = precision_from_env().map_err(anyhow::Error::msg)?;
            let outcome = commands::verify(&criteria, &VerifyConfig { seed, quad_tol }, verbose, format)?;
            return Ok(Outcome {
                output: outcome.output,
                ok: outcome.passed,
            });
        }
    };
    Ok(Outcome { output, ok: true })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.output);
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
