//! `hpm-taylor`: series solutions of `rho · u_tt = L u + f` from problem files.
//!
//! Exit codes: 0 success, 2 input error, 3 check failed, 4 internal error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hpm_taylor::expr::SampleError;
use hpm_taylor::parser::{parse_expr, ParseError, ProblemError};
use hpm_taylor::series::{expand_in_time, SeriesError};
use hpm_taylor::verify::VerifyError;
use hpm_taylor::{
    equivalence_check, parse_problem, residual_check, solve_hpm, solve_taylor_with, ProblemSpec, SamplePlan,
};
use serde::Serialize;

use hpm_taylor_cli::output::{equivalence_text, residual_text, ExpandOutput, HpmOutput, SolveOutput};

const EXIT_INPUT: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hpm-taylor",
    version,
    about = "Taylor and homotopy-perturbation series for linear PDE systems"
)]
struct Cli {
    /// Seed for the sampled equality checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Relative tolerance of the sampled equality checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Taylor coefficients u[0..=N] and the exact-termination verdict.
    Solve {
        problem: PathBuf,
        /// Truncation order; defaults to the order in the problem file.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=64))]
        order: Option<u16>,
    },
    /// HPM corrections u^(0..=J) and their partial sum.
    Hpm {
        problem: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(0..=16))]
        corrections: u16,
    },
    /// Degree-by-degree comparison of the two engines.
    Compare {
        problem: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..=16))]
        corrections: u16,
    },
    /// Residual of the Taylor solution against the equation.
    Residual {
        problem: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u16).range(2..=64))]
        order: Option<u16>,
    },
    /// Coefficients of an expression in powers of t.
    Expand {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = clap::value_parser!(u16).range(0..=64))]
        order: u16,
        /// Number of spatial variables; any x<k> is accepted when omitted.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        dims: Option<u16>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::ExpansionSingular { .. } | SeriesError::TimeNotAllowed { .. } => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<SampleError> for Failure {
    fn from(e: SampleError) -> Self {
        match e {
            SampleError::InvalidPlan(_) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Series(e) => e.into(),
            VerifyError::Sample(e) => e.into(),
            VerifyError::Precondition(_) => Failure::Input(e.to_string()),
        }
    }
}

/// Rendered output and whether the run counts as a failed check.
struct Rendered {
    text: String,
    check_failed: bool,
}

fn load(path: &Path) -> Result<ProblemSpec, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_problem(&src).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_order(p: ProblemSpec, order: Option<u16>) -> Result<ProblemSpec, Failure> {
    match order {
        Some(n) => Ok(p.with_order(n.into())?),
        None => Ok(p),
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(text(value)),
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<Rendered, Failure> {
    let plan = SamplePlan::default().with_seed(cli.seed).with_tolerance(cli.tolerance);
    plan.validate()?;
    let format = cli.format;
    let passed = |text| Rendered {
        text,
        check_failed: false,
    };

    match cli.command {
        Command::Solve { problem, order } => {
            let p = with_order(load(&problem)?, order)?;
            let sol = solve_taylor_with(&p, &plan)?;
            render(format, &SolveOutput::new(&sol), SolveOutput::to_text).map(passed)
        }
        Command::Hpm { problem, corrections } => {
            let p = load(&problem)?;
            let h = solve_hpm(&p, corrections.into())?;
            render(format, &HpmOutput::new(&h), HpmOutput::to_text).map(passed)
        }
        Command::Compare { problem, corrections } => {
            let p = load(&problem)?;
            let r = equivalence_check(&p, corrections.into(), &plan)?;
            let text = render(format, &r, equivalence_text)?;
            Ok(Rendered {
                text,
                check_failed: !r.equivalent,
            })
        }
        Command::Residual { problem, order } => {
            let p = with_order(load(&problem)?, order)?;
            if p.order() < 2 {
                return Err(Failure::Input(format!(
                    "residual needs order >= 2, problem has {}",
                    p.order()
                )));
            }
            let sol = hpm_taylor::taylor::taylor_series(&p)?;
            let r = residual_check(&p, &sol, &plan)?;
            let text = render(format, &r, residual_text)?;
            Ok(Rendered {
                text,
                check_failed: !r.overall,
            })
        }
        Command::Expand { expr, order, dims } => {
            let dims = dims.map_or(usize::MAX, usize::from);
            let e = parse_expr(&expr, dims)?;
            let coeffs = expand_in_time(&e, order.into())?;
            render(
                format,
                &ExpandOutput::new(&e, order.into(), &coeffs),
                ExpandOutput::to_text,
            )
            .map(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) => {
            print!("{}", r.text);
            if r.check_failed {
                ExitCode::from(EXIT_CHECK_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
