//! `mcdisc`: maximum-confidence discrimination of two mixed states from the command line.

mod examples;
mod format;
mod sweep;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mcdisc::blocks::{
    decompose, solve_balanced, solve_max_confidence, BlockDecomposition, BlockSolution, Strategy,
};
use mcdisc::ensemble::{Ensemble, EnsembleJson};
use mcdisc::minerror::compare_strategies;
use mcdisc::oracle::{evaluate_with_tol, MeasurementReport, VALIDITY_TOL};
use mcdisc::rank1_solver::{self, Rank1SolutionJson};
use mcdisc::HermitianOperator;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "mcdisc",
    version,
    about = "Maximum-confidence discrimination of two mixed quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an ensemble given as JSON `{"eta1", "rho1", "rho2"}`.
    Solve { input: PathBuf },
    /// Write a parameter sweep as CSV.
    Sweep(sweep::SweepArgs),
    /// Run a built-in worked example.
    Example(examples::ExampleArgs),
    /// Solve a block-separable ensemble with higher-rank detection operators.
    Blocks {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Both)]
        strategy: StrategyArg,
    },
    /// Compare the maximum-confidence and minimum-error measurements.
    Compare { input: PathBuf },
    /// Check solver output against the brute-force oracle on a seeded corpus.
    Verify(verify::VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    MaxConfidence,
    Balanced,
    Both,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<mcdisc::Error> for Failure {
    fn from(err: mcdisc::Error) -> Self {
        match err {
            mcdisc::Error::DegenerateExtremes { .. } => Failure {
                code: 2,
                message: format!("{err}; try `mcdisc blocks`"),
            },
            other => Failure::usage(other.to_string()),
        }
    }
}

/// POVM validity tolerance, overridable through `MCDISC_TOL`.
pub fn validity_tol() -> Result<f64, Failure> {
    match std::env::var("MCDISC_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(Failure::usage(format!(
                "MCDISC_TOL must be a positive number, got `{s}`"
            ))),
        },
        Err(_) => Ok(VALIDITY_TOL),
    }
}

fn read_ensemble(path: &Path) -> Result<Ensemble, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let json: EnsembleJson = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(Ensemble::try_from(json)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub solution: Rank1SolutionJson,
    pub report: MeasurementReport,
}

pub fn solve_output(e: &Ensemble) -> Result<SolveOutput, Failure> {
    let s = rank1_solver::solve(e)?;
    Ok(SolveOutput {
        solution: Rank1SolutionJson::from(&s),
        report: evaluate_with_tol(e, &s.povm, validity_tol()?),
    })
}

#[derive(Debug, Serialize)]
pub struct BlockStrategyOutput {
    pub strategy: Strategy,
    pub q_opt: f64,
    pub c1_max: f64,
    pub c2_max: f64,
    pub pi1: HermitianOperator,
    pub pi2: HermitianOperator,
    pub pi_fail: HermitianOperator,
    pub report: MeasurementReport,
}

#[derive(Debug, Serialize)]
pub struct BlocksOutput {
    pub p: f64,
    pub d: usize,
    pub m: usize,
    pub gamma_max: f64,
    pub gammas: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_confidence: Option<BlockStrategyOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced: Option<BlockStrategyOutput>,
}

pub fn blocks_output(e: &Ensemble, strategy: StrategyArg) -> Result<BlocksOutput, Failure> {
    let bd: BlockDecomposition = decompose(e)?;
    let tol = validity_tol()?;
    let render = |s: BlockSolution| BlockStrategyOutput {
        strategy: s.strategy,
        q_opt: s.q_opt,
        c1_max: s.c1_max,
        c2_max: s.c2_max,
        report: evaluate_with_tol(e, &s.povm, tol),
        pi1: s.povm.pi1,
        pi2: s.povm.pi2,
        pi_fail: s.povm.pi_fail,
    };
    let want_mc = strategy != StrategyArg::Balanced;
    let want_av = strategy != StrategyArg::MaxConfidence;
    Ok(BlocksOutput {
        p: bd.p,
        d: bd.d,
        m: bd.m,
        gamma_max: bd.gamma,
        gammas: bd.blocks.iter().map(|b| b.gamma).collect(),
        max_confidence: if want_mc {
            Some(render(solve_max_confidence(&bd)?))
        } else {
            None
        },
        balanced: if want_av {
            Some(render(solve_balanced(&bd)?))
        } else {
            None
        },
    })
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Solve { input } => Ok(to_json(&solve_output(&read_ensemble(&input)?)?)),
        Command::Sweep(args) => {
            let csv = sweep::render(&args)?;
            match &args.out {
                Some(path) => {
                    std::fs::write(path, &csv).map_err(|e| {
                        Failure::usage(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(String::new())
                }
                None => Ok(csv),
            }
        }
        Command::Example(args) => examples::run(&args),
        Command::Blocks { input, strategy } => {
            Ok(to_json(&blocks_output(&read_ensemble(&input)?, strategy)?))
        }
        Command::Compare { input } => Ok(to_json(&compare_strategies(&read_ensemble(&input)?)?)),
        Command::Verify(args) => verify::run(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprint!("error: {}", f.message);
            if !f.message.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(f.code)
        }
    }
}
