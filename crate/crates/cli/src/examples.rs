use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use clap::Args;
use mcdisc::ensemble::{block_states, equal_purity_pair, mixed_vs_depolarized, Ensemble};
use mcdisc::minerror::{compare_strategies, ComparisonReport};
use mcdisc::qubit::{
    commuting_minimum_error_relation, filtering_comparison, CommutingRelation, FilteringComparison,
};
use mcdisc::CVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::{
    blocks_output, solve_output, to_json, BlocksOutput, Failure, SolveOutput, StrategyArg,
};

pub const NAMES: [&str; 4] = [
    "filtering",
    "mixed-vs-depolarized",
    "equal-purity",
    "blocks",
];

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// One of: filtering, mixed-vs-depolarized, equal-purity, blocks.
    pub name: String,
    /// Purity of the mixed states.
    #[arg(long)]
    pub p: Option<f64>,
    /// Tilt angle in radians (equal-purity).
    #[arg(long, visible_alias = "gamma-rad")]
    pub gamma: Option<f64>,
    /// Prior of the first state (equal-purity).
    #[arg(long)]
    pub eta1: Option<f64>,
    /// Prior of the pure or depolarized state (filtering, mixed-vs-depolarized).
    #[arg(long)]
    pub eta2: Option<f64>,
    /// Block angles in radians, comma separated (blocks).
    #[arg(long, visible_alias = "gammas-rad", value_delimiter = ',')]
    pub gammas: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Both)]
    pub strategy: StrategyArg,
}

#[derive(Debug, Serialize)]
struct QubitExample {
    example: &'static str,
    parameters: serde_json::Value,
    #[serde(flatten)]
    solved: SolveOutput,
    comparison: ComparisonReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    commuting: Option<CommutingRelation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    filtering: Option<FilteringComparison>,
}

#[derive(Debug, Serialize)]
struct BlocksExample {
    example: &'static str,
    #[serde(flatten)]
    blocks: BlocksOutput,
}

fn ket0() -> CVector {
    CVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
}

fn qubit_example(
    example: &'static str,
    parameters: serde_json::Value,
    e: &Ensemble,
) -> Result<QubitExample, Failure> {
    Ok(QubitExample {
        example,
        parameters,
        solved: solve_output(e)?,
        comparison: compare_strategies(e)?,
        commuting: None,
        filtering: None,
    })
}

pub fn run(args: &ExampleArgs) -> Result<String, Failure> {
    match args.name.as_str() {
        "filtering" => {
            let eta2 = args.eta2.unwrap_or(0.5);
            let e = mixed_vs_depolarized(&ket0(), 1.0, eta2)?;
            let mut out = qubit_example("filtering", serde_json::json!({ "eta2": eta2 }), &e)?;
            out.filtering = Some(filtering_comparison(&e)?);
            Ok(to_json(&out))
        }
        "mixed-vs-depolarized" => {
            let (eta2, p) = (args.eta2.unwrap_or(0.5), args.p.unwrap_or(0.5));
            let e = mixed_vs_depolarized(&ket0(), p, eta2)?;
            let mut out = qubit_example(
                "mixed-vs-depolarized",
                serde_json::json!({ "eta2": eta2, "p": p }),
                &e,
            )?;
            out.commuting = Some(commuting_minimum_error_relation(&e)?);
            Ok(to_json(&out))
        }
        "equal-purity" => {
            let (gamma, p, eta1) = (
                args.gamma.unwrap_or(FRAC_PI_4),
                args.p.unwrap_or(0.5),
                args.eta1.unwrap_or(0.5),
            );
            let e = equal_purity_pair(gamma, p, eta1)?;
            let params = serde_json::json!({ "gamma": gamma, "p": p, "eta1": eta1 });
            Ok(to_json(&qubit_example("equal-purity", params, &e)?))
        }
        "blocks" => {
            let gammas = args
                .gammas
                .clone()
                .unwrap_or_else(|| vec![FRAC_PI_8, FRAC_PI_4]);
            let e = block_states(&gammas, args.p.unwrap_or(0.5))?;
            Ok(to_json(&BlocksExample {
                example: "blocks",
                blocks: blocks_output(&e, args.strategy)?,
            }))
        }
        other => Err(Failure::usage(format!(
            "unknown example `{other}`; valid names: {}",
            NAMES.join(", ")
        ))),
    }
}
