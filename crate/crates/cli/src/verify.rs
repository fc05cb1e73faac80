use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use mcdisc::oracle::{
    build_corpus, default_seeds, grid_epsilon, parse_seeds, verify_case, CaseVerdict,
};
use serde::Serialize;

use crate::format::sig15;
use crate::Failure;

/// Shift applied to the claimed optimum by `--inject-fault`.
pub const FAULT_SHIFT: f64 = 1e-2;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Seed manifest, one seed per line; the bundled corpus when omitted.
    #[arg(long)]
    pub seeds: Option<PathBuf>,
    /// Hilbert-space dimensions to test, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3])]
    pub dims: Vec<usize>,
    /// Grid resolution per coefficient.
    #[arg(long, default_value_t = 2000)]
    pub grid_n: usize,
    /// Maximum number of ensembles per dimension.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Write the per-case JSON report to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Corrupt the solver's claimed optimum to exercise the checks.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    grid_n: usize,
    epsilon: f64,
    cases: Vec<CaseVerdict>,
    failed_seeds: Vec<u64>,
    passed: bool,
}

pub fn run(args: &VerifyArgs) -> Result<String, Failure> {
    if args.grid_n == 0 {
        return Err(Failure::usage("grid-n must be positive"));
    }
    if let Some(&d) = args.dims.iter().find(|&&d| d < 2) {
        return Err(Failure::usage(format!("dimension {d} is below 2")));
    }
    let seeds = match &args.seeds {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            parse_seeds(&text)?
        }
        None => default_seeds(),
    };
    let shift = if args.inject_fault { FAULT_SHIFT } else { 0.0 };
    let mut cases = Vec::new();
    for &d in &args.dims {
        for case in build_corpus(&seeds, d, args.limit.unwrap_or(usize::MAX))? {
            cases.push(verify_case(&case, args.grid_n, shift)?);
        }
    }
    let failed_seeds: Vec<u64> = cases.iter().filter(|c| !c.passed).map(|c| c.seed).collect();
    let report = VerifyReport {
        grid_n: args.grid_n,
        epsilon: grid_epsilon(args.grid_n),
        passed: failed_seeds.is_empty(),
        failed_seeds,
        cases,
    };
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, text + "\n")
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }

    let mut out = String::new();
    for &d in &args.dims {
        let mine: Vec<&CaseVerdict> = report.cases.iter().filter(|c| c.d == d).collect();
        let ok = mine.iter().filter(|c| c.passed).count();
        let worst = mine.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
        let conf = mine.iter().map(|c| c.confidence_error).fold(0.0, f64::max);
        let _ = writeln!(
            out,
            "d={d}  cases={}  passed={ok}  min_margin={}  max_confidence_error={}",
            mine.len(),
            sig15(if mine.is_empty() { f64::NAN } else { worst }),
            sig15(conf)
        );
    }
    let _ = writeln!(
        out,
        "grid_n={}  epsilon={}",
        report.grid_n,
        sig15(report.epsilon)
    );
    if report.passed {
        out.push_str("all checks passed\n");
        Ok(out)
    } else {
        let list: Vec<String> = report.failed_seeds.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "failing seeds: {}", list.join(","));
        Err(Failure {
            code: 3,
            message: out,
        })
    }
}
