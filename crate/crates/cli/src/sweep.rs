use std::f64::consts::FRAC_PI_4;

use clap::{Args, ValueEnum};
use mcdisc::blocks::{decompose, solve_max_confidence};
use mcdisc::ensemble::{equal_purity_pair, mixed_vs_depolarized, Ensemble};
use mcdisc::minerror::solve_min_error;
use mcdisc::{rank1_solver, CVector};
use num_complex::Complex64;

use crate::format::{opt, sig15};
use crate::Failure;

pub const HEADER: &str = "param,c1_max,c2_max,q_opt,p_e,c1_e,c2_e";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// Tilted qubit pair with common purity; `eta` is the prior of state 1.
    EqualPurity,
    /// Completely mixed state against a depolarized `|0>`; `eta` is the prior of the depolarized state.
    MixedVsDepolarized,
    /// Orthogonal two-dimensional blocks at equal priors; only `p` can be swept.
    Blocks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Parameter {
    P,
    Gamma,
    Eta,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub scenario: Scenario,
    /// Parameter to sweep.
    #[arg(long, value_enum)]
    pub param: Parameter,
    #[arg(long)]
    pub start: f64,
    #[arg(long)]
    pub stop: f64,
    /// Number of rows, endpoints included.
    #[arg(long)]
    pub steps: usize,
    /// Fixed purity when not swept.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Fixed tilt angle in radians when not swept.
    #[arg(long, visible_alias = "gamma-rad", default_value_t = FRAC_PI_4)]
    pub gamma: f64,
    /// Fixed prior when not swept.
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    /// Block angles in radians, comma separated (blocks scenario).
    #[arg(long, visible_alias = "gammas-rad", value_delimiter = ',', default_values_t = vec![std::f64::consts::FRAC_PI_8, FRAC_PI_4])]
    pub gammas: Vec<f64>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

impl SweepArgs {
    fn validate(&self) -> Result<(), Failure> {
        if self.start.is_nan() || self.stop.is_nan() || self.start >= self.stop {
            return Err(Failure::usage(format!(
                "start ({}) must be below stop ({})",
                self.start, self.stop
            )));
        }
        if self.steps < 2 {
            return Err(Failure::usage(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        let allowed = match self.scenario {
            Scenario::EqualPurity => true,
            Scenario::MixedVsDepolarized => self.param != Parameter::Gamma,
            Scenario::Blocks => self.param == Parameter::P,
        };
        if !allowed {
            return Err(Failure::usage(format!(
                "parameter {:?} cannot be swept in scenario {:?}",
                self.param, self.scenario
            )));
        }
        Ok(())
    }

    fn value(&self, param: Parameter, x: f64) -> f64 {
        if param == self.param {
            x
        } else {
            match param {
                Parameter::P => self.p,
                Parameter::Gamma => self.gamma,
                Parameter::Eta => self.eta,
            }
        }
    }
}

fn row(args: &SweepArgs, x: f64) -> Result<[f64; 7], Failure> {
    let p = args.value(Parameter::P, x);
    let ensemble: Ensemble;
    let (c1, c2, q) = match args.scenario {
        Scenario::Blocks => {
            ensemble = mcdisc::ensemble::block_states(&args.gammas, p)?;
            let s = solve_max_confidence(&decompose(&ensemble)?)?;
            (s.c1_max, s.c2_max, s.q_opt)
        }
        Scenario::EqualPurity => {
            ensemble = equal_purity_pair(
                args.value(Parameter::Gamma, x),
                p,
                args.value(Parameter::Eta, x),
            )?;
            let s = rank1_solver::solve(&ensemble)?;
            (s.c1_max, s.c2_max, s.q_opt)
        }
        Scenario::MixedVsDepolarized => {
            let zero = CVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
            ensemble = mixed_vs_depolarized(&zero, p, args.value(Parameter::Eta, x))?;
            let s = rank1_solver::solve(&ensemble)?;
            (s.c1_max, s.c2_max, s.q_opt)
        }
    };
    let me = solve_min_error(&ensemble);
    Ok([x, c1, c2, q, me.p_e, opt(me.c1_e), opt(me.c2_e)])
}

pub fn render(args: &SweepArgs) -> Result<String, Failure> {
    args.validate()?;
    let mut out = String::from(HEADER);
    out.push('\n');
    let span = args.stop - args.start;
    for i in 0..args.steps {
        let x = if i + 1 == args.steps {
            args.stop
        } else {
            args.start + span * i as f64 / (args.steps - 1) as f64
        };
        let cells: Vec<String> = row(args, x)?.iter().map(|&v| sig15(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}
