//! Helstrom minimum-error measurement and its comparison with the
//! maximum-confidence measurement.

use serde::{Deserialize, Serialize};

use crate::confidence::{confidence_of, max_relative_success, relative_success};
use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::operators::{eigh, HermitianOperator};
use crate::povm::Povm;
use crate::rank1_solver::{self, Regime};
use crate::tol;

#[derive(Debug, Clone)]
pub struct MinErrorSolution {
    /// `eta2 rho2 - eta1 rho1`.
    pub lambda_op: HermitianOperator,
    /// `(1 - Tr|Lambda|) / 2`.
    pub p_e: f64,
    /// Projector onto the strictly negative eigenspace of `Lambda`.
    pub pi1_e: HermitianOperator,
    pub pi2_e: HermitianOperator,
    /// `None` when the outcome never fires (the optimum is to always guess).
    pub c1_e: Option<f64>,
    pub c2_e: Option<f64>,
}

impl MinErrorSolution {
    pub fn povm(&self) -> Povm {
        Povm {
            pi1: self.pi1_e.clone(),
            pi2: self.pi2_e.clone(),
            pi_fail: HermitianOperator::zeros(self.pi1_e.dim()),
        }
    }
}

/// `eta2 rho2 - eta1 rho1`.
pub fn helstrom_operator(e: &Ensemble) -> HermitianOperator {
    &e.rho2().op().scale(e.eta2()) - &e.rho1().op().scale(e.eta1())
}

/// `eta1 Tr(rho1 Pi2) + eta2 Tr(rho2 Pi1)`, the chance of a wrong conclusive answer.
pub fn error_probability(e: &Ensemble, povm: &Povm) -> f64 {
    e.eta1() * e.rho1().op().trace_product(&povm.pi2)
        + e.eta2() * e.rho2().op().trace_product(&povm.pi1)
}

fn optional_confidence(e: &Ensemble, pi: &HermitianOperator, j: usize) -> Result<Option<f64>> {
    match confidence_of(e, pi, j) {
        Ok(c) => Ok(Some(c)),
        Err(Error::OutcomeNeverOccurs(_)) => Ok(None),
        Err(err) => Err(err),
    }
}

pub fn solve_min_error(e: &Ensemble) -> MinErrorSolution {
    let lambda_op = helstrom_operator(e);
    let eig = eigh(&lambda_op);
    let abs_sum: f64 = eig.values.iter().map(|x| x.abs()).sum();
    let p_e = (0.5 * (1.0 - abs_sum)).clamp(0.0, e.eta1().min(e.eta2()));
    let pi1_e = eig.projector(|x| x < -tol::HELSTROM_ZERO);
    let pi2_e = &HermitianOperator::identity(lambda_op.dim()) - &pi1_e;
    let c1_e = optional_confidence(e, &pi1_e, 1).expect("dimensions agree");
    let c2_e = optional_confidence(e, &pi2_e, 2).expect("dimensions agree");
    MinErrorSolution {
        lambda_op,
        p_e,
        pi1_e,
        pi2_e,
        c1_e,
        c2_e,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxConfidenceSummary {
    pub c1_max: f64,
    pub c2_max: f64,
    pub q_opt: f64,
    pub regime: Regime,
    pub p_s: f64,
    pub p_rs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinErrorSummary {
    pub c1_e: Option<f64>,
    pub c2_e: Option<f64>,
    pub p_e: f64,
    pub q: f64,
    pub p_rs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub max_confidence: MaxConfidenceSummary,
    pub min_error: MinErrorSummary,
    /// `max(C1_max, C2_max)`.
    pub p_rs_max: f64,
}

/// Runs both strategies on the same ensemble. Fails if a minimum-error outcome
/// is more confident than the corresponding maximum-confidence outcome.
pub fn compare_strategies(e: &Ensemble) -> Result<ComparisonReport> {
    let mc = rank1_solver::solve(e)?;
    let me = solve_min_error(e);
    let mc_rs = relative_success(e, &mc.povm)?;

    for (j, coef, cmax, ce) in [
        (1, mc.a_opt, mc.c1_max, me.c1_e),
        (2, mc.b_opt, mc.c2_max, me.c2_e),
    ] {
        if let Some(ce) = ce {
            if coef > 0.0 && cmax < ce - 1e-12 {
                return Err(Error::InternalInconsistency(format!(
                    "minimum-error confidence C{j} = {ce} exceeds maximum confidence {cmax}"
                )));
            }
        }
    }

    Ok(ComparisonReport {
        max_confidence: MaxConfidenceSummary {
            c1_max: mc.c1_max,
            c2_max: mc.c2_max,
            q_opt: mc.q_opt,
            regime: mc.regime,
            p_s: mc_rs.p_s,
            p_rs: mc_rs.p_rs,
        },
        min_error: MinErrorSummary {
            c1_e: me.c1_e,
            c2_e: me.c2_e,
            p_e: me.p_e,
            q: 0.0,
            p_rs: 1.0 - me.p_e,
        },
        p_rs_max: max_relative_success(e),
    })
}
