//! Closed forms for two qubit states.
//!
//! In two dimensions `rho^{-1}` is `adj(rho)/det(rho)`, so the general solution
//! can be written entirely in the matrix elements of `rho` in the eigenbasis
//! `{|nu1>, |nu2>}` of the transformed state: `r11 = <nu1|rho|nu1>`,
//! `r22 = <nu2|rho|nu2>` and `r12 = |<nu1|rho|nu2>|`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::confidence::{confidence_of, detection_probability, spectral_data};
use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::operators::{CMatrix, CVector, HermitianOperator};
use crate::povm::Povm;
use crate::rank1_solver::{self, Regime};
use crate::tol;

#[derive(Debug, Clone)]
pub struct QubitClosedForm {
    pub r11: f64,
    pub r22: f64,
    pub r12_abs: f64,
    pub det_rho: f64,
    pub q_opt: f64,
    pub a_opt: f64,
    pub b_opt: f64,
    pub regime: Regime,
    pub commuting: bool,
    pub c1_max: f64,
    pub c2_max: f64,
    pub povm: Povm,
}

/// `M^{-1/2}` of a positive definite 2x2 matrix, from
/// `sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M))`.
fn inv_sqrt_2x2(m: &CMatrix) -> CMatrix {
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let tr = (m[(0, 0)] + m[(1, 1)]).re;
    let s = det.sqrt();
    let t = (tr + 2.0 * s).sqrt();
    let one = Complex64::new(1.0, 0.0);
    let root = (m + CMatrix::identity(2, 2) * Complex64::new(s, 0.0)) / Complex64::new(t, 0.0);
    let root_det = root[(0, 0)] * root[(1, 1)] - root[(0, 1)] * root[(1, 0)];
    CMatrix::from_row_slice(
        2,
        2,
        &[root[(1, 1)], -root[(0, 1)], -root[(1, 0)], root[(0, 0)]],
    ) * (one / root_det)
}

pub fn solve_qubit(e: &Ensemble) -> Result<QubitClosedForm> {
    if e.support_dim() != 2 {
        return Err(Error::NotQubit(e.support_dim()));
    }
    let sd = spectral_data(e, tol::CLUSTER);
    let nu1 = sd.top_vector();
    let nu2 = sd.bottom_vector();
    let rho = e.support_rho();
    let r11 = rho.expectation(&nu1);
    let r22 = rho.expectation(&nu2);
    let r12_abs = nu1.dotc(&(rho.matrix() * &nu2)).norm();
    let m = rho.matrix();
    let det_rho = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;

    let q_a = 1.0 - det_rho / r22;
    let q_b = 1.0 - det_rho / r11;
    let (regime, q_opt) = match (r12_abs >= r22, r12_abs >= r11) {
        (true, true) if q_b < q_a => (Regime::BoundaryB, q_b),
        (true, _) => (Regime::BoundaryA, q_a),
        (false, true) => (Regime::BoundaryB, q_b),
        (false, false) => (Regime::Interior, 2.0 * r12_abs),
    };
    let (a_opt, b_opt) = match regime {
        Regime::BoundaryA => (1.0, 0.0),
        Regime::BoundaryB => (0.0, 1.0),
        Regime::Interior if r12_abs / (r11 * r22).sqrt() < tol::ZERO_OVERLAP => (1.0, 1.0),
        Regime::Interior => {
            let denom = 1.0 - r12_abs * r12_abs / (r11 * r22);
            (
                ((1.0 - r12_abs / r11) / denom).clamp(0.0, 1.0),
                ((1.0 - r12_abs / r22) / denom).clamp(0.0, 1.0),
            )
        }
    };

    let inv_sqrt = inv_sqrt_2x2(m);
    let unit = |x: CVector| {
        let n = x.norm();
        x / Complex64::new(n, 0.0)
    };
    let v = unit(&inv_sqrt * &nu1);
    let w = unit(&inv_sqrt * &nu2);
    let povm = Povm::from_conclusive(
        e.embed(&HermitianOperator::outer(&v, a_opt)),
        e.embed(&HermitianOperator::outer(&w, b_opt)),
    )?;

    Ok(QubitClosedForm {
        r11,
        r22,
        r12_abs,
        det_rho,
        q_opt: q_opt.clamp(0.0, 1.0),
        a_opt,
        b_opt,
        regime,
        commuting: e.rho1().op().commutator_norm(e.rho2().op()) <= tol::COMMUTATION,
        c1_max: sd.c1_max,
        c2_max: sd.c2_max,
        povm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutingRelation {
    /// Eigenvalue of the Helstrom operator on `|nu1>`.
    pub lambda1: f64,
    /// Eigenvalue of the Helstrom operator on `|nu2>`.
    pub lambda2: f64,
    /// Whether the maximum-confidence projectors are also the minimum-error ones.
    pub coincides: bool,
}

/// For commuting qubit states the Helstrom operator is `rho (I - 2 T1)`, diagonal
/// in the eigenbasis of the transformed state.
pub fn commuting_minimum_error_relation(e: &Ensemble) -> Result<CommutingRelation> {
    if e.support_dim() != 2 {
        return Err(Error::NotQubit(e.support_dim()));
    }
    let comm = e.rho1().op().commutator_norm(e.rho2().op());
    if comm > tol::COMMUTATION {
        return Err(Error::NotCommuting(comm));
    }
    let sd = spectral_data(e, tol::CLUSTER);
    let rho = e.support_rho();
    let r11 = rho.expectation(&sd.top_vector());
    let r22 = rho.expectation(&sd.bottom_vector());
    Ok(CommutingRelation {
        lambda1: r11 * (1.0 - 2.0 * sd.c1_max),
        lambda2: r22 * (2.0 * sd.c2_max - 1.0),
        coincides: sd.c1_max > 0.5 && sd.c2_max > 0.5,
    })
}

/// Unambiguous filtering versus maximum-confidence discrimination of a pure
/// qubit state against the completely mixed state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilteringComparison {
    pub q_unamb: f64,
    pub c1_unamb: f64,
    pub c2_unamb: f64,
    pub q_mc: f64,
    pub c1_mc: f64,
    pub c2_mc: f64,
}

pub fn filtering_comparison(e: &Ensemble) -> Result<FilteringComparison> {
    if e.ambient_dim() != 2 {
        return Err(Error::NotQubit(e.ambient_dim()));
    }
    let mixed_gap = e
        .rho1()
        .op()
        .max_abs_diff(&HermitianOperator::identity(2).scale(0.5));
    if mixed_gap > tol::PSD {
        return Err(Error::Precondition(format!(
            "rho1 must be the completely mixed state (deviation {mixed_gap:e})"
        )));
    }
    let eig = e.rho2().op().eigh();
    if eig.values[1] < 1.0 - tol::PSD {
        return Err(Error::Precondition(format!(
            "rho2 must be pure (largest eigenvalue {})",
            eig.values[1]
        )));
    }
    let psi = eig.vector(1);
    let id = HermitianOperator::identity(2);
    // von Neumann filter: conclude "1" on |psi_perp>, inconclusive on |psi>
    let unamb = Povm::from_conclusive(
        &id - &HermitianOperator::outer(&psi, 1.0),
        HermitianOperator::zeros(2),
    )?;
    let q_unamb = detection_probability(e, &unamb.pi_fail);
    let c1_unamb = confidence_of(e, &unamb.pi1, 1)?;

    let mc = rank1_solver::solve(e)?;
    Ok(FilteringComparison {
        q_unamb,
        c1_unamb,
        c2_unamb: 0.0,
        q_mc: mc.q_opt,
        c1_mc: mc.c1_max,
        c2_mc: mc.c2_max,
    })
}
