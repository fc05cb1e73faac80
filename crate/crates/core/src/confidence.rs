//! Confidences of conclusive outcomes and their achievable maxima.
//!
//! With `B = rho^{-1/2}` on the support, the transformed state
//! `T1 = eta1 B rho1 B` satisfies `T1 + T2 = I`, where `T2 = eta2 B rho2 B`.
//! The largest eigenvalue of `T1` is the best confidence any outcome can have
//! in favour of `rho1`; one minus its smallest eigenvalue is the best
//! confidence in favour of `rho2`.

use serde::{Deserialize, Serialize};

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::operators::{eigh, inv_sqrt_on_support, CMatrix, CVector, HermitianOperator};
use crate::povm::Povm;
use crate::tol;

/// `rho^{-1/2}` on the support basis of the ensemble.
pub(crate) fn support_inv_sqrt(e: &Ensemble) -> HermitianOperator {
    let rho = e.support_rho();
    let scale = rho.max_eigenvalue();
    // rho is full rank on its own support, so this cannot fail
    let (b, _) = inv_sqrt_on_support(rho, tol::RANK_RELATIVE * scale).expect("rho is PSD");
    b
}

/// `eta1 rho^{-1/2} rho1 rho^{-1/2}` on the support basis.
pub fn rho_tilde_1(e: &Ensemble) -> HermitianOperator {
    e.support_rho1()
        .sandwich(&support_inv_sqrt(e))
        .scale(e.eta1())
}

/// Spectrum of the transformed state `T1` with the extreme degeneracies.
#[derive(Debug, Clone)]
pub struct SpectralData {
    /// Ascending eigenvalues, clipped to `[0, 1]`.
    pub nu: Vec<f64>,
    /// Eigenvalues before clipping.
    pub raw_nu: Vec<f64>,
    /// Eigenvectors on the support basis, paired with `nu` by column.
    pub basis: CMatrix,
    /// Degeneracy of the largest eigenvalue.
    pub m: usize,
    /// Degeneracy of the smallest eigenvalue.
    pub n: usize,
    pub c1_max: f64,
    pub c2_max: f64,
}

impl SpectralData {
    pub fn nu_max(&self) -> f64 {
        *self.nu.last().expect("nonempty spectrum")
    }

    pub fn nu_min(&self) -> f64 {
        self.nu[0]
    }

    /// Eigenvector of the largest eigenvalue.
    pub fn top_vector(&self) -> CVector {
        self.basis.column(self.nu.len() - 1).into_owned()
    }

    /// Eigenvector of the smallest eigenvalue.
    pub fn bottom_vector(&self) -> CVector {
        self.basis.column(0).into_owned()
    }

    pub fn extremes_nondegenerate(&self) -> bool {
        self.m == 1 && self.n == 1
    }
}

pub fn spectral_data(e: &Ensemble, cluster_tol: f64) -> SpectralData {
    let eig = eigh(&rho_tilde_1(e));
    let raw_nu = eig.values.clone();
    let nu: Vec<f64> = raw_nu.iter().map(|x| x.clamp(0.0, 1.0)).collect();
    let top = *nu.last().expect("nonempty spectrum");
    let bottom = nu[0];
    let width = cluster_tol * top.abs().max(1.0);
    let m = nu.iter().filter(|&&x| top - x <= width).count();
    let n = nu.iter().filter(|&&x| x - bottom <= width).count();
    SpectralData {
        c1_max: top,
        c2_max: 1.0 - bottom,
        nu,
        raw_nu,
        basis: eig.vectors,
        m,
        n,
    }
}

/// `(C1_max, C2_max)`.
pub fn max_confidences(e: &Ensemble) -> (f64, f64) {
    let sd = spectral_data(e, tol::CLUSTER);
    (sd.c1_max, sd.c2_max)
}

/// `Tr(rho Pi)` for an ambient-basis operator.
pub fn detection_probability(e: &Ensemble, pi: &HermitianOperator) -> f64 {
    e.eta1() * e.rho1().op().trace_product(pi) + e.eta2() * e.rho2().op().trace_product(pi)
}

/// Probability that `rho_j` was prepared given that outcome `pi` fired:
/// `eta_j Tr(rho_j Pi) / Tr(rho Pi)`.
pub fn confidence_of(e: &Ensemble, pi: &HermitianOperator, j: usize) -> Result<f64> {
    if pi.dim() != e.ambient_dim() {
        return Err(Error::DimensionMismatch(pi.dim(), e.ambient_dim()));
    }
    let total = detection_probability(e, pi);
    if total <= tol::NEVER_OCCURS {
        return Err(Error::OutcomeNeverOccurs(total));
    }
    Ok(e.eta(j) * e.state(j).op().trace_product(pi) / total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativeSuccess {
    /// Probability of a correct conclusive result.
    pub p_s: f64,
    /// Probability of the inconclusive outcome.
    pub q: f64,
    /// `p_s / (1 - q)`.
    pub p_rs: f64,
    /// Fraction of conclusive results that are outcome 1.
    pub f1: f64,
    pub f2: f64,
}

pub fn relative_success(e: &Ensemble, povm: &Povm) -> Result<RelativeSuccess> {
    let q = detection_probability(e, &povm.pi_fail);
    if q > 1.0 - tol::NEVER_OCCURS {
        return Err(Error::AllInconclusive(q));
    }
    let p_s = e.eta1() * e.rho1().op().trace_product(&povm.pi1)
        + e.eta2() * e.rho2().op().trace_product(&povm.pi2);
    let conclusive = 1.0 - q;
    Ok(RelativeSuccess {
        p_s,
        q,
        p_rs: p_s / conclusive,
        f1: detection_probability(e, &povm.pi1) / conclusive,
        f2: detection_probability(e, &povm.pi2) / conclusive,
    })
}

/// Largest achievable relative success rate, `max(C1_max, C2_max)`.
pub fn max_relative_success(e: &Ensemble) -> f64 {
    let (c1, c2) = max_confidences(e);
    c1.max(c2)
}
