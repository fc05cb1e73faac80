//! Optimal maximum-confidence measurement with rank-one detection operators.
//!
//! When the extreme eigenvalues of `T1 = eta1 rho^{-1/2} rho1 rho^{-1/2}` are
//! non-degenerate, every maximum-confidence measurement has the form
//! `Pi1 = a |v><v|`, `Pi2 = b |w><w|` with
//!
//! ```text
//! |v> ∝ rho^{-1/2} |nu_max>,   |w> ∝ rho^{-1/2} |nu_min>.
//! ```
//!
//! The failure probability is `Q = 1 - a <v|rho|v> - b <w|rho|w>`, and
//! `Pi1 + Pi2 <= I` holds iff `a + b <= 1 + ab (1 - |<v|w>|^2)`. Minimizing `Q`
//! on that boundary gives an interior optimum `(a_o, b_o)`, which is clamped to
//! one of the two von Neumann measurements when it leaves `[0, 1]^2`.

use serde::{Deserialize, Serialize};

use crate::confidence::{spectral_data, support_inv_sqrt, SpectralData};
use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::operators::{CVector, HermitianOperator};
use crate::povm::Povm;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `a = 1, b = 0`: only outcome 1 is ever concluded.
    BoundaryA,
    /// Both coefficients from the interior optimum.
    Interior,
    /// `a = 0, b = 1`: only outcome 2 is ever concluded.
    BoundaryB,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::BoundaryA => "boundary_a",
            Regime::Interior => "interior",
            Regime::BoundaryB => "boundary_b",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rank1Solution {
    /// Unit vector carrying `Pi1`, ambient basis.
    pub v: CVector,
    /// Unit vector carrying `Pi2`, ambient basis.
    pub w: CVector,
    /// `|<v|w>|`.
    pub overlap: f64,
    pub rho_vv: f64,
    pub rho_ww: f64,
    pub a_opt: f64,
    pub b_opt: f64,
    pub regime: Regime,
    pub q_opt: f64,
    pub povm: Povm,
    /// `Tr(rho Pi1)`.
    pub c1: f64,
    /// `Tr(rho Pi2)`.
    pub c2: f64,
    pub c1_max: f64,
    pub c2_max: f64,
}

/// Largest `b` keeping `a|v><v| + b|w><w| <= I` for a given `a` and overlap `|<v|w>|`.
pub fn positivity_threshold(a: f64, overlap: f64) -> f64 {
    let denom = 1.0 - a * (1.0 - overlap * overlap);
    if denom <= f64::EPSILON {
        // overlap ~ 0 and a ~ 1: the constraint reduces to (1 - a)(1 - b) >= 0
        return 1.0;
    }
    ((1.0 - a) / denom).clamp(0.0, 1.0)
}

/// Interior stationary point `(a_o, b_o)` of `Q` on the positivity boundary.
pub fn interior_coefficients(rho_vv: f64, rho_ww: f64, overlap: f64) -> (f64, f64) {
    let ratio = (rho_ww / rho_vv).sqrt();
    let gap = 1.0 - overlap * overlap;
    ((1.0 - ratio * overlap) / gap, (1.0 - overlap / ratio) / gap)
}

/// The minimum failure probability for each regime.
pub fn failure_probability(regime: Regime, rho_vv: f64, rho_ww: f64, overlap: f64) -> f64 {
    match regime {
        Regime::BoundaryA => 1.0 - rho_vv,
        Regime::BoundaryB => 1.0 - rho_ww,
        Regime::Interior => {
            1.0 - (rho_vv + rho_ww - 2.0 * (rho_vv * rho_ww).sqrt() * overlap)
                / (1.0 - overlap * overlap)
        }
    }
}

/// Picks the regime from `sqrt(rho_ww / rho_vv)` and the overlap. Ties go to `Interior`.
pub fn classify(rho_vv: f64, rho_ww: f64, overlap: f64) -> Regime {
    if overlap < tol::ZERO_OVERLAP {
        return Regime::Interior;
    }
    let ratio = (rho_ww / rho_vv).sqrt();
    if ratio < overlap {
        Regime::BoundaryA
    } else if ratio > 1.0 / overlap {
        Regime::BoundaryB
    } else {
        Regime::Interior
    }
}

pub fn solve(e: &Ensemble) -> Result<Rank1Solution> {
    let sd = spectral_data(e, tol::CLUSTER);
    solve_with_spectrum(e, &sd)
}

pub(crate) fn solve_with_spectrum(e: &Ensemble, sd: &SpectralData) -> Result<Rank1Solution> {
    if !sd.extremes_nondegenerate() {
        return Err(Error::DegenerateExtremes { m: sd.m, n: sd.n });
    }
    let inv_sqrt = support_inv_sqrt(e);
    let unit = |x: CVector| {
        let n = x.norm();
        x / num_complex::Complex64::new(n, 0.0)
    };
    // support basis
    let v = unit(inv_sqrt.matrix() * sd.top_vector());
    let w = unit(inv_sqrt.matrix() * sd.bottom_vector());
    let overlap = v.dotc(&w).norm();
    if overlap >= 1.0 - tol::ZERO_OVERLAP {
        return Err(Error::InternalInconsistency(format!(
            "detection vectors are parallel (|<v|w>| = {overlap})"
        )));
    }
    let rho = e.support_rho();
    let rho_vv = rho.expectation(&v);
    let rho_ww = rho.expectation(&w);

    let regime = classify(rho_vv, rho_ww, overlap);
    let (a_opt, b_opt) = match regime {
        Regime::BoundaryA => (1.0, 0.0),
        Regime::BoundaryB => (0.0, 1.0),
        Regime::Interior if overlap < tol::ZERO_OVERLAP => (1.0, 1.0),
        Regime::Interior => {
            let (a, b) = interior_coefficients(rho_vv, rho_ww, overlap);
            (a.clamp(0.0, 1.0), b.clamp(0.0, 1.0))
        }
    };
    let q_opt = failure_probability(regime, rho_vv, rho_ww, overlap).clamp(0.0, 1.0);

    let pi1 = e.embed(&HermitianOperator::outer(&v, a_opt));
    let pi2 = e.embed(&HermitianOperator::outer(&w, b_opt));
    let povm = Povm::from_conclusive(pi1, pi2)?;

    Ok(Rank1Solution {
        v: e.embed_vector(&v),
        w: e.embed_vector(&w),
        overlap,
        rho_vv,
        rho_ww,
        a_opt,
        b_opt,
        regime,
        q_opt,
        povm,
        c1: a_opt * rho_vv,
        c2: b_opt * rho_ww,
        c1_max: sd.c1_max,
        c2_max: sd.c2_max,
    })
}

/// Interchange form of a [`Rank1Solution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rank1SolutionJson {
    pub regime: Regime,
    pub a_opt: f64,
    pub b_opt: f64,
    pub q_opt: f64,
    pub c1_max: f64,
    pub c2_max: f64,
    pub overlap: f64,
    pub rho_vv: f64,
    pub rho_ww: f64,
    pub pi1: HermitianOperator,
    pub pi2: HermitianOperator,
    pub pi_fail: HermitianOperator,
}

impl From<&Rank1Solution> for Rank1SolutionJson {
    fn from(s: &Rank1Solution) -> Self {
        Self {
            regime: s.regime,
            a_opt: s.a_opt,
            b_opt: s.b_opt,
            q_opt: s.q_opt,
            c1_max: s.c1_max,
            c2_max: s.c2_max,
            overlap: s.overlap,
            rho_vv: s.rho_vv,
            rho_ww: s.rho_ww,
            pi1: s.povm.pi1.clone(),
            pi2: s.povm.pi2.clone(),
            pi_fail: s.povm.pi_fail.clone(),
        }
    }
}
