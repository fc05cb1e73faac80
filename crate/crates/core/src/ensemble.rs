//! Two-state ensembles and the state families used throughout the crate.
//!
//! An [`Ensemble`] owns the averaged state `rho = eta1 rho1 + eta2 rho2` and an
//! isometry onto its support. Solvers work on the support, where `rho` is
//! invertible, and map their results back with [`Ensemble::embed`].

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{eigh, CMatrix, CVector, HermitianOperator};
use crate::tol;

/// Positive semidefinite, unit-trace Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > tol::PSD {
            return Err(Error::InvalidTrace(tr));
        }
        let min = op.min_eigenvalue();
        if min < -tol::PSD {
            return Err(Error::NotPositiveSemidefinite(min));
        }
        Ok(Self { op })
    }

    /// `|psi><psi|` for the normalized `psi`.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Precondition(
                "pure state vector must be nonzero".into(),
            ));
        }
        Self::new(HermitianOperator::outer(psi, 1.0 / (norm * norm)))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// `p |psi><psi| + (1 - p) I/d`.
    pub fn depolarized(psi: &CVector, p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::ParameterOutOfRange {
                name: "p",
                value: p,
                expected: "0 < p <= 1",
            });
        }
        let pure = Self::pure(psi)?;
        let mixed = Self::maximally_mixed(psi.len());
        Self::new(&pure.op.scale(p) + &mixed.op.scale(1.0 - p))
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }
}

fn check_prior(name: &'static str, eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        let _ = name;
        Err(Error::InvalidPrior(eta))
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < FRAC_PI_2 - 1e-12 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "gamma",
            value: gamma,
            expected: "0 < gamma < pi/2 (radians)",
        })
    }
}

fn check_purity(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            expected: "0 < p <= 1",
        })
    }
}

/// Two density matrices with priors `eta1` and `eta2 = 1 - eta1`.
#[derive(Debug, Clone)]
pub struct Ensemble {
    rho1: DensityMatrix,
    rho2: DensityMatrix,
    eta1: f64,
    /// Kept alongside `eta1` so that swapping the states is exact.
    eta2: f64,
    rho: DensityMatrix,
    /// Columns: orthonormal basis of the support of `rho` (ambient x support).
    isometry: CMatrix,
    full_rank: bool,
    support_rho1: HermitianOperator,
    support_rho2: HermitianOperator,
    support_rho: HermitianOperator,
}

impl Ensemble {
    pub fn new(rho1: DensityMatrix, rho2: DensityMatrix, eta1: f64) -> Result<Self> {
        check_prior("eta1", eta1)?;
        Self::with_priors(rho1, rho2, eta1, 1.0 - eta1)
    }

    fn with_priors(rho1: DensityMatrix, rho2: DensityMatrix, eta1: f64, eta2: f64) -> Result<Self> {
        if rho1.dim() != rho2.dim() {
            return Err(Error::DimensionMismatch(rho1.dim(), rho2.dim()));
        }
        let diff = rho1.op.max_abs_diff(&rho2.op);
        if diff <= tol::STATE_EQUALITY {
            return Err(Error::StatesIdentical(diff));
        }
        let rho = DensityMatrix::new(&rho1.op.scale(eta1) + &rho2.op.scale(eta2))?;

        let ambient = rho.dim();
        let eig = eigh(&rho.op);
        let cutoff = tol::RANK_RELATIVE * eig.values[ambient - 1];
        let keep: Vec<usize> = (0..ambient).filter(|&i| eig.values[i] > cutoff).collect();
        let full_rank = keep.len() == ambient;
        let isometry = if full_rank {
            CMatrix::identity(ambient, ambient)
        } else {
            CMatrix::from_fn(ambient, keep.len(), |i, k| eig.vectors[(i, keep[k])])
        };

        let (support_rho1, support_rho2, support_rho) = if full_rank {
            (rho1.op.clone(), rho2.op.clone(), rho.op.clone())
        } else {
            (
                rho1.op.compress_by(&isometry),
                rho2.op.compress_by(&isometry),
                rho.op.compress_by(&isometry),
            )
        };

        Ok(Self {
            rho1,
            rho2,
            eta1,
            eta2,
            rho,
            isometry,
            full_rank,
            support_rho1,
            support_rho2,
            support_rho,
        })
    }

    pub fn rho1(&self) -> &DensityMatrix {
        &self.rho1
    }

    pub fn rho2(&self) -> &DensityMatrix {
        &self.rho2
    }

    /// `rho_j` for `j` in `{1, 2}`.
    pub fn state(&self, j: usize) -> &DensityMatrix {
        match j {
            1 => &self.rho1,
            2 => &self.rho2,
            _ => panic!("state index must be 1 or 2, got {j}"),
        }
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }

    pub fn eta(&self, j: usize) -> f64 {
        match j {
            1 => self.eta1(),
            2 => self.eta2(),
            _ => panic!("prior index must be 1 or 2, got {j}"),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn support_dim(&self) -> usize {
        self.isometry.ncols()
    }

    pub fn isometry(&self) -> &CMatrix {
        &self.isometry
    }

    pub fn support_rho1(&self) -> &HermitianOperator {
        &self.support_rho1
    }

    pub fn support_rho2(&self) -> &HermitianOperator {
        &self.support_rho2
    }

    pub fn support_rho(&self) -> &HermitianOperator {
        &self.support_rho
    }

    /// Expresses an ambient operator on the support basis.
    pub fn restrict(&self, op: &HermitianOperator) -> HermitianOperator {
        if self.full_rank {
            op.clone()
        } else {
            op.compress_by(&self.isometry)
        }
    }

    /// Maps a support-basis operator back to the ambient space.
    pub fn embed(&self, op: &HermitianOperator) -> HermitianOperator {
        if self.full_rank {
            op.clone()
        } else {
            op.conjugate_by(&self.isometry)
        }
    }

    pub fn embed_vector(&self, v: &CVector) -> CVector {
        if self.full_rank {
            v.clone()
        } else {
            &self.isometry * v
        }
    }

    /// The same ensemble with both states conjugated by the unitary `u`.
    pub fn rotated(&self, u: &CMatrix) -> Result<Self> {
        let r1 = DensityMatrix::new(self.rho1.op.conjugate_by(u))?;
        let r2 = DensityMatrix::new(self.rho2.op.conjugate_by(u))?;
        Self::with_priors(r1, r2, self.eta1, self.eta2)
    }

    /// The same ensemble embedded into `ambient_dim + extra` dimensions with zero padding.
    pub fn padded(&self, extra: usize) -> Result<Self> {
        let d = self.ambient_dim();
        let pad = CMatrix::from_fn(d + extra, d, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let r1 = DensityMatrix::new(self.rho1.op.conjugate_by(&pad))?;
        let r2 = DensityMatrix::new(self.rho2.op.conjugate_by(&pad))?;
        Self::with_priors(r1, r2, self.eta1, self.eta2)
    }

    /// The ensemble with the roles of the two states exchanged.
    pub fn swapped(&self) -> Result<Self> {
        Self::with_priors(self.rho2.clone(), self.rho1.clone(), self.eta2, self.eta1)
    }
}

/// `cos(gamma/2)|0> + sign sin(gamma/2)|1>`.
pub fn tilted_qubit(gamma: f64, sign: i32) -> CVector {
    let s = if sign < 0 { -1.0 } else { 1.0 };
    CVector::from_vec(vec![
        Complex64::new((gamma / 2.0).cos(), 0.0),
        Complex64::new(s * (gamma / 2.0).sin(), 0.0),
    ])
}

/// `p |psi><psi| + (1 - p) I/2` with `|psi> = cos(gamma/2)|0> + sign sin(gamma/2)|1>`.
pub fn qubit_depolarized(gamma: f64, sign: i32, p: f64) -> Result<DensityMatrix> {
    check_gamma(gamma)?;
    check_purity(p)?;
    if sign != 1 && sign != -1 {
        return Err(Error::Precondition(format!(
            "sign must be +1 or -1, got {sign}"
        )));
    }
    DensityMatrix::depolarized(&tilted_qubit(gamma, sign), p)
}

/// Two qubit states of equal purity `p` whose pure parts have overlap `cos(gamma)`.
pub fn equal_purity_pair(gamma: f64, p: f64, eta1: f64) -> Result<Ensemble> {
    Ensemble::new(
        qubit_depolarized(gamma, 1, p)?,
        qubit_depolarized(gamma, -1, p)?,
        eta1,
    )
}

/// `rho1 = I/2` with prior `1 - eta2` against `rho2 = p|psi><psi| + (1-p) I/2` with prior `eta2`.
pub fn mixed_vs_depolarized(psi: &CVector, p: f64, eta2: f64) -> Result<Ensemble> {
    if psi.len() != 2 {
        return Err(Error::DimensionMismatch(psi.len(), 2));
    }
    check_purity(p)?;
    check_prior("eta2", eta2)?;
    Ensemble::new(
        DensityMatrix::maximally_mixed(2),
        DensityMatrix::depolarized(psi, p)?,
        1.0 - eta2,
    )
}

/// Block-structured pair on `d = 2 * gammas.len()` dimensions with equal priors:
/// `rho_j = (2p/d) sum_k |r_k^(j)><r_k^(j)| + (1-p) I/d`, where
/// `|r_k^(1,2)> = cos(gamma_k/2)|0>_k ± sin(gamma_k/2)|1>_k` and block `k`
/// occupies basis vectors `2k` and `2k+1`.
pub fn block_states(gammas: &[f64], p: f64) -> Result<Ensemble> {
    if gammas.is_empty() {
        return Err(Error::Precondition(
            "at least one block angle is required".into(),
        ));
    }
    check_purity(p)?;
    for &g in gammas {
        check_gamma(g)?;
    }
    let d = 2 * gammas.len();
    let build = |sign: i32| -> Result<DensityMatrix> {
        let mut mat = CMatrix::identity(d, d) * Complex64::new((1.0 - p) / d as f64, 0.0);
        for (k, &g) in gammas.iter().enumerate() {
            let r = tilted_qubit(g, sign);
            let w = 2.0 * p / d as f64;
            for a in 0..2 {
                for b in 0..2 {
                    mat[(2 * k + a, 2 * k + b)] += r[a] * r[b].conj() * w;
                }
            }
        }
        DensityMatrix::new(HermitianOperator::new(mat)?)
    };
    Ensemble::new(build(1)?, build(-1)?, 0.5)
}

/// Ensemble interchange format: `{"eta1": x, "rho1": <matrix>, "rho2": <matrix>}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleJson {
    pub eta1: f64,
    pub rho1: HermitianOperator,
    pub rho2: HermitianOperator,
}

impl TryFrom<EnsembleJson> for Ensemble {
    type Error = Error;
    fn try_from(value: EnsembleJson) -> Result<Self> {
        Ensemble::new(
            DensityMatrix::new(value.rho1)?,
            DensityMatrix::new(value.rho2)?,
            value.eta1,
        )
    }
}

impl From<&Ensemble> for EnsembleJson {
    fn from(e: &Ensemble) -> Self {
        EnsembleJson {
            eta1: e.eta1,
            rho1: e.rho1.op.clone(),
            rho2: e.rho2.op.clone(),
        }
    }
}
