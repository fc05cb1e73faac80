//! Three-outcome measurements `(Pi1, Pi2, Pi_fail)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::HermitianOperator;

/// Detection operators for "state 1", "state 2" and the inconclusive outcome.
///
/// `pi_fail` is always derived as `I - pi1 - pi2`, so completeness holds by
/// construction; positivity is checked with [`Povm::is_valid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Povm {
    pub pi1: HermitianOperator,
    pub pi2: HermitianOperator,
    pub pi_fail: HermitianOperator,
}

impl Povm {
    pub fn from_conclusive(pi1: HermitianOperator, pi2: HermitianOperator) -> Result<Self> {
        if pi1.dim() != pi2.dim() {
            return Err(Error::DimensionMismatch(pi1.dim(), pi2.dim()));
        }
        let id = HermitianOperator::identity(pi1.dim());
        let pi_fail = &(&id - &pi1) - &pi2;
        Ok(Self { pi1, pi2, pi_fail })
    }

    pub fn dim(&self) -> usize {
        self.pi1.dim()
    }

    pub fn element(&self, j: usize) -> &HermitianOperator {
        match j {
            1 => &self.pi1,
            2 => &self.pi2,
            _ => panic!("conclusive outcome index must be 1 or 2, got {j}"),
        }
    }

    /// Smallest eigenvalue of each element, in the order `(pi1, pi2, pi_fail)`.
    pub fn min_eigenvalues(&self) -> [f64; 3] {
        [
            self.pi1.min_eigenvalue(),
            self.pi2.min_eigenvalue(),
            self.pi_fail.min_eigenvalue(),
        ]
    }

    /// Max-abs deviation of `pi1 + pi2 + pi_fail` from the identity.
    pub fn completeness_error(&self) -> f64 {
        let sum = &(&self.pi1 + &self.pi2) + &self.pi_fail;
        sum.max_abs_diff(&HermitianOperator::identity(self.dim()))
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.min_eigenvalues().iter().all(|&x| x >= -tol) && self.completeness_error() < tol
    }

    /// The measurement with outcomes 1 and 2 exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            pi1: self.pi2.clone(),
            pi2: self.pi1.clone(),
            pi_fail: self.pi_fail.clone(),
        }
    }
}
