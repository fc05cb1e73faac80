//! Optimal discrimination of two mixed quantum states.
//!
//! The central construction is the measurement that reaches the maximum
//! achievable confidence for each conclusive outcome while keeping the
//! probability of an inconclusive result as small as possible. The Helstrom
//! minimum-error measurement is provided alongside for comparison, and the
//! [`oracle`] module checks the optimum by brute force.
//!
//! All solvers work on the support of the averaged state
//! `rho = eta1 rho1 + eta2 rho2` and report operators in the ambient basis.

pub mod blocks;
pub mod confidence;
pub mod ensemble;
pub mod error;
pub mod minerror;
pub mod operators;
pub mod oracle;
pub mod povm;
pub mod qubit;
pub mod rank1_solver;
pub mod tol;

pub use error::{Error, Result};
pub use operators::{CMatrix, CVector, EigenSystem, HermitianOperator, MatrixJson};
