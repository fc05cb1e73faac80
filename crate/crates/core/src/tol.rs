//! Numerical tolerances shared across the crate.

/// Largest anti-Hermitian part accepted when building a [`crate::HermitianOperator`].
pub const HERMITIAN: f64 = 1e-9;

/// Absolute tolerance for positive-semidefiniteness checks.
pub const PSD: f64 = 1e-10;

/// Relative (to the largest eigenvalue) cutoff for rank and support decisions.
pub const RANK_RELATIVE: f64 = 1e-9;

/// Relative tolerance for grouping eigenvalues into a degenerate cluster.
pub const CLUSTER: f64 = 1e-8;

/// Two states closer than this in max-abs norm are treated as identical.
pub const STATE_EQUALITY: f64 = 1e-9;

/// Max-abs commutator below which two states are treated as commuting.
pub const COMMUTATION: f64 = 1e-10;

/// `|<v|w>|` below this is treated as exactly orthogonal.
pub const ZERO_OVERLAP: f64 = 1e-12;

/// `Tr(rho Pi)` at or below this means the outcome never occurs.
pub const NEVER_OCCURS: f64 = 1e-14;

/// Eigenvalues of the Helstrom operator with magnitude below this go to the second outcome.
pub const HELSTROM_ZERO: f64 = 1e-10;
