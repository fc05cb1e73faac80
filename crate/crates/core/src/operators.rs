//! Dense complex Hermitian operators.
//!
//! Every density matrix, detection operator and the Helstrom operator in this
//! crate is carried by [`HermitianOperator`]. Spectral work goes through
//! [`eigh`], which returns eigenvalues in ascending order together with
//! phase-fixed eigenvectors, so repeated calls on the same input are bitwise
//! identical.
//!
//! Matrix functions (`sqrt_psd`, `inv_sqrt_on_support`) act on the spectrum and
//! never depend on the basis chosen inside a degenerate eigenspace.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// A Hermitian `d x d` complex matrix.
///
/// The stored entries are exactly Hermitian: construction replaces `A` by
/// `(A + A†)/2` after checking that the anti-Hermitian part is negligible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct HermitianOperator {
    mat: CMatrix,
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitize(m: &CMatrix) -> CMatrix {
    let mut out = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    for i in 0..out.nrows() {
        out[(i, i)].im = 0.0;
    }
    out
}

impl HermitianOperator {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        if mat.nrows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        let asym = max_abs(&(&mat - mat.adjoint())) * 0.5;
        if asym >= tol::HERMITIAN {
            return Err(Error::NotHermitian(asym));
        }
        Ok(Self {
            mat: hermitize(&mat),
        })
    }

    /// Hermitizes without the asymmetry check. Only for products that are
    /// Hermitian in exact arithmetic.
    pub(crate) fn from_hermitian_product(mat: CMatrix) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        Self {
            mat: hermitize(&mat),
        }
    }

    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::NotSquare {
                rows: d,
                cols: rows.first().map_or(0, |r| r.len()),
            });
        }
        Self::new(CMatrix::from_fn(d, d, |i, j| {
            Complex64::new(rows[i][j], 0.0)
        }))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let d = values.len();
        Ok(Self {
            mat: CMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    Complex64::new(values[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: CMatrix::zeros(dim, dim),
        }
    }

    /// `scale * |v><v|`; `v` is used as given, not normalized.
    pub fn outer(v: &CVector, scale: f64) -> Self {
        Self::from_hermitian_product(v * v.adjoint() * Complex64::new(scale, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Re Tr(self * other)`, which is the exact trace for two Hermitian operators.
    pub fn trace_product(&self, other: &HermitianOperator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "trace_product dimension mismatch");
        let d = self.dim();
        let mut acc = 0.0;
        for i in 0..d {
            for j in 0..d {
                acc += (self.mat[(i, j)] * other.mat[(j, i)]).re;
            }
        }
        acc
    }

    /// `Re <v|A|v>`.
    pub fn expectation(&self, v: &CVector) -> f64 {
        v.dotc(&(&self.mat * v)).re
    }

    /// `B A B` for Hermitian `B`.
    pub fn sandwich(&self, b: &HermitianOperator) -> HermitianOperator {
        Self::from_hermitian_product(&b.mat * &self.mat * &b.mat)
    }

    /// `V A V†` for an arbitrary (typically isometric) `V`.
    pub fn conjugate_by(&self, v: &CMatrix) -> HermitianOperator {
        Self::from_hermitian_product(v * &self.mat * v.adjoint())
    }

    /// `V† A V`.
    pub fn compress_by(&self, v: &CMatrix) -> HermitianOperator {
        Self::from_hermitian_product(v.adjoint() * &self.mat * v)
    }

    pub fn scale(&self, c: f64) -> HermitianOperator {
        Self {
            mat: &self.mat * Complex64::new(c, 0.0),
        }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.mat)
    }

    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        max_abs(&(&self.mat - &other.mat))
    }

    /// Max-abs entry of `AB - BA`.
    pub fn commutator_norm(&self, other: &HermitianOperator) -> f64 {
        max_abs(&(&self.mat * &other.mat - &other.mat * &self.mat))
    }

    pub fn eigh(&self) -> EigenSystem {
        eigh(self)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigh().values[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigh().values.last().expect("dim >= 1")
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from(self.clone())
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;
    fn mul(self, rhs: f64) -> HermitianOperator {
        self.scale(rhs)
    }
}

/// Eigenvalues in ascending order with orthonormal, phase-fixed eigenvectors
/// stored as the columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, i: usize) -> CVector {
        self.vectors.column(i).into_owned()
    }

    /// `sum_i f(lambda_i) |lambda_i><lambda_i|`
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let d = self.dim();
        let mut mat = CMatrix::zeros(d, d);
        for (i, &lambda) in self.values.iter().enumerate() {
            let weight = f(lambda);
            if weight == 0.0 {
                continue;
            }
            let col = self.vectors.column(i);
            mat += col * col.adjoint() * Complex64::new(weight, 0.0);
        }
        HermitianOperator::from_hermitian_product(mat)
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        self.apply(|x| x)
    }

    /// Projector onto the span of the eigenvectors whose eigenvalue satisfies `keep`.
    pub fn projector(&self, keep: impl Fn(f64) -> bool) -> HermitianOperator {
        self.apply(|x| if keep(x) { 1.0 } else { 0.0 })
    }
}

/// Rotates `col` so that its largest-magnitude component is real and nonnegative.
fn fix_phase(mut col: nalgebra::DVectorViewMut<'_, Complex64>) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in col.iter().enumerate() {
        let mag = z.norm_sqr();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    let pivot = col[best];
    let mag = pivot.norm();
    if mag == 0.0 {
        return;
    }
    let phase = pivot.conj() / mag;
    for z in col.iter_mut() {
        *z *= phase;
    }
    col[best] = Complex64::new(mag, 0.0);
}

/// Spectral decomposition of a Hermitian operator, ascending eigenvalues.
pub fn eigh(a: &HermitianOperator) -> EigenSystem {
    let eig = SymmetricEigen::new(a.mat.clone());
    let d = a.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(src);
        let norm = col.norm();
        vectors.set_column(dst, &(col / Complex64::new(norm, 0.0)));
        fix_phase(vectors.column_mut(dst));
    }
    EigenSystem { values, vectors }
}

pub fn is_psd(a: &HermitianOperator, tol: f64) -> bool {
    a.min_eigenvalue() >= -tol
}

/// `sum |lambda_i|`.
pub fn trace_norm(a: &HermitianOperator) -> f64 {
    eigh(a).values.iter().map(|x| x.abs()).sum()
}

fn check_psd(eig: &EigenSystem, tol: f64) -> Result<()> {
    let min = eig.values[0];
    if min < -tol {
        return Err(Error::NotPositiveSemidefinite(min));
    }
    Ok(())
}

/// Principal square root of a positive semidefinite operator. Eigenvalues in
/// `[-tol, 0)` are treated as zero.
pub fn sqrt_psd(a: &HermitianOperator, tol: f64) -> Result<HermitianOperator> {
    let eig = eigh(a);
    check_psd(&eig, tol)?;
    Ok(eig.apply(|x| x.max(0.0).sqrt()))
}

/// Inverse square root restricted to the support: eigenvalues above `tol` are
/// mapped to `lambda^{-1/2}`, the rest to zero. Also returns the support rank.
pub fn inv_sqrt_on_support(a: &HermitianOperator, tol: f64) -> Result<(HermitianOperator, usize)> {
    let eig = eigh(a);
    check_psd(&eig, tol)?;
    let rank = eig.values.iter().filter(|&&x| x > tol).count();
    let b = eig.apply(|x| if x > tol { x.sqrt().recip() } else { 0.0 });
    Ok((b, rank))
}

/// Row-major matrix interchange format: `{"dim": d, "re": [[..]], "im": [[..]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    fn check_part(&self, name: &str, part: &[Vec<f64>]) -> Result<()> {
        if part.len() != self.dim {
            return Err(Error::InvalidMatrixJson(format!(
                "`{name}` has {} rows, expected dim = {}",
                part.len(),
                self.dim
            )));
        }
        if let Some((i, row)) = part.iter().enumerate().find(|(_, r)| r.len() != self.dim) {
            return Err(Error::InvalidMatrixJson(format!(
                "`{name}` row {i} has {} entries, expected {}",
                row.len(),
                self.dim
            )));
        }
        if part.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidMatrixJson(format!(
                "`{name}` has non-finite entries"
            )));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.dim == 0 {
            return Err(Error::InvalidMatrixJson("`dim` must be at least 1".into()));
        }
        self.check_part("re", &self.re)?;
        self.check_part("im", &self.im)?;
        Ok(CMatrix::from_fn(self.dim, self.dim, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

impl TryFrom<MatrixJson> for HermitianOperator {
    type Error = Error;
    fn try_from(value: MatrixJson) -> Result<Self> {
        HermitianOperator::new(value.to_matrix()?)
    }
}

impl From<HermitianOperator> for MatrixJson {
    fn from(op: HermitianOperator) -> Self {
        let d = op.dim();
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..d)
                .map(|i| (0..d).map(|j| f(&op.mat[(i, j)])).collect())
                .collect()
        };
        MatrixJson {
            dim: d,
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }
}
