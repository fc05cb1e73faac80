//! Higher-rank detection operators for block-separable ensembles.
//!
//! The supported family splits the support into mutually orthogonal
//! two-dimensional blocks `{|0>_k, |1>_k}`; in each block both states are the
//! equal-purity qubit pair with angle `gamma_k`, a common purity `p` and equal
//! priors. The optimization then separates into independent qubit problems.
//!
//! Two strategies are offered:
//!
//! * [`solve_max_confidence`] uses only the blocks with the largest angle and
//!   reaches the maximum confidences.
//! * [`solve_balanced`] uses every block, trading a little confidence for a
//!   much smaller failure probability.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::operators::{eigh, CMatrix, CVector, HermitianOperator};
use crate::povm::Povm;

/// Angles closer than this to the largest angle count towards `m`.
pub const ANGLE_CLUSTER: f64 = 1e-8;

const RECONSTRUCTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Block {
    /// `|0>_k`, ambient basis.
    pub zero: CVector,
    /// `|1>_k`, ambient basis.
    pub one: CVector,
    pub gamma: f64,
}

#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Sorted by ascending angle.
    pub blocks: Vec<Block>,
    pub p: f64,
    /// Dimension of the joint support (twice the number of blocks).
    pub d: usize,
    pub ambient_dim: usize,
    /// Number of blocks sharing the largest angle.
    pub m: usize,
    /// Largest angle.
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    MaxConfidence,
    Balanced,
}

#[derive(Debug, Clone)]
pub struct BlockSolution {
    pub povm: Povm,
    /// Failure probability of this strategy.
    pub q_opt: f64,
    /// Confidence of outcome 1 (the maximum for [`Strategy::MaxConfidence`]).
    pub c1_max: f64,
    pub c2_max: f64,
    pub strategy: Strategy,
}

fn not_separable(msg: impl Into<String>) -> Error {
    Error::NotBlockSeparable(msg.into())
}

/// `(|v>, |w>)` for one block: `sqrt((1-pc)/2)|0> ± sqrt((1+pc)/2)|1>` with `c = cos(gamma)`.
fn block_vectors(block: &Block, gamma: f64, p: f64) -> (CVector, CVector) {
    let pc = p * gamma.cos();
    let lo = Complex64::new(((1.0 - pc) / 2.0).sqrt(), 0.0);
    let hi = Complex64::new(((1.0 + pc) / 2.0).sqrt(), 0.0);
    (
        &block.zero * lo + &block.one * hi,
        &block.zero * lo - &block.one * hi,
    )
}

/// Recovers the block structure of an equal-prior ensemble.
///
/// `rho` has eigenvalues `(1 ± p cos gamma_k)/d`, so its upper half-spectrum
/// spans the `|0>_k` and the lower half the `|1>_k`. The difference
/// `rho1 - rho2 = (2p/d) sum_k sin(gamma_k) (|0>_k<1|_k + h.c.)` maps one half
/// onto the other; its singular vectors pair the halves into blocks.
/// The candidate is accepted only if it reproduces both states.
pub fn decompose(e: &Ensemble) -> Result<BlockDecomposition> {
    if (e.eta1() - 0.5).abs() > 1e-12 {
        return Err(not_separable(format!(
            "priors must be equal, got eta1 = {}",
            e.eta1()
        )));
    }
    let d = e.support_dim();
    if !d.is_multiple_of(2) {
        return Err(not_separable(format!("support dimension {d} is odd")));
    }
    let half = d / 2;
    let df = d as f64;
    let rho = e.support_rho();
    let eig = eigh(rho);
    let upper: Vec<usize> = (0..d).filter(|&i| eig.values[i] > 1.0 / df).collect();
    let lower: Vec<usize> = (0..d).filter(|&i| eig.values[i] < 1.0 / df).collect();
    if upper.len() != half || lower.len() != half {
        return Err(not_separable(format!(
            "spectrum of rho does not split evenly around 1/d ({} above, {} below)",
            upper.len(),
            lower.len()
        )));
    }
    let u_plus = CMatrix::from_fn(d, half, |i, k| eig.vectors[(i, upper[k])]);
    let u_minus = CMatrix::from_fn(d, half, |i, k| eig.vectors[(i, lower[k])]);
    let diff = e.support_rho1() - e.support_rho2();
    let coupling = u_minus.adjoint() * diff.matrix() * &u_plus;
    let svd = coupling.svd(true, true);
    let left = svd.u.as_ref().expect("requested U");
    let right = svd.v_t.as_ref().expect("requested V^T").adjoint();

    let mut raw = Vec::with_capacity(half);
    let mut purities = Vec::with_capacity(half);
    for k in 0..half {
        let zero = &u_plus * right.column(k);
        let one = &u_minus * left.column(k);
        let a = rho.expectation(&zero);
        let b = rho.expectation(&one);
        let p_cos = df * (a - b) / 2.0;
        let p_sin = df * svd.singular_values[k] / 2.0;
        purities.push(p_cos.hypot(p_sin));
        raw.push((zero, one, p_sin.atan2(p_cos)));
    }
    let p = purities.iter().sum::<f64>() / half as f64;
    if let Some(bad) = purities
        .iter()
        .find(|&&pk| (pk - p).abs() > RECONSTRUCTION_TOL)
    {
        return Err(not_separable(format!(
            "blocks have different purities ({bad} vs mean {p})"
        )));
    }
    if !(p > 0.0 && p <= 1.0 + RECONSTRUCTION_TOL) {
        return Err(not_separable(format!(
            "recovered purity {p} outside (0, 1]"
        )));
    }
    let p = p.min(1.0);
    if let Some(&(_, _, g)) = raw.iter().find(|(_, _, g)| !(*g > 0.0 && *g < FRAC_PI_2)) {
        return Err(not_separable(format!(
            "recovered angle {g} outside (0, pi/2)"
        )));
    }

    for (sign, target) in [(1.0, e.support_rho1()), (-1.0, e.support_rho2())] {
        let mut mat = CMatrix::identity(d, d) * Complex64::new((1.0 - p) / df, 0.0);
        for (zero, one, g) in &raw {
            let r = zero * Complex64::new((g / 2.0).cos(), 0.0)
                + one * Complex64::new(sign * (g / 2.0).sin(), 0.0);
            mat += &r * r.adjoint() * Complex64::new(2.0 * p / df, 0.0);
        }
        let err = HermitianOperator::from_hermitian_product(mat).max_abs_diff(target);
        if err > RECONSTRUCTION_TOL {
            return Err(not_separable(format!(
                "block model does not reproduce the states (error {err:e})"
            )));
        }
    }

    let mut blocks: Vec<Block> = raw
        .into_iter()
        .map(|(zero, one, gamma)| Block {
            zero: e.embed_vector(&zero),
            one: e.embed_vector(&one),
            gamma,
        })
        .collect();
    blocks.sort_by(|x, y| x.gamma.total_cmp(&y.gamma));
    let gamma = blocks.last().expect("at least one block").gamma;
    let m = blocks
        .iter()
        .filter(|b| gamma - b.gamma <= ANGLE_CLUSTER)
        .count();

    Ok(BlockDecomposition {
        blocks,
        p,
        d,
        ambient_dim: e.ambient_dim(),
        m,
        gamma,
    })
}

/// Single-block maximum confidence, `1/2 + p sin(g) / (2 sqrt(1 - p^2 cos^2 g))`.
pub fn block_max_confidence(gamma: f64, p: f64) -> f64 {
    0.5 + p * gamma.sin() / (2.0 * (1.0 - (p * gamma.cos()).powi(2)).sqrt())
}

fn assemble(bd: &BlockDecomposition, terms: &[(&Block, f64)]) -> Result<Povm> {
    let dim = bd.ambient_dim;
    let mut pi1 = HermitianOperator::zeros(dim);
    let mut pi2 = HermitianOperator::zeros(dim);
    for &(block, gamma) in terms {
        let (v, w) = block_vectors(block, gamma, bd.p);
        let weight = 1.0 / (1.0 + bd.p * gamma.cos());
        pi1 = &pi1 + &HermitianOperator::outer(&v, weight);
        pi2 = &pi2 + &HermitianOperator::outer(&w, weight);
    }
    Povm::from_conclusive(pi1, pi2)
}

/// Maximum-confidence measurement: rank-`m` operators on the blocks with the largest angle.
pub fn solve_max_confidence(bd: &BlockDecomposition) -> Result<BlockSolution> {
    let extreme: Vec<(&Block, f64)> = bd
        .blocks
        .iter()
        .filter(|b| bd.gamma - b.gamma <= ANGLE_CLUSTER)
        .map(|b| (b, bd.gamma))
        .collect();
    let povm = assemble(bd, &extreme)?;
    let c = block_max_confidence(bd.gamma, bd.p);
    Ok(BlockSolution {
        povm,
        q_opt: 1.0 - (2.0 * bd.m as f64 / bd.d as f64) * (1.0 - bd.p * bd.gamma.cos()),
        c1_max: c,
        c2_max: c,
        strategy: Strategy::MaxConfidence,
    })
}

/// Balanced measurement: every block contributes its own qubit-optimal pair.
pub fn solve_balanced(bd: &BlockDecomposition) -> Result<BlockSolution> {
    let all: Vec<(&Block, f64)> = bd.blocks.iter().map(|b| (b, b.gamma)).collect();
    let povm = assemble(bd, &all)?;
    let p = bd.p;
    let q = 2.0 * p / bd.d as f64 * bd.blocks.iter().map(|b| b.gamma.cos()).sum::<f64>();
    let num: f64 = bd
        .blocks
        .iter()
        .map(|b| {
            let pc = p * b.gamma.cos();
            b.gamma.sin() * ((1.0 - pc) / (1.0 + pc)).sqrt()
        })
        .sum();
    let den: f64 = bd.blocks.iter().map(|b| 1.0 - p * b.gamma.cos()).sum();
    let c = 0.5 + p * num / (2.0 * den);
    let c_max = block_max_confidence(bd.gamma, p);
    let q_max = 1.0 - (2.0 * bd.m as f64 / bd.d as f64) * (1.0 - p * bd.gamma.cos());
    if c > c_max + 1e-12 || (bd.m < bd.blocks.len() && q > q_max + 1e-12) {
        return Err(Error::InternalInconsistency(format!(
            "balanced strategy beats the optimum: C {c} vs {c_max}, Q {q} vs {q_max}"
        )));
    }
    Ok(BlockSolution {
        povm,
        q_opt: q,
        c1_max: c,
        c2_max: c,
        strategy: Strategy::Balanced,
    })
}
