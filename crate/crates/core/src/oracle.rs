//! Brute-force checks that do not reuse the solver's code path.
//!
//! The optimal vectors are rebuilt through a Cholesky factor of `rho`
//! instead of its inverse square root, the coefficient plane is scanned on a
//! grid, and every boundary point is confirmed with an explicit eigenvalue
//! test of the inconclusive operator.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::blocks::{Block, BlockDecomposition};
use crate::ensemble::{DensityMatrix, Ensemble};
use crate::error::{Error, Result};
use crate::operators::{eigh, CMatrix, CVector, HermitianOperator};
use crate::povm::Povm;
use crate::rank1_solver::{self, positivity_threshold};
use crate::tol;

/// Default POVM validity tolerance for [`evaluate`].
pub const VALIDITY_TOL: f64 = 1e-10;

/// Allowed undershoot of the grid optimum below the claimed optimum.
pub const MINIMALITY_TOL: f64 = 1e-6;

/// Seeds of the committed verification corpus, one per line.
pub const DEFAULT_SEED_MANIFEST: &str = include_str!("../corpus/seeds.txt");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementReport {
    /// Confidence of outcome 1; `0` when the outcome never fires.
    pub c1: f64,
    pub c2: f64,
    /// `Tr(rho Pi_?)`.
    pub q: f64,
    /// `Tr(rho Pi_1)`.
    pub p_detect_1: f64,
    pub p_detect_2: f64,
    pub p_s: f64,
    /// `p_s / (1 - q)`; `0` when every result is inconclusive.
    pub p_rs: f64,
    pub valid_povm: bool,
    pub c1_defined: bool,
    pub c2_defined: bool,
    pub p_rs_defined: bool,
}

/// Scores any POVM against an ensemble using only traces in the ambient basis.
pub fn evaluate(e: &Ensemble, povm: &Povm) -> MeasurementReport {
    evaluate_with_tol(e, povm, VALIDITY_TOL)
}

pub fn evaluate_with_tol(e: &Ensemble, povm: &Povm, validity_tol: f64) -> MeasurementReport {
    let joint = |j: usize, pi: &HermitianOperator| e.eta(j) * e.state(j).op().trace_product(pi);
    let j11 = joint(1, &povm.pi1);
    let j21 = joint(2, &povm.pi1);
    let j12 = joint(1, &povm.pi2);
    let j22 = joint(2, &povm.pi2);
    let p_detect_1 = j11 + j21;
    let p_detect_2 = j12 + j22;
    let q = joint(1, &povm.pi_fail) + joint(2, &povm.pi_fail);
    let p_s = j11 + j22;
    let ratio = |num: f64, den: f64| {
        if den > tol::NEVER_OCCURS {
            (num / den, true)
        } else {
            (0.0, false)
        }
    };
    let (c1, c1_defined) = ratio(j11, p_detect_1);
    let (c2, c2_defined) = ratio(j22, p_detect_2);
    let (p_rs, p_rs_defined) = ratio(p_s, 1.0 - q);
    MeasurementReport {
        c1,
        c2,
        q,
        p_detect_1,
        p_detect_2,
        p_s,
        p_rs,
        valid_povm: povm.is_valid(validity_tol),
        c1_defined,
        c2_defined,
        p_rs_defined,
    }
}

fn ginibre_state(rng: &mut ChaCha8Rng, d: usize, rank: usize) -> Result<DensityMatrix> {
    let g = CMatrix::from_fn(d, rank, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(HermitianOperator::new(m.map(|z| z / tr))?)
}

/// Two Ginibre-distributed density matrices of the given ranks, deterministic per seed.
pub fn random_ensemble(
    seed: u64,
    d: usize,
    rank1: usize,
    rank2: usize,
    eta1: f64,
) -> Result<Ensemble> {
    for (name, r) in [("rank1", rank1), ("rank2", rank2)] {
        if r == 0 || r > d {
            return Err(Error::ParameterOutOfRange {
                name,
                value: r as f64,
                expected: "1..=d",
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho1 = ginibre_state(&mut rng, d, rank1)?;
    let rho2 = ginibre_state(&mut rng, d, rank2)?;
    Ensemble::new(rho1, rho2, eta1)
}

/// Corpus member for `seed` in dimension `d`.
///
/// Ranks are full three times in four and `d - 1` otherwise; `eta1` is drawn
/// from `[0.1, 0.9]`.
pub fn corpus_ensemble(seed: u64, d: usize) -> Result<Ensemble> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut rank = || if rng.random_bool(0.75) { d } else { d - 1 };
    let (r1, r2) = (rank(), rank());
    let eta1 = rng.random_range(0.1..=0.9);
    random_ensemble(seed, d, r1, r2, eta1)
}

/// Parses a manifest: one unsigned seed per line, blank lines and `#` comments ignored.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            l.parse::<u64>()
                .map_err(|_| Error::Precondition(format!("line {}: `{l}` is not a seed", i + 1)))
        })
        .collect()
}

pub fn default_seeds() -> Vec<u64> {
    parse_seeds(DEFAULT_SEED_MANIFEST).expect("committed manifest parses")
}

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub seed: u64,
    pub d: usize,
    pub ensemble: Ensemble,
}

/// Walks `seeds` in order and keeps up to `limit` members with nondegenerate extremes.
pub fn build_corpus(seeds: &[u64], d: usize, limit: usize) -> Result<Vec<CorpusCase>> {
    let mut out = Vec::new();
    for &seed in seeds {
        if out.len() == limit {
            break;
        }
        let ensemble = corpus_ensemble(seed, d)?;
        if extremes(&ensemble)?.is_some() {
            out.push(CorpusCase { seed, d, ensemble });
        }
    }
    Ok(out)
}

struct Extremes {
    v: CVector,
    w: CVector,
}

/// Support-basis vectors `L^{-dag} y` for the top and bottom eigenvectors `y`
/// of `L^{-1} eta1 rho1 L^{-dag}`, where `rho = L L^dag`. `None` if either extreme is degenerate.
fn extremes(e: &Ensemble) -> Result<Option<Extremes>> {
    let chol = e.support_rho().matrix().clone().cholesky().ok_or_else(|| {
        Error::InternalInconsistency("rho is not positive definite on its support".into())
    })?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InternalInconsistency("singular Cholesky factor".into()))?;
    let t = HermitianOperator::new(
        &l_inv * e.support_rho1().matrix() * l_inv.adjoint() * Complex64::new(e.eta1(), 0.0),
    )?;
    let eig = eigh(&t);
    let dim = eig.dim();
    let top = eig.values[dim - 1];
    let bottom = eig.values[0];
    let width = tol::CLUSTER * top.abs().max(1.0);
    let m = eig.values.iter().filter(|&&x| top - x <= width).count();
    let n = eig.values.iter().filter(|&&x| x - bottom <= width).count();
    if m != 1 || n != 1 {
        return Ok(None);
    }
    let back = l_inv.adjoint();
    let v = (&back * eig.vector(dim - 1)).normalize();
    let w = (&back * eig.vector(0)).normalize();
    Ok(Some(Extremes { v, w }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridOptimum {
    pub q_best: f64,
    pub a_best: f64,
    pub b_best: f64,
}

/// Worst-case gap between the grid optimum and the true optimum.
///
/// Stepping down from the optimum to the nearest grid point costs at most
/// `(rho_vv + rho_ww) / n <= 2 / n`.
pub fn grid_epsilon(grid_n: usize) -> f64 {
    2.0 / grid_n as f64
}

/// Scans `a, b` in `{0, 1/n, ..., 1}` over operators `a|v><v|`, `b|w><w|`,
/// which attain the maximum confidences by construction, and returns the
/// smallest failure probability among the feasible points.
///
/// The analytic positivity threshold only seeds the search; the feasible edge
/// in each column is located with eigenvalue checks of `I - a|v><v| - b|w><w|`.
pub fn grid_verify_rank1(e: &Ensemble, grid_n: usize) -> Result<GridOptimum> {
    if grid_n == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "grid_n",
            value: 0.0,
            expected: ">= 1",
        });
    }
    let Extremes { v, w } = match extremes(e)? {
        Some(x) => x,
        None => {
            let sd = crate::confidence::spectral_data(e, tol::CLUSTER);
            return Err(Error::DegenerateExtremes { m: sd.m, n: sd.n });
        }
    };
    let rho = e.support_rho();
    let rho_vv = rho.expectation(&v);
    let rho_ww = rho.expectation(&w);
    let overlap = v.dotc(&w).norm();
    let pv = HermitianOperator::outer(&v, 1.0);
    let pw = HermitianOperator::outer(&w, 1.0);
    let id = HermitianOperator::identity(rho.dim());
    let nf = grid_n as f64;
    let feasible =
        |a: f64, b: f64| (&(&id - &pv.scale(a)) - &pw.scale(b)).min_eigenvalue() >= -VALIDITY_TOL;

    let mut best = GridOptimum {
        q_best: f64::INFINITY,
        a_best: 0.0,
        b_best: 0.0,
    };
    for i in 0..=grid_n {
        let a = i as f64 / nf;
        let seed = positivity_threshold(a, overlap).min(1.0);
        let mut j = ((seed * nf + 1e-9).floor() as usize).min(grid_n);
        while j > 0 && !feasible(a, j as f64 / nf) {
            j -= 1;
        }
        if !feasible(a, j as f64 / nf) {
            continue;
        }
        while j < grid_n && feasible(a, (j + 1) as f64 / nf) {
            j += 1;
        }
        for k in 0..=j {
            let b = k as f64 / nf;
            let q = 1.0 - a * rho_vv - b * rho_ww;
            if q < best.q_best {
                best = GridOptimum {
                    q_best: q,
                    a_best: a,
                    b_best: b,
                };
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub seed: u64,
    pub d: usize,
    pub q_opt: f64,
    pub q_best: f64,
    /// `q_best - q_opt`; must lie in `[-1e-6, epsilon(grid_n)]`.
    pub margin: f64,
    pub valid_povm: bool,
    /// Largest gap between a reported confidence and the claimed maximum.
    pub confidence_error: f64,
    pub passed: bool,
}

/// Checks one corpus member: solver validity, confidences and grid minimality.
///
/// `q_shift` is added to the solver's claimed optimum before comparison; it
/// is zero except when exercising the check itself.
pub fn verify_case(case: &CorpusCase, grid_n: usize, q_shift: f64) -> Result<CaseVerdict> {
    let e = &case.ensemble;
    let sol = rank1_solver::solve(e)?;
    let q_opt = sol.q_opt + q_shift;
    let report = evaluate(e, &sol.povm);
    let mut confidence_error: f64 = (report.q - sol.q_opt).abs();
    if report.c1_defined {
        confidence_error = confidence_error.max((report.c1 - sol.c1_max).abs());
    }
    if report.c2_defined {
        confidence_error = confidence_error.max((report.c2 - sol.c2_max).abs());
    }
    let grid = grid_verify_rank1(e, grid_n)?;
    let margin = grid.q_best - q_opt;
    let passed = report.valid_povm
        && confidence_error <= 1e-10
        && margin >= -MINIMALITY_TOL
        && margin <= grid_epsilon(grid_n);
    Ok(CaseVerdict {
        seed: case.seed,
        d: case.d,
        q_opt,
        q_best: grid.q_best,
        margin,
        valid_povm: report.valid_povm,
        confidence_error,
        passed,
    })
}

fn random_in_block(rng: &mut ChaCha8Rng, block: &Block) -> CVector {
    let mut draw = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let v = &block.zero * draw() + &block.one * draw();
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// Couples pairs of distinct blocks in `pi1` with random Hermitian terms of
/// size `amplitude` and returns how many perturbed measurements stay valid.
///
/// An optimal block measurement sits on the positivity boundary, so every
/// generic coupling should break it and the count should be zero.
pub fn off_block_spot_check(
    bd: &BlockDecomposition,
    povm: &Povm,
    samples: usize,
    amplitude: f64,
    seed: u64,
) -> Result<usize> {
    let k = bd.blocks.len();
    if k < 2 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut survivors = 0;
    for _ in 0..samples {
        let i = rng.random_range(0..k);
        let j = (i + rng.random_range(1..k)) % k;
        let x = random_in_block(&mut rng, &bd.blocks[i]);
        let y = random_in_block(&mut rng, &bd.blocks[j]);
        let cross: CMatrix = &x * y.adjoint() * Complex64::new(amplitude, 0.0);
        let pi1 = HermitianOperator::new(povm.pi1.matrix() + &cross + cross.adjoint())?;
        let perturbed = Povm::from_conclusive(pi1, povm.pi2.clone())?;
        if perturbed.is_valid(VALIDITY_TOL) {
            survivors += 1;
        }
    }
    Ok(survivors)
}
