//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};
use std::time::Instant;

use mcdisc::blocks::{decompose, solve_balanced, solve_max_confidence};
use mcdisc::confidence::{max_relative_success, spectral_data};
use mcdisc::ensemble::{block_states, equal_purity_pair, mixed_vs_depolarized, Ensemble};
use mcdisc::minerror::{helstrom_operator, solve_min_error};
use mcdisc::operators::trace_norm;
use mcdisc::oracle::{
    build_corpus, default_seeds, evaluate, grid_verify_rank1, off_block_spot_check, random_ensemble,
};
use mcdisc::povm::Povm;
use mcdisc::qubit::commuting_minimum_error_relation;
use mcdisc::rank1_solver::{self, Rank1Solution};
use mcdisc::{tol, CMatrix, CVector, HermitianOperator};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A solver-produced measurement together with the confidences it claims.
struct Produced {
    label: String,
    ensemble: Ensemble,
    povm: Povm,
    claims: [f64; 2],
}

#[derive(Default)]
struct Check {
    failures: Vec<String>,
    worst: f64,
}

impl Check {
    fn close(&mut self, what: impl FnOnce() -> String, got: f64, want: f64, tol: f64) {
        let err = (got - want).abs();
        self.worst = self.worst.max(err);
        if err.is_nan() || err > tol {
            self.failures.push(format!(
                "{}: got {got}, want {want} (|diff| {err:e})",
                what()
            ));
        }
    }

    fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, detail: String) -> (bool, String) {
        if self.failures.is_empty() {
            (
                true,
                format!("{detail}; worst deviation {:.2e}", self.worst),
            )
        } else {
            let n = self.failures.len();
            (
                false,
                format!("{n} failure(s), first: {}", self.failures[0]),
            )
        }
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn ket0() -> CVector {
    CVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
}

fn ket1() -> CVector {
    CVector::from_vec(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
}

fn equal_purity_confidence(gamma: f64, p: f64) -> f64 {
    0.5 + p * gamma.sin() / (2.0 * (1.0 - (p * gamma.cos()).powi(2)).sqrt())
}

fn record(out: &mut Vec<Produced>, label: String, e: &Ensemble, s: &Rank1Solution) {
    out.push(Produced {
        label,
        ensemble: e.clone(),
        povm: s.povm.clone(),
        claims: [s.c1_max, s.c2_max],
    });
}

fn full_corpus() -> Vec<(u64, usize, Ensemble)> {
    let seeds = default_seeds();
    let mut out = Vec::new();
    for d in [2, 3, 4] {
        for c in build_corpus(&seeds, d, 100).expect("corpus builds") {
            out.push((c.seed, c.d, c.ensemble));
        }
    }
    out
}

fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    g.qr().q()
}

fn equal_purity_sweep(produced: &mut Vec<Produced>) -> (bool, String) {
    let start = Instant::now();
    let mut check = Check::default();
    let mut count = 0;
    for gamma in [FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8] {
        for p in linspace(0.05, 1.0, 96) {
            let e = equal_purity_pair(gamma, p, 0.5).expect("valid parameters");
            match rank1_solver::solve(&e) {
                Ok(s) => {
                    let c = equal_purity_confidence(gamma, p);
                    check.close(
                        || format!("Q at gamma={gamma}, p={p}"),
                        s.q_opt,
                        p * gamma.cos(),
                        1e-10,
                    );
                    check.close(|| format!("C1 at gamma={gamma}, p={p}"), s.c1_max, c, 1e-10);
                    check.close(|| format!("C2 at gamma={gamma}, p={p}"), s.c2_max, c, 1e-10);
                    record(
                        produced,
                        format!("equal-purity gamma={gamma} p={p}"),
                        &e,
                        &s,
                    );
                }
                Err(err) => check.ensure(false, || format!("gamma={gamma}, p={p}: {err}")),
            }
            count += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    check.ensure(elapsed < 5.0, || {
        format!("runtime {elapsed:.2} s exceeds 5 s")
    });
    check.finish(format!("{count} points in {elapsed:.3} s"))
}

fn mixed_vs_depolarized_grid(produced: &mut Vec<Produced>) -> (bool, String) {
    let mut check = Check::default();
    let perp = HermitianOperator::outer(&ket1(), 1.0);
    let along = HermitianOperator::outer(&ket0(), 1.0);
    let mut coincide = 0;
    let mut skipped = 0;
    for i in 0..20 {
        let eta2 = 0.05 + 0.9 * (i as f64 + 0.5) / 20.0;
        for j in 0..20 {
            let p = 0.05 + 0.95 * (j as f64 + 1.0) / 20.0;
            let e = mixed_vs_depolarized(&ket0(), p, eta2).expect("valid parameters");
            let s = match rank1_solver::solve(&e) {
                Ok(s) => s,
                Err(err) => {
                    check.ensure(false, || format!("eta2={eta2}, p={p}: {err}"));
                    continue;
                }
            };
            let at = || format!("eta2={eta2}, p={p}");
            check.ensure(s.q_opt.abs() < 1e-12, || {
                format!("Q = {} at {}", s.q_opt, at())
            });
            check.close(
                || format!("C1 at {}", at()),
                s.c1_max,
                (1.0 - eta2) / (1.0 - p * eta2),
                1e-12,
            );
            check.close(
                || format!("C2 at {}", at()),
                s.c2_max,
                eta2 * (1.0 + p) / (1.0 + p * eta2),
                1e-12,
            );
            check.close(
                || format!("Pi1 at {}", at()),
                s.povm.pi1.max_abs_diff(&perp),
                0.0,
                1e-9,
            );
            check.close(
                || format!("Pi2 at {}", at()),
                s.povm.pi2.max_abs_diff(&along),
                0.0,
                1e-9,
            );

            let lo = 1.0 / (2.0 + p);
            let hi = 1.0 / (2.0 - p);
            if (eta2 - lo).abs() <= 1e-9 || (eta2 - hi).abs() <= 1e-9 {
                skipped += 1;
            } else {
                let inside = eta2 > lo && eta2 < hi;
                let flag = commuting_minimum_error_relation(&e).map(|r| r.coincides);
                check.ensure(flag == Ok(inside), || {
                    format!("coincidence flag {flag:?} at {}, expected {inside}", at())
                });
                let me = solve_min_error(&e);
                let same = me.pi1_e.max_abs_diff(&s.povm.pi1) < 1e-9
                    && me.pi2_e.max_abs_diff(&s.povm.pi2) < 1e-9;
                check.ensure(same == inside, || {
                    format!("Helstrom projectors coincide={same} at {}", at())
                });
                coincide += inside as usize;
            }
            record(
                produced,
                format!("mixed-vs-depolarized eta2={eta2} p={p}"),
                &e,
                &s,
            );
        }
    }
    check.finish(format!(
        "400 points, {coincide} inside the coincidence window, {skipped} on its edge"
    ))
}

fn unambiguous_limit(produced: &mut Vec<Produced>) -> (bool, String) {
    let mut check = Check::default();
    let gammas = linspace(0.05, FRAC_PI_2 - 0.05, 40);
    for &gamma in &gammas {
        let e = equal_purity_pair(gamma, 1.0, 0.5).expect("valid parameters");
        match rank1_solver::solve(&e) {
            Ok(s) => {
                check.close(
                    || format!("Q at gamma={gamma}"),
                    s.q_opt,
                    gamma.cos(),
                    1e-10,
                );
                let r = evaluate(&e, &s.povm);
                check.close(|| format!("C1 at gamma={gamma}"), r.c1, 1.0, 1e-10);
                check.close(|| format!("C2 at gamma={gamma}"), r.c2, 1.0, 1e-10);
                check.close(
                    || format!("measured Q at gamma={gamma}"),
                    r.q,
                    gamma.cos(),
                    1e-10,
                );
                record(produced, format!("pure-limit gamma={gamma}"), &e, &s);
            }
            Err(err) => check.ensure(false, || format!("gamma={gamma}: {err}")),
        }
    }
    check.finish(format!("{} angles", gammas.len()))
}

fn minimum_error() -> (bool, String) {
    let mut check = Check::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4_000_417);
    for k in 0..500u64 {
        let d = 2 + (k % 3) as usize;
        let r1 = rng.random_range(1..=d);
        let r2 = rng.random_range(1..=d);
        let eta1 = rng.random_range(0.05..0.95);
        let e = random_ensemble(10_000 + k, d, r1, r2, eta1).expect("valid parameters");
        let lambda = helstrom_operator(&e);
        let via_norm = 0.5 * (1.0 - trace_norm(&lambda));
        let me = solve_min_error(&e);
        let via_projector = e.eta1() + lambda.trace_product(&me.pi1_e);
        check.close(
            || format!("P_E formulas, ensemble {k}"),
            via_norm,
            via_projector,
            1e-10,
        );
    }
    let mut gaps = f64::INFINITY;
    for gamma in linspace(0.02, FRAC_PI_2 - 0.02, 30) {
        for p in linspace(0.02, 0.98, 30) {
            let e = equal_purity_pair(gamma, p, 0.5).expect("valid parameters");
            let me = solve_min_error(&e);
            let ce = (1.0 + p * gamma.sin()) / 2.0;
            let r = evaluate(&e, &me.povm());
            check.close(|| format!("C1_E at gamma={gamma}, p={p}"), r.c1, ce, 1e-10);
            check.close(|| format!("C2_E at gamma={gamma}, p={p}"), r.c2, ce, 1e-10);
            let s = rank1_solver::solve(&e).expect("nondegenerate");
            let gap = (s.c1_max - r.c1).min(s.c2_max - r.c2);
            gaps = gaps.min(gap);
            check.ensure(gap > 0.0, || {
                format!("C_max - C_E = {gap} at gamma={gamma}, p={p}")
            });
        }
    }
    check.finish(format!(
        "500 random ensembles, 900 equal-purity points, smallest C_max - C_E {gaps:.3e}"
    ))
}

fn oracle_minimality(produced: &mut Vec<Produced>) -> (bool, String) {
    let start = Instant::now();
    let mut check = Check::default();
    let seeds = default_seeds();
    let mut counts = Vec::new();
    let mut min_margin = f64::INFINITY;
    for (d, want) in [(2, 100), (3, 50)] {
        let corpus = build_corpus(&seeds, d, want).expect("corpus builds");
        counts.push(corpus.len());
        check.ensure(corpus.len() == want, || {
            format!("only {} usable ensembles at d={d}", corpus.len())
        });
        for case in corpus {
            let s = match rank1_solver::solve(&case.ensemble) {
                Ok(s) => s,
                Err(err) => {
                    check.ensure(false, || format!("seed {} d={d}: {err}", case.seed));
                    continue;
                }
            };
            match grid_verify_rank1(&case.ensemble, 2000) {
                Ok(g) => {
                    let margin = g.q_best - s.q_opt;
                    min_margin = min_margin.min(margin);
                    check.ensure(margin >= -1e-6, || {
                        format!(
                            "seed {} d={d}: grid found {} < {}",
                            case.seed, g.q_best, s.q_opt
                        )
                    });
                }
                Err(err) => check.ensure(false, || format!("seed {} d={d}: {err}", case.seed)),
            }
            record(
                produced,
                format!("corpus seed {} d={d}", case.seed),
                &case.ensemble,
                &s,
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    check.ensure(elapsed < 60.0, || {
        format!("runtime {elapsed:.1} s exceeds 60 s")
    });
    check.finish(format!(
        "{} qubit + {} qutrit ensembles, smallest margin {min_margin:.3e}, {elapsed:.2} s",
        counts[0], counts[1]
    ))
}

fn povm_validity(produced: &[Produced]) -> (bool, String) {
    let mut check = Check::default();
    for item in produced {
        let mins = item.povm.min_eigenvalues();
        let lowest = mins.iter().cloned().fold(f64::INFINITY, f64::min);
        check.ensure(lowest >= -tol::PSD, || {
            format!("{}: min eigenvalue {lowest:e}", item.label)
        });
        let comp = item.povm.completeness_error();
        check.ensure(comp < 1e-10, || {
            format!("{}: completeness error {comp:e}", item.label)
        });
        let r = evaluate(&item.ensemble, &item.povm);
        for (j, pi, c, defined) in [
            (1, &item.povm.pi1, r.c1, r.c1_defined),
            (2, &item.povm.pi2, r.c2, r.c2_defined),
        ] {
            if pi.max_abs() > 1e-12 {
                check.ensure(defined, || {
                    format!("{}: outcome {j} never fires", item.label)
                });
                check.close(
                    || format!("{}: C{j}", item.label),
                    c,
                    item.claims[j - 1],
                    1e-10,
                );
            }
        }
    }
    check.finish(format!("{} measurements", produced.len()))
}

fn block_case(produced: &mut Vec<Produced>) -> (bool, String) {
    let mut check = Check::default();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut lists: Vec<Vec<f64>> = vec![
        vec![FRAC_PI_8, FRAC_PI_4],
        vec![0.6],
        vec![0.9, 0.9],
        vec![0.3, 1.2, 1.2, 0.7],
        vec![FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8],
    ];
    for _ in 0..40 {
        let len = rng.random_range(1..=4);
        let mut list: Vec<f64> = (0..len)
            .map(|_| rng.random_range(0.05..FRAC_PI_2 - 0.05))
            .collect();
        if len > 1 && rng.random_bool(0.3) {
            list[1] = list[0];
        }
        lists.push(list);
    }
    let mut cases = 0;
    for (idx, gammas) in lists.iter().enumerate() {
        for p in [0.2, 0.5, 0.85, 1.0] {
            let plain = block_states(gammas, p).expect("valid parameters");
            let d = 2.0 * gammas.len() as f64;
            let gmax = gammas.iter().cloned().fold(f64::MIN, f64::max);
            let m = gammas.iter().filter(|&&g| gmax - g <= 1e-8).count() as f64;
            let cos_sum: f64 = gammas.iter().map(|g| g.cos()).sum();
            let c_av = 0.5
                + p * gammas
                    .iter()
                    .map(|g| g.sin() * ((1.0 - p * g.cos()) / (1.0 + p * g.cos())).sqrt())
                    .sum::<f64>()
                    / (2.0 * gammas.iter().map(|g| 1.0 - p * g.cos()).sum::<f64>());
            let dim = gammas.len() * 2;
            let rotated = plain
                .rotated(&random_unitary(&mut rng, dim))
                .expect("unitary");
            for (variant, e) in [("plain", &plain), ("rotated", &rotated)] {
                let at = || format!("list {idx} {gammas:?} p={p} ({variant})");
                let bd = match decompose(e) {
                    Ok(bd) => bd,
                    Err(err) => {
                        check.ensure(false, || format!("{}: {err}", at()));
                        continue;
                    }
                };
                let (q_tol, c_tol) = if variant == "plain" {
                    (1e-12, 1e-10)
                } else {
                    (1e-10, 1e-10)
                };
                let mc = solve_max_confidence(&bd).expect("valid decomposition");
                let r = evaluate(e, &mc.povm);
                check.close(
                    || format!("{}: MaxConfidence Q", at()),
                    r.q,
                    1.0 - (2.0 * m / d) * (1.0 - p * gmax.cos()),
                    q_tol,
                );
                check.close(
                    || format!("{}: MaxConfidence C1", at()),
                    r.c1,
                    equal_purity_confidence(gmax, p),
                    c_tol,
                );
                check.close(
                    || format!("{}: MaxConfidence C2", at()),
                    r.c2,
                    equal_purity_confidence(gmax, p),
                    c_tol,
                );
                let av = solve_balanced(&bd).expect("valid decomposition");
                let r = evaluate(e, &av.povm);
                check.close(
                    || format!("{}: Balanced Q", at()),
                    r.q,
                    2.0 * p / d * cos_sum,
                    q_tol,
                );
                check.close(|| format!("{}: Balanced C1", at()), r.c1, c_av, c_tol);
                check.close(|| format!("{}: Balanced C2", at()), r.c2, c_av, c_tol);
                if p == 1.0 {
                    check.close(
                        || format!("{}: unambiguous Q", at()),
                        r.q,
                        2.0 / d * cos_sum,
                        q_tol,
                    );
                }
                for s in [mc, av] {
                    let survivors = off_block_spot_check(&bd, &s.povm, 10, 1e-3, idx as u64)
                        .expect("perturbation stays hermitian");
                    check.ensure(survivors == 0, || {
                        format!(
                            "{}: {survivors} off-block couplings kept {:?} valid",
                            at(),
                            s.strategy
                        )
                    });
                    produced.push(Produced {
                        label: format!("{} {:?}", at(), s.strategy),
                        ensemble: e.clone(),
                        povm: s.povm,
                        claims: [s.c1_max, s.c2_max],
                    });
                }
                cases += 1;
            }
        }
    }
    check.finish(format!(
        "{cases} block ensembles (plain and randomly rotated), off-block couplings all rejected"
    ))
}

fn relative_success(corpus: &[(u64, usize, Ensemble)]) -> (bool, String) {
    let mut check = Check::default();
    for (seed, d, e) in corpus {
        let at = || format!("seed {seed} d={d}");
        let s = rank1_solver::solve(e).expect("nondegenerate corpus member");
        let best = s.c1_max.max(s.c2_max);
        check.close(
            || format!("{}: P_RS^max", at()),
            max_relative_success(e),
            best,
            1e-12,
        );
        // Keeping only the more confident outcome attains the bound.
        let dim = e.ambient_dim();
        let zero = HermitianOperator::zeros(dim);
        let single = if s.c1_max >= s.c2_max {
            Povm::from_conclusive(HermitianOperator::outer(&s.v, 1.0), zero)
        } else {
            Povm::from_conclusive(zero, HermitianOperator::outer(&s.w, 1.0))
        }
        .expect("dimensions agree");
        let r = evaluate(e, &single);
        check.close(
            || format!("{}: single-outcome P_RS", at()),
            r.p_rs,
            best,
            1e-12,
        );
        // Any other measurement stays at or below it.
        let r = evaluate(e, &s.povm);
        check.ensure(r.p_rs <= best + 1e-12, || {
            format!("{}: P_RS {} above bound {best}", at(), r.p_rs)
        });
        let me = evaluate(e, &solve_min_error(e).povm());
        check.ensure(me.p_rs <= best + 1e-12, || {
            format!("{}: Helstrom P_RS {} above bound {best}", at(), me.p_rs)
        });
    }
    for (gamma, p) in [(FRAC_PI_4, 0.5), (FRAC_PI_8, 0.9), (3.0 * FRAC_PI_8, 0.3)] {
        let e = equal_purity_pair(gamma, p, 0.5).expect("valid parameters");
        check.close(
            || format!("symmetric P_RS^max at gamma={gamma}, p={p}"),
            max_relative_success(&e),
            equal_purity_confidence(gamma, p),
            1e-12,
        );
        let r = evaluate(&e, &rank1_solver::solve(&e).expect("nondegenerate").povm);
        check.close(
            || format!("symmetric measured P_RS at gamma={gamma}, p={p}"),
            r.p_rs,
            equal_purity_confidence(gamma, p),
            1e-12,
        );
    }
    check.finish(format!(
        "{} corpus ensembles and 3 symmetric pairs",
        corpus.len()
    ))
}

fn structural(corpus: &[(u64, usize, Ensemble)]) -> (bool, String) {
    let mut check = Check::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (seed, d, e) in corpus {
        let at = || format!("seed {seed} d={d}");
        let sd = spectral_data(e, tol::CLUSTER);
        check.ensure(sd.c1_max + sd.c2_max > 1.0, || {
            format!("{}: C1 + C2 = {}", at(), sd.c1_max + sd.c2_max)
        });
        for &nu in &sd.raw_nu {
            check.ensure((-1e-10..=1.0 + 1e-10).contains(&nu), || {
                format!("{}: eigenvalue {nu} outside [0, 1]", at())
            });
        }
        let s = rank1_solver::solve(e).expect("nondegenerate corpus member");

        let padded = e.padded(2).expect("padding preserves validity");
        let u = random_unitary(&mut rng, d + 2);
        let moved = padded.rotated(&u).expect("unitary");
        for (variant, other) in [("padded", &padded), ("padded+rotated", &moved)] {
            let t = rank1_solver::solve(other).expect("embedding preserves nondegeneracy");
            check.close(|| format!("{}: {variant} Q", at()), t.q_opt, s.q_opt, 1e-10);
            check.close(
                || format!("{}: {variant} C1", at()),
                t.c1_max,
                s.c1_max,
                1e-10,
            );
            check.close(
                || format!("{}: {variant} C2", at()),
                t.c2_max,
                s.c2_max,
                1e-10,
            );
        }
        let t = rank1_solver::solve(&padded).expect("embedding preserves nondegeneracy");
        let corner = |op: &HermitianOperator| {
            HermitianOperator::new(op.matrix().view((0, 0), (*d, *d)).into_owned())
                .expect("hermitian block")
        };
        check.close(
            || format!("{}: padded Pi1 block", at()),
            corner(&t.povm.pi1).max_abs_diff(&s.povm.pi1),
            0.0,
            1e-10,
        );
        check.close(
            || format!("{}: padded Pi2 block", at()),
            corner(&t.povm.pi2).max_abs_diff(&s.povm.pi2),
            0.0,
            1e-10,
        );
        let outside = t
            .povm
            .pi1
            .matrix()
            .view((*d, 0), (2, d + 2))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        check.close(
            || format!("{}: padded Pi1 leaks outside", at()),
            outside,
            0.0,
            1e-10,
        );

        let w = rank1_solver::solve(&e.swapped().expect("swap is valid"))
            .expect("swap preserves nondegeneracy");
        check.close(|| format!("{}: swapped Q", at()), w.q_opt, s.q_opt, 1e-10);
        check.close(
            || format!("{}: swapped C1", at()),
            w.c1_max,
            s.c2_max,
            1e-10,
        );
        check.close(
            || format!("{}: swapped C2", at()),
            w.c2_max,
            s.c1_max,
            1e-10,
        );
        check.close(
            || format!("{}: swapped Pi1", at()),
            w.povm.pi1.max_abs_diff(&s.povm.pi2),
            0.0,
            1e-10,
        );
        check.close(
            || format!("{}: swapped Pi2", at()),
            w.povm.pi2.max_abs_diff(&s.povm.pi1),
            0.0,
            1e-10,
        );
    }
    check.finish(format!("{} corpus ensembles", corpus.len()))
}

fn main() {
    let mut produced = Vec::new();
    let corpus = full_corpus();
    let sweep = equal_purity_sweep(&mut produced);
    let grid = mixed_vs_depolarized_grid(&mut produced);
    let pure = unambiguous_limit(&mut produced);
    let helstrom = minimum_error();
    let oracle = oracle_minimality(&mut produced);
    // Block checks run before the validity sweep so their measurements are included.
    let blocks = block_case(&mut produced);
    let results = [
        ("equal-purity sweep matches closed form", sweep),
        ("mixed vs depolarized grid", grid),
        ("unambiguous limit at p = 1", pure),
        ("minimum-error measurement", helstrom),
        ("oracle minimality", oracle),
        (
            "POVM validity and attained confidences",
            povm_validity(&produced),
        ),
        ("block-separable ensembles", blocks),
        ("relative success rate", relative_success(&corpus)),
        ("structural properties", structural(&corpus)),
    ];

    let mut all = true;
    for (i, (name, (ok, detail))) in results.iter().enumerate() {
        all &= ok;
        println!(
            "criterion {} [{}] {name}: {detail}",
            i + 1,
            if *ok { "PASS" } else { "FAIL" }
        );
    }
    if !all {
        std::process::exit(1);
    }
}
