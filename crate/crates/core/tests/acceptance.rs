//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass/fail line. Tolerances are pinned in code; exact criteria
//! use rational equality, tracked-error criteria use certified interval
//! comparisons, and Monte Carlo criteria use fixed seeds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use ubessel_core::exact::{rat, rat_int, rational_to_f64};
use ubessel_core::identity::{self, SParam};
use ubessel_core::measures::{self, Draw, PSampler, QSampler};
use ubessel_core::numeric::{self, CMatrix, TrackedReal};
use ubessel_core::partitions::{hook_product, partitions_of, Partition};
use ubessel_core::schur::{lr_coefficient, schur_dimension};
use ubessel_core::stats;

const THREADS: usize = 4;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

fn report_line(number: u32, name: &str, ok: bool) {
    println!(
        "acceptance criterion {number} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
}

#[test]
fn criterion_01_theorem1_integer_s() {
    let mut ok = true;
    let mut detail = String::new();
    for (m, n) in [(1u32, 1u32), (1, 2), (2, 2)] {
        for s in 0..=3i64 {
            let r = identity::verify_theorem1(m, n, SParam::Integer(s), 8, THREADS);
            if !r.passed() {
                ok = false;
                detail = format!("m={m} n={n} s={s}: {:?}", r.failures.first());
            }
        }
    }
    report_line(1, "theorem, integer s, exact", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_02_theorem1_symbolic_s() {
    let mut ok = true;
    let mut detail = String::new();
    for (m, n) in [(1u32, 1u32), (1, 2)] {
        let r = identity::verify_theorem1(m, n, SParam::Symbolic, 6, THREADS);
        if !r.passed() {
            ok = false;
            detail = format!("symbolic m={m} n={n}: {:?}", r.failures.first());
        }
        // Evaluations at negative integers agree with the direct path
        // (no pole can occur there).
        for s0 in [-1i64, -2] {
            let direct = identity::verify_theorem1(m, n, SParam::Integer(s0), 6, THREADS);
            if !direct.passed() {
                ok = false;
                detail = format!("direct m={m} n={n} s={s0}");
            }
            for k in all_ks((m + n) as usize, 6) {
                if !identity::symbolic_matches_integer(&k, m, n, s0) {
                    ok = false;
                    detail = format!("eval mismatch m={m} n={n} s={s0} k={k:?}");
                }
            }
        }
    }
    report_line(2, "theorem, symbolic s, exact", ok);
    assert!(ok, "{detail}");
}

fn all_ks(d: usize, degree: u32) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; d];
    fn rec(i: usize, left: u32, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v as u64;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

#[test]
fn criterion_03_schur_weight_identity() {
    let mut ok = true;
    let mut detail = String::new();
    for (m, n) in [(1u32, 1u32), (1, 2), (2, 2)] {
        for s in 0..=2u64 {
            let r = identity::verify_corollary(m, n, s, 6, THREADS);
            if !r.passed() {
                ok = false;
                detail = format!("m={m} n={n} s={s}: {:?}", r.failures.first());
            }
            // b_s(mu, nu; m, n) = b_s(nu, mu; n, m) throughout the range.
            // (weight_b itself already insists both closed forms agree.)
            for w in 0..=6u32 {
                for a in 0..=w {
                    for mu in partitions_of(a, m) {
                        for nu in partitions_of(w - a, n) {
                            let lhs = identity::weight_b(&mu, &nu, s, m, n).unwrap();
                            let rhs = identity::weight_b(&nu, &mu, s, n, m).unwrap();
                            if lhs != rhs {
                                ok = false;
                                detail = format!("symmetry mu={mu} nu={nu} s={s}");
                            }
                        }
                    }
                }
            }
        }
    }
    report_line(3, "Schur-weight identity, exact", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_04_proof_lemmas() {
    let bf = identity::bf94_battery(100, 0xBF94);
    let an = identity::andreief_battery(100, 0xA41);
    let ok = bf.passed() && an.passed();
    report_line(4, "determinant and integration lemmas, exact", ok);
    assert!(ok, "bf94: {:?} andreief: {:?}", bf.failures.first(), an.failures.first());
}

#[test]
fn criterion_05_normalization_bracket() {
    let width_limit = BigRational::new(1.into(), BigInt::from(10u32).pow(20));
    let diff_limit = BigRational::new(1.into(), BigInt::from(10u32).pow(9));
    let mut ok = true;
    let mut detail = String::new();
    for m in 0..=4u32 {
        for n in 0..=(4 - m) {
            if m + n == 0 {
                continue;
            }
            for s in 0..=2u32 {
                let (partial, tail) = measures::normalization_z_truncated(m, n, s, 30);
                let det = measures::normalization_z_bessel(m, n, s);
                let lo = &partial;
                let hi = &partial + &tail;
                let contains = det.upper() >= *lo && det.lower() <= hi;
                let width_ok = tail < width_limit;
                let diff_ok = (det.value() - &partial).abs() <= &diff_limit + det.abs_error();
                if !(contains && width_ok && diff_ok) {
                    ok = false;
                    detail = format!(
                        "m={m} n={n} s={s}: contains={contains} width_ok={width_ok} diff_ok={diff_ok}"
                    );
                }
            }
        }
    }
    // Sanity anchor at m+n = 1, s = 0: both sides are I_0(2).
    let (partial, _) = measures::normalization_z_truncated(1, 0, 0, 30);
    if (rational_to_f64(&partial) - 2.2795853023360673).abs() > 1e-12 {
        ok = false;
        detail = "I_0(2) anchor".into();
    }
    report_line(5, "normalization bracket vs Bessel determinant", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_06_branching_law_equals_q() {
    let mut ok = true;
    let mut detail = String::new();
    for (m, n, s) in [(1u32, 1u32, 0u32), (1, 1, 1), (2, 2, 0)] {
        for w in 0..=5u32 {
            for a in 0..=w {
                for mu in partitions_of(a, m) {
                    for nu in partitions_of(w - a, n) {
                        let mut acc = BigRational::zero();
                        for lambda in partitions_of(w, m + n) {
                            let c = lr_coefficient(&lambda, &mu, &nu);
                            if c == 0 {
                                continue;
                            }
                            let dims = schur_dimension(&mu, m).unwrap()
                                * schur_dimension(&nu, n).unwrap();
                            acc += measures::weight_p(&lambda, m, n, s)
                                * BigRational::new(
                                    BigInt::from(c) * dims,
                                    schur_dimension(&lambda, m + n).unwrap(),
                                );
                        }
                        if acc != measures::weight_q(&mu, &nu, m, n, s).unwrap() {
                            ok = false;
                            detail = format!("mu={mu} nu={nu} (m,n,s)=({m},{n},{s})");
                        }
                    }
                }
            }
        }
    }
    report_line(6, "branching law equals pair measure, exact", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_07_monte_carlo_unitary_integrals() {
    let mut ok = true;
    let mut detail = String::new();
    let mut check = |label: &str, est: numeric::MCEstimate, reference: &TrackedReal| {
        let sig = est.deviation_sigmas(rational_to_f64(reference.value()));
        if sig > 5.0 {
            ok = false;
            detail = format!("{label}: {sig:.2} standard errors");
        }
    };
    let id1 = CMatrix::identity(1);
    let g0 = numeric::mc_integral_g(&id1, &id1, 0, 200_000, 11, THREADS);
    check("G n=1 s=0", g0, &numeric::series_g(&[rat_int(1)], 0, 30).unwrap());
    let g1 = numeric::mc_integral_g(&id1, &id1, 1, 200_000, 12, THREADS);
    check("G n=1 s=1", g1, &numeric::series_g(&[rat_int(1)], 1, 30).unwrap());

    let a2 = CMatrix::diag(&[1.0, 2.0]);
    let id2 = CMatrix::identity(2);
    let g2 = numeric::mc_integral_g(&a2, &id2, 0, 200_000, 13, THREADS);
    check(
        "G n=2 s=0",
        g2,
        &numeric::series_g(&[rat_int(1), rat_int(2)], 0, 40).unwrap(),
    );

    let k0 = numeric::mc_integral_k(&id1, &id1, &id1, &id1, 0, 200_000, 14, THREADS);
    check(
        "K n=1 s=0",
        k0,
        &numeric::series_k(&[rat_int(1)], &[rat_int(1)], 0, 30).unwrap(),
    );
    let k1 = numeric::mc_integral_k(&id1, &id1, &id1, &id1, 1, 200_000, 15, THREADS);
    check(
        "K n=1 s=1",
        k1,
        &numeric::series_k(&[rat_int(1)], &[rat_int(1)], 1, 30).unwrap(),
    );
    let b2 = CMatrix::diag(&[1.0, 3.0]);
    let k2 = numeric::mc_integral_k(&a2, &b2, &id2, &id2, 0, 200_000, 16, THREADS);
    check(
        "K n=2 s=0",
        k2,
        &numeric::series_k(&[rat_int(1), rat_int(2)], &[rat_int(1), rat_int(3)], 0, 40).unwrap(),
    );
    report_line(7, "Monte Carlo vs series, 5 standard errors", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_08_determinant_formula_recovery() {
    let mut ok = true;
    let mut detail = String::new();
    let rel_limit = 1e-6;
    for m in 1..=3u32 {
        for beta in [rat(1, 2), rat_int(1)] {
            let lambdas: Vec<BigRational> = (1..=m as i64).map(rat_int).collect();
            let rhs = numeric::theorem2_rhs(&beta, &lambdas, m, 0).unwrap();
            let z: Vec<BigRational> = lambdas.iter().map(|l| &beta * &beta * l * l).collect();
            let series = numeric::series_g(&z, 0, 40).unwrap();
            let rel = rational_to_f64(&(rhs.value() - series.value()).abs())
                / rational_to_f64(&series.value().abs());
            let slack = rational_to_f64(&(rhs.abs_error() + series.abs_error()))
                / rational_to_f64(&series.value().abs());
            if rel > rel_limit + slack {
                ok = false;
                detail = format!("m={m} beta={beta}: rel error {rel:e}");
            }
        }
    }
    // Evaluator well-definedness at a genuine two-block point.
    let both = numeric::theorem2_rhs(
        &rat_int(1),
        &[rat_int(1), rat_int(2), rat_int(3)],
        2,
        1,
    );
    if both.is_err() {
        ok = false;
        detail = "two-block evaluation failed".into();
    }
    report_line(8, "determinant formula recovers the one-block series", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_09_limit_theorems() {
    let mut ok = true;
    let mut detail = String::new();

    // Exact finite-size identity for a single box.
    for m in 1..=64u32 {
        for n in 1..=64u32 {
            let got = measures::hook_ratio_52(&p(&[1]), m, n).unwrap();
            if got != rat(m as i64, (m + n) as i64) {
                ok = false;
                detail = format!("hook ratio at m={m} n={n}");
            }
        }
    }

    // Finite-to-limit error shrinks from t=8 to t=64.
    let alpha = rat_int(1);
    let lam = p(&[2, 1]);
    let err52 = |t: u32| {
        (measures::hook_ratio_52(&lam, t, t).unwrap()
            - measures::limit_52(&lam, &alpha).value())
        .abs()
    };
    if err52(64) >= err52(8) {
        ok = false;
        detail = "lemma-5.2 error did not shrink".into();
    }
    for mu in [p(&[1]), p(&[2])] {
        for nu in [p(&[1]), p(&[2])] {
            let err53 = |t: u32| {
                (measures::hook_ratio_53(&mu, &nu, t, t).unwrap()
                    - measures::limit_53(&mu, &nu, &alpha).value())
                .abs()
            };
            if err53(64) >= err53(8) {
                ok = false;
                detail = format!("lemma-5.3 error did not shrink at mu={mu} nu={nu}");
            }
        }
    }

    // Convergence of the measures themselves along m = n = s = t.
    let ts = [2u32, 4, 8, 16];
    let threshold = TrackedReal::exact(rat(1, 20));
    for lam in [Partition::empty(), p(&[1]), p(&[2])] {
        let tables = measures::limit_check_54(&lam, &p(&[1]), &Partition::empty(), &ts).unwrap();
        for table in &tables {
            if !table.strictly_decreasing() {
                ok = false;
                detail = format!("{} not strictly decreasing", table.label);
            }
        }
        let last = &tables[0].rows.last().unwrap().abs_error;
        if !last.certainly_less(&threshold) {
            ok = false;
            detail = format!("P error at t=16 not below 0.05 for lambda={lam}");
        }
    }
    report_line(9, "hook-ratio and measure limits", ok);
    assert!(ok, "{detail}");
}

#[test]
fn criterion_10_sampler_statistics() {
    let mut ok = true;
    let mut detail = String::new();

    // Poissonized Plancherel at alpha = 1: chi-square against the closed
    // masses e^{-1}/h(lambda)^2 on partitions of size <= 3, plus a rest
    // bucket.
    let draws = 100_000u64;
    let mut rng = ChaCha12Rng::seed_from_u64(0x9A71);
    let cells: Vec<Partition> = (0..=3u32).flat_map(|k| partitions_of(k, 3)).collect();
    let mut counts = vec![0u64; cells.len() + 1];
    for _ in 0..draws {
        let shape = measures::plancherel_draw(1.0, &mut rng);
        match cells.iter().position(|c| *c == shape) {
            Some(i) => counts[i] += 1,
            None => *counts.last_mut().unwrap() += 1,
        }
    }
    let e_inv = 1.0 / std::f64::consts::E;
    let mut expected: Vec<f64> = cells
        .iter()
        .map(|c| {
            let h = rational_to_f64(&BigRational::from_integer(hook_product(c)));
            e_inv / (h * h) * draws as f64
        })
        .collect();
    let rest = draws as f64 - expected.iter().sum::<f64>();
    expected.push(rest);
    let gof = stats::chi_square_gof(&counts, &expected);
    if gof.p_value <= 0.001 {
        ok = false;
        detail = format!("plancherel chi-square p = {:.5}", gof.p_value);
    }

    // Pair-measure sampler at (1,1,0): every cell with |mu|+|nu| <= 3
    // within 3 sigma of weight_q / Z.
    let draws_q = 50_000u64;
    let mut rngq = ChaCha12Rng::seed_from_u64(0x5EED);
    let mut sampler = QSampler::new(1, 1, 0);
    let mut tally: std::collections::BTreeMap<(Partition, Partition), u64> =
        std::collections::BTreeMap::new();
    for _ in 0..draws_q {
        let pair = sampler.draw(&mut rngq);
        *tally.entry(pair).or_insert(0) += 1;
    }
    let (zlo, zhi) = measures::z_bracket(1, 1, 0, 30);
    let z = rational_to_f64(&((&zlo + &zhi) / rat_int(2)));
    for w in 0..=3u32 {
        for a in 0..=w {
            for mu in partitions_of(a, 1) {
                for nu in partitions_of(w - a, 1) {
                    let prob =
                        rational_to_f64(&measures::weight_q(&mu, &nu, 1, 1, 0).unwrap()) / z;
                    let sigma = stats::frequency_sigma(prob, draws_q);
                    let freq = *tally.get(&(mu.clone(), nu.clone())).unwrap_or(&0) as f64
                        / draws_q as f64;
                    if (freq - prob).abs() > 3.0 * sigma {
                        ok = false;
                        detail = format!(
                            "cell mu={mu} nu={nu}: freq {freq:.5} vs prob {prob:.5} (3 sigma = {:.5})",
                            3.0 * sigma
                        );
                    }
                }
            }
        }
    }

    // The two-step sampler never leaves its support.
    let mut psampler = PSampler::new(1, 1, 0);
    for _ in 0..1_000 {
        assert!(psampler.draw(&mut rngq).len() <= 2);
    }

    // Seed determinism of the public one-shot samplers.
    let a = measures::sample_p(2, 1, 1, 77);
    let b = measures::sample_p(2, 1, 1, 77);
    match (&a.draw, &b.draw) {
        (Draw::One(x), Draw::One(y)) => {
            if x != y {
                ok = false;
                detail = "sampler determinism".into();
            }
        }
        _ => unreachable!(),
    }

    report_line(10, "sampler statistics", ok);
    assert!(ok, "{detail}");
}
