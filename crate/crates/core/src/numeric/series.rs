//! Truncated series evaluators for the unitary-integral expansions and the
//! determinant formula they specialize to, with rigorous tail bounds.

use super::tracked::{bessel_i, det_tracked, TrackedReal};
use crate::exact::{det_rational, factorial, rational_pow, superfactorial};
use crate::partitions::vandermonde;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("evaluation points must be pairwise distinct")]
    RepeatedPoint,
    #[error("repeated squared eigenvalue inside a block")]
    DegenerateEigenvalue,
    #[error("cutoff {0} too small for a convergent tail bound")]
    CutoffTooSmall(u64),
    #[error("beta must be nonzero when its exponent is negative")]
    ZeroBase,
}

fn all_distinct(z: &[BigRational]) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if z[i] == z[j] {
                return false;
            }
        }
    }
    true
}

fn vandermonde_rational(z: &[BigRational]) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            acc *= &z[i] - &z[j];
        }
    }
    acc
}

/// Per-variable tables of z^k / (k! (k-s)!) for k in s..=hi.
fn weighted_power_tables(z: &[BigRational], s: u64, hi: u64) -> Vec<Vec<BigRational>> {
    let mut facts = Vec::with_capacity((hi + 1) as usize);
    facts.push(BigInt::one());
    for k in 1..=hi {
        let next = facts.last().unwrap() * k;
        facts.push(next);
    }
    z.iter()
        .map(|zi| {
            let mut pow = rational_pow(zi, s as i64);
            (s..=hi)
                .map(|k| {
                    let entry = &pow
                        / BigRational::from_integer(
                            &facts[k as usize] * &facts[(k - s) as usize],
                        );
                    pow *= zi;
                    entry
                })
                .collect()
        })
        .collect()
}

/// One-dimensional majorant g(k) = (1+k)^{e} B^k / (k! (k-s)!) used to
/// bound the multi-index tails: returns (sum_{k=s..=hi} g(k), bound for
/// sum_{k>hi} g(k)).
fn majorant_sums(
    b: &BigRational,
    e: u32,
    s: u64,
    hi: u64,
) -> Result<(BigRational, BigRational), NumericError> {
    let g = |k: u64| -> BigRational {
        let poly = BigInt::from(k + 1).pow(e);
        rational_pow(b, k as i64) * BigRational::from_integer(poly)
            / BigRational::from_integer(factorial(k) * factorial(k - s))
    };
    let mut partial = BigRational::zero();
    for k in s..=hi {
        partial += g(k);
    }
    // Ratio g(k+1)/g(k) <= 2^e B / ((k+1)(k+1-s)) for k >= hi.
    let k = hi + 1;
    let ratio = BigRational::from_integer(BigInt::from(2u32).pow(e)) * b
        / BigRational::from_integer(BigInt::from(k) * BigInt::from(k - s));
    if ratio >= BigRational::one() {
        return Err(NumericError::CutoffTooSmall(hi));
    }
    let tail = g(k) / (BigRational::one() - ratio);
    Ok((partial, tail))
}

/// The series C_n / Delta(z) * sum_k Delta(k) z^k / prod_i k_i! (k_i - s)!
/// truncated to s <= k_i <= s + cutoff, with a majorant tail bound.
pub fn series_g(
    z: &[BigRational],
    s: u64,
    cutoff: u64,
) -> Result<TrackedReal, NumericError> {
    let n = z.len();
    assert!(n >= 1, "need at least one variable");
    if !all_distinct(z) {
        return Err(NumericError::RepeatedPoint);
    }
    let hi = s + cutoff;
    // Per-variable tables: powers[i][k-s] = z_i^k / (k! (k-s)!).
    let tables = weighted_power_tables(z, s, hi);
    let mut sum = BigRational::zero();
    let mut k = vec![s; n];
    loop {
        let ki: Vec<i64> = k.iter().map(|&x| x as i64).collect();
        let delta = vandermonde(&ki);
        if !delta.is_zero() {
            let mut term = BigRational::from_integer(delta);
            for (i, &kv) in k.iter().enumerate() {
                term *= &tables[i][(kv - s) as usize];
            }
            sum += term;
        }
        // Advance the multi-index.
        let mut carry = true;
        for slot in k.iter_mut() {
            if carry {
                *slot += 1;
                if *slot > hi {
                    *slot = s;
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            break;
        }
    }
    // |Delta(k)| <= prod_i (1+k_i)^{n-1}, so the discarded terms are
    // bounded by n * tail * total^{n-1} in the one-dimensional majorant.
    let zmax = z
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    let (partial, tail) = majorant_sums(&zmax, n as u32 - 1, s, hi)?;
    let total = partial + &tail;
    let mut err = BigRational::from_integer(BigInt::from(n as u64)) * tail;
    for _ in 0..n - 1 {
        err *= &total;
    }
    let dz = vandermonde_rational(z);
    let cn = BigRational::from_integer(superfactorial(n as u64));
    Ok(TrackedReal::new(&sum * &cn / &dz, err * cn / dz.abs()))
}

/// The double-alternant series C_n^2 / (Delta(x) Delta(y)) *
/// sum_k det(x_i^{k_j}) y^k / prod_i k_i! (k_i - s)! truncated to
/// s <= k_i <= s + cutoff.
pub fn series_k(
    x: &[BigRational],
    y: &[BigRational],
    s: u64,
    cutoff: u64,
) -> Result<TrackedReal, NumericError> {
    let n = x.len();
    assert_eq!(n, y.len(), "x and y must have equal length");
    assert!(n >= 1, "need at least one variable");
    if !all_distinct(x) || !all_distinct(y) {
        return Err(NumericError::RepeatedPoint);
    }
    let hi = s + cutoff;
    // xpow[i][k-s] = x_i^k, ytab[i][k-s] = y_i^k / (k! (k-s)!).
    let xpow: Vec<Vec<BigRational>> = x
        .iter()
        .map(|xi| (s..=hi).map(|k| rational_pow(xi, k as i64)).collect())
        .collect();
    let ytab = weighted_power_tables(y, s, hi);
    let mut sum = BigRational::zero();
    let mut k = vec![s; n];
    loop {
        let mat: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                k.iter()
                    .map(|&kj| xpow[i][(kj - s) as usize].clone())
                    .collect()
            })
            .collect();
        let det = det_rational(&mat);
        if !det.is_zero() {
            let mut term = det;
            for (i, &kv) in k.iter().enumerate() {
                term *= &ytab[i][(kv - s) as usize];
            }
            sum += term;
        }
        let mut carry = true;
        for slot in k.iter_mut() {
            if carry {
                *slot += 1;
                if *slot > hi {
                    *slot = s;
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            break;
        }
    }
    // |det(x_i^{k_j}) y^k| <= n! prod_i (x* y*)^{k_i}.
    let absmax = |v: &[BigRational]| {
        v.iter()
            .map(|t| t.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    };
    let b = absmax(x) * absmax(y);
    let (partial, tail) = majorant_sums(&b, 0, s, hi)?;
    let total = partial + &tail;
    let mut err =
        BigRational::from_integer(BigInt::from(n as u64) * factorial(n as u64)) * tail;
    for _ in 0..n - 1 {
        err *= &total;
    }
    let dxy = vandermonde_rational(x) * vandermonde_rational(y);
    let c2 = BigRational::from_integer(superfactorial(n as u64).pow(2));
    Ok(TrackedReal::new(&sum * &c2 / &dxy, err * c2 / dxy.abs()))
}

/// The closed determinant formula
///   C_m C_n beta^{((m+n) - (m-n)^2)/2}
///     det(lambda_j^{m+n-i} I_{m+n-i}(2 beta lambda_j))
///     / (Delta(lambda_1^2..lambda_m^2) Delta(lambda_{m+1}^2..lambda_{m+n}^2)),
/// evaluated as printed with error propagation. The exponent of beta is
/// always an integer because m+n and (m-n)^2 share parity.
pub fn theorem2_rhs(
    beta: &BigRational,
    lambdas: &[BigRational],
    m: u32,
    n: u32,
) -> Result<TrackedReal, NumericError> {
    let d = (m + n) as usize;
    assert_eq!(lambdas.len(), d, "need m + n eigenvalues");
    let sq: Vec<BigRational> = lambdas.iter().map(|l| l * l).collect();
    if !all_distinct(&sq[..m as usize]) || !all_distinct(&sq[m as usize..]) {
        return Err(NumericError::DegenerateEigenvalue);
    }
    let expo = (d as i64 - (m as i64 - n as i64).pow(2)) / 2;
    if beta.is_zero() && expo < 0 {
        return Err(NumericError::ZeroBase);
    }
    // Entry target keeps the determinant's perturbation error far below
    // the 1e-6 relative tolerances used downstream.
    let target = BigRational::new(1.into(), BigInt::from(10u32).pow(60));
    let rows: Vec<Vec<TrackedReal>> = (1..=d)
        .map(|i| {
            lambdas
                .iter()
                .map(|lj| {
                    let order = (d - i) as i64;
                    let arg = BigRational::from_integer(2.into()) * beta * lj;
                    bessel_i(order, &arg, &target)
                        .scale(&rational_pow(lj, order))
                })
                .collect()
        })
        .collect();
    let det = det_tracked(&rows);
    let denom = vandermonde_rational(&sq[..m as usize]) * vandermonde_rational(&sq[m as usize..]);
    let prefactor = BigRational::from_integer(
        superfactorial(m as u64) * superfactorial(n as u64),
    ) * rational_pow(beta, expo)
        / denom;
    Ok(det.scale(&prefactor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn series_g_reduces_to_bessel_in_one_variable() {
        let tiny = BigRational::new(1.into(), BigInt::from(10u32).pow(30));
        let g0 = series_g(&[rat_int(1)], 0, 30).unwrap();
        let i0 = bessel_i(0, &rat_int(2), &tiny);
        assert!(g0.abs_diff(&i0).upper() < rat(1, 1_000_000_000));
        let g1 = series_g(&[rat_int(1)], 1, 30).unwrap();
        let i1 = bessel_i(1, &rat_int(2), &tiny);
        assert!(g1.abs_diff(&i1).upper() < rat(1, 1_000_000_000));
    }

    #[test]
    fn series_g_rejects_repeated_points() {
        assert_eq!(
            series_g(&[rat_int(2), rat_int(2)], 0, 10),
            Err(NumericError::RepeatedPoint)
        );
    }

    #[test]
    fn series_k_one_dimensional_cases() {
        let tiny = BigRational::new(1.into(), BigInt::from(10u32).pow(30));
        let k0 = series_k(&[rat_int(1)], &[rat_int(1)], 0, 30).unwrap();
        assert!(k0
            .abs_diff(&bessel_i(0, &rat_int(2), &tiny))
            .upper()
            < rat(1, 1_000_000_000));
        let k1 = series_k(&[rat_int(1)], &[rat_int(1)], 1, 30).unwrap();
        assert!(k1
            .abs_diff(&bessel_i(1, &rat_int(2), &tiny))
            .upper()
            < rat(1, 1_000_000_000));
    }

    #[test]
    fn theorem2_one_by_one_is_bessel() {
        let tiny = BigRational::new(1.into(), BigInt::from(10u32).pow(30));
        let v = theorem2_rhs(&rat_int(1), &[rat_int(1)], 1, 0).unwrap();
        let i0 = bessel_i(0, &rat_int(2), &tiny);
        assert!(v.abs_diff(&i0).upper() < rat(1, 1_000_000_000));
        // The m <-> n face gives the same value at this size.
        let w = theorem2_rhs(&rat_int(1), &[rat_int(1)], 0, 1).unwrap();
        assert!(w.abs_diff(&i0).upper() < rat(1, 1_000_000_000));
    }

    #[test]
    fn theorem2_rejects_degenerate_blocks() {
        assert_eq!(
            theorem2_rhs(&rat_int(1), &[rat_int(1), rat_int(-1)], 2, 0),
            Err(NumericError::DegenerateEigenvalue)
        );
        // Distinct squares across blocks are fine.
        assert!(theorem2_rhs(&rat_int(1), &[rat_int(1), rat_int(1)], 1, 1).is_ok());
    }

    #[test]
    fn series_g_matches_theorem2_after_substitution() {
        // z_i = beta^2 lambda_i^2 with lambda = (1, 2), beta = 1.
        let g = series_g(&[rat_int(1), rat_int(4)], 0, 40).unwrap();
        let t = theorem2_rhs(&rat_int(1), &[rat_int(1), rat_int(2)], 2, 0).unwrap();
        let diff = g.abs_diff(&t);
        assert!(
            diff.upper() < rat(1, 1_000_000),
            "difference {} too large",
            diff
        );
    }

    #[test]
    fn coarse_series_interval_contains_refined_value() {
        // Error-bound soundness: raising the cutoff must give a value
        // inside the coarser interval.
        let z = [rat_int(1), rat_int(3)];
        let coarse = series_g(&z, 1, 18).unwrap();
        let fine = series_g(&z, 1, 45).unwrap();
        assert!(coarse.encloses(&fine), "coarse {coarse} vs fine {fine}");
        let coarse = series_k(&[rat_int(1), rat_int(2)], &z, 0, 18).unwrap();
        let fine = series_k(&[rat_int(1), rat_int(2)], &z, 0, 45).unwrap();
        assert!(coarse.encloses(&fine));
    }

    #[test]
    fn cutoff_too_small_is_reported() {
        // Huge z with a tiny cutoff leaves a divergent-looking majorant.
        assert!(matches!(
            series_g(&[rat_int(1_000_000)], 0, 1),
            Err(NumericError::CutoffTooSmall(_))
        ));
    }
}
