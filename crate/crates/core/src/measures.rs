//! The partition measures P and Q induced by the Schur-weight identity,
//! their normalization constant as an exact truncated sum with tail bound
//! and as a Bessel determinant, exact inverse-CDF samplers, Poissonized
//! Plancherel sampling through RSK insertion, and the hook-ratio limit
//! theorems with their convergence tables.

use crate::exact::{factorial, rational_pow};
use crate::numeric::{bessel_i, det_tracked, exp_rational, TrackedReal};
use crate::partitions::{
    add_rectangle, conjugate, enumerate_partitions, hook_product, join_shape, union_append,
    Partition, PartitionError,
};
use crate::schur::{branching_table, schur_dimension, SchurError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// Unnormalized weight of the diagonal measure:
/// 1 / (h(lambda) h(lambda + (s^{m+n}))), and 0 beyond m+n rows.
pub fn weight_p(lambda: &Partition, m: u32, n: u32, s: u32) -> BigRational {
    if lambda.len() > (m + n) as usize {
        return BigRational::zero();
    }
    let shifted = add_rectangle(lambda, s as i64, m + n).expect("length checked");
    BigRational::new(
        BigInt::one(),
        hook_product(lambda) * hook_product(&shifted),
    )
}

/// Unnormalized weight of the pair measure:
/// h((m^n)) / (h(mu) h(nu + (s^n)) h((mu + (s^m) + (n^m)) u nu')).
/// The numerator uses the rectangle with n rows of m; it equals the
/// m-rows-of-n form because hook products are conjugation invariant.
pub fn weight_q(
    mu: &Partition,
    nu: &Partition,
    m: u32,
    n: u32,
    s: u32,
) -> Result<BigRational, MeasureError> {
    let rect = Partition::rectangle(m, n);
    let nu_shift = add_rectangle(nu, s as i64, n)?;
    let joined = join_shape(mu, nu, m, n, s as u64)?;
    Ok(BigRational::new(
        hook_product(&rect),
        hook_product(mu) * hook_product(&nu_shift) * hook_product(&joined),
    ))
}

/// Upper bound for sum_{k > cutoff} 1/k!: the first omitted term times the
/// geometric series with ratio 1/(cutoff+2).
pub fn factorial_tail_bound(cutoff: u32) -> BigRational {
    let n1 = cutoff as u64 + 1;
    BigRational::new(
        BigInt::from(n1 + 1),
        BigInt::from(n1) * factorial(n1),
    )
}

/// Exact partial sum of the normalization constant over partitions of size
/// <= cutoff with at most m+n rows, together with a tail bound. The tail
/// uses sum_{lambda of k} 1/h(lambda)^2 = 1/k! and h(lambda + rect) >=
/// h(lambda), giving sum_{k > cutoff} 1/k!.
pub fn normalization_z_truncated(
    m: u32,
    n: u32,
    s: u32,
    cutoff: u32,
) -> (BigRational, BigRational) {
    let mut partial = BigRational::zero();
    for lambda in enumerate_partitions(cutoff, m + n) {
        partial += weight_p(&lambda, m, n, s);
    }
    (partial, factorial_tail_bound(cutoff))
}

/// Sharper bracket on the normalization constant: h(lambda + rect) >=
/// h(rect) h(lambda) divides the factorial tail by h((s^{m+n})), which is
/// what keeps the bracket meaningful when the rectangle is large.
pub fn z_bracket(m: u32, n: u32, s: u32, cutoff: u32) -> (BigRational, BigRational) {
    let (partial, tail) = normalization_z_truncated(m, n, s, cutoff);
    let rect = Partition::rectangle(s, m + n);
    let scaled_tail = tail / BigRational::from_integer(hook_product(&rect));
    (partial.clone(), partial + scaled_tail)
}

/// The normalization constant as the (m+n) x (m+n) determinant of
/// I_{i-j+s}(2). The entry tolerance is chosen from an exact lower bound
/// on the value (the empty-partition weight) so that the determinant's
/// perturbation error stays below 1e-12 relative even when the value
/// itself is astronomically small.
pub fn normalization_z_bessel(m: u32, n: u32, s: u32) -> TrackedReal {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), TrackedReal>>> = OnceLock::new();
    // The determinant depends on (m + n, s) only.
    let key = (m + n, s);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let z = normalization_z_bessel_uncached(m, n, s);
    cache.lock().unwrap().insert(key, z.clone());
    z
}

fn normalization_z_bessel_uncached(m: u32, n: u32, s: u32) -> TrackedReal {
    let d = (m + n) as usize;
    assert!(d >= 1);
    let rect = Partition::rectangle(s, m + n);
    let floor = BigRational::new(BigInt::one(), hook_product(&rect));
    let absolute = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(25));
    let target = (&floor * BigRational::new(BigInt::one(), BigInt::from(10u32).pow(12)))
        .min(absolute);
    // Perturbation bound: row 1-norms are below e^2 < 8, so an entrywise
    // tolerance eps inflates the determinant by at most d^2 eps 9^{d-1}.
    let eps = target
        / (BigRational::from_integer(BigInt::from((d * d) as u64))
            * BigRational::from_integer(BigInt::from(9u32).pow(d as u32 - 1)));
    let two = BigRational::from_integer(2.into());
    let mut by_order: HashMap<i64, TrackedReal> = HashMap::new();
    let rows: Vec<Vec<TrackedReal>> = (1..=d as i64)
        .map(|i| {
            (1..=d as i64)
                .map(|j| {
                    let order = i - j + s as i64;
                    by_order
                        .entry(order)
                        .or_insert_with(|| bessel_i(order, &two, &eps))
                        .clone()
                })
                .collect()
        })
        .collect();
    det_tracked(&rows)
}

/// A reproducible draw: the same seed and method always regenerate the
/// same value.
#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub seed: u64,
    pub method: &'static str,
    pub draw: Draw,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Draw {
    One(Partition),
    Pair(Partition, Partition),
}

/// Shape of the insertion tableau under RSK row insertion; distributed as
/// Plancherel measure when the input is a uniform permutation.
pub fn rsk_shape(perm: &[u64]) -> Partition {
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for &x in perm {
        let mut bump = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            let pos = row.partition_point(|&v| v <= bump);
            if pos == row.len() {
                row.push(bump);
                placed = true;
                break;
            }
            std::mem::swap(&mut row[pos], &mut bump);
        }
        if !placed {
            rows.push(vec![bump]);
        }
    }
    Partition::new(rows.iter().map(|r| r.len() as u32).collect())
}

fn poisson_draw<R: Rng>(alpha: f64, rng: &mut R) -> u64 {
    if alpha <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(alpha).expect("positive Poisson rate");
    dist.sample(rng) as u64
}

/// Draws N ~ Poisson(alpha), then the RSK shape of a uniform permutation
/// of N letters. Plancherel measure on permutations of N gives each shape
/// probability N!/h(lambda)^2, so the mixture is exactly the Poissonized
/// Plancherel measure with parameter alpha.
pub fn sample_poissonized_plancherel(alpha: &BigRational, seed: u64) -> SampleRecord {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let shape = plancherel_draw(crate::exact::rational_to_f64(alpha), &mut rng);
    SampleRecord {
        seed,
        method: "poissonized-plancherel-rsk",
        draw: Draw::One(shape),
    }
}

/// One Poissonized Plancherel draw from an existing generator.
pub fn plancherel_draw<R: Rng>(alpha: f64, rng: &mut R) -> Partition {
    let n = poisson_draw(alpha, rng);
    let mut perm: Vec<u64> = (1..=n).collect();
    perm.shuffle(rng);
    rsk_shape(&perm)
}

fn unit_uniform<R: Rng>(rng: &mut R) -> BigRational {
    let r: u128 = rng.gen();
    BigRational::new(BigInt::from(r), BigInt::one() << 128)
}

/// Exact inverse-CDF sampler for the diagonal measure. The enumeration is
/// truncated with an explicit tail bound; a draw landing in the tail
/// region (probability below 1e-12 at the default cutoff) grows the table
/// and retries, so the output law is exactly P up to that documented tail.
pub struct PSampler {
    m: u32,
    n: u32,
    s: u32,
    cutoff: u32,
    cumulative: Vec<(Partition, BigRational)>,
    partial: BigRational,
    tail: BigRational,
}

impl PSampler {
    pub fn new(m: u32, n: u32, s: u32) -> Self {
        Self::with_cutoff(m, n, s, 16)
    }

    pub fn with_cutoff(m: u32, n: u32, s: u32, cutoff: u32) -> Self {
        let mut cumulative = Vec::new();
        let mut acc = BigRational::zero();
        for lambda in enumerate_partitions(cutoff, m + n) {
            acc += weight_p(&lambda, m, n, s);
            cumulative.push((lambda, acc.clone()));
        }
        let rect = Partition::rectangle(s, m + n);
        let tail = factorial_tail_bound(cutoff)
            / BigRational::from_integer(hook_product(&rect));
        PSampler {
            m,
            n,
            s,
            cutoff,
            partial: acc,
            cumulative,
            tail,
        }
    }

    /// Partial mass plus tail bound; the true normalization lies within.
    pub fn upper_mass(&self) -> BigRational {
        &self.partial + &self.tail
    }

    pub fn draw<R: Rng>(&mut self, rng: &mut R) -> Partition {
        loop {
            let u = unit_uniform(rng) * self.upper_mass();
            if u < self.partial {
                let idx = self
                    .cumulative
                    .partition_point(|(_, cum)| *cum <= u);
                return self.cumulative[idx].0.clone();
            }
            // Tail region: enlarge the table and redraw.
            *self = Self::with_cutoff(self.m, self.n, self.s, self.cutoff + 8);
        }
    }
}

/// Draws one partition from P by exact inverse CDF.
pub fn sample_p(m: u32, n: u32, s: u32, seed: u64) -> SampleRecord {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut sampler = PSampler::new(m, n, s);
    SampleRecord {
        seed,
        method: "p-inverse-cdf",
        draw: Draw::One(sampler.draw(&mut rng)),
    }
}

/// Two-stage sampler for the pair measure: draw lambda from P, then a pair
/// (mu, nu) with conditional probability c^lambda_{mu nu} dim(mu, m)
/// dim(nu, n) / dim(lambda, m+n). The conditional masses sum to one
/// exactly by the branching dimension identity (asserted).
pub struct QSampler {
    m: u32,
    n: u32,
    p: PSampler,
    branch: HashMap<Partition, Vec<(Partition, Partition, BigRational)>>,
}

impl QSampler {
    pub fn new(m: u32, n: u32, s: u32) -> Self {
        QSampler {
            m,
            n,
            p: PSampler::new(m, n, s),
            branch: HashMap::new(),
        }
    }

    fn branch_table(&mut self, lambda: &Partition) -> &[(Partition, Partition, BigRational)] {
        let (m, n) = (self.m, self.n);
        self.branch.entry(lambda.clone()).or_insert_with(|| {
            let dim_l = BigRational::from_integer(
                schur_dimension(lambda, m + n).expect("support has <= m+n rows"),
            );
            let mut acc = BigRational::zero();
            let mut rows = Vec::new();
            for ((mu, nu), c) in branching_table(lambda, m, n).expect("length bound").iter() {
                let dims = schur_dimension(mu, m).unwrap() * schur_dimension(nu, n).unwrap();
                acc += BigRational::from_integer(BigInt::from(*c) * dims) / &dim_l;
                rows.push((mu.clone(), nu.clone(), acc.clone()));
            }
            assert!(
                acc.is_one(),
                "branching masses must sum to 1, got {acc} for {lambda}"
            );
            rows
        })
    }

    pub fn draw<R: Rng>(&mut self, rng: &mut R) -> (Partition, Partition) {
        let lambda = self.p.draw(rng);
        let u = unit_uniform(rng);
        let table = self.branch_table(&lambda);
        let idx = table.partition_point(|(_, _, cum)| *cum <= u);
        let (mu, nu, _) = &table[idx];
        (mu.clone(), nu.clone())
    }
}

/// Draws one (mu, nu) pair through the branching construction.
pub fn sample_q_branching(m: u32, n: u32, s: u32, seed: u64) -> SampleRecord {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut sampler = QSampler::new(m, n, s);
    let (mu, nu) = sampler.draw(&mut rng);
    SampleRecord {
        seed,
        method: "q-branching",
        draw: Draw::Pair(mu, nu),
    }
}

/// Finite hook ratio h((n^m)) / h(lambda + (n^m)) via the closed product
/// form: (1/h(lambda)) prod_i (m+n-i)! (lambda_i+m-i)! /
/// ((m-i)! (lambda_i+m+n-i)!).
pub fn hook_ratio_52(lambda: &Partition, m: u32, n: u32) -> Result<BigRational, MeasureError> {
    if lambda.len() > m as usize {
        return Err(PartitionError::LengthExceeded {
            len: lambda.len(),
            max: m as usize,
        }
        .into());
    }
    let (m, n) = (m as u64, n as u64);
    let mut acc = BigRational::new(BigInt::one(), hook_product(lambda));
    for (i, &li) in lambda.parts().iter().enumerate() {
        let i = i as u64 + 1;
        let li = li as u64;
        acc *= BigRational::new(
            factorial(m + n - i) * factorial(li + m - i),
            factorial(m - i) * factorial(li + m + n - i),
        );
    }
    Ok(acc)
}

/// Limit of the ratio as m, n -> infinity with n/m -> alpha:
/// (1/h(lambda)) (alpha+1)^{-|lambda|}.
pub fn limit_52(lambda: &Partition, alpha: &BigRational) -> TrackedReal {
    let base = alpha + BigRational::one();
    TrackedReal::exact(
        rational_pow(&base, -(lambda.size() as i64))
            / BigRational::from_integer(hook_product(lambda)),
    )
}

/// Finite hook ratio h((n^m)) / h((mu + (n^m)) u nu').
pub fn hook_ratio_53(
    mu: &Partition,
    nu: &Partition,
    m: u32,
    n: u32,
) -> Result<BigRational, MeasureError> {
    if nu.len() > n as usize {
        return Err(PartitionError::LengthExceeded {
            len: nu.len(),
            max: n as usize,
        }
        .into());
    }
    let rect = Partition::rectangle(n, m);
    let shape = union_append(&add_rectangle(mu, n as i64, m)?, &conjugate(nu))?;
    Ok(BigRational::new(
        hook_product(&rect),
        hook_product(&shape),
    ))
}

/// Limit of the joined-shape ratio with n/m -> alpha:
/// (alpha+1)^{-|mu|} (alpha^{-1}+1)^{-|nu|} / (h(mu) h(nu)).
pub fn limit_53(mu: &Partition, nu: &Partition, alpha: &BigRational) -> TrackedReal {
    let a1 = alpha + BigRational::one();
    let ai1 = alpha.recip() + BigRational::one();
    TrackedReal::exact(
        rational_pow(&a1, -(mu.size() as i64)) * rational_pow(&ai1, -(nu.size() as i64))
            / BigRational::from_integer(hook_product(mu) * hook_product(nu)),
    )
}

/// The limit-measure parameters (gamma, delta) = (beta, alpha) /
/// (alpha beta + alpha + beta) for growth rates s/m -> alpha, s/n -> beta.
pub fn limit_parameters(
    alpha: &BigRational,
    beta: &BigRational,
) -> (BigRational, BigRational) {
    let den = alpha * beta + alpha + beta;
    (beta / &den, alpha / &den)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub t: u32,
    pub finite: TrackedReal,
    pub limit: TrackedReal,
    pub abs_error: TrackedReal,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTable {
    pub label: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// True if the abs-error column strictly decreases, certified through
    /// the tracked error bounds.
    pub fn strictly_decreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].abs_error.certainly_less(&w[0].abs_error))
    }
}

/// Tabulates the distance of P_{t,t,t}(lambda) and Q_{t,t,t}(mu, nu) from
/// their limit values along the diagonal m = n = s = t, where the growth
/// rates are alpha = beta = 1 and so gamma = delta = 1/3. The finite
/// normalization uses the Bessel determinant.
pub fn limit_check_54(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ts: &[u32],
) -> Result<Vec<ConvergenceTable>, MeasureError> {
    let precision = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(40));
    let third = BigRational::new(1.into(), 3.into());
    let e_minus = exp_rational(&BigRational::new((-2).into(), 3.into()), &precision);
    let p_limit = e_minus.scale(
        &(rational_pow(&(&third + &third), lambda.size() as i64)
            / BigRational::from_integer(hook_product(lambda).pow(2))),
    );
    let q_limit = e_minus.scale(
        &(rational_pow(&third, (mu.size() + nu.size()) as i64)
            / BigRational::from_integer(
                (hook_product(mu) * hook_product(nu)).pow(2),
            )),
    );
    let mut p_rows = Vec::new();
    let mut q_rows = Vec::new();
    for &t in ts {
        let z = normalization_z_bessel(t, t, t);
        let p_fin = &TrackedReal::exact(weight_p(lambda, t, t, t)) / &z;
        let q_fin = &TrackedReal::exact(weight_q(mu, nu, t, t, t)?) / &z;
        p_rows.push(ConvergenceRow {
            t,
            finite: p_fin.clone(),
            limit: p_limit.clone(),
            abs_error: p_fin.abs_diff(&p_limit),
        });
        q_rows.push(ConvergenceRow {
            t,
            finite: q_fin.clone(),
            limit: q_limit.clone(),
            abs_error: q_fin.abs_diff(&q_limit),
        });
    }
    Ok(vec![
        ConvergenceTable {
            label: format!("P lambda={lambda}"),
            rows: p_rows,
        },
        ConvergenceTable {
            label: format!("Q mu={mu} nu={nu}"),
            rows: q_rows,
        },
    ])
}

/// Measure descriptors used by the sampling front end.
#[derive(Clone, Debug)]
pub enum MeasureKind {
    P { m: u32, n: u32, s: u32 },
    Q { m: u32, n: u32, s: u32 },
    PoissonizedPlancherel { alpha: BigRational },
}

/// A partition measure with its unnormalized weight function and
/// normalization metadata.
#[derive(Clone, Debug)]
pub struct PartitionMeasure {
    pub kind: MeasureKind,
}

impl PartitionMeasure {
    pub fn new(kind: MeasureKind) -> Self {
        PartitionMeasure { kind }
    }

    /// Unnormalized weight of a single partition (P and Poissonized
    /// Plancherel kinds).
    pub fn weight(&self, lambda: &Partition) -> BigRational {
        match &self.kind {
            MeasureKind::P { m, n, s } => weight_p(lambda, *m, *n, *s),
            MeasureKind::PoissonizedPlancherel { alpha } => {
                rational_pow(alpha, lambda.size() as i64)
                    / BigRational::from_integer(hook_product(lambda).pow(2))
            }
            MeasureKind::Q { .. } => panic!("pair measure needs pair_weight"),
        }
    }

    /// Normalization with a rigorous bracket: (lower, upper).
    pub fn normalization_bracket(&self, cutoff: u32) -> (BigRational, BigRational) {
        match &self.kind {
            MeasureKind::P { m, n, s } | MeasureKind::Q { m, n, s } => {
                z_bracket(*m, *n, *s, cutoff)
            }
            MeasureKind::PoissonizedPlancherel { alpha } => {
                // sum alpha^k / k! brackets e^alpha.
                let e = exp_rational(
                    alpha,
                    &BigRational::new(BigInt::one(), BigInt::from(10u32).pow(30)),
                );
                (e.lower(), e.upper())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, rational_to_f64};
    use crate::partitions::partitions_of;
    use crate::schur::lr_coefficient;
    use num_traits::Signed;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn weight_p_examples() {
        assert_eq!(weight_p(&Partition::empty(), 1, 1, 0), rat_int(1));
        assert_eq!(weight_p(&p(&[1]), 1, 1, 0), rat_int(1));
        assert_eq!(weight_p(&p(&[2]), 1, 1, 0), rat(1, 4));
        // Beyond m+n rows the measure vanishes by convention.
        assert_eq!(weight_p(&p(&[1, 1, 1]), 1, 1, 0), rat_int(0));
    }

    #[test]
    fn weight_q_examples() {
        // Values fixed by the branching identity oracle below.
        assert_eq!(weight_q(&Partition::empty(), &Partition::empty(), 1, 1, 0).unwrap(), rat_int(1));
        assert_eq!(weight_q(&p(&[1]), &Partition::empty(), 1, 1, 0).unwrap(), rat(1, 2));
        assert_eq!(weight_q(&Partition::empty(), &p(&[1]), 1, 1, 0).unwrap(), rat(1, 2));
    }

    #[test]
    fn branching_q_consistency_exact() {
        // sum_lambda P-weight * c * dim dim / dim = Q-weight, exactly.
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
                                acc += weight_p(&lambda, m, n, s)
                                    * BigRational::new(
                                        BigInt::from(c) * dims,
                                        schur_dimension(&lambda, m + n).unwrap(),
                                    );
                            }
                            assert_eq!(
                                acc,
                                weight_q(&mu, &nu, m, n, s).unwrap(),
                                "mu={mu} nu={nu} m={m} n={n} s={s}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plancherel_hook_identity() {
        // sum over |lambda| = k of 1/h^2 = 1/k!, the tail-bound key.
        for k in 0..=8u32 {
            let mut acc = BigRational::zero();
            for lambda in partitions_of(k, k.max(1)) {
                acc += BigRational::new(BigInt::one(), hook_product(&lambda).pow(2));
            }
            assert_eq!(acc, BigRational::new(BigInt::one(), factorial(k as u64)));
        }
    }

    #[test]
    fn z_truncated_examples() {
        // m+n = 1, s = 0: partial sums of sum 1/(k!)^2 -> I_0(2).
        let (partial, tail) = normalization_z_truncated(1, 0, 0, 20);
        assert!(rational_to_f64(&tail) < 1e-18);
        assert!((rational_to_f64(&partial) - 2.2795853023360673).abs() < 1e-12);
        // Cutoff 0 keeps only the empty partition; the tail bound must
        // cover sum_{k>0} 1/k! = e - 1.
        let (partial, tail) = normalization_z_truncated(1, 1, 0, 0);
        assert_eq!(partial, rat_int(1));
        assert!(rational_to_f64(&tail) >= std::f64::consts::E - 1.0);
        assert!(rational_to_f64(&tail) <= 2.0);
        // Small cutoff matches direct enumeration.
        let (partial, _) = normalization_z_truncated(1, 1, 1, 2);
        let mut expect = BigRational::zero();
        for lambda in enumerate_partitions(2, 2) {
            expect += weight_p(&lambda, 1, 1, 1);
        }
        assert_eq!(partial, expect);
    }

    #[test]
    fn z_bessel_examples() {
        let z = normalization_z_bessel(1, 0, 0);
        assert!((z.value_f64() - 2.2795853023360673).abs() < 1e-12);
        let z = normalization_z_bessel(1, 0, 1);
        assert!((z.value_f64() - 1.5906368546373291).abs() < 1e-12);
        // 2x2 case: I_0(2)^2 - I_1(2)^2.
        let z = normalization_z_bessel(1, 1, 0);
        assert!((z.value_f64() - 2.66638354729609).abs() < 1e-10);
    }

    #[test]
    fn z_bracket_contains_bessel_value() {
        for (m, n, s) in [(1u32, 0u32, 0u32), (1, 1, 0), (1, 1, 2), (2, 2, 1), (2, 1, 2)] {
            let (lo, hi) = z_bracket(m, n, s, 30);
            let z = normalization_z_bessel(m, n, s);
            assert!(
                z.upper() >= lo && z.lower() <= hi,
                "bracket [{lo}, {hi}] misses {z} at m={m} n={n} s={s}"
            );
        }
    }

    #[test]
    fn rsk_shapes() {
        assert_eq!(rsk_shape(&[]), Partition::empty());
        assert_eq!(rsk_shape(&[1, 2, 3]), p(&[3]));
        assert_eq!(rsk_shape(&[3, 2, 1]), p(&[1, 1, 1]));
        assert_eq!(rsk_shape(&[2, 1, 3]), p(&[2, 1]));
        // Shape size always equals the permutation length.
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for n in 0..8u64 {
            let mut perm: Vec<u64> = (1..=n).collect();
            perm.shuffle(&mut rng);
            assert_eq!(rsk_shape(&perm).size(), n);
        }
    }

    #[test]
    fn plancherel_alpha_zero_always_empty() {
        for seed in 0..20 {
            let rec = sample_poissonized_plancherel(&rat_int(0), seed);
            match rec.draw {
                Draw::One(ref lam) => assert!(lam.is_empty()),
                _ => panic!("wrong draw kind"),
            }
        }
    }

    #[test]
    fn sampler_determinism() {
        for seed in [0u64, 7, 991] {
            let a = sample_p(2, 1, 1, seed);
            let b = sample_p(2, 1, 1, seed);
            match (&a.draw, &b.draw) {
                (Draw::One(x), Draw::One(y)) => assert_eq!(x, y),
                _ => panic!("wrong draw kind"),
            }
            let a = sample_q_branching(1, 1, 0, seed);
            let b = sample_q_branching(1, 1, 0, seed);
            match (&a.draw, &b.draw) {
                (Draw::Pair(x1, x2), Draw::Pair(y1, y2)) => {
                    assert_eq!((x1, x2), (y1, y2));
                }
                _ => panic!("wrong draw kind"),
            }
        }
    }

    #[test]
    fn p_sampler_support_is_bounded() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let mut sampler = PSampler::new(1, 1, 0);
        for _ in 0..2_000 {
            let lam = sampler.draw(&mut rng);
            assert!(lam.len() <= 2);
        }
    }

    #[test]
    fn p_sampler_tail_growth_path() {
        // A tiny cutoff forces tail redraws, exercising the growth path.
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let mut sampler = PSampler::with_cutoff(1, 1, 0, 0);
        let mut grew = false;
        for _ in 0..500 {
            let lam = sampler.draw(&mut rng);
            assert!(lam.len() <= 2);
            if sampler.cutoff > 0 {
                grew = true;
            }
        }
        assert!(grew, "cutoff-0 sampler should have grown its table");
    }

    #[test]
    fn hook_ratio_52_examples() {
        assert_eq!(hook_ratio_52(&p(&[1]), 2, 2).unwrap(), rat(1, 2));
        assert_eq!(
            limit_52(&p(&[1]), &rat_int(1)).value(),
            &rat(1, 2)
        );
        assert_eq!(hook_ratio_52(&Partition::empty(), 5, 7).unwrap(), rat_int(1));
        assert!(hook_ratio_52(&p(&[1, 1, 1]), 2, 2).is_err());
        // Closed product form agrees with the direct hook quotient.
        for (m, n) in [(3u32, 2u32), (4, 4), (5, 3)] {
            for lambda in enumerate_partitions(4, m) {
                let direct = BigRational::new(
                    hook_product(&Partition::rectangle(n, m)),
                    hook_product(&add_rectangle(&lambda, n as i64, m).unwrap()),
                );
                assert_eq!(hook_ratio_52(&lambda, m, n).unwrap(), direct);
            }
        }
    }

    #[test]
    fn hook_ratio_53_examples() {
        assert_eq!(
            hook_ratio_53(&Partition::empty(), &Partition::empty(), 3, 4).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            limit_53(&Partition::empty(), &Partition::empty(), &rat_int(1)).value(),
            &rat_int(1)
        );
        // With nu empty the joined ratio degenerates to the rectangle one.
        for (m, n) in [(2u32, 2u32), (4, 3)] {
            assert_eq!(
                hook_ratio_53(&p(&[1]), &Partition::empty(), m, n).unwrap(),
                hook_ratio_52(&p(&[1]), m, n).unwrap()
            );
        }
        // Error to the limit shrinks with size.
        let lim = limit_53(&p(&[1]), &p(&[1]), &rat_int(1));
        let err = |t: u32| {
            (hook_ratio_53(&p(&[1]), &p(&[1]), t, t).unwrap() - lim.value()).abs()
        };
        assert!(err(64) < err(16));
    }

    #[test]
    fn limit_parameters_examples() {
        assert_eq!(
            limit_parameters(&rat_int(1), &rat_int(1)),
            (rat(1, 3), rat(1, 3))
        );
        assert_eq!(
            limit_parameters(&rat_int(2), &rat_int(2)),
            (rat(1, 4), rat(1, 4))
        );
        assert_eq!(
            limit_parameters(&rat_int(1), &rat_int(2)),
            (rat(2, 5), rat(1, 5))
        );
    }

    #[test]
    fn limit_check_small_diagonal() {
        let tables = limit_check_54(
            &p(&[1]),
            &p(&[1]),
            &Partition::empty(),
            &[2, 4],
        )
        .unwrap();
        assert_eq!(tables.len(), 2);
        // Errors already shrink from t=2 to t=4.
        for table in &tables {
            assert!(table.strictly_decreasing(), "{}", table.label);
        }
        // Target values: e^{-2/3} (2/3) for P at (1); e^{-2/3}/3 for Q.
        let p_target = tables[0].rows[0].limit.value_f64();
        assert!((p_target - 0.513417119 * 2.0 / 3.0).abs() < 1e-6);
        let q_target = tables[1].rows[0].limit.value_f64();
        assert!((q_target - 0.513417119 / 3.0).abs() < 1e-6);
    }
}
