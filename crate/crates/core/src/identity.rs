//! Coefficient-level verification of the two-block power series identity,
//! its Schur-weight form, and the supporting determinant/integration
//! lemmas on finite measure spaces.
//!
//! Verification works per exponent vector: for each k the right side's
//! cross product prod (z_i - z_j) is expanded into signed shifts, making
//! every coefficient a finite exact sum. Integer s uses big rationals with
//! the 1/Gamma(nonpositive) = 0 convention; symbolic s works with rational
//! functions after normalizing by prod Gamma(k_i - s + 1), which leaves a
//! genuine rational function with no gamma factors behind.

use crate::exact::{
    det_rational, factorial, gamma_ratio, reciprocal_gamma_int, PolyS, RatFunS,
};
use crate::partitions::{
    add_rectangle, hook_product, join_shape, partitions_of, vandermonde, Partition,
    PartitionError,
};
use crate::schur::{lr_coefficient, schur_dimension, SchurError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("the two closed forms of the pair weight disagree at mu={mu} nu={nu} (s={s}, m={m}, n={n}): {join_form} vs {product_form}")]
    WeightFormMismatch {
        mu: Partition,
        nu: Partition,
        s: u64,
        m: u32,
        n: u32,
        join_form: String,
        product_form: String,
    },
    #[error("singular denominator: k_i + l_j - s + 1 = 0 at i={i}, j={j}")]
    SingularDenominator { i: usize, j: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("exponent vectors must be strictly decreasing")]
    NotStrictlyDecreasing,
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// The spectral parameter: a concrete integer or the formal variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SParam {
    Integer(i64),
    Symbolic,
}

impl std::fmt::Display for SParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SParam::Integer(v) => write!(f, "{v}"),
            SParam::Symbolic => write!(f, "sym"),
        }
    }
}

/// A series coefficient: an exact rational for integer s, or a rational
/// function of s in symbolic mode. The two paths agree after multiplying
/// the integer value by the corresponding gamma product (tested).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientValue {
    Exact(BigRational),
    Symbolic(RatFunS),
}

impl std::fmt::Display for CoefficientValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientValue::Exact(v) => write!(f, "{v}"),
            CoefficientValue::Symbolic(v) => write!(f, "{v}"),
        }
    }
}

/// Expansion of prod_{i<=m, j>=m+1} (z_i - z_j) into signed exponent
/// shifts; 2^{mn} terms, computed once per (m, n) and cached.
fn cross_expansion(m: u32, n: u32) -> Arc<Vec<(i8, Vec<u32>)>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Vec<(i8, Vec<u32>)>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(m, n)) {
        return hit.clone();
    }
    let pairs: Vec<(usize, usize)> = (0..m as usize)
        .flat_map(|i| (0..n as usize).map(move |j| (i, m as usize + j)))
        .collect();
    let mut terms = Vec::with_capacity(1usize << pairs.len());
    for mask in 0u32..(1 << pairs.len()) {
        let mut e = vec![0u32; (m + n) as usize];
        let mut sign = 1i8;
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 0 {
                e[i] += 1;
            } else {
                e[j] += 1;
                sign = -sign;
            }
        }
        terms.push((sign, e));
    }
    let arc = Arc::new(terms);
    cache.lock().unwrap().insert((m, n), arc.clone());
    arc
}

fn vandermonde_u(k: &[u64]) -> BigInt {
    let ki: Vec<i64> = k.iter().map(|&x| x as i64).collect();
    vandermonde(&ki)
}

/// Left-side coefficient of z^k: Delta(k) / prod_i k_i! Gamma(k_i - s + 1).
/// In symbolic mode the value is normalized by prod Gamma(k_i - s + 1),
/// so the returned rational function is the constant Delta(k) / prod k_i!.
pub fn lhs_coefficient(k: &[u64], s: &SParam) -> CoefficientValue {
    let delta = vandermonde_u(k);
    let mut kfact = BigInt::one();
    for &ki in k {
        kfact *= factorial(ki);
    }
    let base = BigRational::new(delta, kfact);
    match s {
        SParam::Symbolic => CoefficientValue::Symbolic(RatFunS::constant(base)),
        SParam::Integer(s0) => {
            let mut v = base;
            for &ki in k {
                v *= reciprocal_gamma_int(ki, *s0);
            }
            CoefficientValue::Exact(v)
        }
    }
}

/// Right-side coefficient of z^k for block sizes (m, n): the cross product
/// is expanded into signed shifts e, and each surviving l = k - e
/// contributes Delta(l_1) Delta(l_2) / (prod l_i! Gamma(l_i - s + 1)
/// prod_{i,j} (l_i + l_{m+j} - s + 1)). Symbolic mode carries the same
/// Gamma normalization as the left side.
pub fn rhs_coefficient(k: &[u64], m: u32, n: u32, s: &SParam) -> CoefficientValue {
    assert_eq!(k.len(), (m + n) as usize, "k must have m + n entries");
    let terms = cross_expansion(m, n);
    match s {
        SParam::Integer(s0) => {
            let mut acc = BigRational::zero();
            'term: for (sign, e) in terms.iter() {
                let mut l = Vec::with_capacity(k.len());
                for (ki, ei) in k.iter().zip(e) {
                    let Some(li) = ki.checked_sub(*ei as u64) else {
                        continue 'term;
                    };
                    l.push(li);
                }
                // Support restriction from 1/Gamma: all l_i >= s, which
                // also keeps every pair denominator positive.
                if *s0 >= 0 && l.iter().any(|&li| (li as i64) < *s0) {
                    continue;
                }
                let mut w = BigRational::new(
                    vandermonde_u(&l[..m as usize]) * vandermonde_u(&l[m as usize..]),
                    BigInt::one(),
                );
                if w.is_zero() {
                    continue;
                }
                for &li in &l {
                    w /= BigRational::from_integer(factorial(li));
                    w *= reciprocal_gamma_int(li, *s0);
                }
                for i in 0..m as usize {
                    for j in 0..n as usize {
                        let d = l[i] as i64 + l[m as usize + j] as i64 - s0 + 1;
                        w /= BigRational::from_integer(BigInt::from(d));
                    }
                }
                if *sign < 0 {
                    acc -= w;
                } else {
                    acc += w;
                }
            }
            CoefficientValue::Exact(acc)
        }
        SParam::Symbolic => {
            let mut acc = RatFunS::zero();
            'term: for (sign, e) in terms.iter() {
                let mut l = Vec::with_capacity(k.len());
                for (ki, ei) in k.iter().zip(e) {
                    let Some(li) = ki.checked_sub(*ei as u64) else {
                        continue 'term;
                    };
                    l.push(li);
                }
                let delta = vandermonde_u(&l[..m as usize]) * vandermonde_u(&l[m as usize..]);
                if delta.is_zero() {
                    continue;
                }
                let mut lfact = BigInt::one();
                for &li in &l {
                    lfact *= factorial(li);
                }
                let mut w = RatFunS::constant(BigRational::new(delta, lfact));
                // Gamma(k_i - s + 1) / Gamma(l_i - s + 1), a polynomial
                // since l = k - e <= k componentwise.
                for (&ki, &li) in k.iter().zip(&l) {
                    w = &w * &gamma_ratio(ki, li);
                }
                let mut den = PolyS::one();
                for i in 0..m as usize {
                    for j in 0..n as usize {
                        let c = l[i] as i64 + l[m as usize + j] as i64 + 1;
                        den = &den
                            * &PolyS::linear(
                                BigRational::from_integer(c.into()),
                                -BigRational::one(),
                            );
                    }
                }
                w = &w * &RatFunS::new(PolyS::one(), den);
                if *sign < 0 {
                    acc = &acc - &w;
                } else {
                    acc = &acc + &w;
                }
            }
            CoefficientValue::Symbolic(acc)
        }
    }
}

/// One failed comparison inside a verification run.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    /// The exponent vector or pair of partitions that failed.
    pub index: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an exhaustive coefficient comparison. The failure list is
/// empty exactly when the verdict is PASS. Elapsed time is kept for
/// logging but excluded from serialized reports so identical runs emit
/// byte-identical documents.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub m: u32,
    pub n: u32,
    pub s: String,
    /// Total-degree bound (theorem) or weight bound (corollary).
    pub bound: u32,
    pub checked: u64,
    pub verdict: String,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `work` over `items` on `threads` workers, preserving item order in
/// the concatenated output.
fn run_chunked<T, R, F>(items: Vec<T>, threads: usize, work: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 {
        return items.iter().filter_map(&work).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let mut out = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().filter_map(&work).collect::<Vec<R>>()))
            .collect();
        for h in handles {
            out.extend(h.join().expect("verification worker panicked"));
        }
    });
    out
}

/// All exponent vectors of length d with total degree <= bound.
fn exponent_vectors(d: usize, bound: u32) -> Vec<Vec<u64>> {
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
    rec(0, bound, &mut cur, &mut out);
    out
}

/// Verifies the power series identity coefficient by coefficient for every
/// k with total degree <= degree, exactly.
pub fn verify_theorem1(m: u32, n: u32, s: SParam, degree: u32, threads: usize) -> VerificationReport {
    let start = Instant::now();
    let ks = exponent_vectors((m + n) as usize, degree);
    let checked = ks.len() as u64;
    let failures = run_chunked(ks, threads, |k| {
        let lhs = lhs_coefficient(k, &s);
        let rhs = rhs_coefficient(k, m, n, &s);
        if lhs == rhs {
            None
        } else {
            Some(Failure {
                index: format!("{k:?}"),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        }
    });
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    VerificationReport {
        check: "theorem1".into(),
        m,
        n,
        s: s.to_string(),
        bound: degree,
        checked,
        verdict: verdict.into(),
        failures,
        elapsed: start.elapsed(),
    }
}

/// The diagonal weight a_s(lambda) = 1 / (h(lambda) h(lambda + (s^{m+n}))).
pub fn weight_a(lambda: &Partition, s: u64, m: u32, n: u32) -> Result<BigRational, IdentityError> {
    let padded = add_rectangle(lambda, s as i64, m + n)?;
    Ok(BigRational::new(
        BigInt::one(),
        hook_product(lambda) * hook_product(&padded),
    ))
}

fn weight_b_join_form(
    mu: &Partition,
    nu: &Partition,
    s: u64,
    m: u32,
    n: u32,
) -> Result<BigRational, IdentityError> {
    let rect = Partition::rectangle(n, m);
    let nu_shift = add_rectangle(nu, s as i64, n)?;
    let joined = join_shape(mu, nu, m, n, s)?;
    Ok(BigRational::new(
        hook_product(&rect),
        hook_product(mu) * hook_product(&nu_shift) * hook_product(&joined),
    ))
}

fn weight_b_product_form(
    mu: &Partition,
    nu: &Partition,
    s: u64,
    m: u32,
    n: u32,
) -> Result<BigRational, IdentityError> {
    if mu.len() > m as usize {
        return Err(PartitionError::LengthExceeded {
            len: mu.len(),
            max: m as usize,
        }
        .into());
    }
    let mu_shift = add_rectangle(mu, s as i64, m)?;
    let nu_shift = add_rectangle(nu, s as i64, n)?;
    let mut acc = BigRational::new(
        BigInt::one(),
        hook_product(mu) * hook_product(nu) * hook_product(&mu_shift) * hook_product(&nu_shift),
    );
    for i in 1..=m as i64 {
        for j in 1..=n as i64 {
            let num = m as i64 + n as i64 - i - j + 1;
            let den = mu.part(i as usize - 1) as i64
                + nu.part(j as usize - 1) as i64
                + m as i64
                + n as i64
                - i
                - j
                + s as i64
                + 1;
            acc *= BigRational::new(num.into(), den.into());
        }
    }
    Ok(acc)
}

/// The pair weight b_s(mu, nu), computed by BOTH closed forms — the
/// joined-shape hook quotient and the explicit double product — which must
/// agree; a mismatch signals an implementation bug.
pub fn weight_b(
    mu: &Partition,
    nu: &Partition,
    s: u64,
    m: u32,
    n: u32,
) -> Result<BigRational, IdentityError> {
    let join = weight_b_join_form(mu, nu, s, m, n)?;
    let prod = weight_b_product_form(mu, nu, s, m, n)?;
    if join != prod {
        return Err(IdentityError::WeightFormMismatch {
            mu: mu.clone(),
            nu: nu.clone(),
            s,
            m,
            n,
            join_form: join.to_string(),
            product_form: prod.to_string(),
        });
    }
    Ok(join)
}

/// Verifies the Schur-weight identity: for every (mu, nu) with
/// |mu| + |nu| <= weight,
///   sum_lambda a_s(lambda) c^lambda_{mu nu} / dim(lambda, m+n)
///     = b_s(mu, nu) / (dim(mu, m) dim(nu, n)),
/// where the sum runs over |lambda| = |mu| + |nu| with at most m+n rows
/// (homogeneity makes each check a finite sum).
pub fn verify_corollary(m: u32, n: u32, s: u64, weight: u32, threads: usize) -> VerificationReport {
    let start = Instant::now();
    let mut pairs = Vec::new();
    for w in 0..=weight {
        for a in 0..=w {
            for mu in partitions_of(a, m) {
                for nu in partitions_of(w - a, n) {
                    pairs.push((mu.clone(), nu));
                }
            }
        }
    }
    let checked = pairs.len() as u64;
    let failures = run_chunked(pairs, threads, |(mu, nu)| {
        let total_size = (mu.size() + nu.size()) as u32;
        let mut lhs = BigRational::zero();
        for lambda in partitions_of(total_size, m + n) {
            let c = lr_coefficient(&lambda, mu, nu);
            if c == 0 {
                continue;
            }
            let a = weight_a(&lambda, s, m, n).expect("length bound enforced by enumeration");
            let dim = schur_dimension(&lambda, m + n).expect("length bound");
            lhs += a * BigRational::new(c.into(), dim);
        }
        let b = match weight_b(mu, nu, s, m, n) {
            Ok(v) => v,
            Err(e) => {
                return Some(Failure {
                    index: format!("mu={mu} nu={nu}"),
                    lhs: lhs.to_string(),
                    rhs: format!("error: {e}"),
                })
            }
        };
        let dim_mu = schur_dimension(mu, m).expect("length bound");
        let dim_nu = schur_dimension(nu, n).expect("length bound");
        let rhs = b / BigRational::from_integer(dim_mu * dim_nu);
        if lhs == rhs {
            None
        } else {
            Some(Failure {
                index: format!("mu={mu} nu={nu}"),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        }
    });
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    VerificationReport {
        check: "corollary".into(),
        m,
        n,
        s: s.to_string(),
        bound: weight,
        checked,
        verdict: verdict.into(),
        failures,
        elapsed: start.elapsed(),
    }
}

/// Checks the Cauchy-type determinant identity with power rows: for
/// strictly decreasing k (m entries) and l (n entries), the n x n
/// determinant whose first m rows are 1/(k_i + l_j - s + 1) and last n - m
/// rows are l_j^{i-1} equals
///   (-1)^{m(n-m) + C(n-m, 2)} Delta(k) Delta(l) / prod (k_i + l_j - s + 1).
pub fn cauchy_determinant_check(k: &[u64], l: &[u64], s: i64) -> Result<bool, IdentityError> {
    let m = k.len();
    let n = l.len();
    if m > n {
        return Err(IdentityError::DimensionMismatch(format!(
            "need m <= n, got m={m}, n={n}"
        )));
    }
    if !k.windows(2).all(|w| w[0] > w[1]) || !l.windows(2).all(|w| w[0] > w[1]) {
        return Err(IdentityError::NotStrictlyDecreasing);
    }
    for (i, &ki) in k.iter().enumerate() {
        for (j, &lj) in l.iter().enumerate() {
            if ki as i64 + lj as i64 - s + 1 == 0 {
                return Err(IdentityError::SingularDenominator { i, j });
            }
        }
    }
    let mut mat = Vec::with_capacity(n);
    for i in 0..m {
        mat.push(
            l.iter()
                .map(|&lj| {
                    BigRational::new(BigInt::one(), (k[i] as i64 + lj as i64 - s + 1).into())
                })
                .collect::<Vec<_>>(),
        );
    }
    for p in 0..n - m {
        mat.push(
            l.iter()
                .map(|&lj| BigRational::from_integer(BigInt::from(lj).pow(p as u32)))
                .collect(),
        );
    }
    let det = det_rational(&mat);

    let ki: Vec<i64> = k.iter().map(|&x| x as i64).collect();
    let li: Vec<i64> = l.iter().map(|&x| x as i64).collect();
    let mut closed = BigRational::from_integer(vandermonde(&ki) * vandermonde(&li));
    for &kv in k {
        for &lv in l {
            closed /= BigRational::from_integer((kv as i64 + lv as i64 - s + 1).into());
        }
    }
    let d = n - m;
    if (m * d + d * (d.saturating_sub(1)) / 2) % 2 == 1 {
        closed = -closed;
    }
    Ok(det == closed)
}

/// Checks the extended Andreief/Cauchy-Binet identity on a finite measure
/// space Omega = {1..p} with weights w:
///   sum_{x in Omega^m} det(f_i(x_j)) det(g_i(x_j) | C) prod w(x_j)
///     = m! det(M | C),
/// where M is the n x m moment matrix M[i][j] = sum_x w(x) g_i(x) f_j(x).
/// `f` is m x p, `g` is n x p, `c` is n x (n - m).
pub fn andreief_check(
    f: &[Vec<BigRational>],
    g: &[Vec<BigRational>],
    w: &[BigRational],
    c: &[Vec<BigRational>],
) -> Result<bool, IdentityError> {
    let m = f.len();
    let n = g.len();
    let p = w.len();
    if m > n {
        return Err(IdentityError::DimensionMismatch(format!(
            "need m <= n, got m={m}, n={n}"
        )));
    }
    if f.iter().any(|r| r.len() != p) || g.iter().any(|r| r.len() != p) {
        return Err(IdentityError::DimensionMismatch(
            "f and g must have one column per point of Omega".into(),
        ));
    }
    if c.len() != n || c.iter().any(|r| r.len() != n - m) {
        return Err(IdentityError::DimensionMismatch(format!(
            "C must be {n} x {}",
            n - m
        )));
    }

    // Left side: brute force over Omega^m.
    let mut lhs = BigRational::zero();
    let mut xs = vec![0usize; m];
    loop {
        let fm: Vec<Vec<BigRational>> = (0..m)
            .map(|i| xs.iter().map(|&x| f[i][x].clone()).collect())
            .collect();
        let gm: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = xs.iter().map(|&x| g[i][x].clone()).collect();
                row.extend(c[i].iter().cloned());
                row
            })
            .collect();
        let mut term = det_rational(&fm) * det_rational(&gm);
        for &x in &xs {
            term *= &w[x];
        }
        lhs += term;

        // Next tuple in Omega^m.
        let mut carry = true;
        for slot in xs.iter_mut() {
            if carry {
                *slot += 1;
                if *slot == p {
                    *slot = 0;
                } else {
                    carry = false;
                }
            }
        }
        if carry || m == 0 {
            break;
        }
    }

    // Right side: m! det(moments | C).
    let moments: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..m)
                .map(|j| {
                    (0..p)
                        .map(|x| &w[x] * &g[i][x] * &f[j][x])
                        .sum::<BigRational>()
                })
                .collect();
            row.extend(c[i].iter().cloned());
            row
        })
        .collect();
    let rhs = BigRational::from_integer(factorial(m as u64)) * det_rational(&moments);
    Ok(lhs == rhs)
}

/// Runs `instances` randomized checks of the Cauchy-type determinant
/// identity with strictly decreasing exponents up to 12, block sizes
/// m <= n <= 4 and shifts s in {0, 1, 2}. Singular draws (a vanishing
/// denominator) are resampled.
pub fn bf94_battery(instances: u32, seed: u64) -> VerificationReport {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0u32;
    while done < instances {
        let m = rng.gen_range(1..=4usize);
        let n = rng.gen_range(m..=4usize);
        let s = rng.gen_range(0..=2i64);
        let mut pool: Vec<u64> = (0..=12).collect();
        pool.shuffle(&mut rng);
        let mut k: Vec<u64> = pool[..m].to_vec();
        k.sort_unstable_by(|a, b| b.cmp(a));
        pool.shuffle(&mut rng);
        let mut l: Vec<u64> = pool[..n].to_vec();
        l.sort_unstable_by(|a, b| b.cmp(a));
        match cauchy_determinant_check(&k, &l, s) {
            Ok(true) => {}
            Ok(false) => failures.push(Failure {
                index: format!("k={k:?} l={l:?} s={s}"),
                lhs: "determinant".into(),
                rhs: "closed form".into(),
            }),
            Err(IdentityError::SingularDenominator { .. }) => continue,
            Err(e) => failures.push(Failure {
                index: format!("k={k:?} l={l:?} s={s}"),
                lhs: "error".into(),
                rhs: e.to_string(),
            }),
        }
        done += 1;
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    VerificationReport {
        check: "bf94-determinant".into(),
        m: 4,
        n: 4,
        s: "0..=2".into(),
        bound: instances,
        checked: instances as u64,
        verdict: verdict.into(),
        failures,
        elapsed: start.elapsed(),
    }
}

/// Runs `instances` randomized checks of the extended Andreief identity on
/// finite measure spaces with m <= n <= 3 functions and at most 4 points,
/// with small random integer values and weights.
pub fn andreief_battery(instances: u32, seed: u64) -> VerificationReport {
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for inst in 0..instances {
        let m = rng.gen_range(1..=3usize);
        let n = rng.gen_range(m..=3usize);
        let p = rng.gen_range(1..=4usize);
        let mut small = |lo: i64, hi: i64| -> BigRational {
            BigRational::from_integer(rng.gen_range(lo..=hi).into())
        };
        let f: Vec<Vec<BigRational>> =
            (0..m).map(|_| (0..p).map(|_| small(-9, 9)).collect()).collect();
        let g: Vec<Vec<BigRational>> =
            (0..n).map(|_| (0..p).map(|_| small(-9, 9)).collect()).collect();
        let c: Vec<Vec<BigRational>> = (0..n)
            .map(|_| (0..n - m).map(|_| small(-9, 9)).collect())
            .collect();
        let w: Vec<BigRational> = (0..p).map(|_| small(-5, 5)).collect();
        match andreief_check(&f, &g, &w, &c) {
            Ok(true) => {}
            Ok(false) => failures.push(Failure {
                index: format!("instance {inst}: m={m} n={n} p={p}"),
                lhs: "brute-force integral".into(),
                rhs: "moment determinant".into(),
            }),
            Err(e) => failures.push(Failure {
                index: format!("instance {inst}"),
                lhs: "error".into(),
                rhs: e.to_string(),
            }),
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    VerificationReport {
        check: "andreief".into(),
        m: 3,
        n: 3,
        s: "-".into(),
        bound: instances,
        checked: instances as u64,
        verdict: verdict.into(),
        failures,
        elapsed: start.elapsed(),
    }
}

/// Evaluates a symbolic coefficient at an integer point and compares with
/// the direct integer-s computation after removing the gamma
/// normalization; used by the integer/symbolic agreement tests.
pub fn symbolic_matches_integer(k: &[u64], m: u32, n: u32, s0: i64) -> bool {
    if k.iter().any(|&ki| (ki as i64) < s0) {
        // The gamma product has a pole; agreement is only claimed away
        // from poles.
        return true;
    }
    let CoefficientValue::Symbolic(sym) = rhs_coefficient(k, m, n, &SParam::Symbolic) else {
        unreachable!()
    };
    let CoefficientValue::Exact(direct) = rhs_coefficient(k, m, n, &SParam::Integer(s0)) else {
        unreachable!()
    };
    let mut gamma_prod = BigRational::one();
    for &ki in k {
        gamma_prod *= BigRational::from_integer(factorial((ki as i64 - s0) as u64));
    }
    match sym.eval(&BigRational::from_integer(s0.into())) {
        Ok(v) => v == direct * gamma_prod,
        Err(_) => false,
    }
}

/// Re-indexing check used in the proof's reduction step: at s = 0, the
/// (m, n) coefficient family restricted to k_{m+n} = 0 equals the
/// (m, n-1) family at s = 1 on the remaining entries.
pub fn reduction_step_holds(m: u32, n: u32, degree: u32) -> bool {
    assert!(n >= 2);
    for kt in exponent_vectors((m + n - 1) as usize, degree) {
        let mut k = kt.clone();
        k.push(0);
        let full = rhs_coefficient(&k, m, n, &SParam::Integer(0));
        let reduced = rhs_coefficient(&kt, m, n - 1, &SParam::Integer(1));
        if full != reduced {
            return false;
        }
        let full_l = lhs_coefficient(&k, &SParam::Integer(0));
        let reduced_l = lhs_coefficient(&kt, &SParam::Integer(1));
        if full_l != reduced_l {
            return false;
        }
    }
    true
}
