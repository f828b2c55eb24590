//! Haar-unitary Monte Carlo: Ginibre + QR sampling and sample means of the
//! two unitary-integral integrands. Machine precision is used here because
//! the Monte Carlo error dominates any floating rounding by many orders.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

/// A small dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    a: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let mut m = CMatrix::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        CMatrix {
            n,
            a: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose; equals the inverse for unitary matrices.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Determinant by partially pivoted LU.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        let mut m = self.a.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..n {
            let pivot = (c..n)
                .max_by(|&r1, &r2| {
                    m[r1 * n + c]
                        .norm_sqr()
                        .partial_cmp(&m[r2 * n + c].norm_sqr())
                        .unwrap()
                })
                .unwrap();
            if m[pivot * n + c].norm_sqr() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != c {
                for j in 0..n {
                    m.swap(c * n + j, pivot * n + j);
                }
                det = -det;
            }
            det *= m[c * n + c];
            for r in c + 1..n {
                let f = m[r * n + c] / m[c * n + c];
                for j in c..n {
                    let v = m[c * n + j];
                    m[r * n + j] -= f * v;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.a[i * self.n + j]
    }
}

/// A Haar-distributed unitary matrix.
#[derive(Clone, Debug)]
pub struct UnitaryMatrix(pub CMatrix);

impl UnitaryMatrix {
    /// Max-norm deviation of U*U from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.0.dim();
        let p = self.0.adjoint().mul(&self.0);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Draws a Haar-unitary matrix: fill with independent standard complex
/// Gaussians and orthonormalize the columns by modified Gram-Schmidt. The
/// triangular factor's diagonal is real positive by construction, which is
/// the normalization that makes the law exactly Haar.
pub fn haar_sample<R: Rng>(n: usize, rng: &mut R) -> UnitaryMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        // Two orthogonalization passes keep the defect near machine eps.
        for _pass in 0..2 {
            for k in 0..j {
                let proj: Complex64 = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .map(|(qk, vj)| qk.conj() * vj)
                    .sum();
                for i in 0..n {
                    let correction = proj * cols[k][i];
                    cols[j][i] -= correction;
                }
            }
        }
        let norm: f64 = cols[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut u = CMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            u[(i, j)] = col[i];
        }
    }
    UnitaryMatrix(u)
}

/// A Monte Carlo sample mean with its standard error.
#[derive(Clone, Debug, Serialize)]
pub struct MCEstimate {
    pub mean_re: f64,
    pub mean_im: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    pub fn mean(&self) -> Complex64 {
        Complex64::new(self.mean_re, self.mean_im)
    }

    /// |estimate - reference| in units of the standard error.
    pub fn deviation_sigmas(&self, reference: f64) -> f64 {
        (self.mean() - Complex64::new(reference, 0.0)).norm() / self.std_error
    }
}

/// Runs `samples` evaluations of `integrand` across `threads` worker
/// streams (stream w is seeded with seed XOR w) and merges the partial
/// sums in worker order, so a given (seed, threads) pair is reproducible.
fn mc_mean<F>(samples: u64, seed: u64, threads: usize, integrand: F) -> MCEstimate
where
    F: Fn(&mut ChaCha12Rng) -> Complex64 + Sync,
{
    let threads = threads.max(1).min(samples.max(1) as usize);
    let per = samples / threads as u64;
    let extra = samples % threads as u64;
    let mut partials: Vec<(Complex64, f64)> = Vec::with_capacity(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let count = per + if (w as u64) < extra { 1 } else { 0 };
                let integrand = &integrand;
                scope.spawn(move || {
                    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ w as u64);
                    let mut sum = Complex64::new(0.0, 0.0);
                    let mut sumsq = 0.0f64;
                    for _ in 0..count {
                        let v = integrand(&mut rng);
                        sum += v;
                        sumsq += v.norm_sqr();
                    }
                    (sum, sumsq)
                })
            })
            .collect();
        for h in handles {
            partials.push(h.join().expect("Monte Carlo worker panicked"));
        }
    });
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sumsq = 0.0;
    for (s, s2) in partials {
        sum += s;
        sumsq += s2;
    }
    let nf = samples as f64;
    let mean = sum / nf;
    let variance = ((sumsq - nf * mean.norm_sqr()) / (nf - 1.0)).max(0.0);
    MCEstimate {
        mean_re: mean.re,
        mean_im: mean.im,
        std_error: (variance / nf).sqrt(),
        samples,
        seed,
    }
}

/// Sample mean of det(AU)^s exp(tr(AU + B U^{-1})) over Haar draws.
pub fn mc_integral_g(
    a: &CMatrix,
    b: &CMatrix,
    s: u32,
    samples: u64,
    seed: u64,
    threads: usize,
) -> MCEstimate {
    assert_eq!(a.dim(), b.dim(), "A and B must have equal size");
    let n = a.dim();
    mc_mean(samples, seed, threads, |rng| {
        let u = haar_sample(n, rng).0;
        let au = a.mul(&u);
        let bu_inv = b.mul(&u.adjoint());
        let mut v = (au.trace() + bu_inv.trace()).exp();
        if s > 0 {
            v *= au.det().powu(s);
        }
        v
    })
}

/// Sample mean of det(UAVB)^s exp(tr(UAVB + U^{-1} C V^{-1} D)) over
/// independent Haar pairs (U, V).
#[allow(clippy::too_many_arguments)]
pub fn mc_integral_k(
    a: &CMatrix,
    b: &CMatrix,
    c: &CMatrix,
    d: &CMatrix,
    s: u32,
    samples: u64,
    seed: u64,
    threads: usize,
) -> MCEstimate {
    let n = a.dim();
    assert!(b.dim() == n && c.dim() == n && d.dim() == n);
    mc_mean(samples, seed, threads, |rng| {
        let u = haar_sample(n, rng).0;
        let v = haar_sample(n, rng).0;
        let uavb = u.mul(&a.mul(&v.mul(b)));
        let back = u.adjoint().mul(&c.mul(&v.adjoint().mul(d)));
        let mut val = (uavb.trace() + back.trace()).exp();
        if s > 0 {
            val *= uavb.det().powu(s);
        }
        val
    })
}
