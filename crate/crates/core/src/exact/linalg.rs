//! Exact determinants by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss elimination.
/// Intermediate entries stay integral; division at each step is exact.
pub fn det_bigint(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

trait DivExact {
    fn div_exact(&self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "Bareiss division must be exact");
        q
    }
}

/// Determinant of a square rational matrix: each row is scaled to integers,
/// the integer determinant is computed by Bareiss, and the scaling is
/// divided back out.
pub fn det_rational(mat: &[Vec<BigRational>]) -> BigRational {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let int_mat: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for e in row {
                lcm = lcm.lcm(e.denom());
            }
            scale *= &lcm;
            row.iter()
                .map(|e| e.numer() * (&lcm / e.denom()))
                .collect()
        })
        .collect();
    BigRational::new(det_bigint(&int_mat), scale)
}
