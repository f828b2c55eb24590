//! Partitions and Young-diagram combinatorics: hook products, the shift
//! k_i = lambda_i + n - i, rectangle addition, union/append, conjugation,
//! graded-lex enumeration and Vandermonde products of exponent vectors.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// A multi-index of series exponents k = (k_1, ..., k_d). Entries are
/// nonnegative but not necessarily monotone.
pub type ExponentVector = Vec<u64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition has {len} parts but at most {max} are allowed here")]
    LengthExceeded { len: usize, max: usize },
    #[error("partition does not contain the rectangle ({side}^{rows})")]
    ContainmentViolated { side: u64, rows: usize },
    #[error("cannot append: first part {first} exceeds last part {last}")]
    AppendOrderViolated { first: u32, last: u32 },
}

/// A partition: weakly decreasing positive parts, trailing zeros never
/// stored. The empty list is the empty partition, so equality of values is
/// equality of partitions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Creates a partition, stripping trailing zeros.
    ///
    /// # Panics
    ///
    /// Panics if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part (0-based), 0 beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// The rectangle (width^rows).
    pub fn rectangle(width: u32, rows: u32) -> Self {
        if width == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![width; rows as usize],
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Report form: `[7,6,2,2,1,1]`, with `[]` for the empty partition.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Transpose of the Young diagram; an involution.
pub fn conjugate(lambda: &Partition) -> Partition {
    let parts = lambda.parts();
    if parts.is_empty() {
        return Partition::empty();
    }
    let cols = parts[0] as usize;
    let mut out = Vec::with_capacity(cols);
    for j in 0..cols {
        out.push(parts.iter().take_while(|&&p| p as usize > j).count() as u32);
    }
    Partition { parts: out }
}

/// Product of all hook lengths, computed from arm and leg counts. The
/// factorial/Vandermonde form is kept as an independent cross-check in
/// tests.
pub fn hook_product(lambda: &Partition) -> BigInt {
    let conj = conjugate(lambda);
    let mut acc = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as u64 - 1 - j as u64;
            let leg = conj.part(j) as u64 - 1 - i as u64;
            acc *= arm + leg + 1;
        }
    }
    acc
}

/// The strictly decreasing shift (lambda_1 + n - 1, ..., lambda_n + 0).
pub fn shifted_parts(lambda: &Partition, n: u32) -> Result<ExponentVector, PartitionError> {
    if lambda.len() > n as usize {
        return Err(PartitionError::LengthExceeded {
            len: lambda.len(),
            max: n as usize,
        });
    }
    Ok((0..n as usize)
        .map(|i| lambda.part(i) as u64 + (n as u64 - 1 - i as u64))
        .collect())
}

/// Adds the rectangle (s^m) to the first m rows: (lambda_1 + s, ...,
/// lambda_m + s). For s < 0 this removes a rectangle, which requires lambda
/// to contain ((-s)^m).
pub fn add_rectangle(lambda: &Partition, s: i64, m: u32) -> Result<Partition, PartitionError> {
    if lambda.len() > m as usize {
        return Err(PartitionError::LengthExceeded {
            len: lambda.len(),
            max: m as usize,
        });
    }
    if s < 0 {
        let need = (-s) as u64;
        if (0..m as usize).any(|i| (lambda.part(i) as u64) < need) {
            return Err(PartitionError::ContainmentViolated {
                side: need,
                rows: m as usize,
            });
        }
    }
    let mut parts = Vec::with_capacity(m as usize);
    for i in 0..m as usize {
        parts.push((lambda.part(i) as i64 + s) as u32);
    }
    Ok(Partition::new(parts))
}

/// Appends mu to the end of lambda, valid when mu_1 <= last part of lambda.
pub fn union_append(lambda: &Partition, mu: &Partition) -> Result<Partition, PartitionError> {
    if mu.is_empty() {
        return Ok(lambda.clone());
    }
    if !lambda.is_empty() && mu.part(0) > *lambda.parts().last().unwrap() {
        return Err(PartitionError::AppendOrderViolated {
            first: mu.part(0),
            last: *lambda.parts().last().unwrap(),
        });
    }
    let mut parts = lambda.parts().to_vec();
    parts.extend_from_slice(mu.parts());
    Ok(Partition { parts })
}

/// The joined shape (mu + (s^m) + (n^m)) union-appended with nu'. Always
/// valid when len(mu) <= m and len(nu) <= n, because the conjugate's first
/// part is len(nu) <= n <= mu_m + s + n.
pub fn join_shape(
    mu: &Partition,
    nu: &Partition,
    m: u32,
    n: u32,
    s: u64,
) -> Result<Partition, PartitionError> {
    if nu.len() > n as usize {
        return Err(PartitionError::LengthExceeded {
            len: nu.len(),
            max: n as usize,
        });
    }
    let base = add_rectangle(&add_rectangle(mu, s as i64, m)?, n as i64, m)?;
    union_append(&base, &conjugate(nu))
}

/// Iterator over all partitions with size <= max_size and length <=
/// max_length, each exactly once, in graded lexicographic order: sizes
/// ascending, and within a size the lexicographically largest first part
/// first ((3), (2,1), (1,1,1)).
pub fn enumerate_partitions(
    max_size: u32,
    max_length: u32,
) -> impl Iterator<Item = Partition> {
    (0..=max_size).flat_map(move |k| partitions_of(k, max_length))
}

/// All partitions of exactly `k` with at most `max_length` parts, in
/// descending lexicographic order.
pub fn partitions_of(k: u32, max_length: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(rem: u32, max_part: u32, max_len: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition {
                parts: cur.clone(),
            });
            return;
        }
        if cur.len() as u32 >= max_len {
            return;
        }
        let hi = rem.min(max_part);
        // Remaining rows can hold at most (max_len - used) * p boxes.
        for p in (1..=hi).rev() {
            let slots = max_len - cur.len() as u32;
            if (slots as u64) * (p as u64) < rem as u64 {
                break;
            }
            cur.push(p);
            rec(rem - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    rec(k, k, max_length, &mut cur, &mut out);
    out
}

/// The Vandermonde product prod_{i<j} (k_i - k_j). Antisymmetric under
/// entry swaps; zero when entries repeat.
pub fn vandermonde(k: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            acc *= k[i] - k[j];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorial;
    use num_rational::BigRational;
    use num_traits::Zero;

    pub(crate) fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn construction_strips_zeros() {
        assert_eq!(p(&[3, 1, 0, 0]), p(&[3, 1]));
        assert!(Partition::new(vec![0, 0]).is_empty());
        assert_eq!(p(&[2, 1]).size(), 3);
        assert_eq!(p(&[2, 1]).to_string(), "[2,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
    }

    #[test]
    #[should_panic(expected = "weakly decreasing")]
    fn construction_rejects_increasing() {
        Partition::new(vec![1, 2]);
    }

    #[test]
    fn hook_product_examples() {
        assert_eq!(hook_product(&Partition::empty()), BigInt::one());
        assert_eq!(hook_product(&p(&[2, 1])), BigInt::from(3));
        // h((k^l)) = C_{k+l} / (C_k C_l); for (2,2) that is 12.
        assert_eq!(hook_product(&p(&[2, 2])), BigInt::from(12));
    }

    #[test]
    fn hook_product_rectangle_superfactorials() {
        use crate::exact::superfactorial;
        for k in 0..=6u32 {
            for l in 0..=6u32 {
                let rect = Partition::rectangle(k, l);
                let expect = superfactorial((k + l) as u64)
                    / (superfactorial(k as u64) * superfactorial(l as u64));
                assert_eq!(hook_product(&rect), expect, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn shifted_parts_examples() {
        assert_eq!(shifted_parts(&Partition::empty(), 3).unwrap(), vec![2, 1, 0]);
        assert_eq!(shifted_parts(&p(&[2, 1]), 2).unwrap(), vec![3, 1]);
        assert_eq!(shifted_parts(&p(&[3, 1]), 2).unwrap(), vec![4, 1]);
        assert!(matches!(
            shifted_parts(&p(&[1, 1, 1]), 2),
            Err(PartitionError::LengthExceeded { .. })
        ));
    }

    #[test]
    fn hook_shift_consistency() {
        // h(lambda) = prod k_i! / Delta(k) for every padding length.
        for lambda in enumerate_partitions(8, 8) {
            let lo = lambda.len() as u32;
            for n in lo.max(1)..=lo + 3 {
                let k = shifted_parts(&lambda, n).unwrap();
                let ki: Vec<i64> = k.iter().map(|&x| x as i64).collect();
                let mut num = BigInt::one();
                for &x in &k {
                    num *= factorial(x);
                }
                let expect = BigRational::new(num, vandermonde(&ki));
                assert_eq!(
                    BigRational::from_integer(hook_product(&lambda)),
                    expect,
                    "lambda={lambda} n={n}"
                );
            }
        }
    }

    #[test]
    fn conjugate_examples_and_involution() {
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(conjugate(&p(&[2, 2])), p(&[2, 2]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
        for lambda in enumerate_partitions(10, 10) {
            assert_eq!(conjugate(&conjugate(&lambda)), lambda);
            assert_eq!(hook_product(&conjugate(&lambda)), hook_product(&lambda));
        }
    }

    #[test]
    fn add_rectangle_examples() {
        assert_eq!(add_rectangle(&p(&[2, 1]), 2, 3).unwrap(), p(&[4, 3, 2]));
        assert_eq!(add_rectangle(&p(&[2, 2]), -1, 2).unwrap(), p(&[1, 1]));
        assert!(matches!(
            add_rectangle(&p(&[1]), -2, 2),
            Err(PartitionError::ContainmentViolated { .. })
        ));
        assert!(matches!(
            add_rectangle(&p(&[1, 1, 1]), 1, 2),
            Err(PartitionError::LengthExceeded { .. })
        ));
        // Round trip whenever defined.
        for lambda in enumerate_partitions(6, 3) {
            for s in 0..3i64 {
                let up = add_rectangle(&lambda, s, 3).unwrap();
                assert_eq!(add_rectangle(&up, -s, 3).unwrap(), lambda);
            }
        }
    }

    #[test]
    fn union_append_examples() {
        assert_eq!(union_append(&p(&[3, 2]), &p(&[2, 1])).unwrap(), p(&[3, 2, 2, 1]));
        assert!(matches!(
            union_append(&p(&[3, 2]), &p(&[4])),
            Err(PartitionError::AppendOrderViolated { .. })
        ));
        assert_eq!(union_append(&Partition::empty(), &p(&[1])).unwrap(), p(&[1]));
    }

    #[test]
    fn join_shape_examples() {
        // Figure-style joined shape at s=2, m=2, n=3.
        assert_eq!(
            join_shape(&p(&[2, 1]), &p(&[4, 2]), 2, 3, 2).unwrap(),
            p(&[7, 6, 2, 2, 1, 1])
        );
        assert_eq!(
            join_shape(&Partition::empty(), &Partition::empty(), 2, 3, 0).unwrap(),
            p(&[3, 3])
        );
        assert_eq!(join_shape(&p(&[1]), &p(&[1]), 1, 1, 0).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn enumeration_graded_lex() {
        let got: Vec<Partition> = enumerate_partitions(2, 2).collect();
        assert_eq!(got, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])]);
        let got: Vec<Partition> = enumerate_partitions(0, 5).collect();
        assert_eq!(got, vec![Partition::empty()]);
        let got: Vec<Partition> = enumerate_partitions(3, 1).collect();
        assert_eq!(got, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]);
        // No duplicates, all within bounds.
        let all: Vec<Partition> = enumerate_partitions(7, 4).collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
        assert!(all.iter().all(|q| q.size() <= 7 && q.len() <= 4));
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde(&[3, 1, 0]), BigInt::from(6));
        assert_eq!(vandermonde(&[1, 1]), BigInt::zero());
        assert_eq!(vandermonde(&[0, 1]), BigInt::from(-1));
        // Antisymmetry under a swap.
        assert_eq!(vandermonde(&[5, 2, 7]), -vandermonde(&[2, 5, 7]));
    }

    #[test]
    fn plancherel_dimension_identity() {
        // sum over partitions of N of (N!/h)^2 = N!.
        for n in 0..=8u32 {
            let nfact = factorial(n as u64);
            let mut acc = BigRational::zero();
            for lambda in partitions_of(n, n.max(1)) {
                let dim = BigRational::new(nfact.clone(), hook_product(&lambda));
                acc += &dim * &dim;
            }
            assert_eq!(acc, BigRational::from_integer(nfact), "N={n}");
        }
    }
}
