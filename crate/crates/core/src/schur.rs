//! Schur polynomials, principal-specialization dimensions,
//! Littlewood-Richardson coefficients and the two-block branching table.
//!
//! LR coefficients are computed by direct backtracking enumeration of
//! lattice-word semistandard skew fillings; at the sizes in scope this
//! exact method needs no optimization.

use crate::exact::{det_rational, superfactorial};
use crate::partitions::{shifted_parts, vandermonde, Partition, PartitionError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchurError {
    #[error("evaluation points must be pairwise distinct")]
    RepeatedPoint,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// A Littlewood-Richardson filling of the skew shape lambda/mu: rows listed
/// top to bottom, each row containing only its skew cells. Witnesses are
/// semistandard and their reverse reading word is a lattice word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrTableau {
    pub outer: Partition,
    pub inner: Partition,
    pub rows: Vec<Vec<u32>>,
}

impl LrTableau {
    /// The content as a partition (entry i appears content_i times);
    /// lattice fillings always have weakly decreasing content.
    pub fn content(&self) -> Partition {
        let max = self
            .rows
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(0);
        let mut counts = vec![0u32; max as usize];
        for row in &self.rows {
            for &v in row {
                counts[v as usize - 1] += 1;
            }
        }
        Partition::new(counts)
    }

    /// Validates semistandardness and the lattice condition from scratch.
    pub fn is_valid(&self) -> bool {
        let mu = &self.inner;
        let lam = &self.outer;
        if self.rows.len() != lam.len() {
            return false;
        }
        let cell = |i: usize, j: usize| -> Option<u32> {
            let off = mu.part(i) as usize;
            if j < off || j >= lam.part(i) as usize {
                return None;
            }
            self.rows[i].get(j - off).copied()
        };
        for i in 0..lam.len() {
            if self.rows[i].len() != (lam.part(i) - mu.part(i)) as usize {
                return false;
            }
            for j in mu.part(i) as usize..lam.part(i) as usize {
                let v = cell(i, j).unwrap();
                if let Some(left) = j.checked_sub(1).and_then(|jj| cell(i, jj)) {
                    if left > v {
                        return false;
                    }
                }
                if i > 0 {
                    if let Some(above) = cell(i - 1, j) {
                        if above >= v {
                            return false;
                        }
                    }
                }
            }
        }
        // Reverse reading word: rows top to bottom, each right to left.
        let mut counts = vec![0i64; 1 + self.rows.iter().flatten().copied().max().unwrap_or(0) as usize];
        for row in &self.rows {
            for &v in row.iter().rev() {
                counts[v as usize] += 1;
                if v >= 2 && counts[v as usize] > counts[v as usize - 1] {
                    return false;
                }
            }
        }
        true
    }
}

/// Enumerates LR fillings of lambda/mu with entries <= max_entry, cells
/// visited in reverse reading order so semistandardness and the lattice
/// prefix condition prune incrementally. `target`, when given, restricts
/// the content to exactly that partition.
fn enumerate_lr<F: FnMut(&[Vec<u32>])>(
    lambda: &Partition,
    mu: &Partition,
    max_entry: u32,
    target: Option<&Partition>,
    mut visit: F,
) {
    if !lambda.contains(mu) {
        return;
    }
    // Cells in reverse reading order: row by row, right to left.
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 0..lambda.len() {
        for j in (mu.part(i) as usize..lambda.part(i) as usize).rev() {
            cells.push((i, j));
        }
    }
    if cells.is_empty() {
        let rows = vec![Vec::new(); lambda.len()];
        visit(&rows);
        return;
    }
    let mut grid: Vec<Vec<u32>> = (0..lambda.len())
        .map(|i| vec![0; lambda.part(i) as usize])
        .collect();
    let mut counts = vec![0u32; max_entry as usize + 1];
    let emit = |grid: &[Vec<u32>]| -> Vec<Vec<u32>> {
        (0..lambda.len())
            .map(|i| grid[i][mu.part(i) as usize..].to_vec())
            .collect()
    };

    struct Ctx<'a> {
        cells: &'a [(usize, usize)],
        mu: &'a Partition,
        max_entry: u32,
        target: Option<&'a Partition>,
    }
    fn rec<F: FnMut(&[Vec<u32>])>(
        ctx: &Ctx,
        idx: usize,
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
        visit: &mut F,
        emit: &dyn Fn(&[Vec<u32>]) -> Vec<Vec<u32>>,
    ) {
        if idx == ctx.cells.len() {
            if let Some(t) = ctx.target {
                for v in 1..=ctx.max_entry {
                    if counts[v as usize] != t.part(v as usize - 1) {
                        return;
                    }
                }
            }
            let rows = emit(grid);
            visit(&rows);
            return;
        }
        let (i, j) = ctx.cells[idx];
        // Row-weak bound from the right neighbor (already placed).
        let hi = if j + 1 < grid[i].len() {
            grid[i][j + 1]
        } else {
            ctx.max_entry
        };
        // Column-strict bound from the cell above (placed in an earlier row),
        // counting only cells outside the inner shape.
        let lo = if i > 0 && j >= ctx.mu.part(i - 1) as usize && j < grid[i - 1].len() {
            grid[i - 1][j] + 1
        } else {
            1
        };
        for v in lo..=hi {
            // Lattice prefix: after placing v, #v <= #(v-1).
            if v >= 2 && counts[v as usize] + 1 > counts[v as usize - 1] {
                continue;
            }
            if let Some(t) = ctx.target {
                if counts[v as usize] + 1 > t.part(v as usize - 1) {
                    continue;
                }
            }
            grid[i][j] = v;
            counts[v as usize] += 1;
            rec(ctx, idx + 1, grid, counts, visit, emit);
            counts[v as usize] -= 1;
        }
        grid[i][j] = 0;
    }

    let ctx = Ctx {
        cells: &cells,
        mu,
        max_entry,
        target,
    };
    rec(&ctx, 0, &mut grid, &mut counts, &mut visit, &emit);
}

/// All LR witnesses for the skew shape lambda/mu with entries <= max_entry.
pub fn lr_tableaux(lambda: &Partition, mu: &Partition, max_entry: u32) -> Vec<LrTableau> {
    let mut out = Vec::new();
    enumerate_lr(lambda, mu, max_entry, None, |rows| {
        out.push(LrTableau {
            outer: lambda.clone(),
            inner: mu.clone(),
            rows: rows.to_vec(),
        })
    });
    out
}

/// The Littlewood-Richardson coefficient c^lambda_{mu nu}: zero unless
/// mu is contained in lambda and |mu| + |nu| = |lambda|, otherwise the
/// number of lattice-word semistandard fillings of lambda/mu with
/// content nu.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) {
        return 0;
    }
    let mut count = 0u64;
    enumerate_lr(lambda, mu, nu.len() as u32, Some(nu), |_| count += 1);
    count
}

/// Exact Schur polynomial value via the bialternant ratio
/// det(z_i^{k_j}) / Delta(z), with k_j = lambda_j + n - j. Requires
/// pairwise distinct points.
pub fn schur_evaluate(
    lambda: &Partition,
    z: &[BigRational],
) -> Result<BigRational, SchurError> {
    let n = z.len() as u32;
    let k = shifted_parts(lambda, n)?;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if z[i] == z[j] {
                return Err(SchurError::RepeatedPoint);
            }
        }
    }
    if z.is_empty() {
        // shifted_parts already rejected nonempty lambda.
        return Ok(BigRational::from_integer(1.into()));
    }
    let mat: Vec<Vec<BigRational>> = z
        .iter()
        .map(|zi| k.iter().map(|&kj| zi.pow(kj as i32)).collect())
        .collect();
    let num = det_rational(&mat);
    let mut den = BigRational::from_integer(1.into());
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            den *= &z[i] - &z[j];
        }
    }
    Ok(num / den)
}

/// Dimension s_lambda(1^n) = Delta(k) / C_n; a positive integer for
/// len(lambda) <= n.
pub fn schur_dimension(lambda: &Partition, n: u32) -> Result<BigInt, SchurError> {
    let k = shifted_parts(lambda, n)?;
    let ki: Vec<i64> = k.iter().map(|&x| x as i64).collect();
    let v = vandermonde(&ki);
    let c = superfactorial(n as u64);
    debug_assert!((&v % &c).is_zero());
    Ok(v / c)
}

/// All pairs (mu, nu) with len(mu) <= m, len(nu) <= n and c^lambda_{mu nu}
/// > 0, with their coefficients: the multiplicity table for splitting the
/// variables of s_lambda into a block of m and a block of n.
pub fn branching_table(
    lambda: &Partition,
    m: u32,
    n: u32,
) -> Result<BTreeMap<(Partition, Partition), u64>, SchurError> {
    if lambda.len() > (m + n) as usize {
        return Err(SchurError::Partition(PartitionError::LengthExceeded {
            len: lambda.len(),
            max: (m + n) as usize,
        }));
    }
    let mut table = BTreeMap::new();
    for mu in sub_partitions(lambda, m) {
        let mut by_content: BTreeMap<Partition, u64> = BTreeMap::new();
        enumerate_lr(lambda, &mu, n, None, |rows| {
            let tab = LrTableau {
                outer: lambda.clone(),
                inner: mu.clone(),
                rows: rows.to_vec(),
            };
            *by_content.entry(tab.content()).or_insert(0) += 1;
        });
        for (nu, c) in by_content {
            table.insert((mu.clone(), nu), c);
        }
    }
    Ok(table)
}

/// Sub-partitions of lambda with at most max_len parts.
fn sub_partitions(lambda: &Partition, max_len: u32) -> Vec<Partition> {
    let depth = lambda.len().min(max_len as usize);
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(
        lambda: &Partition,
        depth: usize,
        i: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == depth {
            out.push(Partition::new(cur.clone()));
            return;
        }
        let hi = lambda.part(i).min(cur.last().copied().unwrap_or(u32::MAX));
        for v in (0..=hi).rev() {
            cur.push(v);
            rec(lambda, depth, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(lambda, depth, 0, &mut cur, &mut out);
    out
}
