//! Exact linear algebra helpers: rational Gauss-Jordan and fraction-free
//! integer rank computation. All arithmetic is exact; no floating point.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rat = Ratio<i64>;

/// Invert a square rational matrix by Gauss-Jordan elimination.
/// Returns `None` if the matrix is singular.
pub fn invert_rat(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::from_integer(1) } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let ac = a[col][j];
                    let ic = inv[col][j];
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Rank of an integer matrix via fraction-free (Bareiss) elimination.
pub fn bigint_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        // pick the absolutely smallest nonzero pivot to limit growth
        let mut pivot: Option<usize> = None;
        for r in row..a.len() {
            if !a[r][col].is_zero()
                && pivot.is_none_or(|p| a[r][col].abs() < a[p][col].abs())
            {
                pivot = Some(r);
            }
        }
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        for r in row + 1..a.len() {
            for c in col + 1..ncols {
                let num = &a[row][col] * &a[r][c] - &a[r][col] * &a[row][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        rank += 1;
        row += 1;
        if row == a.len() {
            break;
        }
    }
    rank
}

/// Left inverse `L` of the matrix with the given columns (each of length
/// `dim`), so that `L · B = I`. Exists iff the columns are linearly
/// independent; built from the Gram matrix, all arithmetic rational.
pub fn left_inverse(columns: &[Vec<i64>], dim: usize) -> Option<Vec<Vec<Rat>>> {
    let n = columns.len();
    if n == 0 {
        return Some(Vec::new());
    }
    for c in columns {
        assert_eq!(c.len(), dim);
    }
    // Gram matrix G = Bᵀ B
    let gram: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Rat::from_integer(
                        columns[i].iter().zip(&columns[j]).map(|(x, y)| x * y).sum(),
                    )
                })
                .collect()
        })
        .collect();
    let ginv = invert_rat(&gram)?;
    // L = G⁻¹ Bᵀ  (n × dim)
    Some(
        (0..n)
            .map(|i| {
                (0..dim)
                    .map(|k| {
                        (0..n)
                            .map(|j| ginv[i][j] * Rat::from_integer(columns[j][k]))
                            .sum()
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Solve `Σ_j c_j · columns[j] = v` exactly, given a precomputed left
/// inverse. Returns `None` when `v` is outside the column span.
pub fn solve_in_span(
    left_inv: &[Vec<Rat>],
    columns: &[Vec<i64>],
    v: &[i64],
) -> Option<Vec<Rat>> {
    let c: Vec<Rat> = left_inv
        .iter()
        .map(|row| row.iter().zip(v).map(|(l, x)| *l * Rat::from_integer(*x)).sum())
        .collect();
    // verify the residual is exactly zero
    for k in 0..v.len() {
        let mut s = Rat::zero();
        for (j, col) in columns.iter().enumerate() {
            s += c[j] * Rat::from_integer(col[k]);
        }
        if s != Rat::from_integer(v[k]) {
            return None;
        }
    }
    Some(c)
}
