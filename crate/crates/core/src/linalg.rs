//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Everything here is exact; sizes
//! stay tiny (dimension at most a handful), so no attention is paid to
//! asymptotics.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. The empty matrix has determinant one.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn determinant_i64(matrix: &[Vec<i64>]) -> BigInt {
    determinant(&to_big(matrix))
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[rank][c];
            for k in c..cols {
                let v = &f * &a[rank][k];
                a[r][k] -= v;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Dimension of the affine hull of a point set (−1 is reported as 0 for
/// the empty set).
pub fn affine_dimension(points: &[&[i64]]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Generalized cross product of `n - 1` vectors in `Z^n`: the vector of
/// signed maximal minors, orthogonal to every input row. Zero exactly when
/// the rows are linearly dependent.
pub fn orthogonal_vector(rows: &[Vec<i64>], n: usize) -> Result<Vec<i64>> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let d = determinant_i64(&minor);
        let d = if skip % 2 == 0 { d } else { -d };
        out.push(d.to_i64().ok_or(Error::Overflow("orthogonal vector"))?);
    }
    Ok(out)
}

/// Solves `matrix * x = rhs` for square invertible `matrix`.
pub fn solve(matrix: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for k in c..=n {
            a[c][k] = &a[c][k] / &pivot;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(matrix: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = matrix.len();
    if !determinant_i64(matrix).abs().is_one() {
        return None;
    }
    let a: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        columns.push(solve(&a, &e)?);
    }
    let mut inv = vec![vec![0i64; n]; n];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            inv[i][j] = v.to_integer().to_i64()?;
        }
    }
    Some(inv)
}

/// Row-style Hermite normal form: returns `H = U * A` with `U` unimodular,
/// `H` in row echelon form, positive pivots, and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(matrix: &[Vec<BigInt>]) -> IntMatrix {
    let mut a: IntMatrix = matrix.to_vec();
    let rows = a.len();
    if rows == 0 {
        return a;
    }
    let cols = a[0].len();
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            // Smallest nonzero magnitude at or below the pivot row.
            let best = (pivot_row..rows)
                .filter(|&r| !a[r][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].div_floor(&a[pivot_row][c]);
                for k in c..cols {
                    let v = &q * &a[pivot_row][k];
                    a[r][k] -= v;
                }
                if !a[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][c].is_zero() {
            continue;
        }
        if a[pivot_row][c].is_negative() {
            for k in c..cols {
                a[pivot_row][k] = -&a[pivot_row][k];
            }
        }
        for r in 0..pivot_row {
            let q = a[r][c].div_floor(&a[pivot_row][c]);
            if q.is_zero() {
                continue;
            }
            for k in c..cols {
                let v = &q * &a[pivot_row][k];
                a[r][k] -= v;
            }
        }
        pivot_row += 1;
    }
    a
}
