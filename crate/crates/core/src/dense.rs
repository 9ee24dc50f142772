//! Small dense linear algebra used only for reference computations.
//!
//! Everything here materializes `n x n` matrices and is capped at
//! [`DENSE_CAP`].

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::transition::RowStochasticMatrix;

pub const DENSE_CAP: usize = 64;

/// Row-major square matrix.
pub type Dense = Vec<Vec<f64>>;

pub fn check_cap(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        Err(Error::DenseCapExceeded { n, cap: DENSE_CAP })
    } else {
        Ok(())
    }
}

/// Materializes `I - c A^T`.
pub fn identity_minus_scaled_transpose(a: &RowStochasticMatrix, c: f64) -> Result<Dense> {
    let n = a.n();
    check_cap(n)?;
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for i in 0..n {
        for (j, w) in a.row(i) {
            // (A^T)[j][i] = A[i][j]
            m[j][i] -= c * w;
        }
    }
    Ok(m)
}

/// Gaussian elimination with partial pivoting on an LU copy of `m`,
/// solving for every column of `rhs` at once.
fn eliminate(m: &Dense, mut rhs: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let n = m.len();
    let mut lu = m.clone();
    let scale = m.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&p, &q| lu[p][col].abs().total_cmp(&lu[q][col].abs()))
            .expect("nonempty pivot range");
        if lu[pivot][col].abs() <= scale * f64::EPSILON * n as f64 {
            return Err(Error::Singular);
        }
        lu.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            let factor = lu[r][col] / lu[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                lu[r][k] -= factor * lu[col][k];
            }
            for k in 0..rhs[r].len() {
                rhs[r][k] -= factor * rhs[col][k];
            }
        }
    }
    for col in (0..n).rev() {
        for k in 0..rhs[col].len() {
            let mut acc = rhs[col][k];
            for j in col + 1..n {
                acc -= lu[col][j] * rhs[j][k];
            }
            rhs[col][k] = acc / lu[col][col];
        }
    }
    Ok(rhs)
}

pub fn solve(m: &Dense, b: &[f64]) -> Result<Vec<f64>> {
    let rhs = b.iter().map(|&x| vec![x]).collect();
    Ok(eliminate(m, rhs)?.into_iter().map(|r| r[0]).collect())
}

pub fn inverse(m: &Dense) -> Result<Dense> {
    let n = m.len();
    let identity = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    eliminate(m, identity)
}

/// Induced L1 norm: the largest absolute column sum.
pub fn l1_operator_norm(m: &Dense) -> f64 {
    let n = m.len();
    (0..n)
        .map(|j| m.iter().map(|row| row[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let m = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve(&m, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
    }

    #[test]
    fn needs_pivoting() {
        let m = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(solve(&m, &[2.0, 3.0]).unwrap(), vec![3.0, 2.0]);
    }

    #[test]
    fn singular_detected() {
        let m = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert_eq!(solve(&m, &[1.0, 1.0]), Err(Error::Singular));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = vec![vec![4.0, -1.0, 0.0], vec![-1.0, 4.0, -1.0], vec![0.0, -1.0, 4.0]];
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let p: f64 = (0..3).map(|k| m[i][k] * inv[k][j]).sum();
                assert!((p - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn column_sum_norm() {
        let m = vec![vec![1.0, -2.0], vec![-3.0, 0.5]];
        assert_eq!(l1_operator_norm(&m), 4.0);
    }
}
