//! Fraction-free (Bareiss) elimination over exact integral domains.
//!
//! After step `k` every surviving entry equals a `(k+1) x (k+1)` minor of the
//! input, so each division by the previous pivot is exact and intermediate
//! values stay polynomially bounded.

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::Result;

/// Determinant by fraction-free elimination with row pivoting.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let lead = a[(i, k)].clone();
            for j in k + 1..n {
                let v = a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(k, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
            a[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { -det } else { det })
}

/// Rank by fraction-free echelon reduction. Columns without a pivot are skipped.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let pivot = a[(r, c)].clone();
        for i in r + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let v = a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(r, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
            a[(i, c)] = T::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// `cols - rank`, the dimension of the right null space.
pub fn nullity<T: Scalar>(m: &Matrix<T>) -> usize {
    m.cols() - rank(m)
}
