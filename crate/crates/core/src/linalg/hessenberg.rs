//! Characteristic polynomials through reduction to upper Hessenberg form.
//!
//! The reduction is a similarity transform (row operation paired with the
//! inverse column operation), so the characteristic polynomial is preserved.
//! The polynomial of the Hessenberg matrix then follows from the standard
//! three-term-like recurrence on its leading principal submatrices.

use super::matrix::Matrix;
use super::scalar::Field;
use crate::error::Result;

/// Coefficients of `det(xI - m)`, lowest degree first.
pub fn char_poly<T: Field>(m: &Matrix<T>) -> Result<Vec<T>> {
    let n = m.ensure_square()?;
    let mut h = m.clone();
    reduce_to_hessenberg(&mut h);
    Ok(hessenberg_char_poly(&h, n))
}

fn reduce_to_hessenberg<T: Field>(h: &mut Matrix<T>) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| !h[(i, k)].is_zero()) else {
            continue;
        };
        h.swap_rows(p, k + 1);
        h.swap_cols(p, k + 1);
        let pivot = h[(k + 1, k)].clone();
        for r in k + 2..n {
            if h[(r, k)].is_zero() {
                continue;
            }
            let u = h[(r, k)].clone() / pivot.clone();
            for j in k..n {
                let v = h[(r, j)].clone() - u.clone() * h[(k + 1, j)].clone();
                h[(r, j)] = v;
            }
            for i in 0..n {
                let v = h[(i, k + 1)].clone() + u.clone() * h[(i, r)].clone();
                h[(i, k + 1)] = v;
            }
        }
    }
}

fn hessenberg_char_poly<T: Field>(h: &Matrix<T>, n: usize) -> Vec<T> {
    // polys[m] = characteristic polynomial of the leading m x m block.
    let mut polys: Vec<Vec<T>> = vec![vec![T::one()]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![T::zero(); m + 2];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] = next[d + 1].clone() + c.clone();
            next[d] = next[d].clone() - h[(m, m)].clone() * c.clone();
        }
        let mut t = T::one();
        for i in (0..m).rev() {
            t = t * h[(i + 1, i)].clone();
            let scale = h[(i, m)].clone() * t.clone();
            if scale.is_zero() {
                continue;
            }
            for (d, c) in polys[i].iter().enumerate() {
                next[d] = next[d].clone() - scale.clone() * c.clone();
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}
