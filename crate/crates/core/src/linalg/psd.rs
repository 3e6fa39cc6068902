//! Exact positive-semidefiniteness by symmetric elimination.
//!
//! The elimination runs on `T A T*` where `T` accumulates the row operations,
//! so whenever the form is found indefinite the corresponding row of `T`
//! (or a combination of two rows) is returned as a vector `x` with
//! `<x, x> < 0`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::matrix::{axpy, scale};
use super::{LinalgError, Matrix, Scalar};

pub fn psd_check(gram: &Matrix) -> Result<bool, LinalgError> {
    Ok(psd_witness(gram)?.is_none())
}

/// `None` if `gram` is positive semidefinite, else a vector with negative square.
pub fn psd_witness(gram: &Matrix) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if let Some((row, col)) = gram.hermitian_defect() {
        return Err(LinalgError::NotHermitian { row, col });
    }
    let n = gram.rows();
    let mut a: Vec<Vec<Scalar>> = gram.row_vectors();
    let mut t: Vec<Vec<Scalar>> = (0..n).map(|i| super::unit_vector(n, i)).collect();

    for k in 0..n {
        let d = a[k][k].clone();
        match d.real_sign().expect("hermitian diagonal is real") {
            Ordering::Less => return Ok(Some(t[k].clone())),
            Ordering::Equal => {
                if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    return Ok(Some(zero_pivot_witness(&a, &t, k, j)));
                }
            }
            Ordering::Greater => {
                let inv = d.inv();
                for i in k + 1..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    // row_i -= (a_ik / d) row_k, then the matching column operation.
                    let f = &a[i][k] * &inv;
                    let neg_f = -f.clone();
                    let row_k = a[k].clone();
                    axpy(&mut a[i], &neg_f, &row_k);
                    let t_k = t[k].clone();
                    axpy(&mut t[i], &neg_f, &t_k);
                    let neg_fc = -f.conj();
                    for row in a.iter_mut() {
                        let ark = row[k].clone();
                        if !ark.is_zero() {
                            row[i] += &(&neg_fc * &ark);
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// In the transformed form, `B_kk = 0` and `b = B_kj != 0`. Taking
/// `u = c e_k + e_j` with `c = -(B_jj + 1) conj(b) / (2 |b|^2)` gives
/// `<u, u> = 2 Re(c b) + B_jj = -1`.
fn zero_pivot_witness(a: &[Vec<Scalar>], t: &[Vec<Scalar>], k: usize, j: usize) -> Vec<Scalar> {
    let b = &a[k][j];
    let two = Scalar::from_integer(2);
    let denom = &two * &Scalar::real(b.norm_sqr());
    let c = -(&(&a[j][j] + &Scalar::one()) * &b.conj()) / denom;
    let mut x = scale(&t[k], &c);
    axpy(&mut x, &Scalar::one(), &t[j]);
    x
}
