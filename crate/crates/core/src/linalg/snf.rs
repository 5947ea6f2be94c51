use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// `S = U·M·V` with `S` diagonal, positive, and `S[i][i] | S[i+1][i+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith normal form of a square nonsingular integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "Smith form of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.determinant()?.is_zero() {
        return Err(Error::Singular);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for k in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (pi, pj) = best.ok_or(Error::Singular)?;
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..n {
                let q = a[(i, k)].div_floor(&a[(k, k)]);
                if !q.is_zero() {
                    let f = -q;
                    a.add_row_multiple(i, k, &f);
                    u.add_row_multiple(i, k, &f);
                }
                clean &= a[(i, k)].is_zero();
            }
            for j in k + 1..n {
                let q = a[(k, j)].div_floor(&a[(k, k)]);
                if !q.is_zero() {
                    let f = -q;
                    a.add_col_multiple(j, k, &f);
                    v.add_col_multiple(j, k, &f);
                }
                clean &= a[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a[(i, j)].is_multiple_of(&a[(k, k)])));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    Ok(SmithForm { s: a, u, v })
}
