//! Column-style Hermite normal form.
//!
//! Convention used throughout the crate: for an `n × k` integer matrix `M`
//! of rank `n`, the form is `H = M·U` with `U` a `k × k` unimodular matrix,
//! where the first `n` columns of `H` are upper triangular with positive
//! pivots `H[i][i]`, every entry right of a pivot satisfies
//! `0 ≤ H[i][j] < H[i][i]`, and the remaining `k − n` columns are zero.
//! Two generating sets span the same lattice iff their forms coincide.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    /// `M·U`, same shape as `M`.
    pub h: IntMatrix,
    /// Unimodular column transform.
    pub u: IntMatrix,
}

impl HermiteForm {
    /// The `n × n` triangular basis (the nonzero columns of `h`).
    pub fn basis(&self) -> IntMatrix {
        let n = self.h.rows();
        let cols: Vec<usize> = (0..n).collect();
        let rows: Vec<usize> = (0..n).collect();
        self.h.submatrix(&rows, &cols).expect("hermite basis is in range")
    }
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let (x, y) = (a[(r, c)].clone(), a[(i, c)].clone());
            for j in 0..cols {
                let v = &a[(i, j)] * &x - &a[(r, j)] * &y;
                a[(i, j)] = v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn hermite_normal_form(m: &IntMatrix) -> Result<HermiteForm> {
    let n = m.rows();
    let k = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(k);
    if k < n {
        return Err(Error::Rank {
            rank: rank(m),
            required: n,
        });
    }
    for r in (0..n).rev() {
        let active: Vec<usize> = (0..=r).chain(n..k).collect();
        let Some(&p) = active.iter().find(|&&j| !a[(r, j)].is_zero()) else {
            return Err(Error::Rank {
                rank: rank(m),
                required: n,
            });
        };
        a.swap_cols(p, r);
        u.swap_cols(p, r);
        for &j in &active {
            if j == r || a[(r, j)].is_zero() {
                continue;
            }
            let x = a[(r, r)].clone();
            let y = a[(r, j)].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let c = -(&y / &g);
            let d = &x / &g;
            a.combine_cols(r, j, [&s, &t, &c, &d]);
            u.combine_cols(r, j, [&s, &t, &c, &d]);
        }
        if a[(r, r)].is_negative() {
            a.negate_col(r);
            u.negate_col(r);
        }
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let q = a[(i, j)].div_floor(&a[(i, i)]);
            if !q.is_zero() {
                let f = -q;
                a.add_col_multiple(j, i, &f);
                u.add_col_multiple(j, i, &f);
            }
        }
    }
    Ok(HermiteForm { h: a, u })
}

/// Canonical `n × n` basis of the lattice spanned by the columns of `m`.
pub fn lattice_basis(m: &IntMatrix) -> Result<IntMatrix> {
    Ok(hermite_normal_form(m)?.basis())
}

/// Whether `v` lies in the lattice of an upper-triangular basis.
pub fn lattice_contains(basis: &IntMatrix, v: &[BigInt]) -> bool {
    basis.solve_upper_integral(v).is_some()
}

/// Whether the lattice of `inner` is contained in that of `outer`
/// (both given as triangular bases).
pub fn lattice_includes(outer: &IntMatrix, inner: &IntMatrix) -> bool {
    (0..inner.cols()).all(|j| lattice_contains(outer, &inner.column(j)))
}
