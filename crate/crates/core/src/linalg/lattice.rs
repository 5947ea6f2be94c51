//! Operations on full-rank integer lattices `s·ℤⁿ ⊆ L ⊆ ℤⁿ`, all returning
//! canonical Hermite bases.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{lattice_basis, IntMatrix};
use crate::error::Result;

/// Lattice spanned by both inputs.
pub fn sum(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    lattice_basis(&a.hconcat(b)?)
}

/// `s · L^♯` where `L^♯ = {y : yᵀx ∈ ℤ for all x ∈ L}`; integral whenever
/// `s·ℤⁿ ⊆ L`. Applying it twice with the same `s` returns `L`.
pub fn scaled_dual(basis: &IntMatrix, scale: &BigInt) -> Result<IntMatrix> {
    lattice_basis(&basis.scaled_inverse_transpose(scale)?)
}

/// Intersection of two lattices that both contain `s·ℤⁿ`, via
/// `(A ∩ B)^♯ = A^♯ + B^♯`.
pub fn intersection(a: &IntMatrix, b: &IntMatrix, scale: &BigInt) -> Result<IntMatrix> {
    let da = scaled_dual(a, scale)?;
    let db = scaled_dual(b, scale)?;
    scaled_dual(&sum(&da, &db)?, scale)
}

/// Index `[ℤⁿ : L]` of a full-rank lattice, i.e. `|det basis|`.
pub fn covolume(basis: &IntMatrix) -> Result<BigInt> {
    Ok(basis.determinant()?.abs())
}
