//! Exact computations for invertible polynomials: diagonal symmetry groups,
//! Burnside-ring valued equivariant monodromy zeta functions and the
//! equivariant Saito duality between a polynomial and its
//! Berglund–Hübsch transpose.

pub mod burnside;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod json;
pub mod linalg;
pub mod polynomial;
pub mod zeta;

pub use num_bigint::BigInt;

pub use burnside::{BurnsideElement, CyclotomicProduct};
pub use error::{Error, Result};
pub use group::{GroupElement, GroupPresentation, Side, SubgroupKey};
pub use linalg::{IntMatrix, RationalVector};
pub use polynomial::InvertiblePolynomial;
