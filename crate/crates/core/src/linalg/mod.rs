//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Lattices are
//! represented by column bases in the Hermite normal form described in
//! [`hnf`]; the helpers in [`lattice`] combine them.

mod hnf;
pub mod lattice;
mod matrix;
mod rational;
mod snf;

pub use hnf::{hermite_normal_form, lattice_basis, lattice_contains, lattice_includes, rank, HermiteForm};
pub use matrix::IntMatrix;
pub use rational::RationalVector;
pub use snf::{smith_normal_form, SmithForm};
