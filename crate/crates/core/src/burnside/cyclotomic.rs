//! Products `∏_{m|d} (1 − t^m)^{s_m}` with an explicit modulus `d`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicProduct {
    modulus: BigInt,
    factors: BTreeMap<BigInt, BigInt>,
}

impl CyclotomicProduct {
    /// The constant `1` with modulus `d`.
    pub fn one(modulus: BigInt) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::Structure(format!("modulus {modulus} is not positive")));
        }
        Ok(CyclotomicProduct {
            modulus,
            factors: BTreeMap::new(),
        })
    }

    /// Builds a product from `(m, s_m)` pairs; repeated `m` accumulate.
    pub fn new<I>(modulus: BigInt, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, BigInt)>,
    {
        let mut out = Self::one(modulus)?;
        for (m, s) in factors {
            out.add_factor(m, s)?;
        }
        Ok(out)
    }

    pub fn from_i64(modulus: i64, factors: &[(i64, i64)]) -> Result<Self> {
        Self::new(modulus.into(), factors.iter().map(|&(m, s)| (m.into(), s.into())))
    }

    fn add_factor(&mut self, m: BigInt, s: BigInt) -> Result<()> {
        if !m.is_positive() || !self.modulus.is_multiple_of(&m) {
            return Err(Error::Structure(format!(
                "factor (1-t^{m}) does not divide modulus {}",
                self.modulus
            )));
        }
        let entry = self.factors.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += s;
        if entry.is_zero() {
            self.factors.remove(&m);
        }
        Ok(())
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Nonzero exponents `m ↦ s_m` in increasing `m`.
    pub fn factors(&self) -> &BTreeMap<BigInt, BigInt> {
        &self.factors
    }

    pub fn exponent(&self, m: &BigInt) -> BigInt {
        self.factors.get(m).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Same factors over another modulus, which every `m` must divide.
    pub fn with_modulus(&self, modulus: BigInt) -> Result<Self> {
        Self::new(modulus, self.factors.clone())
    }

    /// Product; the modulus becomes the lcm of the two moduli.
    pub fn multiply(&self, other: &Self) -> Self {
        let modulus = self.modulus.lcm(&other.modulus);
        let mut out = self.with_modulus(modulus).expect("lcm is a multiple");
        for (m, s) in &other.factors {
            out.add_factor(m.clone(), s.clone()).expect("lcm is a multiple");
        }
        out
    }

    /// `φ^k`.
    pub fn pow(&self, k: &BigInt) -> Self {
        let factors = if k.is_zero() {
            BTreeMap::new()
        } else {
            self.factors.iter().map(|(m, s)| (m.clone(), s * k)).collect()
        };
        CyclotomicProduct {
            modulus: self.modulus.clone(),
            factors,
        }
    }

    pub fn inverse(&self) -> Self {
        self.pow(&-BigInt::one())
    }

    /// `φ*(t) = ∏ (1 − t^{d/m})^{−s_m}` with respect to the modulus.
    pub fn saito_dual(&self) -> Self {
        CyclotomicProduct {
            modulus: self.modulus.clone(),
            factors: self
                .factors
                .iter()
                .map(|(m, s)| (&self.modulus / m, -s))
                .collect(),
        }
    }

    /// `Σ m·s_m`, the degree of the rational function (and the Euler
    /// characteristic when `φ` is a zeta function).
    pub fn degree(&self) -> BigInt {
        self.factors.iter().map(|(m, s)| m * s).sum()
    }
}

impl fmt::Display for CyclotomicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (m, s) in &self.factors {
            if m.is_one() {
                write!(f, "(1-t)")?;
            } else {
                write!(f, "(1-t^{m})")?;
            }
            if !s.is_one() {
                write!(f, "^{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod {}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(d: i64, fs: &[(i64, i64)]) -> CyclotomicProduct {
        CyclotomicProduct::from_i64(d, fs).unwrap()
    }

    #[test]
    fn formatting() {
        assert_eq!(c(9, &[(3, 1), (9, -1)]).to_string(), "(1-t^3)(1-t^9)^-1");
        assert_eq!(c(6, &[(1, 2), (6, 1)]).to_string(), "(1-t)^2(1-t^6)");
        assert_eq!(c(4, &[]).to_string(), "1");
        assert_eq!(c(4, &[(2, 1), (2, -1)]).to_string(), "1");
    }

    #[test]
    fn rejects_non_divisors() {
        assert!(CyclotomicProduct::from_i64(6, &[(4, 1)]).is_err());
        assert!(CyclotomicProduct::from_i64(0, &[]).is_err());
    }

    #[test]
    fn classical_dual_examples() {
        assert_eq!(c(7, &[(7, 1)]).saito_dual(), c(7, &[(1, -1)]));
        let phi = c(6, &[(3, 1), (6, -1), (1, -1)]);
        assert_eq!(phi.saito_dual(), c(6, &[(2, -1), (1, 1), (6, 1)]));
    }

    #[test]
    fn arithmetic() {
        let a = c(4, &[(2, 1)]);
        let b = c(6, &[(3, -1), (2, 1)]);
        let p = a.multiply(&b);
        assert_eq!(p, c(12, &[(2, 2), (3, -1)]));
        assert!(a.multiply(&a.inverse()).is_one());
        assert_eq!(b.degree(), BigInt::from(-1));
        assert!(a.with_modulus(3.into()).is_err());
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(d in 1i64..60, raw in proptest::collection::vec((1i64..60, -3i64..4), 0..6)) {
            let fs: Vec<(i64, i64)> = raw.into_iter().filter(|(m, _)| d % m == 0).collect();
            let phi = c(d, &fs);
            let dual = phi.saito_dual();
            prop_assert_eq!(dual.saito_dual(), phi.clone());
            prop_assert_eq!(dual.modulus(), phi.modulus());
            prop_assert_eq!(dual.factors().len(), phi.factors().len());
        }
    }
}
