use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A vector of rationals sharing one positive denominator, always kept in
/// lowest terms so that equal vectors are syntactically equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    denominator: BigInt,
    numerators: Vec<BigInt>,
}

impl RationalVector {
    pub fn new(numerators: Vec<BigInt>, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Dimension("zero denominator".into()));
        }
        let mut v = RationalVector {
            denominator,
            numerators,
        };
        v.normalize();
        Ok(v)
    }

    pub fn integral(numerators: Vec<BigInt>) -> Self {
        RationalVector {
            denominator: BigInt::one(),
            numerators,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::integral(vec![BigInt::zero(); n])
    }

    fn normalize(&mut self) {
        if self.denominator.is_negative() {
            self.denominator = -&self.denominator;
            for x in &mut self.numerators {
                *x = -&*x;
            }
        }
        let g = self
            .numerators
            .iter()
            .fold(self.denominator.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            self.denominator /= &g;
            for x in &mut self.numerators {
                *x /= &g;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    /// Reduces every coordinate into `[0, 1)`.
    pub fn mod_one(&self) -> Self {
        let mut v = RationalVector {
            denominator: self.denominator.clone(),
            numerators: self
                .numerators
                .iter()
                .map(|x| x.mod_floor(&self.denominator))
                .collect(),
        };
        v.normalize();
        v
    }

    pub fn add(&self, other: &RationalVector) -> Result<Self> {
        self.check_len(other)?;
        let den = self.denominator.lcm(&other.denominator);
        let a = &den / &self.denominator;
        let b = &den / &other.denominator;
        let nums = self
            .numerators
            .iter()
            .zip(&other.numerators)
            .map(|(x, y)| x * &a + y * &b)
            .collect();
        RationalVector::new(nums, den)
    }

    pub fn neg(&self) -> Self {
        RationalVector {
            denominator: self.denominator.clone(),
            numerators: self.numerators.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut v = RationalVector {
            denominator: self.denominator.clone(),
            numerators: self.numerators.iter().map(|x| x * k).collect(),
        };
        v.normalize();
        v
    }

    /// `scale · self` as an integer vector; fails if not integral.
    pub fn scaled_integers(&self, scale: &BigInt) -> Result<Vec<BigInt>> {
        let (q, r) = scale.div_rem(&self.denominator);
        if !r.is_zero() {
            return Err(Error::Structure(format!(
                "denominator {} does not divide {}",
                self.denominator, scale
            )));
        }
        Ok(self.numerators.iter().map(|x| x * &q).collect())
    }

    fn check_len(&self, other: &RationalVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.numerators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let g = x.gcd(&self.denominator);
            let (p, q) = (x / &g, &self.denominator / &g);
            if q.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}/{q}")?;
            }
        }
        write!(f, ")")
    }
}
