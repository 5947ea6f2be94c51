//! Invertible polynomials `f = Σ_i Π_j x_j^{E_ij}` with all coefficients
//! normalized to 1, described entirely by their exponent matrix `E`
//! (rows = monomials, columns = variables).

mod decompose;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub use decompose::{Atom, AtomKind, AtomicDecomposition};
pub use parse::{parse_polynomial, ParseOutcome};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvertiblePolynomial {
    exponents: IntMatrix,
    variables: Vec<String>,
}

/// Canonical and reduced weight systems.
///
/// `w_i` is the determinant of `E` with its `i`-th column replaced by ones
/// and `d = det E`; both are negated together when `det E < 0` so that the
/// quasidegree is positive (the ratios `w_i/d` are unchanged).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub canonical_weights: Vec<BigInt>,
    pub canonical_degree: BigInt,
    pub gcd_factor: BigInt,
    pub reduced_weights: Vec<BigInt>,
    pub reduced_degree: BigInt,
}

fn default_names(n: usize) -> Vec<String> {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if n <= SHORT.len() {
        SHORT[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl InvertiblePolynomial {
    pub fn new(exponents: IntMatrix, variables: Vec<String>) -> Result<Self> {
        if !exponents.is_square() {
            return Err(Error::Shape {
                monomials: exponents.rows(),
                variables: exponents.cols(),
            });
        }
        if variables.len() != exponents.cols() {
            return Err(Error::Shape {
                monomials: exponents.rows(),
                variables: variables.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = variables.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("duplicate variable name '{dup}'"),
            });
        }
        if let Some(x) = exponents.entries().iter().find(|x| x.is_negative()) {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("negative exponent {x}"),
            });
        }
        if exponents.determinant()?.is_zero() {
            return Err(Error::SingularPolynomial);
        }
        Ok(InvertiblePolynomial { exponents, variables })
    }

    /// Uses `x, y, z, w` for up to four variables and `x1, …, xn` beyond.
    pub fn from_matrix(exponents: IntMatrix) -> Result<Self> {
        let names = default_names(exponents.cols());
        Self::new(exponents, names)
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        Self::from_matrix(IntMatrix::from_rows(rows)?)
    }

    /// `x_1^{p_1} x_2 + … + x_{m-1}^{p_{m-1}} x_m + x_m^{p_m}`
    pub fn chain(exponents: &[u64]) -> Result<Self> {
        let m = exponents.len();
        let mut rows = vec![vec![0u64; m]; m];
        for (i, &p) in exponents.iter().enumerate() {
            rows[i][i] = p;
            if i + 1 < m {
                rows[i][i + 1] = 1;
            }
        }
        Self::from_rows(&rows)
    }

    /// `x_1^{p_1} x_2 + … + x_m^{p_m} x_1`, `m ≥ 2`.
    pub fn loop_type(exponents: &[u64]) -> Result<Self> {
        let m = exponents.len();
        if m < 2 {
            return Err(Error::Structure("a loop needs at least two variables".into()));
        }
        let mut rows = vec![vec![0u64; m]; m];
        for (i, &p) in exponents.iter().enumerate() {
            rows[i][i] = p;
            rows[i][(i + 1) % m] += 1;
        }
        Self::from_rows(&rows)
    }

    /// Thom–Sebastiani sum in disjoint groups of variables (block-diagonal
    /// exponent matrix); variables are renamed to the defaults.
    pub fn thom_sebastiani(parts: &[InvertiblePolynomial]) -> Result<Self> {
        let n: usize = parts.iter().map(|p| p.n()).sum();
        if n == 0 {
            return Err(Error::Dimension("empty Thom-Sebastiani sum".into()));
        }
        let mut e = IntMatrix::zeros(n, n);
        let mut offset = 0;
        for p in parts {
            for i in 0..p.n() {
                for j in 0..p.n() {
                    e[(offset + i, offset + j)] = p.exponents[(i, j)].clone();
                }
            }
            offset += p.n();
        }
        Self::from_matrix(e)
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn exponents(&self) -> &IntMatrix {
        &self.exponents
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// `det E` (possibly negative, depending on monomial order).
    pub fn determinant(&self) -> BigInt {
        self.exponents.determinant().expect("exponent matrix is square")
    }

    pub fn weights(&self) -> WeightSystem {
        let n = self.n();
        let det = self.determinant();
        let sign = if det.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let canonical_weights: Vec<BigInt> = (0..n)
            .map(|i| {
                let mut m = self.exponents.clone();
                for r in 0..n {
                    m[(r, i)] = BigInt::one();
                }
                m.determinant().expect("square") * &sign
            })
            .collect();
        let canonical_degree = det * &sign;
        let gcd_factor = canonical_weights.iter().fold(BigInt::zero(), |g, w| g.gcd(w));
        WeightSystem {
            reduced_weights: canonical_weights.iter().map(|w| w / &gcd_factor).collect(),
            reduced_degree: &canonical_degree / &gcd_factor,
            canonical_weights,
            canonical_degree,
            gcd_factor,
        }
    }

    /// Berglund–Hübsch transpose: exponent matrix `Eᵀ`, same variable names.
    pub fn transpose(&self) -> Self {
        InvertiblePolynomial {
            exponents: self.exponents.transpose(),
            variables: self.variables.clone(),
        }
    }

    /// Indices of monomials whose support lies inside the variable set `subset`.
    pub fn monomials_supported_in(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| {
                self.exponents
                    .row(i)
                    .iter()
                    .enumerate()
                    .all(|(j, e)| e.is_zero() || subset.contains(&j))
            })
            .collect()
    }

    pub fn decompose(&self) -> AtomicDecomposition {
        decompose::decompose(self)
    }

    /// Representative of the class of `E` under independent permutations of
    /// monomials and variables: the lexicographically smallest matrix with
    /// sorted rows over all column permutations.
    pub fn canonical_form(&self) -> IntMatrix {
        let n = self.n();
        let rows = self.exponents.to_rows();
        let mut best: Option<Vec<Vec<BigInt>>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut visit = |perm: &[usize]| {
            let mut permuted: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| perm.iter().map(|&j| r[j].clone()).collect())
                .collect();
            permuted.sort();
            if best.as_ref().is_none_or(|b| permuted < *b) {
                best = Some(permuted);
            }
        };
        permutations(&mut perm, 0, &mut visit);
        IntMatrix::from_rows(&best.expect("at least one permutation")).expect("nonempty")
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

impl std::str::FromStr for InvertiblePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_polynomial(s)?.polynomial)
    }
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut first = true;
            for (j, e) in self.exponents.row(i).iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.variables[j])?;
                if !e.is_one() {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvertiblePolynomial({self})")
    }
}
