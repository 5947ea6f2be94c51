//! Diagonal symmetry groups as quotient lattices.
//!
//! The symmetry group of `f` is `G_f = {β ∈ ℚⁿ/ℤⁿ : E·β ∈ ℤⁿ}` and that of
//! the transpose is `G_f̃ = {α ∈ ℚⁿ/ℤⁿ : Eᵀ·α ∈ ℤⁿ}`. An element is stored as
//! its exponent vector (the diagonal entries are `exp(2πi·β_j)`), reduced
//! into `[0, 1)`. With `d = |det E|` every group and subgroup in play is
//! `L/ℤⁿ` for a lattice `ℤⁿ ⊆ L ⊆ (1/d)ℤⁿ`, and it is named by the Hermite
//! basis of the integer lattice `d·L`.

mod subgroup;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{lattice_basis, lattice_contains, smith_normal_form, IntMatrix, RationalVector};
use crate::polynomial::InvertiblePolynomial;

pub use subgroup::{SubgroupKey, DEFAULT_MAX_GROUP_ORDER};

/// Which of the two dual groups a presentation realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `G_f`: `E·β` integral.
    Direct,
    /// `G_f̃`: `Eᵀ·α` integral.
    Transposed,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Direct => Side::Transposed,
            Side::Transposed => Side::Direct,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::Direct => "direct",
            Side::Transposed => "transposed",
        }
    }
}

/// A finite abelian group `L/ℤⁿ` attached to an exponent matrix.
///
/// The full symmetry groups come from [`symmetry_group`]; a subgroup can be
/// promoted to a group of its own with [`SubgroupKey::as_group`] (used for
/// restriction in the Burnside ring).
pub struct GroupPresentation {
    side: Side,
    exponents: IntMatrix,
    scale: BigInt,
    lattice: IntMatrix,
    order: BigInt,
    invariant_factors: Vec<BigInt>,
    // columns generate the cyclic factors: element = V·(k/s) mod 1
    coordinate_basis: IntMatrix,
    coordinate_inverse: IntMatrix,
    full: bool,
}

pub fn symmetry_group(f: &InvertiblePolynomial, side: Side) -> Arc<GroupPresentation> {
    GroupPresentation::symmetry(f.exponents(), side)
}

impl GroupPresentation {
    pub(crate) fn symmetry(exponents: &IntMatrix, side: Side) -> Arc<GroupPresentation> {
        let membership = match side {
            Side::Direct => exponents.clone(),
            Side::Transposed => exponents.transpose(),
        };
        let scale = exponents.determinant().expect("square").abs();
        // d·P⁻¹ is integral; its column lattice is d·(P⁻¹ℤⁿ).
        let generators = membership
            .scaled_inverse(&scale)
            .expect("nonsingular exponent matrix");
        let lattice = lattice_basis(&generators).expect("full rank");
        Arc::new(Self::build(side, exponents.clone(), scale, lattice, true))
    }

    fn build(side: Side, exponents: IntMatrix, scale: BigInt, lattice: IntMatrix, full: bool) -> Self {
        // L/ℤⁿ ≅ ℤⁿ / R ℤⁿ with R = d·B⁻¹.
        let relations = lattice.scaled_inverse(&scale).expect("lattice contains d·ℤⁿ");
        let snf = smith_normal_form(&relations).expect("nonsingular relations");
        let invariant_factors = snf.invariant_factors();
        let order = invariant_factors.iter().product();
        let coordinate_inverse = snf.v.unimodular_inverse().expect("unimodular");
        GroupPresentation {
            side,
            exponents,
            scale,
            lattice,
            order,
            invariant_factors,
            coordinate_basis: snf.v,
            coordinate_inverse,
            full,
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The exponent matrix `E` of the polynomial on the direct side.
    pub fn exponents(&self) -> &IntMatrix {
        &self.exponents
    }

    /// `P` with `G = {v : P·v ∈ ℤⁿ}`: `E` on the direct side, `Eᵀ` on the
    /// transposed side.
    pub fn membership_matrix(&self) -> IntMatrix {
        match self.side {
            Side::Direct => self.exponents.clone(),
            Side::Transposed => self.exponents.transpose(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.exponents.rows()
    }

    /// `d = |det E|`, the common denominator of all elements.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Hermite basis of `d·L`.
    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Invariant factors greater than one.
    pub fn nontrivial_invariant_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|s| !s.is_one())
            .cloned()
            .collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.iter().filter(|s| !s.is_one()).count() <= 1
    }

    /// Whether this is a full symmetry group rather than a promoted subgroup.
    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Same underlying set of vectors (side labels may differ: the direct
    /// group of `Eᵀ` is the transposed group of `E`).
    pub fn same_group(&self, other: &GroupPresentation) -> bool {
        std::ptr::eq(self, other) || (self.scale == other.scale && self.lattice == other.lattice)
    }

    /// The full symmetry group on the other side.
    pub fn opposite(&self) -> Arc<GroupPresentation> {
        GroupPresentation::symmetry(&self.exponents, self.side.opposite())
    }

    /// The full symmetry group this group lives in.
    pub fn ambient(self: &Arc<Self>) -> Arc<GroupPresentation> {
        if self.full {
            Arc::clone(self)
        } else {
            GroupPresentation::symmetry(&self.exponents, self.side)
        }
    }

    pub(crate) fn promote(&self, lattice: IntMatrix) -> Arc<GroupPresentation> {
        Arc::new(Self::build(
            self.side,
            self.exponents.clone(),
            self.scale.clone(),
            lattice,
            false,
        ))
    }

    fn check_len(&self, v: &RationalVector) -> Result<()> {
        if v.len() != self.dimension() {
            return Err(Error::Dimension(format!(
                "vector of length {} in a group on {} coordinates",
                v.len(),
                self.dimension()
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &RationalVector) -> bool {
        if v.len() != self.dimension() {
            return false;
        }
        match v.scaled_integers(&self.scale) {
            Ok(scaled) => lattice_contains(&self.lattice, &scaled),
            Err(_) => false,
        }
    }

    /// The element with exponent vector `v` (taken mod 1).
    pub fn element(self: &Arc<Self>, v: &RationalVector) -> Result<GroupElement> {
        self.check_len(v)?;
        if !self.contains_vector(v) {
            return Err(Error::Ownership(format!("{v} is not in the group")));
        }
        Ok(GroupElement {
            owner: Arc::clone(self),
            coords: v.mod_one(),
        })
    }

    pub fn identity(self: &Arc<Self>) -> GroupElement {
        GroupElement {
            owner: Arc::clone(self),
            coords: RationalVector::zero(self.dimension()),
        }
    }

    /// `σ_j`: the columns of `P⁻¹` reduced mod 1 (full groups), which
    /// generate the group.
    pub fn generators(self: &Arc<Self>) -> Vec<GroupElement> {
        let scaled = self
            .membership_matrix()
            .scaled_inverse(&self.scale)
            .expect("nonsingular");
        (0..self.dimension())
            .map(|j| {
                let v = RationalVector::new(scaled.column(j), self.scale.clone()).expect("d > 0");
                GroupElement {
                    owner: Arc::clone(self),
                    coords: v.mod_one(),
                }
            })
            .filter(|g| self.full || self.contains_vector(&g.coords))
            .collect()
    }

    /// The element with coordinates `k` in the cyclic decomposition
    /// `⊕ ℤ/s_i` given by the invariant factors.
    pub fn from_coordinates(self: &Arc<Self>, k: &[BigInt]) -> Result<GroupElement> {
        if k.len() != self.dimension() {
            return Err(Error::Dimension("coordinate vector length".into()));
        }
        let scaled: Vec<BigInt> = k
            .iter()
            .zip(&self.invariant_factors)
            .map(|(ki, si)| ki.mod_floor(si) * (&self.scale / si))
            .collect();
        let v = self.coordinate_basis.mul_vec(&scaled)?;
        Ok(GroupElement {
            owner: Arc::clone(self),
            coords: RationalVector::new(v, self.scale.clone())?.mod_one(),
        })
    }

    /// Inverse of [`from_coordinates`](Self::from_coordinates).
    pub fn coordinates(&self, g: &GroupElement) -> Result<Vec<BigInt>> {
        if !self.contains_vector(&g.coords) {
            return Err(Error::Ownership("element is not in the group".into()));
        }
        let scaled = g.coords.scaled_integers(&self.scale)?;
        let w = self.coordinate_inverse.mul_vec(&scaled)?;
        w.iter()
            .zip(&self.invariant_factors)
            .map(|(x, s)| {
                let (q, r) = (x * s).div_rem(&self.scale);
                debug_assert!(r.is_zero());
                Ok(q.mod_floor(s))
            })
            .collect()
    }

    /// Every element, in mixed-radix order of the cyclic coordinates.
    pub fn elements(self: &Arc<Self>) -> Result<Vec<GroupElement>> {
        let total = self
            .order
            .to_usize()
            .filter(|&t| t <= 50_000_000)
            .ok_or_else(|| Error::Resource(format!("group of order {} is too large to list", self.order)))?;
        let radix: Vec<usize> = self
            .invariant_factors
            .iter()
            .map(|s| s.to_usize().expect("bounded by order"))
            .collect();
        let mut out = Vec::with_capacity(total);
        let mut k = vec![0usize; radix.len()];
        for _ in 0..total {
            let big: Vec<BigInt> = k.iter().map(|&x| BigInt::from(x)).collect();
            out.push(self.from_coordinates(&big)?);
            for (ki, &r) in k.iter_mut().zip(&radix) {
                *ki += 1;
                if *ki < r {
                    break;
                }
                *ki = 0;
            }
        }
        Ok(out)
    }

    /// The monodromy `h = (w̄_1/d̄, …, w̄_n/d̄)` of the polynomial whose
    /// symmetry group sits on this side (`f` for direct, `f̃` for transposed).
    pub fn monodromy(self: &Arc<Self>) -> Result<GroupElement> {
        let e = match self.side {
            Side::Direct => self.exponents.clone(),
            Side::Transposed => self.exponents.transpose(),
        };
        let f = InvertiblePolynomial::from_matrix(e)?;
        let w = f.weights();
        let v = RationalVector::new(w.reduced_weights, w.reduced_degree)?;
        self.element(&v)
    }

    /// All `g` with `c·g = target`, solved in the cyclic coordinates.
    pub fn roots(self: &Arc<Self>, target: &GroupElement, c: &BigInt) -> Result<Vec<GroupElement>> {
        let k = self.coordinates(target)?;
        let mut per_factor: Vec<Vec<BigInt>> = Vec::new();
        for (ki, si) in k.iter().zip(&self.invariant_factors) {
            let g = c.gcd(si);
            if !ki.is_multiple_of(&g) {
                return Ok(Vec::new());
            }
            let m = si / &g;
            let base = if m.is_one() {
                BigInt::zero()
            } else {
                let inv = mod_inverse(&(c / &g).mod_floor(&m), &m).expect("coprime after division");
                ((ki / &g) * inv).mod_floor(&m)
            };
            let count = g
                .to_usize()
                .ok_or_else(|| Error::Resource("too many roots".into()))?;
            per_factor.push((0..count).map(|t| &base + &m * BigInt::from(t)).collect());
        }
        let mut out = vec![Vec::new()];
        for options in per_factor {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x.clone());
                        p
                    })
                })
                .collect();
        }
        let mut roots = out
            .iter()
            .map(|k| self.from_coordinates(k))
            .collect::<Result<Vec<_>>>()?;
        roots.sort_by_key(GroupElement::scaled_coords);
        Ok(roots)
    }

    /// `⟨λ, μ⟩ = λᵀ·P_μ·μ mod 1` for elements of mutually dual groups
    /// (`P_λ = P_μᵀ`); with `λ ∈ G_f̃` and `μ ∈ G_f` this is `αᵀEβ`.
    pub fn pairing(lambda: &GroupElement, mu: &GroupElement) -> Result<BigRational> {
        let p_mu = mu.owner.membership_matrix();
        if lambda.owner.membership_matrix() != p_mu.transpose() {
            return Err(Error::Ownership(
                "pairing needs elements of the two dual groups of one exponent matrix".into(),
            ));
        }
        let d = mu.owner.scale.clone();
        let a = lambda.coords.scaled_integers(&d)?;
        let b = mu.coords.scaled_integers(&d)?;
        let pb = p_mu.mul_vec(&b)?;
        let num: BigInt = a.iter().zip(&pb).map(|(x, y)| x * y).sum();
        let den = &d * &d;
        Ok(BigRational::new(num.mod_floor(&den), den))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupPresentation")
            .field("side", &self.side)
            .field("exponents", &self.exponents)
            .field("order", &self.order)
            .field("invariant_factors", &self.invariant_factors)
            .field("full", &self.full)
            .finish()
    }
}

/// An element of a [`GroupPresentation`], stored as its exponent vector in
/// `[0, 1)ⁿ` in lowest terms.
#[derive(Clone)]
pub struct GroupElement {
    owner: Arc<GroupPresentation>,
    coords: RationalVector,
}

impl GroupElement {
    pub fn owner(&self) -> &Arc<GroupPresentation> {
        &self.owner
    }

    pub fn coords(&self) -> &RationalVector {
        &self.coords
    }

    /// `d·coords` as integers.
    pub fn scaled_coords(&self) -> Vec<BigInt> {
        self.coords
            .scaled_integers(&self.owner.scale)
            .expect("denominator divides d")
    }

    fn check_owner(&self, other: &GroupElement) -> Result<()> {
        if !self.owner.same_group(&other.owner) {
            return Err(Error::Ownership("elements of different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_owner(other)?;
        Ok(GroupElement {
            owner: Arc::clone(&self.owner),
            coords: self.coords.add(&other.coords)?.mod_one(),
        })
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement {
            owner: Arc::clone(&self.owner),
            coords: self.coords.neg().mod_one(),
        }
    }

    /// `k·g` (the group is written additively).
    pub fn times(&self, k: &BigInt) -> GroupElement {
        GroupElement {
            owner: Arc::clone(&self.owner),
            coords: self.coords.scale(k).mod_one(),
        }
    }

    pub fn order(&self) -> BigInt {
        self.coords.denominator().clone()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.is_integral()
    }

    /// The same vector viewed in another group containing it.
    pub fn in_group(&self, group: &Arc<GroupPresentation>) -> Result<GroupElement> {
        group.element(&self.coords)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.owner.same_group(&other.owner)
    }
}

impl Eq for GroupElement {}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords)
    }
}

/// The monodromy transformation `h_f ∈ G_f`.
pub fn monodromy_element(f: &InvertiblePolynomial) -> GroupElement {
    symmetry_group(f, Side::Direct)
        .monodromy()
        .expect("the monodromy preserves f")
}

/// All `g ∈ G_f` with `g^{c_f} = h_f`; empty exactly when `G_f` is not
/// cyclic.
pub fn geometric_roots(f: &InvertiblePolynomial) -> Vec<GroupElement> {
    let h = monodromy_element(f);
    let c = f.weights().gcd_factor;
    let g = Arc::clone(h.owner());
    g.roots(&h, &c).expect("h lies in G_f")
}

/// The geometric roots that generate `G_f`. Not every root does: for
/// `x³ + x·y²` the element `2h` of order 3 also satisfies `g² = h`.
pub fn generating_roots(f: &InvertiblePolynomial) -> Vec<GroupElement> {
    geometric_roots(f)
        .into_iter()
        .filter(|g| &g.order() == g.owner().order())
        .collect()
}
