//! The Burnside ring `K(G)` of a finite abelian group.
//!
//! Every subgroup of an abelian group is normal, so the orbit types are
//! the `[G/H]` for the subgroups `H`, one per [`SubgroupKey`]. Products,
//! restriction and marks follow from counting cosets:
//! `[G/H]·[G/K] = [G : H+K]·[G/(H∩K)]`, and `G/H` restricted to `K` is
//! `|G/H| / |K/(K∩H)|` copies of `K/(K∩H)`.

mod cyclotomic;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupPresentation, Side, SubgroupKey};
use crate::json;

pub use cyclotomic::CyclotomicProduct;

/// A virtual `G`-set `Σ c_H [G/H]`.
#[derive(Clone)]
pub struct BurnsideElement {
    owner: Arc<GroupPresentation>,
    terms: BTreeMap<SubgroupKey, BigInt>,
}

impl BurnsideElement {
    pub fn zero(owner: &Arc<GroupPresentation>) -> Self {
        BurnsideElement {
            owner: Arc::clone(owner),
            terms: BTreeMap::new(),
        }
    }

    /// `[G/G]`, the one-point set.
    pub fn one(owner: &Arc<GroupPresentation>) -> Self {
        Self::basis(&owner.full_key())
    }

    /// `[G/H]` over the owner of `key`.
    pub fn basis(key: &SubgroupKey) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key.clone(), BigInt::one());
        BurnsideElement {
            owner: Arc::clone(key.owner()),
            terms,
        }
    }

    /// `Σ c·[G/H]` over `owner`; every key must belong to it.
    pub fn from_terms<I>(owner: &Arc<GroupPresentation>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubgroupKey, BigInt)>,
    {
        let mut out = Self::zero(owner);
        for (k, c) in terms {
            if !owner.same_group(k.owner()) {
                return Err(Error::Ownership("orbit type of another group".into()));
            }
            out.accumulate(k, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, key: SubgroupKey, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn owner(&self) -> &Arc<GroupPresentation> {
        &self.owner
    }

    /// Nonzero terms, sorted by `(order, basis)`.
    pub fn terms(&self) -> &BTreeMap<SubgroupKey, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, key: &SubgroupKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_owner(&self, other: &BurnsideElement) -> Result<()> {
        if !self.owner.same_group(&other.owner) {
            return Err(Error::Ownership("Burnside elements of different groups".into()));
        }
        Ok(())
    }

    fn check_subgroup(&self, k: &SubgroupKey) -> Result<()> {
        if !self.owner.same_group(k.owner()) {
            return Err(Error::Ownership("subgroup of another group".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &BurnsideElement) -> Result<Self> {
        self.check_owner(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BurnsideElement) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(&self.owner);
        for (key, c) in &self.terms {
            out.accumulate(key.clone(), c * k);
        }
        out
    }

    /// Cartesian product of virtual `G`-sets.
    pub fn multiply(&self, other: &BurnsideElement) -> Result<Self> {
        self.check_owner(other)?;
        let mut out = Self::zero(&self.owner);
        for (h, a) in &self.terms {
            for (k, b) in &other.terms {
                let index = h.join(k)?.index();
                out.accumulate(h.meet(k)?, a * b * index);
            }
        }
        Ok(out)
    }

    /// `Res^G_K`, owned by `K` promoted to a group.
    pub fn restrict(&self, k: &SubgroupKey) -> Result<Self> {
        self.check_subgroup(k)?;
        let target = k.as_group();
        let mut out = Self::zero(&target);
        let g_order = self.owner.order();
        for (h, c) in &self.terms {
            let m = k.meet(h)?;
            let (copies, rem) = (g_order * m.order()).div_rem(&(h.order() * k.order()));
            debug_assert!(rem.is_zero());
            out.accumulate(m.in_group(&target)?, c * copies);
        }
        Ok(out)
    }

    /// `Ind_K^G` for `K` = the owner, a subgroup of `group`.
    pub fn induce(&self, group: &Arc<GroupPresentation>) -> Result<Self> {
        let mut out = Self::zero(group);
        for (u, c) in &self.terms {
            out.accumulate(u.in_group(group)?, c.clone());
        }
        Ok(out)
    }

    /// Number of `K`-fixed points.
    pub fn mark(&self, k: &SubgroupKey) -> Result<BigInt> {
        self.check_subgroup(k)?;
        Ok(self
            .terms
            .iter()
            .filter(|(h, _)| h.contains(k))
            .map(|(h, c)| c * h.index())
            .sum())
    }

    /// `D_G`: replaces each `[G/H]` by `[G*/H̃]`, keeping coefficients.
    pub fn saito_dual(&self) -> Result<Self> {
        self.saito_dual_in(&self.owner.opposite())
    }

    /// [`saito_dual`](Self::saito_dual) into a given opposite group.
    pub fn saito_dual_in(&self, target: &Arc<GroupPresentation>) -> Result<Self> {
        if !self.owner.is_full() {
            return Err(Error::Precondition(
                "the Saito dual is defined over a full symmetry group".into(),
            ));
        }
        let mut out = Self::zero(target);
        for (h, c) in &self.terms {
            out.accumulate(h.dual_subgroup_in(target)?, c.clone());
        }
        Ok(out)
    }

    /// Zeta function of the permutation `g` acting on the virtual set:
    /// `g` permutes `G/H` in cycles of length `r = |H + ⟨g⟩| / |H|`.
    pub fn element_zeta(&self, g: &GroupElement) -> Result<CyclotomicProduct> {
        let cyclic = self.owner.subgroup_generated_by(std::slice::from_ref(g))?;
        let mut factors = Vec::with_capacity(self.terms.len());
        for (h, c) in &self.terms {
            let r = h.join(&cyclic)?.order() / h.order();
            let cycles = h.index() / &r;
            factors.push((r, c * cycles));
        }
        CyclotomicProduct::new(g.order(), factors)
    }

    /// Total number of points `Σ c·|G/H|`.
    pub fn cardinality(&self) -> BigInt {
        self.terms.iter().map(|(h, c)| c * h.index()).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| json!({ "subgroup": json::subgroup(k), "coeff": json::integer(c) }))
                .collect(),
        )
    }
}

/// `Σ s_m [ℤ_d/ℤ_{d/m}]`: inverse of [`BurnsideElement::element_zeta`] at a
/// generator of the cyclic group `group` of order `d = φ.modulus`.
pub fn burnside_from_cyclotomic(
    phi: &CyclotomicProduct,
    group: &Arc<GroupPresentation>,
) -> Result<BurnsideElement> {
    if !group.is_cyclic() || group.order() != phi.modulus() {
        return Err(Error::Structure(format!(
            "need a cyclic group of order {}, got invariant factors {:?}",
            phi.modulus(),
            group.nontrivial_invariant_factors()
        )));
    }
    let generator = cyclic_generator(group)?;
    let mut terms = Vec::new();
    for (m, s) in phi.factors() {
        // m·g generates the subgroup of order d/m, which has index m.
        let h = group.subgroup_generated_by(&[generator.times(m)])?;
        terms.push((h, s.clone()));
    }
    BurnsideElement::from_terms(group, terms)
}

/// A generator of a cyclic group: the last cyclic coordinate set to 1.
pub fn cyclic_generator(group: &Arc<GroupPresentation>) -> Result<GroupElement> {
    if !group.is_cyclic() {
        return Err(Error::Structure("group is not cyclic".into()));
    }
    let n = group.dimension();
    let mut k = vec![BigInt::zero(); n];
    k[n - 1] = BigInt::one();
    group.from_coordinates(&k)
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.owner.same_group(&other.owner) && self.terms == other.terms
    }
}

impl Eq for BurnsideElement {}

fn group_label(g: &GroupPresentation) -> &'static str {
    match (g.is_full(), g.side()) {
        (true, Side::Direct) => "G",
        (true, Side::Transposed) => "G*",
        (false, _) => "K",
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let label = group_label(&self.owner);
        let mut seen_orders: BTreeMap<&BigInt, usize> = BTreeMap::new();
        for k in self.terms.keys() {
            *seen_orders.entry(k.order()).or_default() += 1;
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write!(f, "[{label}/H(order {}", k.order())?;
            if seen_orders[k.order()] > 1 {
                write!(f, ", basis {}", k.basis())?;
            }
            write!(f, ")]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl CyclotomicProduct {
    pub fn to_json(&self) -> Value {
        let factors: serde_json::Map<String, Value> = self
            .factors()
            .iter()
            .map(|(m, s)| (m.to_string(), json::integer(s)))
            .collect();
        json!({ "d": json::integer(self.modulus()), "factors": factors })
    }
}
