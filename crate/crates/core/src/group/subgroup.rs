//! Subgroups named by the Hermite basis of their scaled lattice.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use super::{GroupElement, GroupPresentation};
use crate::error::{Error, Result};
use crate::linalg::lattice::{intersection, sum};
use crate::linalg::{lattice_basis, lattice_contains, lattice_includes, IntMatrix};

/// Default bound on `|G|` for full subgroup enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 10_000;

/// A subgroup `H = L_H/ℤⁿ` of its owner, named by the Hermite basis of
/// `d·L_H`. Equality and ordering look only at `(order, basis)`.
#[derive(Clone)]
pub struct SubgroupKey {
    owner: Arc<GroupPresentation>,
    basis: IntMatrix,
    order: BigInt,
}

impl SubgroupKey {
    fn new(owner: &Arc<GroupPresentation>, lattice: IntMatrix) -> Result<SubgroupKey> {
        let basis = lattice_basis(&lattice)?;
        if !lattice_includes(owner.lattice(), &basis) {
            return Err(Error::Ownership("lattice is not inside the group".into()));
        }
        let n = owner.dimension();
        let det = basis.determinant()?;
        let (order, rem) = Pow::pow(owner.scale(), n).div_rem(&det);
        if !num_traits::Zero::is_zero(&rem) {
            return Err(Error::Structure("lattice does not contain d·ℤⁿ".into()));
        }
        Ok(SubgroupKey {
            owner: Arc::clone(owner),
            basis,
            order,
        })
    }

    pub fn owner(&self) -> &Arc<GroupPresentation> {
        &self.owner
    }

    /// Hermite basis of `d·L_H`.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// `[G : H]` in the owner.
    pub fn index(&self) -> BigInt {
        self.owner.order() / &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn is_full(&self) -> bool {
        &self.order == self.owner.order()
    }

    fn check_owner(&self, other: &SubgroupKey) -> Result<()> {
        if !self.owner.same_group(&other.owner) {
            return Err(Error::Ownership("subgroups of different groups".into()));
        }
        Ok(())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &SubgroupKey) -> bool {
        self.owner.same_group(&other.owner) && lattice_includes(&self.basis, &other.basis)
    }

    pub fn contains_element(&self, g: &GroupElement) -> bool {
        g.coords().len() == self.owner.dimension()
            && g.coords()
                .scaled_integers(self.owner.scale())
                .map(|v| lattice_contains(&self.basis, &v))
                .unwrap_or(false)
    }

    /// `H + K`.
    pub fn join(&self, other: &SubgroupKey) -> Result<SubgroupKey> {
        self.check_owner(other)?;
        SubgroupKey::new(&self.owner, sum(&self.basis, &other.basis)?)
    }

    /// `H ∩ K`.
    pub fn meet(&self, other: &SubgroupKey) -> Result<SubgroupKey> {
        self.check_owner(other)?;
        SubgroupKey::new(
            &self.owner,
            intersection(&self.basis, &other.basis, self.owner.scale())?,
        )
    }

    /// The same subgroup owned by `group`, which must contain it (used to
    /// move keys between a group and a promoted subgroup of it).
    pub fn in_group(&self, group: &Arc<GroupPresentation>) -> Result<SubgroupKey> {
        if group.scale() != self.owner.scale() || group.membership_matrix() != self.owner.membership_matrix()
        {
            return Err(Error::Ownership("unrelated groups".into()));
        }
        SubgroupKey::new(group, self.basis.clone())
    }

    /// `H` as a group in its own right.
    pub fn as_group(&self) -> Arc<GroupPresentation> {
        if self.is_full() {
            return Arc::clone(&self.owner);
        }
        self.owner.promote(self.basis.clone())
    }

    /// `H̃ ⊆ G*`: the characters of the opposite full group that vanish on
    /// `H`, via `L_{H̃} = (P·L_H)^♯`.
    pub fn dual_subgroup(&self) -> Result<SubgroupKey> {
        self.dual_subgroup_in(&self.owner.opposite())
    }

    /// [`dual_subgroup`](Self::dual_subgroup) with the opposite full group
    /// supplied by the caller.
    pub fn dual_subgroup_in(&self, target: &Arc<GroupPresentation>) -> Result<SubgroupKey> {
        let p = self.owner.membership_matrix();
        if !target.is_full()
            || target.scale() != self.owner.scale()
            || target.membership_matrix() != p.transpose()
        {
            return Err(Error::Ownership(
                "target is not the opposite symmetry group".into(),
            ));
        }
        let d = self.owner.scale();
        let image = p.mul(&self.basis)?;
        SubgroupKey::new(target, image.scaled_inverse_transpose(&(d * d))?)
    }
}

impl PartialEq for SubgroupKey {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.basis == other.basis
    }
}

impl Eq for SubgroupKey {}

impl Hash for SubgroupKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for SubgroupKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubgroupKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

impl fmt::Debug for SubgroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(order {}, {})", self.order, self.basis)
    }
}

impl GroupPresentation {
    pub fn full_key(self: &Arc<Self>) -> SubgroupKey {
        SubgroupKey {
            owner: Arc::clone(self),
            basis: self.lattice().clone(),
            order: self.order().clone(),
        }
    }

    pub fn trivial_key(self: &Arc<Self>) -> SubgroupKey {
        SubgroupKey {
            owner: Arc::clone(self),
            basis: IntMatrix::scalar(self.dimension(), self.scale().clone()),
            order: BigInt::one(),
        }
    }

    /// Key of the subgroup whose scaled lattice is spanned by `lattice`.
    pub fn subgroup_from_lattice(self: &Arc<Self>, lattice: IntMatrix) -> Result<SubgroupKey> {
        SubgroupKey::new(self, lattice)
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated_by(self: &Arc<Self>, gens: &[GroupElement]) -> Result<SubgroupKey> {
        let n = self.dimension();
        let mut columns: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::from(0); n];
                e[j] = self.scale().clone();
                e
            })
            .collect();
        for g in gens {
            let foreign = g.owner().scale() != self.scale()
                || g.owner().membership_matrix() != self.membership_matrix();
            if foreign || !self.contains_vector(g.coords()) {
                return Err(Error::Ownership(format!("{g} is not an element of this group")));
            }
            columns.push(g.scaled_coords());
        }
        SubgroupKey::new(self, IntMatrix::from_columns(&columns)?)
    }

    /// `G^I`: elements whose coordinates in `I` are integral.
    pub fn isotropy_subgroup(self: &Arc<Self>, subset: &[usize]) -> Result<SubgroupKey> {
        let n = self.dimension();
        if let Some(&i) = subset.iter().find(|&&i| i >= n) {
            return Err(Error::Bounds { index: i, n });
        }
        let diag: Vec<BigInt> = (0..n)
            .map(|i| {
                if subset.contains(&i) {
                    self.scale().clone()
                } else {
                    BigInt::one()
                }
            })
            .collect();
        let fixed = IntMatrix::diagonal(&diag);
        SubgroupKey::new(self, intersection(self.lattice(), &fixed, self.scale())?)
    }

    /// All subgroups, sorted by `(order, basis)`.
    pub fn enumerate_subgroups(self: &Arc<Self>, bound: &BigInt) -> Result<Vec<SubgroupKey>> {
        if self.order() > bound {
            return Err(Error::Resource(format!(
                "group of order {} exceeds the enumeration bound {bound}",
                self.order()
            )));
        }
        self.closure(None)
    }

    /// All subgroups of order at most `limit`. Needs only the elements of
    /// small order, so it also works in large groups.
    pub fn subgroups_of_order_at_most(self: &Arc<Self>, limit: &BigInt) -> Result<Vec<SubgroupKey>> {
        self.closure(Some(limit))
    }

    fn closure(self: &Arc<Self>, limit: Option<&BigInt>) -> Result<Vec<SubgroupKey>> {
        let small = |k: &SubgroupKey| limit.is_none_or(|l| k.order() <= l);
        let mut cyclic: BTreeSet<SubgroupKey> = BTreeSet::new();
        for g in self.elements()? {
            if limit.is_none_or(|l| &g.order() <= l) {
                cyclic.insert(self.subgroup_generated_by(std::slice::from_ref(&g))?);
            }
        }
        let cyclic: Vec<SubgroupKey> = cyclic.into_iter().collect();
        let mut seen: HashSet<SubgroupKey> = cyclic.iter().cloned().collect();
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if h.contains(c) {
                        continue;
                    }
                    let j = h.join(c)?;
                    if small(&j) && !seen.contains(&j) {
                        seen.insert(j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<SubgroupKey> = seen.into_iter().collect();
        all.sort();
        Ok(all)
    }
}
