//! Equivariant monodromy zeta functions and the duality checks.
//!
//! The Milnor fibre `V_f = f⁻¹(1)` is split along the tori
//! `(ℂ*)^I = {x_i ≠ 0 ⇔ i ∈ I}`. A stratum is nonempty only when exactly
//! `|I|` monomials are supported in `I`; then `G` acts on it with isotropy
//! `G^I`, the orbit space has Euler characteristic `(−1)^{|I|−1}` and the
//! stratum itself has `(−1)^{|I|−1}·|det E_I|`. Hence
//! `ζ_f^G = Σ_I (−1)^{|I|−1} [G/G^I]`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::burnside::{BurnsideElement, CyclotomicProduct};
use crate::error::{Error, Result};
use crate::group::{symmetry_group, GroupElement, GroupPresentation, Side, SubgroupKey};
use crate::json;
use crate::polynomial::InvertiblePolynomial;

/// One nonempty stratum `V_f ∩ (ℂ*)^I`.
#[derive(Clone, Debug)]
pub struct SubsetTerm {
    /// `I`, zero-based and increasing.
    pub subset: Vec<usize>,
    /// `χ((V_f ∩ (ℂ*)^I)/G) = (−1)^{|I|−1}`.
    pub coefficient: BigInt,
    /// `χ(V_f ∩ (ℂ*)^I) = (−1)^{|I|−1}·|det E_I|`, kept for audit.
    pub euler_characteristic: BigInt,
    /// `|det E_Ī|`, which should equal `|G^I|`.
    pub complement_determinant: BigInt,
    pub isotropy: SubgroupKey,
}

impl SubsetTerm {
    pub fn to_json(&self, f: &InvertiblePolynomial) -> Value {
        let names: Vec<&str> = self.subset.iter().map(|&i| f.variables()[i].as_str()).collect();
        json!({
            "subset": names,
            "coefficient": json::integer(&self.coefficient),
            "eulerCharacteristic": json::integer(&self.euler_characteristic),
            "complementDeterminant": json::integer(&self.complement_determinant),
            "isotropy": json::subgroup(&self.isotropy),
        })
    }
}

#[derive(Clone, Debug)]
pub struct ZetaReport {
    pub polynomial: InvertiblePolynomial,
    pub group: Arc<GroupPresentation>,
    /// `ζ_f^G`.
    pub equivariant: BurnsideElement,
    /// `ζ̃_f^G = ζ_f^G − [G/G]`.
    pub reduced: BurnsideElement,
    /// `ζ_f(t)`, the zeta function of the monodromy `h_f`.
    pub classical: CyclotomicProduct,
    pub terms: Vec<SubsetTerm>,
}

impl ZetaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "group": json::group(&self.group),
            "equivariant": self.equivariant.to_json(),
            "reduced": self.reduced.to_json(),
            "classical": self.classical.to_json(),
            "terms": self.terms.iter().map(|t| t.to_json(&self.polynomial)).collect::<Vec<_>>(),
        })
    }
}

/// Nonempty subsets of `{0, …, n−1}` in order of size, then lexicographic.
fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// `ζ_f^G` over `G_f`.
pub fn equivariant_zeta(f: &InvertiblePolynomial) -> Result<ZetaReport> {
    equivariant_zeta_on(f, &symmetry_group(f, Side::Direct))
}

/// `ζ_f^G` over a given full presentation of `G_f`, e.g. the transposed
/// group of `Eᵀ` when `f` is itself a transpose.
pub fn equivariant_zeta_on(f: &InvertiblePolynomial, group: &Arc<GroupPresentation>) -> Result<ZetaReport> {
    if !group.is_full() || &group.membership_matrix() != f.exponents() {
        return Err(Error::Ownership(
            "group is not the symmetry group of the polynomial".into(),
        ));
    }
    let n = f.n();
    let e = f.exponents();
    let mut equivariant = BurnsideElement::zero(group);
    let mut terms = Vec::new();
    for subset in subsets(n) {
        let rows = f.monomials_supported_in(&subset);
        if rows.len() != subset.len() {
            continue;
        }
        let sign = if subset.len() % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let det_i = e.submatrix(&rows, &subset)?.determinant()?.abs();
        let complement_det = if subset.len() == n {
            BigInt::one()
        } else {
            let other_rows: Vec<usize> = (0..n).filter(|r| !rows.contains(r)).collect();
            let other_cols: Vec<usize> = (0..n).filter(|c| !subset.contains(c)).collect();
            e.submatrix(&other_rows, &other_cols)?.determinant()?.abs()
        };
        let isotropy = group.isotropy_subgroup(&subset)?;
        equivariant = equivariant.add(&BurnsideElement::basis(&isotropy).scale(&sign))?;
        terms.push(SubsetTerm {
            euler_characteristic: &sign * det_i,
            coefficient: sign,
            complement_determinant: complement_det,
            subset,
            isotropy,
        });
    }
    let reduced = equivariant.sub(&BurnsideElement::one(group))?;
    let classical = equivariant.element_zeta(&group.monodromy()?)?;
    Ok(ZetaReport {
        polynomial: f.clone(),
        group: Arc::clone(group),
        equivariant,
        reduced,
        classical,
        terms,
    })
}

/// `ζ_f^H` for a subgroup `H ⊆ G_f`, from the strata: the `G`-orbit
/// `G/G^I` splits into `[G : G^I + H]` orbits `H/(H ∩ G^I)`.
pub fn equivariant_zeta_over(f: &InvertiblePolynomial, h: &SubgroupKey) -> Result<BurnsideElement> {
    let report = equivariant_zeta_on(f, &h.owner().ambient())?;
    let target = h.as_group();
    let mut out = BurnsideElement::zero(&target);
    for t in &report.terms {
        let iso = t.isotropy.in_group(h.owner())?;
        let copies = h.join(&iso)?.index();
        let stab = h.meet(&iso)?.in_group(&target)?;
        out = out.add(&BurnsideElement::basis(&stab).scale(&(&t.coefficient * copies)))?;
    }
    Ok(out)
}

/// `ζ_f(t)`.
pub fn classical_zeta(f: &InvertiblePolynomial) -> Result<CyclotomicProduct> {
    Ok(equivariant_zeta(f)?.classical)
}

/// `φ*(t) = ∏ (1 − t^{d/m})^{−s_m}`.
pub fn classical_saito_dual(phi: &CyclotomicProduct) -> CyclotomicProduct {
    phi.saito_dual()
}

/// `μ = ∏ (d − w_i)/w_i`. Only the product has to be an integer.
pub fn milnor_number(f: &InvertiblePolynomial) -> Result<BigInt> {
    let decomposition = f.decompose();
    if !decomposition.non_degenerate {
        return Err(Error::Degenerate(format!(
            "{f} is not a sum of loops and chains; the singularity may not be isolated"
        )));
    }
    let w = f.weights();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for wi in &w.canonical_weights {
        num *= &w.canonical_degree - wi;
        den *= wi;
    }
    if den.is_zero() || !(&num % &den).is_zero() {
        return Err(Error::Degenerate(format!(
            "∏(d − w_i)/w_i = {num}/{den} is not an integer for {f}"
        )));
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationKind {
    Theorem,
    Corollary,
}

impl VerificationKind {
    pub fn label(self) -> &'static str {
        match self {
            VerificationKind::Theorem => "theorem",
            VerificationKind::Corollary => "corollary",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub kind: VerificationKind,
    pub lhs: Value,
    pub rhs: Value,
    pub lhs_text: String,
    pub rhs_text: String,
    pub equal: bool,
    /// Entries where the two sides differ; `None` when equal.
    pub witness: Option<Value>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.label(),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "lhsText": self.lhs_text,
            "rhsText": self.rhs_text,
            "equal": self.equal,
            "witness": self.witness.clone().unwrap_or(Value::Null),
        })
    }
}

/// Both sides of the theorem, kept for callers that want the audit trail.
#[derive(Debug, Clone)]
pub struct TheoremCheck {
    pub direct: ZetaReport,
    pub transposed: ZetaReport,
    /// `(−1)^n·D_G ζ̃_f^G`.
    pub dual: BurnsideElement,
    pub report: VerificationReport,
}

/// `ζ̃_{f̃}^{G*} = (−1)^n·D_G ζ̃_f^G`.
pub fn verify_theorem(f: &InvertiblePolynomial) -> Result<VerificationReport> {
    Ok(check_theorem(f)?.report)
}

pub fn check_theorem(f: &InvertiblePolynomial) -> Result<TheoremCheck> {
    let g = symmetry_group(f, Side::Direct);
    let gt = symmetry_group(f, Side::Transposed);
    let direct = equivariant_zeta_on(f, &g)?;
    let transposed = equivariant_zeta_on(&f.transpose(), &gt)?;
    let sign = if f.n().is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let dual = direct.reduced.saito_dual_in(&gt)?.scale(&sign);
    let lhs = &transposed.reduced;
    let equal = *lhs == dual;
    let witness = (!equal).then(|| burnside_difference(lhs, &dual));
    let report = VerificationReport {
        kind: VerificationKind::Theorem,
        lhs: lhs.to_json(),
        rhs: dual.to_json(),
        lhs_text: lhs.to_string(),
        rhs_text: dual.to_string(),
        equal,
        witness,
    };
    Ok(TheoremCheck {
        direct,
        transposed,
        dual,
        report,
    })
}

fn burnside_difference(lhs: &BurnsideElement, rhs: &BurnsideElement) -> Value {
    let keys: BTreeSet<&SubgroupKey> = lhs.terms().keys().chain(rhs.terms().keys()).collect();
    Value::Array(
        keys.into_iter()
            .filter(|k| lhs.coefficient(k) != rhs.coefficient(k))
            .map(|k| {
                json!({
                    "subgroup": json::subgroup(k),
                    "lhs": json::integer(&lhs.coefficient(k)),
                    "rhs": json::integer(&rhs.coefficient(k)),
                })
            })
            .collect(),
    )
}

fn cyclotomic_difference(lhs: &CyclotomicProduct, rhs: &CyclotomicProduct) -> Value {
    let ms: BTreeSet<&BigInt> = lhs.factors().keys().chain(rhs.factors().keys()).collect();
    Value::Array(
        ms.into_iter()
            .filter(|m| lhs.exponent(m) != rhs.exponent(m))
            .map(|m| {
                json!({
                    "m": json::integer(m),
                    "lhs": json::integer(&lhs.exponent(m)),
                    "rhs": json::integer(&rhs.exponent(m)),
                })
            })
            .collect(),
    )
}

/// A geometric root of `h` that generates the (cyclic) group. Any two
/// generators give the same element zeta functions.
fn generating_root(group: &Arc<GroupPresentation>, c: &BigInt) -> Result<Option<GroupElement>> {
    let h = group.monodromy()?;
    Ok(group
        .roots(&h, c)?
        .into_iter()
        .find(|g| &g.order() == group.order()))
}

/// `ζ̃_{√h_f̃}(t) = (ζ̃*_{√h_f}(t))^{(−1)^{n−1}}` with respect to `d = |det E|`.
pub fn verify_corollary(f: &InvertiblePolynomial) -> Result<VerificationReport> {
    let check = check_theorem(f)?;
    verify_corollary_with(f, &check)
}

/// [`verify_corollary`] reusing the zeta functions of a theorem check.
pub fn verify_corollary_with(f: &InvertiblePolynomial, check: &TheoremCheck) -> Result<VerificationReport> {
    let g = &check.direct.group;
    if !g.is_cyclic() {
        return Err(Error::Precondition(format!(
            "G_f is not cyclic (invariant factors {}), so geometric roots do not exist",
            g.nontrivial_invariant_factors()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let gt = &check.transposed.group;
    let ft = f.transpose();
    let root = generating_root(g, &f.weights().gcd_factor)?
        .ok_or_else(|| Error::Structure("cyclic G_f without a generating geometric root".into()))?;
    let root_t = generating_root(gt, &ft.weights().gcd_factor)?
        .ok_or_else(|| Error::Structure("cyclic G_f̃ without a generating geometric root".into()))?;
    let d = g.scale().clone();
    let lhs = check
        .transposed
        .reduced
        .element_zeta(&root_t)?
        .with_modulus(d.clone())?;
    let exponent = if f.n() % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let rhs = check
        .direct
        .reduced
        .element_zeta(&root)?
        .with_modulus(d)?
        .saito_dual()
        .pow(&exponent);
    let equal = lhs == rhs;
    let witness = (!equal).then(|| cyclotomic_difference(&lhs, &rhs));
    Ok(VerificationReport {
        kind: VerificationKind::Corollary,
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
        lhs_text: lhs.to_string(),
        rhs_text: rhs.to_string(),
        equal,
        witness,
    })
}
