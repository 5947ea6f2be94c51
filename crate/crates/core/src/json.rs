//! JSON encodings shared by the library and the CLI.
//!
//! Integers are JSON numbers when they fit in an `i64` and decimal strings
//! otherwise, so no value is ever rounded.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::group::{GroupElement, GroupPresentation, SubgroupKey};
use crate::linalg::{IntMatrix, RationalVector};

pub fn integer(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn integers(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(integer).collect())
}

/// Matrix as a list of rows.
pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| integers(r)).collect())
}

/// Rational vector as a list of `"p/q"` strings (`"0"` for zero entries).
pub fn rational_vector(v: &RationalVector) -> Value {
    Value::Array(
        v.numerators()
            .iter()
            .map(|p| {
                let q = num_rational::BigRational::new(p.clone(), v.denominator().clone());
                Value::String(q.to_string())
            })
            .collect(),
    )
}

pub fn element(g: &GroupElement) -> Value {
    json!({ "coords": rational_vector(g.coords()), "order": integer(&g.order()) })
}

/// `{order, basis}` with the basis flattened row-major.
pub fn subgroup(k: &SubgroupKey) -> Value {
    json!({ "order": integer(k.order()), "basis": integers(k.basis().entries()) })
}

pub fn group(g: &GroupPresentation) -> Value {
    json!({
        "side": g.side().label(),
        "order": integer(g.order()),
        "invariantFactors": integers(&g.nontrivial_invariant_factors()),
        "cyclic": g.is_cyclic(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(integer(&BigInt::from(-5)), json!(-5));
        let big = BigInt::from(i64::MAX) + 1;
        assert_eq!(integer(&big), json!("9223372036854775808"));
    }

    #[test]
    fn rationals_print_reduced() {
        let v = RationalVector::new(vec![2.into(), 0.into(), 3.into()], 6.into()).unwrap();
        assert_eq!(rational_vector(&v), json!(["1/3", "0", "1/2"]));
    }
}
