//! Certified witnesses of β^i − β^j ∈ nZ[β].
//!
//! A witness carries the full data of the identity
//! x^i − x^j − n·p(x) = r(x)·m(x) in Z[x]; the constructor re-derives both
//! sides and refuses anything inexact, so holding a `FermatWitness` is proof
//! of membership.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::base::{Base, BaseSpec};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Clone, Debug)]
pub struct FermatWitness {
    base: Base,
    n: BigInt,
    i: usize,
    j: usize,
    p: IntPoly,
    r: IntPoly,
}

impl FermatWitness {
    /// Validates and wraps the certificate x^i − x^j − n·p = r·m.
    pub fn new(
        base: Base,
        n: BigInt,
        i: usize,
        j: usize,
        p: IntPoly,
        r: IntPoly,
    ) -> Result<FermatWitness> {
        if n < BigInt::from(2) {
            return Err(Error::PreconditionViolated(format!(
                "modulus must be at least 2, got {n}"
            )));
        }
        if i <= j {
            return Err(Error::PreconditionViolated(format!(
                "need i > j >= 0, got i = {i}, j = {j}"
            )));
        }
        let lhs = IntPoly::power_difference(i, j).sub(&p.scale(&n));
        let rhs = r.mul(base.minpoly());
        if lhs != rhs {
            return Err(Error::ValidationFailed(format!(
                "certificate x^{i} - x^{j} - {n}*p != r*m (lhs {lhs}, rhs {rhs})"
            )));
        }
        Ok(FermatWitness { base, n, i, j, p, r })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn modulus(&self) -> &BigInt {
        &self.n
    }

    pub fn exponent_i(&self) -> usize {
        self.i
    }

    pub fn exponent_j(&self) -> usize {
        self.j
    }

    /// i − j, the period length induced on representations.
    pub fn period(&self) -> usize {
        self.i - self.j
    }

    /// The quotient p with β^i − β^j = n·p(β).
    pub fn p(&self) -> &IntPoly {
        &self.p
    }

    /// The cofactor r with x^i − x^j − n·p = r·m.
    pub fn r(&self) -> &IntPoly {
        &self.r
    }

    /// Human-readable identity in the base.
    pub fn display_identity(&self) -> String {
        format!(
            "β^{} − β^{} = {}·({})",
            self.i,
            self.j,
            self.n,
            self.p.display_beta()
        )
    }

    /// Wire format: {"n", "i", "j", "p", "r", "minpoly"} with ascending
    /// integer coefficient arrays.
    pub fn to_json(&self) -> Value {
        json!({
            "n": bigint_to_number(&self.n),
            "i": self.i,
            "j": self.j,
            "p": poly_to_json(&self.p),
            "r": poly_to_json(&self.r),
            "minpoly": poly_to_json(self.base.minpoly()),
        })
    }

    /// Parses and re-validates a witness; the embedded minimal polynomial is
    /// analyzed into a fresh base.
    pub fn from_json(v: &Value) -> Result<FermatWitness> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::ParseError("witness JSON must be an object".into()))?;
        let n = bigint_from_value(
            obj.get("n")
                .ok_or_else(|| Error::ParseError("missing field 'n'".into()))?,
        )?;
        let i = usize_from_value(obj.get("i"), "i")?;
        let j = usize_from_value(obj.get("j"), "j")?;
        let p = poly_from_json(
            obj.get("p")
                .ok_or_else(|| Error::ParseError("missing field 'p'".into()))?,
        )?;
        let r = poly_from_json(
            obj.get("r")
                .ok_or_else(|| Error::ParseError("missing field 'r'".into()))?,
        )?;
        let minpoly = poly_from_json(
            obj.get("minpoly")
                .ok_or_else(|| Error::ParseError("missing field 'minpoly'".into()))?,
        )?;
        let base = std::sync::Arc::new(BaseSpec::new(minpoly)?);
        FermatWitness::new(base, n, i, j, p, r)
    }
}

pub(crate) fn bigint_to_number(n: &BigInt) -> Value {
    let number = serde_json::Number::from_str(&n.to_string())
        .expect("integer string is a valid JSON number");
    Value::Number(number)
}

pub(crate) fn bigint_from_value(v: &Value) -> Result<BigInt> {
    let num = v
        .as_number()
        .ok_or_else(|| Error::ParseError(format!("expected integer, got {v}")))?;
    let s = num.to_string();
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::ParseError(format!("expected integer, got {s}")));
    }
    BigInt::from_str(&s).map_err(|_| Error::ParseError(format!("bad integer {s}")))
}

fn usize_from_value(v: Option<&Value>, field: &str) -> Result<usize> {
    let v = v.ok_or_else(|| Error::ParseError(format!("missing field '{field}'")))?;
    let n = bigint_from_value(v)?;
    if n.is_negative() {
        return Err(Error::ParseError(format!("field '{field}' must be >= 0")));
    }
    use num_traits::ToPrimitive;
    n.to_usize()
        .ok_or_else(|| Error::ParseError(format!("field '{field}' too large")))
}

pub(crate) fn poly_to_json(p: &IntPoly) -> Value {
    if p.is_zero() {
        // A single explicit zero keeps the array form for the zero polynomial.
        return Value::Array(vec![bigint_to_number(&BigInt::zero())]);
    }
    Value::Array(p.coeffs().iter().map(bigint_to_number).collect())
}

pub(crate) fn poly_from_json(v: &Value) -> Result<IntPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::ParseError(format!("expected coefficient array, got {v}")))?;
    let coeffs = arr
        .iter()
        .map(bigint_from_value)
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseSpec;
    use std::sync::Arc;

    fn golden() -> Base {
        Arc::new(BaseSpec::new(IntPoly::from_i64(&[-1, -1, 1])).unwrap())
    }

    #[test]
    fn accepts_exact_certificate() {
        // x^3 - 1 - 2x = (1+x)(x^2-x-1), hand expansion.
        let w = FermatWitness::new(
            golden(),
            BigInt::from(2),
            3,
            0,
            IntPoly::from_i64(&[0, 1]),
            IntPoly::from_i64(&[1, 1]),
        )
        .unwrap();
        assert_eq!(w.period(), 3);
        assert_eq!(w.display_identity(), "β^3 − β^0 = 2·(β)");
    }

    #[test]
    fn rejects_inexact_certificate() {
        let err = FermatWitness::new(
            golden(),
            BigInt::from(2),
            3,
            0,
            IntPoly::from_i64(&[1, 1]), // wrong p
            IntPoly::from_i64(&[1, 1]),
        );
        assert!(matches!(err, Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn rejects_small_modulus_and_bad_exponents() {
        assert!(matches!(
            FermatWitness::new(
                golden(),
                BigInt::from(1),
                3,
                0,
                IntPoly::from_i64(&[0, 1]),
                IntPoly::from_i64(&[1, 1]),
            ),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            FermatWitness::new(
                golden(),
                BigInt::from(2),
                2,
                2,
                IntPoly::zero(),
                IntPoly::zero(),
            ),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let w = FermatWitness::new(
            golden(),
            BigInt::from(2),
            3,
            0,
            IntPoly::from_i64(&[0, 1]),
            IntPoly::from_i64(&[1, 1]),
        )
        .unwrap();
        let v = w.to_json();
        assert_eq!(v["n"], serde_json::json!(2));
        assert_eq!(v["p"], serde_json::json!([0, 1]));
        let w2 = FermatWitness::from_json(&v).unwrap();
        assert_eq!(w2.exponent_i(), 3);
        assert_eq!(w2.p(), w.p());

        let mut bad = w.to_json();
        bad["p"] = serde_json::json!([1, 1]);
        assert!(FermatWitness::from_json(&bad).is_err());
    }
}
