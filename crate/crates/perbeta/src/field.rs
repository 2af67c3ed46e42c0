//! Exact arithmetic in Q[x]/(m(x)), the field generated by the base.
//!
//! Elements are rational-coefficient polynomials of degree < d, reduced
//! modulo the minimal polynomial. The leading coefficient of m need not be
//! ±1, so reduction divides over Q. Everything here is exact; no floating
//! point anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// An element of Q(β), stored as d rational coordinates for 1, β, ..., β^(d-1).
#[derive(Clone, Debug)]
pub struct FieldElement {
    base: Base,
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    fn from_reduced(base: Base, mut coeffs: Vec<BigRational>) -> FieldElement {
        coeffs.resize(base.degree(), BigRational::zero());
        FieldElement { base, coeffs }
    }

    pub fn zero(base: Base) -> FieldElement {
        FieldElement::from_reduced(base, Vec::new())
    }

    pub fn one(base: Base) -> FieldElement {
        FieldElement::from_reduced(base, vec![BigRational::one()])
    }

    /// The generator β itself.
    pub fn beta(base: Base) -> FieldElement {
        if base.degree() == 1 {
            // β is the rational root -a_0/a_1.
            let v = BigRational::new(-base.minpoly().coeff(0), base.minpoly().coeff(1));
            return FieldElement::from_reduced(base, vec![v]);
        }
        FieldElement::from_reduced(base, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_rational(base: Base, q: BigRational) -> FieldElement {
        FieldElement::from_reduced(base, vec![q])
    }

    pub fn from_integer(base: Base, n: BigInt) -> FieldElement {
        FieldElement::from_rational(base, BigRational::from_integer(n))
    }

    /// Builds an element from rational coordinates (degree < d enforced by
    /// reduction).
    pub fn from_coeffs(base: Base, coeffs: Vec<BigRational>) -> FieldElement {
        let reduced = reduce_rat_coeffs(&base, coeffs);
        FieldElement::from_reduced(base, reduced)
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
    }

    fn assert_same_base(&self, other: &FieldElement) {
        assert!(
            self.base.same_base(&other.base),
            "field elements belong to different bases"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_base(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement::from_reduced(self.base.clone(), coeffs)
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_base(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement::from_reduced(self.base.clone(), coeffs)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement::from_reduced(self.base.clone(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.assert_same_base(other);
        let d = self.base.degree();
        let mut prod = vec![BigRational::zero(); 2 * d.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement::from_coeffs(self.base.clone(), prod)
    }

    pub fn scale(&self, q: &BigRational) -> FieldElement {
        FieldElement::from_reduced(
            self.base.clone(),
            self.coeffs.iter().map(|c| c * q).collect(),
        )
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        let m = rat_from_int(self.base.minpoly());
        let a = RatPoly::new(self.coeffs.clone());
        let (g, s, _t) = rat_extended_gcd(&a, &m);
        if g.degree() > 0 {
            // A nonconstant gcd with the minimal polynomial means the input
            // polynomial is reducible; report rather than guess.
            return Err(Error::NonInvertible(format!(
                "gcd with minimal polynomial is nonconstant ({}); minimal polynomial appears reducible",
                g
            )));
        }
        // g is a nonzero constant: divide s by it.
        let c = g.coeffs[0].clone();
        let coeffs = s.coeffs.iter().map(|x| x / &c).collect();
        Ok(FieldElement::from_coeffs(self.base.clone(), coeffs))
    }

    /// β^e for any integer e (negative uses the inverse).
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        if e == 0 {
            return Ok(FieldElement::one(self.base.clone()));
        }
        let (mut acc, mut b, mut k) = if e < 0 {
            (
                FieldElement::one(self.base.clone()),
                self.inv()?,
                e.unsigned_abs(),
            )
        } else {
            (FieldElement::one(self.base.clone()), self.clone(), e as u64)
        };
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.base.same_base(&other.base) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 if c.is_one() => "β".to_string(),
                1 => format!("{c}·β"),
                _ if c.is_one() => format!("β^{i}"),
                _ => format!("{c}·β^{i}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Reduces an integer polynomial modulo the minimal polynomial.
///
/// Uses fraction-free pseudo-division (multiply through by the leading
/// coefficient at each step) and divides the accumulated power back out at
/// the end, so only one pass of rational normalization happens.
pub fn field_reduce(p: &IntPoly, base: &Base) -> FieldElement {
    let d = base.degree();
    if p.is_zero() || p.degree() < d {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        return FieldElement::from_reduced(base.clone(), coeffs);
    }
    let m = base.minpoly();
    let lead = m.leading();
    let mut rem: Vec<BigInt> = p.coeffs().to_vec();
    let mut scale_pow: u32 = 0;
    for t in (d..rem.len()).rev() {
        let top = std::mem::replace(&mut rem[t], BigInt::zero());
        if top.is_zero() {
            continue;
        }
        // rem <- lead*rem - top*x^(t-d)*m, which zeroes position t.
        for item in rem.iter_mut().take(t) {
            *item *= &lead;
        }
        for (i, c) in m.coeffs().iter().enumerate().take(d) {
            rem[t - d + i] -= &top * c;
        }
        scale_pow += 1;
    }
    let denom = lead.pow(scale_pow);
    let coeffs = rem
        .into_iter()
        .take(d)
        .map(|c| BigRational::new(c, denom.clone()))
        .collect();
    FieldElement::from_reduced(base.clone(), coeffs)
}

/// Reduces rational coefficients modulo the minimal polynomial.
fn reduce_rat_coeffs(base: &Base, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let d = base.degree();
    let m = base.minpoly();
    let lead = BigRational::from_integer(m.leading());
    while coeffs.len() > d {
        let top = coeffs.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let t = coeffs.len(); // degree being eliminated
        let s = top / &lead;
        for (i, c) in m.coeffs().iter().enumerate().take(d) {
            coeffs[t - d + i] -= &s * BigRational::from_integer(c.clone());
        }
    }
    coeffs
}

/// Reduces a rational-coefficient polynomial modulo the minimal polynomial.
pub fn field_reduce_rat(coeffs: Vec<BigRational>, base: &Base) -> FieldElement {
    FieldElement::from_coeffs(base.clone(), coeffs)
}

/// Inverse in Q(β); see [`FieldElement::inv`].
pub fn field_inv(x: &FieldElement) -> Result<FieldElement> {
    x.inv()
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num)
        .map_err(|_| Error::ParseError(format!("bad rational numerator '{num}'")))?;
    let d = BigInt::from_str(den)
        .map_err(|_| Error::ParseError(format!("bad rational denominator '{den}'")))?;
    if d.is_zero() {
        return Err(Error::ParseError("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

// ---- Rational polynomial helpers (internal) ----

/// Dense rational polynomial used by the extended Euclidean algorithm and
/// the square-free computations. Ascending coefficients, trailing zeros
/// trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly {
    pub(crate) coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub(crate) fn new(mut coeffs: Vec<BigRational>) -> RatPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub(crate) fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub(crate) fn one() -> RatPoly {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn sub(&self, other: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub(crate) fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Quotient and remainder with deg r < deg divisor.
    pub(crate) fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.degree() < divisor.degree() {
            return (RatPoly::zero(), self.clone());
        }
        let dd = divisor.degree();
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let qdeg = self.degree() - dd;
        let mut quot = vec![BigRational::zero(); qdeg + 1];
        for t in (0..=qdeg).rev() {
            let top = rem[t + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / &lead;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[t + i] -= &q * b;
            }
            quot[t] = q;
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Exact quotient; panics on nonzero remainder (internal invariant).
    pub(crate) fn div_exact(&self, divisor: &RatPoly) -> RatPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact rational polynomial division");
        q
    }

    /// Clears denominators and content, yielding a primitive integer
    /// polynomial with positive leading coefficient.
    pub(crate) fn primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        use num_integer::Integer;
        let mut denom = BigInt::one();
        for c in &self.coeffs {
            denom = denom.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        IntPoly::new(ints).primitive_part()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*x^{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn rat_from_int(p: &IntPoly) -> RatPoly {
    RatPoly::new(
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

/// Extended gcd over Q[x]: returns (g, s, t) with g = s*a + t*b, g monic
/// unless zero.
pub(crate) fn rat_extended_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
    let mut old_r = a.clone();
    let mut r = b.clone();
    let mut old_s = RatPoly::one();
    let mut s = RatPoly::zero();
    let mut old_t = RatPoly::zero();
    let mut t = RatPoly::one();
    while !r.is_zero() {
        let (q, rem) = old_r.div_rem(&r);
        let new_s = old_s.sub(&q.mul(&s));
        let new_t = old_t.sub(&q.mul(&t));
        old_r = r;
        r = rem;
        old_s = s;
        s = new_s;
        old_t = t;
        t = new_t;
    }
    if old_r.is_zero() {
        return (RatPoly::zero(), RatPoly::one(), RatPoly::zero());
    }
    let lead = old_r.coeffs.last().unwrap().clone();
    let norm = |p: &RatPoly| RatPoly::new(p.coeffs.iter().map(|c| c / &lead).collect());
    (norm(&old_r), norm(&old_s), norm(&old_t))
}

/// Square-free part over Q, returned as a primitive integer polynomial.
pub(crate) fn squarefree_part(p: &IntPoly) -> IntPoly {
    if p.is_zero() || p.degree() == 0 {
        return p.primitive_part();
    }
    let a = rat_from_int(p);
    let da = rat_from_int(&p.derivative());
    let (g, _, _) = rat_extended_gcd(&a, &da);
    if g.degree() == 0 {
        return p.primitive_part();
    }
    a.div_exact(&g).primitive_int()
}
