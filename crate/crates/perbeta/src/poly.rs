//! Dense univariate polynomials over the integers.
//!
//! `IntPoly` stores arbitrary-precision coefficients in ascending degree
//! order: `coeffs[i]` is the coefficient of x^i. The representation is
//! canonical: the vector is empty for the zero polynomial and the last
//! stored coefficient is nonzero otherwise. `LaurentIntPoly` extends this
//! with a (possibly negative) starting exponent.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer polynomial, coefficients ascending by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial x^k.
    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// x^i - x^j (requires i != j for a two-term result; i == j gives zero).
    pub fn power_difference(i: usize, j: usize) -> Self {
        let mut p = IntPoly::x_pow(i);
        p = p.sub(&IntPoly::x_pow(j));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Exact product (schoolbook).
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Substitutes x -> x^k, spreading coefficients to stride k.
    pub fn dilate(&self, k: usize) -> IntPoly {
        assert!(k >= 1, "dilation stride must be positive");
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// Largest v with x^v dividing the polynomial; 0 for the zero polynomial.
    pub fn x_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Divides by x^k; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<IntPoly> {
        if k == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        if self.x_valuation() < k {
            return Err(Error::ValidationFailed(format!(
                "x^{k} does not divide {self}"
            )));
        }
        Ok(IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// The reversal x^deg * p(1/x).
    pub fn reverse(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// Gcd of the coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and normalizes the leading coefficient to be
    /// positive. Zero stays zero.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact division by an integer scalar; errors if any coefficient resists.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Result<IntPoly> {
        if c.is_zero() {
            return Err(Error::ValidationFailed("division by zero scalar".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::ValidationFailed(format!(
                    "coefficient {a} not divisible by {c}"
                )));
            }
            out.push(q);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Exact division in Z[x]; errors unless `self = q * other` with q integral.
    pub fn exact_div(&self, other: &IntPoly) -> Result<IntPoly> {
        if other.is_zero() {
            return Err(Error::ValidationFailed("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.degree() < other.degree() {
            return Err(Error::ValidationFailed(format!(
                "{self} is not divisible by {other}"
            )));
        }
        let lead = other.leading();
        let mut rem = self.coeffs.clone();
        let qdeg = self.degree() - other.degree();
        let mut quot = vec![BigInt::zero(); qdeg + 1];
        for t in (0..=qdeg).rev() {
            let top = rem[t + other.degree()].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::ValidationFailed(format!(
                    "{self} is not divisible by {other} over Z"
                )));
            }
            for (i, b) in other.coeffs.iter().enumerate() {
                rem[t + i] -= &q * b;
            }
            quot[t] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::ValidationFailed(format!(
                "{self} is not divisible by {other}: nonzero remainder"
            )));
        }
        Ok(IntPoly::new(quot))
    }

    /// Coefficient vector reduced into the canonical range [0, n).
    /// The output keeps the input's stored length (no renormalization), so a
    /// top coefficient that vanishes mod n stays as an explicit 0.
    pub fn mod_project(&self, n: &BigInt) -> Vec<BigInt> {
        assert!(n >= &BigInt::from(2), "modulus must be at least 2");
        self.coeffs.iter().map(|c| c.mod_floor(n)).collect()
    }

    /// True when every coefficient is divisible by n.
    pub fn divisible_by_scalar(&self, n: &BigInt) -> bool {
        self.coeffs.iter().all(|c| c.mod_floor(n).is_zero())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn format_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => format!("{mag}"),
                1 if mag.is_one() => var.to_string(),
                1 => format!("{mag}{var}"),
                _ if mag.is_one() => format!("{var}^{i}"),
                _ => format!("{mag}{var}^{i}"),
            };
            if terms.is_empty() {
                terms.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                terms.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        terms.join(" ")
    }

    /// Renders with β as the variable, for identities in the base.
    pub fn display_beta(&self) -> String {
        self.format_with_var("β")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with_var("x"))
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses comma-separated integers, ascending by exponent
    /// ("3,2,3" is 3 + 2x + 3x^2).
    fn from_str(s: &str) -> Result<IntPoly> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let c = BigInt::from_str(part)
                .map_err(|_| Error::ParseError(format!("bad integer coefficient '{part}'")))?;
            coeffs.push(c);
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Free-function form of polynomial multiplication.
pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a.mul(b)
}

/// An integer Laurent polynomial: `coeffs[i]` multiplies x^(low + i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentIntPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentIntPoly {
    pub fn new(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
        }
        if coeffs.is_empty() {
            return LaurentIntPoly {
                low: 0,
                coeffs: Vec::new(),
            };
        }
        LaurentIntPoly {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentIntPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        LaurentIntPoly::new(0, p.coeffs().to_vec())
    }

    pub fn constant(c: BigInt) -> Self {
        LaurentIntPoly::new(0, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for zero).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (0 for zero).
    pub fn high(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        if e < self.low {
            return BigInt::zero();
        }
        self.coeffs
            .get((e - self.low) as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Iterates (exponent, coefficient) over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn add(&self, other: &LaurentIntPoly) -> LaurentIntPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - low) as usize] += c;
        }
        for (e, c) in other.terms() {
            coeffs[(e - low) as usize] += c;
        }
        LaurentIntPoly::new(low, coeffs)
    }

    pub fn mul(&self, other: &LaurentIntPoly) -> LaurentIntPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentIntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentIntPoly::new(self.low + other.low, coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> LaurentIntPoly {
        LaurentIntPoly::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by x^k (k may be negative).
    pub fn shift(&self, k: i64) -> LaurentIntPoly {
        if self.is_zero() {
            return LaurentIntPoly::zero();
        }
        LaurentIntPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Converts to an ordinary polynomial; errors if any exponent is negative.
    pub fn to_int_poly(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.low < 0 {
            return Err(Error::ValidationFailed(format!(
                "Laurent polynomial has negative exponent {}",
                self.low
            )));
        }
        let mut coeffs = vec![BigInt::zero(); self.low as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Ok(IntPoly::new(coeffs))
    }

    /// Sum of absolute values of the coefficients.
    pub fn one_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for LaurentIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| format!("{c}*x^{e}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn mul_matches_hand_expansions() {
        // (2x^2+3x+4)(3x^2+2x+3) = 6x^4+13x^3+24x^2+17x+12
        let a = p(&[4, 3, 2]);
        let b = p(&[3, 2, 3]);
        assert_eq!(a.mul(&b), p(&[12, 17, 24, 13, 6]));

        // (1+x)(x^2-x-1) = x^3-2x-1
        let c = p(&[1, 1]);
        let m = p(&[-1, -1, 1]);
        assert_eq!(c.mul(&m), p(&[-1, -2, 0, 1]));
    }

    #[test]
    fn zero_annihilates() {
        let a = p(&[4, 3, 2]);
        assert_eq!(IntPoly::zero().mul(&a), IntPoly::zero());
        assert_eq!(a.mul(&IntPoly::zero()), IntPoly::zero());
    }

    #[test]
    fn degree_of_product_adds() {
        let a = p(&[1, 0, 5]);
        let b = p(&[7, 2]);
        assert_eq!(a.mul(&b).degree(), 3);
    }

    #[test]
    fn mod_project_canonical_range() {
        // Hand product from the n=6 worked identity, reduced coefficientwise.
        let q = p(&[12, 17, 24, 13, 6]);
        let got = q.mod_project(&BigInt::from(6));
        let want: Vec<BigInt> = [0i64, 5, 0, 1, 0].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(got, want);

        assert!(IntPoly::zero().mod_project(&BigInt::from(5)).is_empty());

        let q2 = p(&[-1, -2, 0, 1]);
        let got2 = q2.mod_project(&BigInt::from(2));
        let want2: Vec<BigInt> = [1i64, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(got2, want2);
    }

    #[test]
    fn exact_div_roundtrip_and_failure() {
        let a = p(&[4, 3, 2]);
        let m = p(&[3, 2, 3]);
        let prod = a.mul(&m);
        assert_eq!(prod.exact_div(&m).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), m);
        assert!(prod.add(&IntPoly::one()).exact_div(&m).is_err());
        // Divisible over Q but not over Z.
        assert!(p(&[1, 1]).exact_div(&p(&[2, 2])).is_err());
    }

    #[test]
    fn content_and_primitive_part() {
        let a = p(&[-6, 0, -9]);
        assert_eq!(a.content(), BigInt::from(3));
        assert_eq!(a.primitive_part(), p(&[2, 0, 3]));
        assert_eq!(IntPoly::zero().primitive_part(), IntPoly::zero());
    }

    #[test]
    fn reverse_and_valuation() {
        let a = p(&[-2, 1]); // x - 2
        assert_eq!(a.reverse(), p(&[1, -2])); // 1 - 2x
        let b = p(&[0, 0, 3, 1]);
        assert_eq!(b.x_valuation(), 2);
        assert_eq!(b.shift_down(2).unwrap(), p(&[3, 1]));
        assert!(b.shift_down(3).is_err());
    }

    #[test]
    fn dilate_spreads_exponents() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.dilate(2), p(&[1, 0, 2, 0, 3]));
        assert_eq!(a.dilate(1), a);
    }

    #[test]
    fn parse_and_display() {
        let m: IntPoly = "3,2,3".parse().unwrap();
        assert_eq!(m, p(&[3, 2, 3]));
        assert_eq!(m.to_string(), "3x^2 + 2x + 3");
        let g: IntPoly = "-1,-1,1".parse().unwrap();
        assert_eq!(g.to_string(), "x^2 - x - 1");
        assert!("1,a,3".parse::<IntPoly>().is_err());
    }

    #[test]
    fn laurent_arithmetic() {
        let z = LaurentIntPoly::new(-2, vec![BigInt::from(1), BigInt::from(0), BigInt::from(2)]);
        assert_eq!(z.low(), -2);
        assert_eq!(z.high(), 0);
        let w = z.mul(&LaurentIntPoly::from_int_poly(&p(&[0, 1]))); // * x
        assert_eq!(w.low(), -1);
        assert_eq!(w.coeff(1), BigInt::from(2));
        let s = z.add(&z.shift(2));
        assert_eq!(s.coeff(-2), BigInt::from(1));
        assert_eq!(s.coeff(0), BigInt::from(3));
        assert_eq!(s.coeff(2), BigInt::from(2));
    }
}
