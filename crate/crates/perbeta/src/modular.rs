//! Small-modulus helpers shared by the walk and the witness graph.
//!
//! State-space searches enumerate vectors over Z_n, so they work with the
//! minimal polynomial's coefficients reduced to u64 residues. Certificates
//! are lifted back to exact arbitrary-precision identities afterwards.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Minimal polynomial data reduced modulo a u64 modulus.
#[derive(Clone, Debug)]
pub(crate) struct ReducedBase {
    pub n: u64,
    /// a_i mod n, ascending, length degree + 1.
    pub coeffs: Vec<u64>,
    pub degree: usize,
}

impl ReducedBase {
    pub fn new(minpoly: &IntPoly, n: &BigInt) -> Result<ReducedBase> {
        if n < &BigInt::from(2) {
            return Err(Error::PreconditionViolated(format!(
                "modulus must be at least 2, got {n}"
            )));
        }
        let n_u64 = n.to_u64().ok_or_else(|| {
            Error::Unsupported(format!(
                "modulus {n} exceeds u64 range; state-space search not enumerable"
            ))
        })?;
        let degree = minpoly.degree();
        let coeffs = (0..=degree)
            .map(|i| {
                minpoly
                    .coeff(i)
                    .mod_floor(n)
                    .to_u64()
                    .expect("residue fits u64")
            })
            .collect();
        Ok(ReducedBase {
            n: n_u64,
            coeffs,
            degree,
        })
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.n as u128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.n as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }
}

/// Inverse of a modulo n, if gcd(a, n) = 1.
pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

/// Prime-power factorization by trial division; the modulus must fit u64.
pub(crate) fn factor_modulus(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut m = n.to_u64().ok_or_else(|| {
        Error::Unsupported(format!("modulus {n} exceeds u64 range for factorization"))
    })?;
    if m < 2 {
        return Err(Error::PreconditionViolated(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| out.push((p, e));
    let mut e2 = 0;
    while m % 2 == 0 {
        m /= 2;
        e2 += 1;
    }
    if e2 > 0 {
        push(2, e2);
    }
    let mut p = 3u64;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            push(p, e);
        }
        p += 2;
    }
    if m > 1 {
        push(m, 1);
    }
    Ok(out)
}
