//! The modular walk that produces witnesses when both end coefficients of
//! the minimal polynomial are invertible modulo n.
//!
//! Starting from z = (1, 0, ..., 0) over Z_n, each step picks the unique
//! multiplier p_k that cancels the constant term of z + p_k·m and shifts the
//! result down by one power of x. Invertibility of a_0 and a_d makes the
//! step a bijection on Z_n^d, so the walk is a pure cycle through the start;
//! when it returns after r steps, the accumulated multipliers satisfy
//! (Σ p_k x^k)·m ≡ x^r − 1 (mod nZ[x]), which lifts to an exact certificate
//! by one division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::HashSet;

use crate::base::Base;
use crate::error::{Error, Result};
use crate::modular::{mod_inverse, ReducedBase};
use crate::poly::IntPoly;
use crate::witness::FermatWitness;

/// One state of the walk: d residues, ascending (z_0, ..., z_{d-1}).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WalkState {
    pub residues: Vec<u64>,
    pub step: usize,
}

/// Full trace of a walk: the visited states and the multiplier sequence.
#[derive(Clone, Debug)]
pub struct WalkTrace {
    pub states: Vec<WalkState>,
    pub multipliers: Vec<u64>,
}

/// Finds a witness with j = 0 by iterating the modular walk.
///
/// Requires gcd(a_0, n) = gcd(a_d, n) = 1. The walk length is at most n^d.
pub fn coprime_walk(base: &Base, n: &BigInt) -> Result<FermatWitness> {
    let (witness, _) = coprime_walk_traced(base, n)?;
    Ok(witness)
}

/// As [`coprime_walk`], also returning the walk trace for inspection.
pub fn coprime_walk_traced(base: &Base, n: &BigInt) -> Result<(FermatWitness, WalkTrace)> {
    let (r, p, cofactor, trace) = raw_coprime_walk(base.minpoly(), n)?;
    let witness = FermatWitness::new(base.clone(), n.clone(), r, 0, p, cofactor)?;
    Ok((witness, trace))
}

/// Walk over an arbitrary polynomial (the recursion feeds non-minimal ones).
/// Returns (r, p, cofactor, trace) with x^r − 1 − n·p = cofactor·m exactly.
pub(crate) fn raw_coprime_walk(
    minpoly: &IntPoly,
    n: &BigInt,
) -> Result<(usize, IntPoly, IntPoly, WalkTrace)> {
    let rb = ReducedBase::new(minpoly, n)?;
    let d = rb.degree;
    if d == 0 {
        return Err(Error::PreconditionViolated(
            "walk needs a polynomial of degree >= 1".into(),
        ));
    }
    let a0 = rb.coeffs[0];
    let ad = rb.coeffs[d];
    let a0_inv = mod_inverse(a0, rb.n).ok_or_else(|| {
        Error::PreconditionViolated(format!(
            "gcd(a_0, n) != 1 for a_0 = {}, n = {n}",
            minpoly.coeff(0)
        ))
    })?;
    if mod_inverse(ad, rb.n).is_none() {
        return Err(Error::PreconditionViolated(format!(
            "gcd(a_d, n) != 1 for a_d = {}, n = {n}",
            minpoly.leading()
        )));
    }

    let start: Vec<u64> = std::iter::once(1)
        .chain(std::iter::repeat(0))
        .take(d)
        .collect();
    let mut z = start.clone();
    let mut multipliers: Vec<u64> = Vec::new();
    let mut states = vec![WalkState {
        residues: z.clone(),
        step: 0,
    }];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(z.clone());

    // n^d bounds the state count; the walk must close within that.
    let bound = (rb.n as u128)
        .checked_pow(d as u32)
        .unwrap_or(u128::MAX);

    loop {
        let p_k = rb.mul(rb.neg(z[0]), a0_inv);
        // Shift down: z'_t = z_{t+1} + p_k a_{t+1} for t < d-1; z'_{d-1} = p_k a_d.
        let mut next = vec![0u64; d];
        for t in 0..d - 1 {
            next[t] = rb.add(z[t + 1], rb.mul(p_k, rb.coeffs[t + 1]));
        }
        next[d - 1] = rb.mul(p_k, rb.coeffs[d]);
        multipliers.push(p_k);
        z = next;
        if z == start {
            states.push(WalkState {
                residues: z.clone(),
                step: multipliers.len(),
            });
            break;
        }
        if !seen.insert(z.clone()) {
            // Both step maps are bijections, so a revisit that is not the
            // start means the precondition was violated upstream.
            return Err(Error::ValidationFailed(
                "walk revisited an interior state; modulus not coprime to end coefficients?".into(),
            ));
        }
        states.push(WalkState {
            residues: z.clone(),
            step: multipliers.len(),
        });
        if multipliers.len() as u128 > bound {
            return Err(Error::SearchBudgetExceeded(format!(
                "walk exceeded n^d = {bound} steps without closing"
            )));
        }
    }

    let r = multipliers.len();
    // (Σ p_k x^k)·m ≡ x^r − 1 (mod n); lift to x^r − x^0 − n·p = P·m exactly.
    let cofactor = IntPoly::new(multipliers.iter().map(|&c| BigInt::from(c)).collect());
    let defect = IntPoly::power_difference(r, 0).sub(&cofactor.mul(minpoly));
    debug_assert!(defect.coeffs().iter().all(|c| c.mod_floor(n).is_zero()));
    let p = defect.div_exact_scalar(n).map_err(|_| {
        Error::ValidationFailed("walk congruence did not lift to an exact certificate".into())
    })?;
    Ok((r, p, cofactor, WalkTrace { states, multipliers }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseSpec;
    use std::sync::Arc;

    fn base(coeffs: &[i64]) -> Base {
        Arc::new(BaseSpec::new(IntPoly::from_i64(coeffs)).unwrap())
    }

    #[test]
    fn golden_mod_two_exact_trace() {
        // Hand iteration: (1,0) -> (1,1) -> (0,1) -> (1,0), multipliers 1,1,0.
        let b = base(&[-1, -1, 1]);
        let (w, trace) = coprime_walk_traced(&b, &BigInt::from(2)).unwrap();
        let visited: Vec<Vec<u64>> = trace.states.iter().map(|s| s.residues.clone()).collect();
        assert_eq!(
            visited,
            vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![1, 0]]
        );
        assert_eq!(trace.multipliers, vec![1, 1, 0]);
        assert_eq!((w.exponent_i(), w.exponent_j()), (3, 0));
        assert_eq!(w.p(), &IntPoly::from_i64(&[0, 1]));
        assert_eq!(w.r(), &IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn integer_base_small_order() {
        // 2^2 ≡ 1 (mod 3): certificate x^2 - 1 - 3 = (x+2)(x-2).
        let b = base(&[-2, 1]);
        let w = coprime_walk(&b, &BigInt::from(3)).unwrap();
        assert_eq!((w.exponent_i(), w.exponent_j()), (2, 0));
        assert_eq!(w.p(), &IntPoly::one());
        assert_eq!(w.r(), &IntPoly::from_i64(&[2, 1]));

        // order of 2 mod 7 is 3
        let w7 = coprime_walk(&b, &BigInt::from(7)).unwrap();
        assert_eq!((w7.exponent_i(), w7.exponent_j()), (3, 0));
    }

    #[test]
    fn rejects_non_coprime_and_tiny_modulus() {
        let b = base(&[-2, 1]);
        assert!(matches!(
            coprime_walk(&b, &BigInt::from(2)),
            Err(Error::PreconditionViolated(_))
        ));
        let s = base(&[3, 2, 3]);
        assert!(matches!(
            coprime_walk(&s, &BigInt::from(3)),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(coprime_walk(&b, &BigInt::from(1)).is_err());
    }

    #[test]
    fn walk_length_within_state_bound() {
        for n in [5u64, 9, 25] {
            let b = base(&[-1, -1, 1]);
            let (_, trace) = coprime_walk_traced(&b, &BigInt::from(n)).unwrap();
            assert!((trace.multipliers.len() as u128) <= (n as u128).pow(2));
        }
    }
}
