//! Witness search: dispatch, prime-power recursion, coprime composition,
//! and densification.
//!
//! The constructive route mirrors how the existence proof works. A modulus
//! coprime to both end coefficients is handled by the modular walk. A prime
//! power p^ℓ dividing an end coefficient goes through powers of the base:
//! find k with p^ℓ dividing the leading coefficient of a vanishing
//! polynomial of β^k, strip that leading term, recurse on the lower-degree
//! remainder, and transport the result back through x ↦ x^k. Coprime parts
//! are composed by a shift search certified by the membership oracle.
//! Every intermediate identity is re-checked exactly, and any failure of
//! the constructive route falls back to the exhaustive graph search, which
//! is complete whenever a witness exists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::graph::{self, DEFAULT_NODE_BUDGET};
use crate::modular::factor_modulus;
use crate::oracle::{member_nzbeta, Membership};
use crate::poly::IntPoly;
use crate::powers::power_min_poly;
use crate::walk::{coprime_walk, raw_coprime_walk};
use crate::witness::FermatWitness;

/// Tunable search limits. `Default` matches the documented defaults; the
/// CLI lets one scalar override the caps via PERBETA_BUDGET.
#[derive(Clone, Debug)]
pub struct Budgets {
    /// Cap on the exponent k tried when searching powers of the base.
    pub power_search: u32,
    /// Prime-power recursion depth; `None` means the degree of the base.
    pub recursion_depth: Option<u32>,
    /// Shift attempts in coprime composition; `None` means 4·d·n.
    pub combine_shifts: Option<u64>,
    /// BFS state cap for graph searches and fallbacks.
    pub graph_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets {
            power_search: 64,
            recursion_depth: None,
            combine_shifts: None,
            graph_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Budgets {
    /// Applies one scalar override to every capped search.
    pub fn with_scalar_override(value: u64) -> Budgets {
        Budgets {
            power_search: value.min(u32::MAX as u64) as u32,
            recursion_depth: Some(value.min(u32::MAX as u64) as u32),
            combine_shifts: Some(value),
            graph_nodes: value,
        }
    }
}

/// Which search strategy `find_witness` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Constructive route with graph fallback.
    Auto,
    /// Modular walk only; errors if an end coefficient shares a factor with n.
    Walk,
    /// Exhaustive graph search only.
    Graph,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "auto" => Ok(Method::Auto),
            "walk" => Ok(Method::Walk),
            "graph" => Ok(Method::Graph),
            other => Err(Error::ParseError(format!(
                "unknown method '{other}' (expected auto|walk|graph)"
            ))),
        }
    }
}

/// Finds a certified witness for the base and modulus.
pub fn find_witness(base: &Base, n: &BigInt, method: Method) -> Result<FermatWitness> {
    find_witness_with(base, n, method, &Budgets::default())
}

pub fn find_witness_with(
    base: &Base,
    n: &BigInt,
    method: Method,
    budgets: &Budgets,
) -> Result<FermatWitness> {
    if n < &BigInt::from(2) {
        return Err(Error::PreconditionViolated(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    match method {
        Method::Walk => coprime_walk(base, n),
        Method::Graph => graph_witness(base, n, budgets),
        Method::Auto => {
            let m = base.minpoly();
            let ends_coprime =
                m.coeff(0).gcd(n).is_one() && m.leading().gcd(n).is_one();
            let constructive = if ends_coprime {
                coprime_walk(base, n)
            } else {
                composite_witness(base, n, budgets)
            };
            match constructive {
                Ok(w) => Ok(w),
                // The graph search is complete, so use it whenever the
                // constructive route gives up.
                Err(_) => graph_witness(base, n, budgets),
            }
        }
    }
}

fn graph_witness(base: &Base, n: &BigInt, budgets: &Budgets) -> Result<FermatWitness> {
    let path = graph::shortest_path_with_budget(base, n, budgets.graph_nodes)?;
    graph::path_to_witness(&path, base, n)
}

/// Factors n, witnesses each part, and composes. Prime powers coprime to
/// both end coefficients are walked together as a single block, which keeps
/// the composition short.
fn composite_witness(base: &Base, n: &BigInt, budgets: &Budgets) -> Result<FermatWitness> {
    let m = base.minpoly();
    let ends = m.coeff(0).abs() * m.leading().abs();
    let mut coprime_block = BigInt::one();
    let mut parts: Vec<FermatWitness> = Vec::new();
    for (p, e) in factor_modulus(n)? {
        let pe = BigInt::from(p).pow(e);
        if ends.gcd(&BigInt::from(p)).is_one() {
            coprime_block *= pe;
        } else {
            parts.push(prime_power_witness_with(base, p, e, budgets)?);
        }
    }
    if coprime_block > BigInt::one() {
        parts.push(coprime_walk(base, &coprime_block)?);
    }
    let mut acc = parts
        .pop()
        .ok_or_else(|| Error::ValidationFailed("modulus factored into nothing".into()))?;
    while let Some(next) = parts.pop() {
        acc = combine_coprime_with(&acc, &next, budgets)?;
    }
    Ok(acc)
}

/// Witness for a prime-power modulus p^ℓ.
pub fn prime_power_witness(base: &Base, p: u64, ell: u32) -> Result<FermatWitness> {
    prime_power_witness_with(base, p, ell, &Budgets::default())
}

pub fn prime_power_witness_with(
    base: &Base,
    p: u64,
    ell: u32,
    budgets: &Budgets,
) -> Result<FermatWitness> {
    if !is_prime(p) {
        return Err(Error::PreconditionViolated(format!("{p} is not prime")));
    }
    if ell == 0 {
        return Err(Error::PreconditionViolated("exponent must be >= 1".into()));
    }
    let n = BigInt::from(p).pow(ell);
    let m = base.minpoly();
    let pb = BigInt::from(p);
    if m.coeff(0).gcd(&pb).is_one() && m.leading().gcd(&pb).is_one() {
        return coprime_walk(base, &n);
    }
    let depth = budgets.recursion_depth.unwrap_or(base.degree() as u32);
    let raw = raw_prime_power(m, p, ell, depth, budgets);
    match raw {
        Ok(rw) => {
            FermatWitness::new(base.clone(), n.clone(), rw.i, rw.j, rw.p, rw.r)
        }
        Err(first) => {
            // Graph search is complete for minimal polynomials.
            graph_witness(base, &n, budgets).map_err(|second| {
                Error::SearchBudgetExceeded(format!(
                    "constructive search failed ({first}); graph fallback failed ({second})"
                ))
            })
        }
    }
}

/// Internal witness form over an arbitrary polynomial g:
/// x^i − x^j − n·p = r·g exactly.
#[derive(Clone, Debug)]
struct RawWitness {
    i: usize,
    j: usize,
    p: IntPoly,
    r: IntPoly,
}

impl RawWitness {
    fn check(&self, g: &IntPoly, n: &BigInt) -> Result<()> {
        if self.i <= self.j {
            return Err(Error::ValidationFailed(format!(
                "raw witness has i = {} <= j = {}",
                self.i, self.j
            )));
        }
        let lhs = IntPoly::power_difference(self.i, self.j).sub(&self.p.scale(n));
        if lhs != self.r.mul(g) {
            return Err(Error::ValidationFailed(
                "raw witness certificate is inexact".into(),
            ));
        }
        Ok(())
    }
}

/// Constructive prime-power witness for an arbitrary integer polynomial.
/// Errors trigger the caller's graph fallback; a level that must recurse
/// patches failures below it with a graph search on the smaller polynomial.
fn raw_prime_power(
    g: &IntPoly,
    p: u64,
    ell: u32,
    depth: u32,
    budgets: &Budgets,
) -> Result<RawWitness> {
    let n = BigInt::from(p).pow(ell);
    let pb = BigInt::from(p);

    if g.is_zero() {
        return Err(Error::DegenerateInput("zero polynomial in recursion".into()));
    }

    // Strip powers of x: a witness for g/x^v multiplied through by x^v.
    let v = g.x_valuation();
    if v > 0 {
        let h = g.shift_down(v)?;
        let w = raw_prime_power(&h, p, ell, depth, budgets)?;
        let lifted = RawWitness {
            i: w.i + v,
            j: w.j + v,
            p: w.p.shift_up(v),
            r: w.r,
        };
        lifted.check(g, &n)?;
        return Ok(lifted);
    }

    // Constant base case: c·u ≡ 1 (mod n) turns x − 1 into a certificate.
    if g.degree() == 0 {
        let c = g.constant_term();
        let e = c.extended_gcd(&n);
        if !e.gcd.is_one() {
            return Err(Error::PreconditionViolated(format!(
                "constant {c} shares factor {} with modulus {n}",
                e.gcd
            )));
        }
        let u = e.x.mod_floor(&n);
        let r = IntPoly::from_i64(&[-1, 1]).scale(&u);
        let defect = IntPoly::power_difference(1, 0).sub(&r.mul(g));
        let pw = defect.div_exact_scalar(&n)?;
        let w = RawWitness { i: 1, j: 0, p: pw, r };
        w.check(g, &n)?;
        return Ok(w);
    }

    // Pull out content; it is coprime to p whenever g arose from stripping
    // the leading term of a primitive polynomial.
    let content = g.content();
    if !content.is_one() {
        if !content.gcd(&pb).is_one() {
            return Err(Error::PreconditionViolated(format!(
                "content {content} of intermediate polynomial shares a factor with {p}"
            )));
        }
        let h = g.div_exact_scalar(&content)?;
        let w = prime_power_with_patch(&h, p, ell, depth, budgets)?;
        // u·content ≡ 1 (mod n): rescale the cofactor and absorb the error
        // term into p.
        let e = content.extended_gcd(&n);
        let u = e.x.mod_floor(&n);
        let slack = (&u * &content - BigInt::one()).div_rem(&n).0;
        let r = w.r.scale(&u);
        let pw = w.p.sub(&w.r.mul(&h).scale(&slack));
        let lifted = RawWitness { i: w.i, j: w.j, p: pw, r };
        lifted.check(g, &n)?;
        return Ok(lifted);
    }

    let lead_bad = !g.leading().gcd(&pb).is_one();
    let const_bad = !g.constant_term().gcd(&pb).is_one();

    if !lead_bad && !const_bad {
        let (rexp, pw, cof, _) = raw_coprime_walk(g, &n)?;
        let w = RawWitness {
            i: rexp,
            j: 0,
            p: pw,
            r: cof,
        };
        w.check(g, &n)?;
        return Ok(w);
    }

    if lead_bad {
        return lemma_descent(g, p, ell, depth, budgets);
    }

    // Only the constant end is bad: pass to the reciprocal polynomial, whose
    // leading coefficient is g(0), and transport the witness back.
    let rev = g.reverse();
    let w = lemma_descent(&rev, p, ell, depth, budgets)?;
    let unrev = unreverse_witness(&w, g.degree());
    unrev.check(g, &n)?;
    Ok(unrev)
}

/// Runs the constructive recursion and patches a failure with a graph
/// search over the same (smaller) polynomial.
fn prime_power_with_patch(
    g: &IntPoly,
    p: u64,
    ell: u32,
    depth: u32,
    budgets: &Budgets,
) -> Result<RawWitness> {
    let n = BigInt::from(p).pow(ell);
    match raw_prime_power(g, p, ell, depth, budgets) {
        Ok(w) => Ok(w),
        Err(first) => {
            if g.degree() == 0 || g.x_valuation() > 0 {
                return Err(first);
            }
            let path = graph::shortest_path_for_poly(g, &n, budgets.graph_nodes)
                .map_err(|second| {
                    Error::SearchBudgetExceeded(format!(
                        "recursion failed ({first}); graph patch failed ({second})"
                    ))
                })?;
            let (i, j, pw, r) = graph::path_to_raw_witness(&path, g, &n)?;
            let w = RawWitness { i, j, p: pw, r };
            w.check(g, &n)?;
            Ok(w)
        }
    }
}

/// The descent step: find k with p^ℓ dividing the leading coefficient of a
/// vanishing polynomial of β^k, strip that term, recurse, and substitute
/// x ↦ x^k.
fn lemma_descent(
    g: &IntPoly,
    p: u64,
    ell: u32,
    depth: u32,
    budgets: &Budgets,
) -> Result<RawWitness> {
    if depth == 0 {
        return Err(Error::SearchBudgetExceeded(
            "prime-power recursion depth exhausted".into(),
        ));
    }
    let n = BigInt::from(p).pow(ell);
    let mut found: Option<(u32, IntPoly)> = None;
    for k in 1..=budgets.power_search {
        let mk = power_min_poly(g, k)?;
        if mk.leading().mod_floor(&n).is_zero() {
            found = Some((k, mk));
            break;
        }
    }
    let (k, mk) = found.ok_or_else(|| {
        Error::SearchBudgetExceeded(format!(
            "no power k <= {} has p^ℓ = {n} dividing the leading coefficient",
            budgets.power_search
        ))
    })?;

    let dk = mk.degree();
    let ck = mk.leading();
    let stripped = IntPoly::new(mk.coeffs()[..dk].to_vec());
    if stripped.is_zero() {
        return Err(Error::DegenerateInput(
            "vanishing polynomial degenerates to a monomial".into(),
        ));
    }

    let inner = prime_power_with_patch(&stripped, p, ell, depth - 1, budgets)?;

    // Lift to m_k: the stripped term re-enters with a coefficient divisible
    // by n, so it folds into p.
    let (ck_over_n, rem) = ck.div_rem(&n);
    debug_assert!(rem.is_zero());
    let p_mk = inner
        .p
        .sub(&inner.r.shift_up(dk).scale(&ck_over_n));
    let w_mk = RawWitness {
        i: inner.i,
        j: inner.j,
        p: p_mk,
        r: inner.r,
    };
    w_mk.check(&mk, &n)?;

    // Substitute x ↦ x^k and divide the dilated vanishing polynomial by g.
    let mk_dilated = mk.dilate(k as usize);
    let q = mk_dilated.exact_div(g).map_err(|_| {
        Error::ValidationFailed(
            "dilated vanishing polynomial is not divisible by the input".into(),
        )
    })?;
    let w = RawWitness {
        i: w_mk.i * k as usize,
        j: w_mk.j * k as usize,
        p: w_mk.p.dilate(k as usize),
        r: w_mk.r.dilate(k as usize).mul(&q),
    };
    w.check(g, &n)?;
    Ok(w)
}

/// Transports a witness for the reciprocal polynomial x^D·g(1/x) back to g.
fn unreverse_witness(w: &RawWitness, degree: usize) -> RawWitness {
    let deg_p = if w.p.is_zero() { 0 } else { w.p.degree() };
    let deg_r = w.r.degree();
    let shift = w.i.max(deg_p).max(degree + deg_r);
    let p_new = if w.p.is_zero() {
        IntPoly::zero()
    } else {
        w.p.reverse().shift_up(shift - deg_p).neg()
    };
    let r_new = w.r.reverse().shift_up(shift - degree - deg_r).neg();
    RawWitness {
        i: shift - w.j,
        j: shift - w.i,
        p: p_new,
        r: r_new,
    }
}

/// Composes witnesses for coprime moduli into one for the product.
pub fn combine_coprime(w1: &FermatWitness, w2: &FermatWitness) -> Result<FermatWitness> {
    combine_coprime_with(w1, w2, &Budgets::default())
}

pub fn combine_coprime_with(
    w1: &FermatWitness,
    w2: &FermatWitness,
    budgets: &Budgets,
) -> Result<FermatWitness> {
    if !w1.base().same_base(w2.base()) {
        return Err(Error::PreconditionViolated(
            "witnesses belong to different bases".into(),
        ));
    }
    let n1 = w1.modulus();
    let n2 = w2.modulus();
    if !n1.gcd(n2).is_one() {
        return Err(Error::PreconditionViolated(format!(
            "moduli {n1} and {n2} are not coprime"
        )));
    }
    let base = w1.base();
    let n = n1 * n2;
    let d = base.degree();
    let e = w1.period().lcm(&w2.period());

    let start = w1.exponent_j().min(w2.exponent_j());
    let shifts = budgets.combine_shifts.unwrap_or_else(|| {
        4 * d as u64 * n.to_u64().unwrap_or(u64::MAX / (4 * d as u64).max(1))
    });
    // The certificate for x^(t+e) − x^t needs deg r about t + e − d; give
    // the oracle that much room plus slack from the ingredient witnesses.
    let slack = w1.p().degree().max(w2.p().degree()).max(d);
    for t in start..start + shifts as usize {
        let q = IntPoly::power_difference(t + e, t);
        let budget = t + e + slack + d;
        match member_nzbeta(&q, base, &n, budget)? {
            Membership::Member { p, r } => {
                return FermatWitness::new(base.clone(), n, t + e, t, p, r);
            }
            _ => continue,
        }
    }
    Err(Error::SearchBudgetExceeded(format!(
        "no shift t in [{start}, {}) gives x^(t+{e}) − x^t ∈ {n}Z[β]; \
         graph search is the complete fallback",
        start + shifts as usize
    )))
}

/// Rewrites a witness by telescoping so that deg p < factor·(i − j), then
/// reduces the cofactor coefficients into [0, n). The reduced form bounds
/// every coefficient of p by M·(deg m + 1) with M the largest |a_i|, which
/// is what makes digit extraction alphabet-bounded independent of n.
pub fn densify(w: &FermatWitness, factor: f64) -> Result<FermatWitness> {
    if !(factor > 1.0) {
        return Err(Error::PreconditionViolated(
            "densification factor must exceed 1".into(),
        ));
    }
    let base = w.base();
    let m = base.minpoly();
    let n = w.modulus();
    let (i, j) = (w.exponent_i(), w.exponent_j());
    let stride = i - j;

    // Safety cap; the telescoping condition is satisfiable for every
    // factor > 1, so this is unreachable in practice.
    let max_s = 8 + (4 * (i + w.p().degree())) / stride.max(1);
    for s in 0..=max_s {
        let i_new = i + s * stride;
        let j_new = j;
        let span = i_new - j_new;

        // geo = 1 + x^stride + ... + x^(s*stride)
        let mut geo_coeffs = vec![BigInt::zero(); s * stride + 1];
        for t in 0..=s {
            geo_coeffs[t * stride] = BigInt::one();
        }
        let geo = IntPoly::new(geo_coeffs);

        let r_tele = w.r().mul(&geo);
        let p_tele = w.p().mul(&geo);
        let r_red = IntPoly::new(r_tele.mod_project(n));
        let delta = r_tele.sub(&r_red).div_exact_scalar(n)?;
        let p_red = p_tele.add(&delta.mul(m));

        let deg_p = if p_red.is_zero() { 0 } else { p_red.degree() };
        if (deg_p as f64) < factor * span as f64 {
            let out = FermatWitness::new(
                base.clone(),
                n.clone(),
                i_new,
                j_new,
                p_red,
                r_red,
            )?;
            // Reduced cofactor coefficients in [0, n) bound the digits.
            debug_assert!(
                out.p().max_abs_coeff()
                    <= m.max_abs_coeff() * BigInt::from(m.degree() as u64 + 1)
            );
            return Ok(out);
        }
    }
    Err(Error::ValidationFailed(
        "densification did not converge within the safety cap".into(),
    ))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= p {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
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
    fn auto_golden_small() {
        let b = base(&[-1, -1, 1]);
        let w = find_witness(&b, &BigInt::from(2), Method::Auto).unwrap();
        assert_eq!((w.exponent_i(), w.exponent_j()), (3, 0));
        assert_eq!(w.p(), &IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn auto_integer_base() {
        // order of 2 mod 7 is 3
        let b = base(&[-2, 1]);
        let w = find_witness(&b, &BigInt::from(7), Method::Auto).unwrap();
        assert_eq!((w.exponent_i(), w.exponent_j()), (3, 0));
    }

    #[test]
    fn prime_power_coprime_delegates_to_walk() {
        let b = base(&[-1, -1, 1]);
        let w = prime_power_witness(&b, 2, 1).unwrap();
        assert_eq!((w.exponent_i(), w.exponent_j()), (3, 0));
        let s = base(&[3, 2, 3]);
        let w2 = prime_power_witness(&s, 2, 1).unwrap();
        assert_eq!(w2.modulus(), &BigInt::from(2));
    }

    #[test]
    fn prime_power_bad_leading_coefficient() {
        // 3 divides both ends of 3x^2+2x+3; the descent must still certify.
        let s = base(&[3, 2, 3]);
        for ell in 1..=2 {
            let w = prime_power_witness(&s, 3, ell).unwrap();
            assert_eq!(w.modulus(), &BigInt::from(3i64.pow(ell)));
        }
    }

    #[test]
    fn prime_power_bad_constant_coefficient() {
        // 2 divides a_0 of x - 2: the reciprocal route.
        let b = base(&[-2, 1]);
        let w = prime_power_witness(&b, 2, 1).unwrap();
        assert_eq!(w.modulus(), &BigInt::from(2));
        let w4 = prime_power_witness(&b, 2, 2).unwrap();
        assert_eq!(w4.modulus(), &BigInt::from(4));
    }

    #[test]
    fn prime_power_non_monic_base() {
        let b = base(&[1, -4, 2]);
        for ell in 1..=3 {
            let w = prime_power_witness(&b, 2, ell).unwrap();
            assert_eq!(w.modulus(), &BigInt::from(2i64.pow(ell)));
        }
    }

    #[test]
    fn prime_power_rejects_composite() {
        let b = base(&[-1, -1, 1]);
        assert!(matches!(
            prime_power_witness(&b, 6, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn combine_golden_two_three() {
        let b = base(&[-1, -1, 1]);
        let w2 = coprime_walk(&b, &BigInt::from(2)).unwrap();
        let w3 = coprime_walk(&b, &BigInt::from(3)).unwrap();
        let w6 = combine_coprime(&w2, &w3).unwrap();
        assert_eq!(w6.modulus(), &BigInt::from(6));
        assert_eq!(w6.period() % w2.period(), 0);
        assert_eq!(w6.period() % w3.period(), 0);
    }

    #[test]
    fn combine_rejects_common_factor() {
        let b = base(&[-1, -1, 1]);
        let w2 = coprime_walk(&b, &BigInt::from(2)).unwrap();
        let w4 = coprime_walk(&b, &BigInt::from(4)).unwrap();
        assert!(matches!(
            combine_coprime(&w2, &w4),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn worked_composite_modulus() {
        // Composing the 2-part and 3-part recovers the published exponents.
        let b = base(&[3, 2, 3]);
        let w = find_witness(&b, &BigInt::from(6), Method::Auto).unwrap();
        assert_eq!((w.exponent_i(), w.exponent_j()), (3, 1));
    }

    #[test]
    fn methods_agree_on_validity() {
        let b = base(&[3, 2, 3]);
        let n = BigInt::from(6);
        let auto = find_witness(&b, &n, Method::Auto).unwrap();
        let graphw = find_witness(&b, &n, Method::Graph).unwrap();
        assert_eq!(auto.modulus(), graphw.modulus());
        // walks must refuse: gcd(a_0, 6) = 3
        assert!(matches!(
            find_witness(&b, &n, Method::Walk),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn densify_noop_when_already_dense() {
        let b = base(&[-1, -1, 1]);
        let w = coprime_walk(&b, &BigInt::from(2)).unwrap();
        let d2 = densify(&w, 2.0).unwrap();
        assert_eq!((d2.exponent_i(), d2.exponent_j()), (3, 0));
        assert_eq!(d2.p(), w.p());
        assert_eq!(d2.r(), w.r());
        let d15 = densify(&w, 1.5).unwrap();
        assert_eq!(d15.p(), w.p());
    }

    #[test]
    fn densify_worked_witness() {
        // The published witness has deg p = 4 and stride 2, so it telescopes.
        let b = base(&[3, 2, 3]);
        let p = IntPoly::from_i64(&[-2, -3, -4, -2, -1]);
        let r = IntPoly::from_i64(&[4, 3, 2]);
        let w = FermatWitness::new(b.clone(), BigInt::from(6), 3, 1, p, r).unwrap();
        let dense = densify(&w, 2.0).unwrap();
        let span = dense.period();
        assert!(dense.p().degree() < 2 * span);
        // Lemma-style coefficient bound: M(deg m + 1) = 3 * 3 = 9.
        assert!(dense.p().max_abs_coeff() <= BigInt::from(9));
        assert!(dense.r().coeffs().iter().all(|c| {
            !c.is_negative() && c < &BigInt::from(6)
        }));
    }

    #[test]
    fn densify_rejects_factor_at_most_one() {
        let b = base(&[-1, -1, 1]);
        let w = coprime_walk(&b, &BigInt::from(2)).unwrap();
        assert!(densify(&w, 1.0).is_err());
    }

    #[test]
    fn family_certificates_hold() {
        // Constructive route across the standard family, moderate moduli.
        for coeffs in [&[-1i64, -1, 1][..], &[-1, -1, 0, 1], &[-2, 1], &[3, 2, 3], &[1, -4, 2]] {
            let b = base(coeffs);
            for n in 2..=12i64 {
                let w = find_witness(&b, &BigInt::from(n), Method::Auto)
                    .unwrap_or_else(|e| panic!("no witness for {:?} n={n}: {e}", coeffs));
                assert_eq!(w.modulus(), &BigInt::from(n));
            }
        }
    }
}
