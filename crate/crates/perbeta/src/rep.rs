//! Eventually periodic digit strings and the operations that build them.
//!
//! A `PeriodicRep` stores digits a_k for positions k ≥ start, meaning the
//! value Σ a_k β^(−k): preperiod digits first, then a repeating period.
//! Canonical form has the minimal period, no preperiod tail that could be
//! rotated into the period, and a start position that is 0 unless nonzero
//! digits occupy negative positions (integer parts).
//!
//! Digit extraction from a witness works by superposing copies of p's
//! coefficient vector at stride i−j starting at offset i: the identity
//! 1/n = Σ_{k≥0} p(β)·β^(−i−k(i−j)) is the geometric-series form of
//! β^i − β^j = n·p(β). A densified witness has deg p < 2(i−j), so at most
//! two copies overlap anywhere and every digit is bounded by twice the
//! largest coefficient of p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::base::Base;
use crate::engine::{densify, find_witness, Method};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::oracle::eval_rep;
use crate::poly::{IntPoly, LaurentIntPoly};
use crate::witness::{bigint_from_value, bigint_to_number, FermatWitness};

#[derive(Clone, Debug)]
pub struct PeriodicRep {
    base: Base,
    /// Position of the first stored digit; the value is Σ_{k≥start} a_k β^(−k),
    /// so the lead exponent L of the β^L leading term is −start.
    start: i64,
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl PartialEq for PeriodicRep {
    fn eq(&self, other: &Self) -> bool {
        self.base.same_base(&other.base)
            && self.start == other.start
            && self.preperiod == other.preperiod
            && self.period == other.period
    }
}

impl Eq for PeriodicRep {}

impl PeriodicRep {
    /// Builds a representation without canonicalizing. The period must be
    /// nonempty.
    pub fn new_raw(
        base: Base,
        start: i64,
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
    ) -> Result<PeriodicRep> {
        if period.is_empty() {
            return Err(Error::PreconditionViolated(
                "period must be nonempty".into(),
            ));
        }
        Ok(PeriodicRep {
            base,
            start,
            preperiod,
            period,
        })
    }

    /// The zero representation: empty preperiod, period (0).
    pub fn zero(base: Base) -> PeriodicRep {
        PeriodicRep {
            base,
            start: 0,
            preperiod: Vec::new(),
            period: vec![BigInt::zero()],
        }
    }

    /// Finite digit list starting at `start`, padded with a zero period.
    pub fn finite(base: Base, start: i64, digits: Vec<BigInt>) -> PeriodicRep {
        PeriodicRep {
            base,
            start,
            preperiod: digits,
            period: vec![BigInt::zero()],
        }
        .canonicalize()
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// Lead exponent L: digits exist for positions k ≥ −L.
    pub fn lead_exponent(&self) -> i64 {
        -self.start
    }

    pub fn start_position(&self) -> i64 {
        self.start
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// Digit at an absolute position (zero before the start).
    pub fn digit_at(&self, pos: i64) -> BigInt {
        if pos < self.start {
            return BigInt::zero();
        }
        let idx = (pos - self.start) as usize;
        if idx < self.preperiod.len() {
            self.preperiod[idx].clone()
        } else {
            let off = (idx - self.preperiod.len()) % self.period.len();
            self.period[off].clone()
        }
    }

    /// The digits at positions from..from+count as a plain vector.
    pub fn unroll(&self, from: i64, count: usize) -> Vec<BigInt> {
        (0..count).map(|t| self.digit_at(from + t as i64)).collect()
    }

    pub fn is_zero_rep(&self) -> bool {
        self.preperiod.iter().all(|d| d.is_zero()) && self.period.iter().all(|d| d.is_zero())
    }

    /// Largest digit magnitude over preperiod and period.
    pub fn max_abs_digit(&self) -> BigInt {
        self.preperiod
            .iter()
            .chain(self.period.iter())
            .map(|d| d.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Minimal period, absorbed preperiod tail, trimmed leading zeros.
    pub fn canonicalize(&self) -> PeriodicRep {
        if self.is_zero_rep() {
            return PeriodicRep::zero(self.base.clone());
        }
        let mut start = self.start;
        let mut pre = self.preperiod.clone();
        let mut per = self.period.clone();

        // Minimal period: smallest divisor length that tiles the period.
        let plen = per.len();
        for q in 1..=plen {
            if plen % q != 0 {
                continue;
            }
            if (q..plen).all(|i| per[i] == per[i % q]) {
                per.truncate(q);
                break;
            }
        }

        // Baseline: first nonzero digit decides how far leading zeros trim.
        let target_start = {
            let mut pos = start;
            loop {
                let idx = (pos - start) as usize;
                let digit = if idx < pre.len() {
                    &pre[idx]
                } else {
                    &per[(idx - pre.len()) % per.len()]
                };
                if !digit.is_zero() {
                    break pos.min(0);
                }
                pos += 1;
            }
        };
        if start > target_start {
            let mut padded = vec![BigInt::zero(); (start - target_start) as usize];
            padded.extend(pre);
            pre = padded;
            start = target_start;
        }
        while start < target_start {
            if !pre.is_empty() {
                debug_assert!(pre[0].is_zero());
                pre.remove(0);
            } else {
                debug_assert!(per[0].is_zero());
                per.rotate_left(1);
            }
            start += 1;
        }

        // Absorb the preperiod tail by rotating the period.
        while let (Some(last_pre), Some(last_per)) = (pre.last(), per.last()) {
            if last_pre != last_per {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }

        PeriodicRep {
            base: self.base.clone(),
            start,
            preperiod: pre,
            period: per,
        }
    }

    /// Wire format: {"L", "preperiod", "period"}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "L": self.lead_exponent(),
            "preperiod": self.preperiod.iter().map(bigint_to_number).collect::<Vec<_>>(),
            "period": self.period.iter().map(bigint_to_number).collect::<Vec<_>>(),
        })
    }

    /// Parses the wire format against a known base.
    pub fn from_json(base: Base, v: &serde_json::Value) -> Result<PeriodicRep> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::ParseError("representation JSON must be an object".into()))?;
        let lead = bigint_from_value(
            obj.get("L")
                .ok_or_else(|| Error::ParseError("missing field 'L'".into()))?,
        )?;
        use num_traits::ToPrimitive;
        let lead = lead
            .to_i64()
            .ok_or_else(|| Error::ParseError("lead exponent out of range".into()))?;
        let digits = |name: &str| -> Result<Vec<BigInt>> {
            obj.get(name)
                .ok_or_else(|| Error::ParseError(format!("missing field '{name}'")))?
                .as_array()
                .ok_or_else(|| Error::ParseError(format!("field '{name}' must be an array")))?
                .iter()
                .map(bigint_from_value)
                .collect()
        };
        PeriodicRep::new_raw(base, -lead, digits("preperiod")?, digits("period")?)
    }
}

impl fmt::Display for PeriodicRep {
    /// Renders as `int_digits . frac_digits (period)` with comma-separated
    /// signed digits; the radix point sits after position 0, and the period
    /// is unrolled so it starts strictly after the point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let start = self.start;
        let mut pre = self.preperiod.clone();
        let mut per = self.period.clone();
        // Slide the period start to a position >= 1.
        while start + (pre.len() as i64) < 1 {
            pre.push(per[0].clone());
            per.rotate_left(1);
        }
        let join = |ds: &[BigInt]| {
            ds.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let split = ((1 - start).max(0) as usize).min(pre.len());
        let int_part = if split == 0 {
            "0".to_string()
        } else {
            join(&pre[..split])
        };
        let frac = join(&pre[split..]);
        if frac.is_empty() {
            write!(f, "{int_part} . ({})", join(&per))
        } else {
            write!(f, "{int_part} . {frac} ({})", join(&per))
        }
    }
}

/// Digit string of 1/n from a densified witness.
///
/// Requires deg p < 2(i−j) (run [`densify`] first) and the witness modulus
/// to match n. The result is canonical and is re-evaluated to exactly 1/n
/// before being returned.
pub fn rep_of_unit_fraction(base: &Base, n: &BigInt, w: &FermatWitness) -> Result<PeriodicRep> {
    if !w.base().same_base(base) {
        return Err(Error::PreconditionViolated(
            "witness belongs to a different base".into(),
        ));
    }
    if w.modulus() != n {
        return Err(Error::PreconditionViolated(format!(
            "witness modulus {} does not match n = {n}",
            w.modulus()
        )));
    }
    let p = w.p();
    if p.is_zero() {
        return Err(Error::ValidationFailed(
            "witness has zero p; the base is a root of unity".into(),
        ));
    }
    let stride = w.period();
    let deg_p = p.degree();
    if deg_p >= 2 * stride {
        return Err(Error::DensityViolated {
            deg_p,
            bound: 2 * stride,
        });
    }
    let i = w.exponent_i() as i64;
    let start = i - deg_p as i64;
    let stride_i = stride as i64;

    // Digit at position ℓ: copy k places coefficient p_t at position
    // i + k·stride − t, so the contributions come from the k-window with
    // 0 ≤ i + k·stride − ℓ ≤ deg p.
    let digit = |pos: i64| -> BigInt {
        let lo = pos - i;
        let k_min = if lo <= 0 {
            0
        } else {
            (lo + stride_i - 1) / stride_i
        };
        let k_max = (pos - i + deg_p as i64).div_euclid(stride_i);
        let mut acc = BigInt::zero();
        let mut k = k_min;
        while k <= k_max {
            let idx = i + k * stride_i - pos;
            debug_assert!((0..=deg_p as i64).contains(&idx));
            acc += p.coeff(idx as usize);
            k += 1;
        }
        acc
    };

    let pre: Vec<BigInt> = (start..i).map(digit).collect();
    let per: Vec<BigInt> = (i..i + stride as i64).map(digit).collect();
    let rep = PeriodicRep {
        base: base.clone(),
        start,
        preperiod: pre,
        period: per,
    }
    .canonicalize();

    let value = eval_rep(&rep)?;
    let expected = FieldElement::from_rational(
        base.clone(),
        BigRational::new(BigInt::one(), n.clone()),
    );
    if value != expected {
        return Err(Error::ValidationFailed(format!(
            "unit-fraction digits evaluate to {value}, expected 1/{n}"
        )));
    }
    Ok(rep)
}

/// Multiplies a representation by a finite integer Laurent polynomial in β.
/// The digits are the convolution b_t = Σ_s z_s·a_(t+s); the result keeps
/// the input's period length and is then canonicalized.
pub fn multiply_finite(rep: &PeriodicRep, z: &LaurentIntPoly) -> PeriodicRep {
    if z.is_zero() || rep.is_zero_rep() {
        return PeriodicRep::zero(rep.base.clone());
    }
    let low = z.low();
    let high = z.high();
    let s = rep.start;
    let n_pre = rep.preperiod.len() as i64;
    let plen = rep.period.len();

    let new_start = s - high;
    let period_from = s + n_pre - low;
    let digit = |t: i64| -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in z.terms() {
            acc += c * rep.digit_at(t + e);
        }
        acc
    };
    let pre: Vec<BigInt> = (new_start..period_from).map(digit).collect();
    let per: Vec<BigInt> = (period_from..period_from + plen as i64).map(digit).collect();
    PeriodicRep {
        base: rep.base.clone(),
        start: new_start,
        preperiod: pre,
        period: per,
    }
    .canonicalize()
}

/// Digit string of an arbitrary element of Q(β).
///
/// Clears denominators (x = z/n with z an integer polynomial in β), builds
/// the 1/n digits from a densified witness, multiplies by z, and verifies
/// the exact value.
pub fn rep_of_field_element(x: &FieldElement) -> Result<PeriodicRep> {
    let base = x.base().clone();
    if x.is_zero() {
        return Ok(PeriodicRep::zero(base));
    }
    let mut n = BigInt::one();
    for c in x.coeffs() {
        n = n.lcm(c.denom());
    }
    let z = IntPoly::new(
        x.coeffs()
            .iter()
            .map(|c| c.numer() * (&n / c.denom()))
            .collect(),
    );

    let rep = if n.is_one() {
        // Already in Z[β]: finite digit string, coefficient of β^t at
        // position −t.
        let digits: Vec<BigInt> = (0..=z.degree())
            .rev()
            .map(|t| z.coeff(t))
            .collect();
        PeriodicRep::finite(base.clone(), -(z.degree() as i64), digits)
    } else {
        let w = find_witness(&base, &n, Method::Auto)?;
        let dense = densify(&w, 2.0)?;
        let unit = rep_of_unit_fraction(&base, &n, &dense)?;
        multiply_finite(&unit, &LaurentIntPoly::from_int_poly(&z))
    };

    let value = eval_rep(&rep)?;
    if &value != x {
        return Err(Error::ValidationFailed(format!(
            "digit string evaluates to {value}, expected {x}"
        )));
    }
    Ok(rep)
}

/// Best-effort digit reduction toward |digit| ≤ target.
///
/// Greedily adds integer multiples of the minimal polynomial's coefficient
/// vector at shifted positions (value-preserving because m(β) = 0), with
/// period edits applied cyclically so periodicity survives. Bounded passes;
/// returns the input unchanged when no move improves the digits. This is a
/// local rewriting pass, not a parallel-addition algorithm, so no alphabet
/// is guaranteed; callers read the achieved bound off the result.
pub fn normalize_digits(rep: &PeriodicRep, target: &BigInt) -> PeriodicRep {
    const MAX_PASSES: usize = 32;

    let canon = rep.canonicalize();
    if canon.max_abs_digit() <= target.abs() || canon.is_zero_rep() {
        return canon;
    }
    let base = canon.base.clone();
    let m = base.minpoly();
    let d = m.degree();

    // Working buffer: headroom above the start, then the preperiod, then
    // the period unrolled far enough that every digit value has an
    // occurrence with a full edit window on both sides. Period edits are
    // applied at a single anchor inside one unrolled copy — implicitly to
    // every copy — so each edit adds a multiple of β^(−anchor)·m(β) = 0
    // per copy and the value cannot move.
    let head = d + 1;
    let mut pre: Vec<BigInt> = vec![BigInt::zero(); head];
    pre.extend(canon.preperiod.iter().cloned());
    let orig_plen = canon.period.len();
    let mut per: Vec<BigInt> = canon.period.clone();
    while per.len() < orig_plen + 2 * (d + 1) {
        per.extend(canon.period.iter().cloned());
    }
    let start = canon.start - head as i64;

    let cost = |pre: &[BigInt], per: &[BigInt]| -> (BigInt, BigInt) {
        let max = pre
            .iter()
            .chain(per.iter())
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let sumsq = pre
            .iter()
            .chain(per.iter())
            .map(|x| x * x)
            .fold(BigInt::zero(), |a, b| a + b);
        (max, sumsq)
    };

    for _ in 0..MAX_PASSES {
        let (cur_max, _) = cost(&pre, &per);
        if cur_max <= target.abs() {
            break;
        }

        // Edit targets: any offending preperiod digit, plus an offending
        // period occurrence with d slots of margin on both sides (the
        // unrolling above guarantees one exists for each digit value).
        let mut targets: Vec<(bool, usize)> = Vec::new();
        if let Some(idx) = pre.iter().position(|v| v.abs() == cur_max) {
            targets.push((true, idx));
        }
        if let Some(idx) = (d..per.len().saturating_sub(d + 1))
            .find(|&idx| per[idx].abs() == cur_max)
        {
            targets.push((false, idx));
        }

        let mut best: Option<((BigInt, BigInt), Vec<BigInt>, Vec<BigInt>)> = None;
        for (in_pre, offending) in targets {
            let offending_val = if in_pre {
                pre[offending].clone()
            } else {
                per[offending].clone()
            };
            // Anchor the m-vector so its term `align` lands on the digit:
            // a_t goes to buffer index anchor − t with anchor = offending + align.
            for align in 0..=d {
                let a = m.coeff(align);
                if a.is_zero() {
                    continue;
                }
                let anchor = offending + align;
                let limit = if in_pre { pre.len() } else { per.len() };
                if anchor < d || anchor >= limit {
                    continue;
                }
                let c0 = -&offending_val / &a;
                for delta in [-1i64, 0, 1] {
                    let c = &c0 + BigInt::from(delta);
                    if c.is_zero() {
                        continue;
                    }
                    let mut new_pre = pre.clone();
                    let mut new_per = per.clone();
                    {
                        let buf = if in_pre { &mut new_pre } else { &mut new_per };
                        for t in 0..=d {
                            buf[anchor - t] += &c * m.coeff(t);
                        }
                    }
                    let cand = cost(&new_pre, &new_per);
                    let improves = match &best {
                        Some((b, _, _)) => cand < *b,
                        None => cand < cost(&pre, &per),
                    };
                    if improves {
                        best = Some((cand, new_pre, new_per));
                    }
                }
            }
        }
        match best {
            Some((_, new_pre, new_per)) => {
                pre = new_pre;
                per = new_per;
            }
            None => break,
        }
    }

    let out = PeriodicRep {
        base: base.clone(),
        start,
        preperiod: pre,
        period: per,
    }
    .canonicalize();

    // Every edit added a multiple of a shift of m(β) = 0, so the value is
    // unchanged by construction; anything else is a bug.
    let before = eval_rep(&canon).expect("input evaluated");
    let after = eval_rep(&out).expect("output evaluates");
    assert!(before == after, "digit normalization changed the value");

    if out.max_abs_digit() < canon.max_abs_digit() {
        out
    } else {
        canon
    }
}

/// Canonical form; see [`PeriodicRep::canonicalize`].
pub fn canonicalize(rep: &PeriodicRep) -> PeriodicRep {
    rep.canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseSpec;
    use crate::walk::coprime_walk;
    use std::sync::Arc;

    fn golden() -> Base {
        Arc::new(BaseSpec::new(IntPoly::from_i64(&[-1, -1, 1])).unwrap())
    }

    fn two() -> Base {
        Arc::new(BaseSpec::new(IntPoly::from_i64(&[-2, 1])).unwrap())
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonicalize_minimal_period() {
        let r = PeriodicRep::new_raw(golden(), 0, vec![], big(&[1, 0, 1, 0])).unwrap();
        let c = r.canonicalize();
        assert_eq!(c.period(), &big(&[1, 0]) as &[BigInt]);
    }

    #[test]
    fn canonicalize_absorbs_tail() {
        // 0,1 | 0,0,1 repeating equals the purely periodic 0,1,0 0,1,0 ...
        let r = PeriodicRep::new_raw(golden(), 0, big(&[0, 1]), big(&[0, 0, 1])).unwrap();
        let c = r.canonicalize();
        assert!(c.preperiod().is_empty());
        assert_eq!(c.period().len(), 3);
        for pos in 0..12 {
            assert_eq!(c.digit_at(pos), r.digit_at(pos), "digit {pos}");
        }
    }

    #[test]
    fn canonicalize_zero_and_idempotence() {
        let z = PeriodicRep::new_raw(golden(), 3, big(&[0, 0]), big(&[0, 0, 0])).unwrap();
        let c = z.canonicalize();
        assert_eq!(c, PeriodicRep::zero(golden()));

        let r = PeriodicRep::new_raw(golden(), -2, big(&[0, 0, 1, 2]), big(&[3, 3])).unwrap();
        let once = r.canonicalize();
        assert_eq!(once.canonicalize(), once);
        for pos in -4..16 {
            assert_eq!(once.digit_at(pos), r.digit_at(pos));
        }
    }

    #[test]
    fn canonicalize_trims_leading_zeros() {
        // digits live at positions >= 2; baseline keeps the view from 0
        let r = PeriodicRep::new_raw(golden(), 2, vec![], big(&[1, 0, 0])).unwrap();
        let c = r.canonicalize();
        assert_eq!(c.start_position(), 0);
        assert_eq!(c.lead_exponent(), 0);
        assert_eq!(c.period(), &big(&[0, 0, 1]) as &[BigInt]);

        // a digit at position -3 keeps its integer part
        let neg = PeriodicRep::new_raw(golden(), -5, big(&[0, 0, 7]), big(&[0])).unwrap();
        let cn = neg.canonicalize();
        assert_eq!(cn.start_position(), -3);
        assert_eq!(cn.lead_exponent(), 3);
    }

    #[test]
    fn unit_fraction_golden_half() {
        // 1/2 = β^,-2 + β^-5 + β^-8 + ... from the witness (3,0), p = x.
        let b = golden();
        let n = BigInt::from(2);
        let w = coprime_walk(&b, &n).unwrap();
        let rep = rep_of_unit_fraction(&b, &n, &w).unwrap();
        assert_eq!(rep.unroll(0, 9), big(&[0, 0, 1, 0, 0, 1, 0, 0, 1]));
        let v = eval_rep(&rep).unwrap();
        assert_eq!(
            v,
            FieldElement::from_rational(b.clone(), rat(1, 2))
        );
    }

    #[test]
    fn unit_fraction_base_two_third() {
        // 1/3 = 2^-2 + 2^-4 + ... ; period (0,1).
        let b = two();
        let n = BigInt::from(3);
        let w = coprime_walk(&b, &n).unwrap();
        let rep = rep_of_unit_fraction(&b, &n, &w).unwrap();
        assert_eq!(rep.period(), &big(&[0, 1]) as &[BigInt]);
        assert_eq!(rep.unroll(0, 6), big(&[0, 0, 1, 0, 1, 0]));
    }

    #[test]
    fn unit_fraction_requires_density() {
        let b = Arc::new(BaseSpec::new(IntPoly::from_i64(&[3, 2, 3])).unwrap());
        let n = BigInt::from(6);
        let p = IntPoly::from_i64(&[-2, -3, -4, -2, -1]);
        let r = IntPoly::from_i64(&[4, 3, 2]);
        let w = FermatWitness::new(b.clone(), n.clone(), 3, 1, p, r).unwrap();
        // deg p = 4 >= 2*(3-1): refused until densified
        assert!(matches!(
            rep_of_unit_fraction(&b, &n, &w),
            Err(Error::DensityViolated { .. })
        ));
        let dense = densify(&w, 2.0).unwrap();
        let rep = rep_of_unit_fraction(&b, &n, &dense).unwrap();
        let v = eval_rep(&rep).unwrap();
        assert_eq!(v, FieldElement::from_rational(b.clone(), rat(1, 6)));
        // densified digit bound: 2·M(d+1) = 18
        assert!(rep.max_abs_digit() <= BigInt::from(18));
    }

    #[test]
    fn multiply_by_scalar_and_shift() {
        let b = golden();
        let n = BigInt::from(2);
        let w = coprime_walk(&b, &n).unwrap();
        let rep = rep_of_unit_fraction(&b, &n, &w).unwrap();

        let doubled = multiply_finite(&rep, &LaurentIntPoly::constant(BigInt::from(2)));
        assert_eq!(
            eval_rep(&doubled).unwrap(),
            FieldElement::one(b.clone())
        );

        let zeroed = multiply_finite(&rep, &LaurentIntPoly::zero());
        assert_eq!(zeroed, PeriodicRep::zero(b.clone()));

        // base 2: (1/3)·β = 2/3, digits shift one position left
        let b2 = two();
        let n3 = BigInt::from(3);
        let w3 = coprime_walk(&b2, &n3).unwrap();
        let third = rep_of_unit_fraction(&b2, &n3, &w3).unwrap();
        let shifted = multiply_finite(
            &third,
            &LaurentIntPoly::from_int_poly(&IntPoly::from_i64(&[0, 1])),
        );
        assert_eq!(
            eval_rep(&shifted).unwrap(),
            FieldElement::from_rational(b2.clone(), rat(2, 3))
        );
        for pos in -1..8 {
            assert_eq!(shifted.digit_at(pos), third.digit_at(pos + 1));
        }
    }

    #[test]
    fn field_element_representations() {
        let b = golden();
        let one = rep_of_field_element(&FieldElement::one(b.clone())).unwrap();
        assert_eq!(one.lead_exponent(), 0);
        assert_eq!(one.preperiod(), &big(&[1]) as &[BigInt]);
        assert_eq!(one.period(), &big(&[0]) as &[BigInt]);

        let half =
            rep_of_field_element(&FieldElement::from_rational(b.clone(), rat(1, 2))).unwrap();
        assert_eq!(
            eval_rep(&half).unwrap(),
            FieldElement::from_rational(b.clone(), rat(1, 2))
        );

        let mixed = FieldElement::from_coeffs(b.clone(), vec![rat(1, 2), rat(1, 2)]);
        let rep = rep_of_field_element(&mixed).unwrap();
        assert_eq!(eval_rep(&rep).unwrap(), mixed);

        let zero = rep_of_field_element(&FieldElement::zero(b.clone())).unwrap();
        assert!(zero.is_zero_rep());
    }

    #[test]
    fn normalize_digit_two() {
        // 2 at position 0 rewrites into digits of magnitude <= 1.
        let b = golden();
        let r = PeriodicRep::new_raw(b.clone(), 0, big(&[2]), big(&[0])).unwrap();
        let before = eval_rep(&r).unwrap();
        let out = normalize_digits(&r, &BigInt::one());
        assert!(out.max_abs_digit() <= BigInt::one());
        assert_eq!(eval_rep(&out).unwrap(), before);
    }

    #[test]
    fn normalize_fixed_points() {
        let b = golden();
        let z = PeriodicRep::zero(b.clone());
        assert_eq!(normalize_digits(&z, &BigInt::one()), z);
        let r = PeriodicRep::new_raw(b.clone(), 0, big(&[1]), big(&[0, 1])).unwrap();
        let c = r.canonicalize();
        assert_eq!(normalize_digits(&r, &BigInt::from(5)), c);
    }

    #[test]
    fn json_round_trip() {
        let b = golden();
        let r = PeriodicRep::new_raw(b.clone(), -1, big(&[2, 0]), big(&[1, 0, 0])).unwrap();
        let v = r.to_json();
        assert_eq!(v["L"], serde_json::json!(1));
        let back = PeriodicRep::from_json(b, &v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn display_format() {
        let b = golden();
        let half = PeriodicRep::new_raw(b.clone(), 0, vec![], big(&[0, 0, 1]))
            .unwrap()
            .canonicalize();
        assert_eq!(half.to_string(), "0 . (0,1,0)");
        let one = PeriodicRep::new_raw(b.clone(), 0, big(&[1]), big(&[0])).unwrap();
        assert_eq!(one.to_string(), "1 . (0)");
        let neg = PeriodicRep::new_raw(b, -1, big(&[3, -2]), big(&[0])).unwrap();
        assert_eq!(neg.to_string(), "3,-2 . (0)");
    }
}
