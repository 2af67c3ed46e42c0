//! Base descriptions: a minimal polynomial plus numeric root diagnostics.
//!
//! All exact computations elsewhere in the crate depend only on the minimal
//! polynomial; root moduli are advisory metadata used for eligibility
//! reporting. The designated root defaults to one of maximal modulus.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Near the unit circle, numeric moduli within `tolerance` of 1 count as on
/// the circle; moduli farther out than this many tolerances count as off it.
/// The band in between reports `Uncertain` instead of guessing.
const UNCERTAIN_GUARD: f64 = 10.0;

/// Answer to "is some conjugate on the unit circle?".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Uncertain,
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::Yes => write!(f, "yes"),
            TriState::No => write!(f, "no"),
            TriState::Uncertain => write!(f, "uncertain"),
        }
    }
}

/// How much of the representation theory applies to a base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eligibility {
    /// No conjugate on the unit circle and |β| > 1: all of Q(β) is coverable.
    Full,
    /// A conjugate sits on (or too near) the unit circle: unit fractions 1/n
    /// still get periodic representations, the blanket Q(β) alphabet claim
    /// does not follow.
    UnitFractionsOnly,
    /// |β| <= 1: expansions in powers of 1/β do not converge.
    Invalid,
}

impl fmt::Display for Eligibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eligibility::Full => write!(f, "FULL"),
            Eligibility::UnitFractionsOnly => write!(f, "UNIT-FRACTIONS-ONLY"),
            Eligibility::Invalid => write!(f, "INVALID"),
        }
    }
}

/// An algebraic base: its minimal polynomial and numeric root diagnostics.
#[derive(Clone, Debug)]
pub struct BaseSpec {
    minpoly: IntPoly,
    degree: usize,
    root_moduli: Vec<f64>,
    designated_root_index: usize,
    has_unit_circle_conjugate: TriState,
    dominant_modulus: bool,
    tolerance: f64,
}

impl BaseSpec {
    /// Numerically locates the roots of `minpoly` and records the flags.
    ///
    /// Requires degree >= 1 and content 1. Root finding goes through the
    /// companion matrix of the monic rational normalization, so the flags are
    /// numeric with the stated tolerance; everything else in the crate stays
    /// exact regardless of them.
    pub fn analyze(minpoly: IntPoly, tolerance: f64) -> Result<BaseSpec> {
        if minpoly.is_zero() || minpoly.degree() == 0 {
            return Err(Error::DegenerateInput(
                "minimal polynomial must have degree >= 1".into(),
            ));
        }
        if !minpoly.content().is_one() {
            return Err(Error::DegenerateInput(format!(
                "minimal polynomial must be primitive (content {})",
                minpoly.content()
            )));
        }
        if !(tolerance > 0.0) {
            return Err(Error::DegenerateInput("tolerance must be positive".into()));
        }

        let degree = minpoly.degree();
        let root_moduli = companion_root_moduli(&minpoly)?;

        let designated_root_index = root_moduli
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);

        let near = root_moduli.iter().any(|r| (r - 1.0).abs() <= tolerance);
        let far = root_moduli
            .iter()
            .all(|r| (r - 1.0).abs() > UNCERTAIN_GUARD * tolerance);
        let has_unit_circle_conjugate = if near {
            TriState::Yes
        } else if far {
            TriState::No
        } else {
            TriState::Uncertain
        };
        let dominant_modulus = root_moduli[designated_root_index] > 1.0 + tolerance;

        Ok(BaseSpec {
            minpoly,
            degree,
            root_moduli,
            designated_root_index,
            has_unit_circle_conjugate,
            dominant_modulus,
            tolerance,
        })
    }

    /// `analyze` with the default tolerance.
    pub fn new(minpoly: IntPoly) -> Result<BaseSpec> {
        BaseSpec::analyze(minpoly, DEFAULT_TOLERANCE)
    }

    /// Overrides which root plays the role of β. Exact results do not depend
    /// on the choice; eligibility reporting does.
    pub fn with_designated_root(mut self, index: usize) -> Result<BaseSpec> {
        if index >= self.degree {
            return Err(Error::PreconditionViolated(format!(
                "root index {index} out of range for degree {}",
                self.degree
            )));
        }
        self.designated_root_index = index;
        self.dominant_modulus = self.root_moduli[index] > 1.0 + self.tolerance;
        Ok(self)
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn root_moduli(&self) -> &[f64] {
        &self.root_moduli
    }

    pub fn designated_root_index(&self) -> usize {
        self.designated_root_index
    }

    pub fn designated_modulus(&self) -> f64 {
        self.root_moduli[self.designated_root_index]
    }

    pub fn has_unit_circle_conjugate(&self) -> TriState {
        self.has_unit_circle_conjugate
    }

    pub fn dominant_modulus(&self) -> bool {
        self.dominant_modulus
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Eligibility class for representation building.
    ///
    /// An `Uncertain` circle flag is downgraded to `UnitFractionsOnly`: the
    /// unit-fraction machinery is the part that stays valid either way.
    pub fn eligibility(&self) -> Eligibility {
        match self.has_unit_circle_conjugate {
            TriState::Yes | TriState::Uncertain => Eligibility::UnitFractionsOnly,
            TriState::No => {
                if self.dominant_modulus {
                    Eligibility::Full
                } else {
                    Eligibility::Invalid
                }
            }
        }
    }

    /// Two bases are interchangeable iff their minimal polynomials agree.
    pub fn same_base(&self, other: &BaseSpec) -> bool {
        self.minpoly == other.minpoly
    }
}

/// Shared handle used by field elements, witnesses, and representations.
pub type Base = Arc<BaseSpec>;

/// Analyzes a minimal polynomial into a `BaseSpec`.
pub fn check_base(minpoly: IntPoly, tolerance: f64) -> Result<BaseSpec> {
    BaseSpec::analyze(minpoly, tolerance)
}

/// Moduli of all complex roots, via eigenvalues of the companion matrix of
/// the monic normalization m(x)/a_d.
fn companion_root_moduli(m: &IntPoly) -> Result<Vec<f64>> {
    let d = m.degree();
    let lead = m.leading();
    let to_f64 = |i: usize| -> Result<f64> {
        let num = m.coeff(i);
        // Exact rational -> f64 via BigInt ratio; fine for diagnostics.
        let ratio = num.to_f64().zip(lead.to_f64()).map(|(a, b)| a / b);
        ratio.ok_or_else(|| {
            Error::Unsupported("coefficients too large for numeric root finding".into())
        })
    };

    if d == 1 {
        let r = to_f64(0)?;
        return Ok(vec![r.abs()]);
    }

    let mut companion = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        companion[(i, d - 1)] = -to_f64(i)?;
    }
    let eigen = companion.complex_eigenvalues();
    let mut moduli: Vec<f64> = eigen.iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    Ok(moduli)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(coeffs: &[i64]) -> BaseSpec {
        BaseSpec::new(IntPoly::from_i64(coeffs)).unwrap()
    }

    #[test]
    fn golden_base_moduli() {
        // Quadratic formula: roots (1 ± √5)/2, moduli about 1.618 and 0.618.
        let b = base(&[-1, -1, 1]);
        assert_eq!(b.degree(), 2);
        assert!((b.root_moduli()[0] - 1.618_033_988_75).abs() < 1e-6);
        assert!((b.root_moduli()[1] - 0.618_033_988_75).abs() < 1e-6);
        assert_eq!(b.has_unit_circle_conjugate(), TriState::No);
        assert!(b.dominant_modulus());
        assert_eq!(b.eligibility(), Eligibility::Full);
    }

    #[test]
    fn complex_pair_on_unit_circle() {
        // Conjugate pair with |root|^2 = a_0/a_2 = 1.
        let b = base(&[3, 2, 3]);
        assert!((b.root_moduli()[0] - 1.0).abs() < 1e-9);
        assert!((b.root_moduli()[1] - 1.0).abs() < 1e-9);
        assert_eq!(b.has_unit_circle_conjugate(), TriState::Yes);
        assert!(!b.dominant_modulus());
        assert_eq!(b.eligibility(), Eligibility::UnitFractionsOnly);
    }

    #[test]
    fn linear_bases() {
        let two = base(&[-2, 1]);
        assert_eq!(two.root_moduli(), &[2.0]);
        assert_eq!(two.has_unit_circle_conjugate(), TriState::No);
        assert_eq!(two.eligibility(), Eligibility::Full);

        let half = base(&[-1, 2]);
        assert!((half.root_moduli()[0] - 0.5).abs() < 1e-12);
        assert_eq!(half.eligibility(), Eligibility::Invalid);
    }

    #[test]
    fn plastic_base_full() {
        let b = base(&[-1, -1, 0, 1]);
        assert!((b.designated_modulus() - 1.324_717_957).abs() < 1e-6);
        assert_eq!(b.eligibility(), Eligibility::Full);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(BaseSpec::new(IntPoly::zero()).is_err());
        assert!(BaseSpec::new(IntPoly::from_i64(&[7])).is_err());
        assert!(BaseSpec::new(IntPoly::from_i64(&[2, 0, 2])).is_err());
    }

    #[test]
    fn designated_root_override() {
        let b = base(&[-1, -1, 1]).with_designated_root(1).unwrap();
        assert!(!b.dominant_modulus());
        assert!(base(&[-1, -1, 1]).with_designated_root(5).is_err());
    }
}
