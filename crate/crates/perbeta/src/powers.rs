//! Vanishing polynomials of powers of the base.
//!
//! `power_min_poly(m, k)` returns a primitive squarefree integer polynomial
//! vanishing at γ^k for every root γ of m. It is the squarefree primitive
//! part of the resultant Res_y(m(y), x − y^k), computed here as the
//! characteristic polynomial of the k-th power of the companion matrix of
//! the monic normalization m/a_d (exact rational arithmetic throughout).
//! For a minimal input m this is exactly the minimal polynomial of β^k;
//! factoring is deliberately avoided, so for reducible inputs the result is
//! merely a vanishing polynomial, which is all downstream callers need.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{squarefree_part, RatPoly};
use crate::poly::IntPoly;

/// Squarefree primitive polynomial vanishing at the k-th powers of the
/// roots of `m`. Requires `k >= 1` and `deg m >= 1`.
pub fn power_min_poly(m: &IntPoly, k: u32) -> Result<IntPoly> {
    if k == 0 {
        return Err(Error::PreconditionViolated("power must be >= 1".into()));
    }
    if m.is_zero() || m.degree() == 0 {
        return Err(Error::DegenerateInput(
            "need a polynomial of degree >= 1".into(),
        ));
    }
    let d = m.degree();
    let companion = companion_matrix(m);
    let mut power = companion.clone();
    for _ in 1..k {
        power = mat_mul(&power, &companion);
    }
    let charpoly = char_poly(&power); // monic, degree d, rational
    debug_assert_eq!(charpoly.degree(), d);
    let primitive = charpoly.primitive_int();
    Ok(squarefree_part(&primitive))
}

type Mat = Vec<Vec<BigRational>>;

/// Companion matrix of the monic normalization m/a_d.
fn companion_matrix(m: &IntPoly) -> Mat {
    let d = m.degree();
    let lead = BigRational::from_integer(m.leading());
    let mut mat = vec![vec![BigRational::zero(); d]; d];
    for i in 1..d {
        mat[i][i - 1] = BigRational::one();
    }
    for i in 0..d {
        mat[i][d - 1] = -BigRational::from_integer(m.coeff(i)) / &lead;
    }
    mat
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = vec![vec![BigRational::zero(); d]; d];
    for i in 0..d {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

fn trace(a: &Mat) -> BigRational {
    a.iter()
        .enumerate()
        .map(|(i, row)| row[i].clone())
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// Characteristic polynomial via the Faddeev-LeVerrier recurrence;
/// exact over Q, ascending coefficients, monic of degree d.
fn char_poly(a: &Mat) -> RatPoly {
    let d = a.len();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    let mut n = a.clone();
    for step in 1..=d {
        let c = -trace(&n) / BigRational::from_integer(step.into());
        coeffs[d - step] = c.clone();
        if step < d {
            for (i, row) in n.iter_mut().enumerate() {
                row[i] += &c;
            }
            n = mat_mul(a, &n);
        }
    }
    RatPoly::new(coeffs)
}
