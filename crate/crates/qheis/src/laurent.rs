//! Truncated model of the representation on formal Laurent series.
//!
//! `B` acts as multiplication by t (exponent shift up) and `A` as the
//! Jackson q-derivative `D_q(t^n) = {n}_q t^(n-1)`. On finitely supported
//! vectors both operators act exactly — windows grow, they are never
//! clipped — so every computed action is the true one and the module can
//! cross-validate the abstract normal-form arithmetic.

use crate::algebra::HqElement;
use crate::eliminant::{build_eliminant_matrix, eliminant_determinant, EliminantError};
use crate::scalar::{q_integer, QMode, Scalar};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LaurentError {
    #[error("the supplied vector is not a joint eigenvector for the claimed eigenvalues")]
    NotAnEigenvector,
    #[error(transparent)]
    Eliminant(#[from] EliminantError),
}

/// A finitely supported Laurent polynomial: dense coefficients on the
/// exponent window `lo..=hi`. Zero fringes are trimmed on construction, so
/// equality of values is structural equality; the zero vector has an empty
/// window.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentVector {
    lo: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentVector {
    pub fn zero() -> Self {
        LaurentVector {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(n: i64, c: Scalar) -> Self {
        LaurentVector::from_coeffs(n, vec![c])
    }

    pub fn from_coeffs(lo: i64, coeffs: Vec<Scalar>) -> Self {
        let mut v = LaurentVector { lo, coeffs };
        v.trim();
        v
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.lo += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The support window, `None` for the zero vector.
    pub fn window(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn coeff(&self, n: i64) -> Option<&Scalar> {
        if n < self.lo {
            return None;
        }
        self.coeffs.get((n - self.lo) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let domain = self.coeffs[0].domain();
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64 - 1)
            .max(other.lo + other.coeffs.len() as i64 - 1);
        let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            let a = self.coeff(n);
            let b = other.coeff(n);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Scalar::zero(domain),
            });
        }
        LaurentVector::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentVector {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentVector::from_coeffs(self.lo, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Convolution product; Laurent polynomials form a ring.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentVector::zero();
        }
        let domain = self.coeffs[0].domain();
        let lo = self.lo + other.lo;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Scalar::zero(domain); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        LaurentVector::from_coeffs(lo, coeffs)
    }
}

impl fmt::Display for LaurentVector {
    /// Ascending exponents, `t^-2 + 3*t^5` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        let mut first = true;
        for (n, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.prints_negative() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = mag.expr_string();
            let unit = mag.is_one();
            if n == 0 {
                out.push_str(&coeff_str);
            } else {
                if !unit {
                    if coeff_str.contains(' ') {
                        out.push_str(&format!("({coeff_str})*"));
                    } else {
                        out.push_str(&format!("{coeff_str}*"));
                    }
                }
                out.push('t');
                if n != 1 {
                    out.push_str(&format!("^{n}"));
                }
            }
        }
        write!(f, "{out}")
    }
}

/// What an operator application did to the support window. `boundary_loss`
/// stays false in this model: the action computed is always exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub input_window: Option<(i64, i64)>,
    pub output_window: Option<(i64, i64)>,
    pub boundary_loss: bool,
}

/// Multiplication by t: shifts every exponent up by one.
pub fn apply_m(v: &LaurentVector) -> LaurentVector {
    LaurentVector {
        lo: if v.coeffs.is_empty() { 0 } else { v.lo + 1 },
        coeffs: v.coeffs.clone(),
    }
}

/// The q-derivative: `t^n` maps to `{n}_q t^(n-1)`.
pub fn apply_dq(v: &LaurentVector, mode: &QMode) -> LaurentVector {
    let coeffs: Vec<Scalar> = v
        .iter()
        .map(|(n, c)| c.mul(&q_integer(n, mode)))
        .collect();
    LaurentVector::from_coeffs(v.lo - 1, coeffs)
}

/// Applies a normal-form element term by term: `B^i A^j` acts as
/// `M^i . D_q^j`.
pub fn apply_element(p: &HqElement, v: &LaurentVector) -> (LaurentVector, ActionReport) {
    let mode = p.mode();
    let input_window = v.window();
    let max_dq = p.order().unwrap_or(0);
    // successive q-derivatives, computed once
    let mut dq_powers: Vec<LaurentVector> = Vec::with_capacity(max_dq as usize + 1);
    dq_powers.push(v.clone());
    for j in 1..=max_dq {
        let next = apply_dq(&dq_powers[(j - 1) as usize], mode);
        dq_powers.push(next);
    }
    let mut acc = LaurentVector::zero();
    for (&(i, j), c) in p.terms() {
        let mut term = dq_powers[j as usize].scale(c);
        for _ in 0..i {
            term = apply_m(&term);
        }
        acc = acc.add(&term);
    }
    let report = ActionReport {
        input_window,
        output_window: acc.window(),
        boundary_loss: false,
    };
    (acc, report)
}

/// Checks the module property `(XY) v = X (Y v)` on one vector.
pub fn homomorphism_check(x: &HqElement, y: &HqElement, v: &LaurentVector) -> bool {
    let product = x.mul(y);
    let lhs = apply_element(&product, v).0;
    let rhs = apply_element(x, &apply_element(y, v).0).0;
    lhs == rhs
}

/// Verifies that a joint eigenvector is annihilated by the eliminant
/// specialized at its eigenvalues.
///
/// Checks `P v = lambda0 v` and `Q v = mu0 v` first (rejecting otherwise),
/// builds `Delta(M, lambda0, mu0)` as a polynomial in M, applies it to v and
/// reports whether the result is zero.
pub fn joint_eigen_check(
    p: &HqElement,
    q: &HqElement,
    lambda0: &Scalar,
    mu0: &Scalar,
    v: &LaurentVector,
) -> Result<bool, LaurentError> {
    if v.is_zero()
        || apply_element(p, v).0 != v.scale(lambda0)
        || apply_element(q, v).0 != v.scale(mu0)
    {
        return Err(LaurentError::NotAnEigenvector);
    }
    let matrix = build_eliminant_matrix(p, q)?;
    let delta = eliminant_determinant(&matrix);
    let m_poly = delta.specialize_lambda_mu(lambda0, mu0);
    let mut acc = LaurentVector::zero();
    let mut shifted = v.clone();
    for c in m_poly.coeffs() {
        acc = acc.add(&shifted.scale(c));
        shifted = apply_m(&shifted);
    }
    Ok(acc.is_zero())
}
