//! Dense univariate polynomials with integer coefficients.
//!
//! These back the rational-function scalar domain (numerator/denominator in
//! `Z[q]`) and the cyclotomic polynomials. Coefficients are stored in
//! ascending degree order with no trailing zeros, so the zero polynomial is
//! the empty vector and structural equality is mathematical equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = ZPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// Builds a polynomial from ascending coefficients, trimming zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = ZPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        ZPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial `c * q^n`.
    pub fn monomial(c: BigInt, n: usize) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        ZPoly { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
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
        ZPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ZPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// `self / content`, with sign chosen so the leading coefficient is positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Exact division; `None` when the division leaves a remainder or a
    /// non-integer coefficient.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); self.coeffs.len().checked_sub(dd)?];
        let lead = d.leading_coeff();
        for k in (0..quo.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quo[k] = c.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(quo))
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^(deg self - deg d + 1) * self mod d`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let mut r = self.clone();
        let lead = d.leading_coeff();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.leading_coeff();
            r = r.scale(&lead).sub(&d.mul(&ZPoly::monomial(top, rd - dd)));
        }
        r
    }

    /// Full gcd in `Z[q]` (content included), normalized to a positive
    /// leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.scale(&cont)
    }

    /// Substitutes `c * q` for `q`: the i-th coefficient becomes `coeff(i) * c^i`.
    pub fn coeff_twist(&self, c: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pw);
            pw *= c;
        }
        ZPoly::from_coeffs(coeffs)
    }

    /// Renders in sparse descending form, e.g. `3*q^2 - q + 1`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit = mag.is_one();
            if !unit || i == 0 {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                if !unit {
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(coeffs)
    }

    #[test]
    fn arithmetic_and_trim() {
        let a = p(&[1, 2, 1]); // 1 + 2q + q^2
        let b = p(&[-1, 0, 1]); // q^2 - 1
        assert_eq!(a.sub(&a), ZPoly::zero());
        assert_eq!(a.mul(&ZPoly::one()), a);
        // (q+1)^2 * (q-1) = (q^2-1)(q+1)
        assert_eq!(a.mul(&p(&[-1, 1])), b.mul(&p(&[1, 1])));
        assert_eq!(p(&[0, 0, 0]), ZPoly::zero());
    }

    #[test]
    fn exact_division() {
        let num = p(&[-1, 0, 0, 0, 0, 0, 1]); // q^6 - 1
        let den = p(&[-1, 1]); // q - 1
        let quo = num.div_exact(&den).unwrap();
        assert_eq!(quo, p(&[1, 1, 1, 1, 1, 1]));
        assert!(p(&[1, 1]).div_exact(&p(&[2])).is_none()); // (q+1)/2 not integral
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_none()); // remainder
    }

    #[test]
    fn gcd_includes_content() {
        let a = p(&[2, 2]); // 2(q+1)
        let b = p(&[-4, 0, 4]); // 4(q-1)(q+1)
        assert_eq!(a.gcd(&b), p(&[2, 2]));
        // sign normalization
        assert_eq!(p(&[1, -1]).gcd(&p(&[-1, 0, 1])), p(&[-1, 1]));
    }

    #[test]
    fn display_descending_sparse() {
        assert_eq!(p(&[1, -1, 3]).to_string_var("q"), "3*q^2 - q + 1");
        assert_eq!(p(&[0, -1]).to_string_var("q"), "-q");
        assert_eq!(p(&[0]).to_string_var("q"), "0");
        assert_eq!(p(&[-2]).to_string_var("q"), "-2");
        assert_eq!(p(&[0, 0, 1]).to_string_var("X"), "X^2");
    }
}
