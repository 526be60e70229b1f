//! Rational functions in the indeterminate q with integer-polynomial
//! numerator and denominator.
//!
//! Canonical form: the polynomial gcd (content included) of numerator and
//! denominator is 1 and the denominator has a positive leading coefficient.
//! This makes structural equality mathematical equality and keeps zero tests
//! exact.

use super::zpoly::ZPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: ZPoly,
    den: ZPoly,
}

impl RatFun {
    /// Canonicalizes `num/den`. Panics on a zero denominator; callers that
    /// divide go through the checked scalar API.
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num: ZPoly::zero(),
                den: ZPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RatFun {
            num: p,
            den: ZPoly::one(),
        }
    }

    /// Embeds a rational constant a/b as the constant function.
    pub fn from_rational(r: &BigRational) -> Self {
        RatFun::new(
            ZPoly::constant(r.numer().clone()),
            ZPoly::constant(r.denom().clone()),
        )
    }

    /// The indeterminate q.
    pub fn generator() -> Self {
        RatFun {
            num: ZPoly::monomial(BigInt::from(1), 1),
            den: ZPoly::one(),
        }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is the constant 1, i.e. the value is a
    /// polynomial in q.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFun::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFun::new(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for RatFun {
    /// `(num)/(den)` in sparse descending form, or the bare numerator when
    /// the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.to_string_var("q"))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.to_string_var("q"),
                self.den.to_string_var("q")
            )
        }
    }
}
