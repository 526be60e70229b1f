//! The deformation parameter q and its classification.
//!
//! q may be a concrete nonzero rational, a symbolic indeterminate, or a
//! primitive d-th root of unity. The classification that matters everywhere
//! downstream is free type (the q-integer `{n}_q` vanishes only at n = 0)
//! versus torsion type (q has finite multiplicative order d).

use super::cyclotomic::CycElem;
use super::ratfun::RatFun;
use super::zpoly::ZPoly;
use super::{Scalar, ScalarDomain};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QMode {
    /// A fixed nonzero rational value of q.
    Rational(BigRational),
    /// q as a formal indeterminate; scalars are rational functions in q.
    Symbolic,
    /// q as a primitive d-th root of unity, d >= 2.
    RootOfUnity(u32),
}

impl QMode {
    pub fn rational_i64(num: i64, den: i64) -> Self {
        QMode::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Over the rationals the only roots of unity are 1 and -1, and q = 1 in
    /// characteristic zero counts as free type; so torsion means q = -1
    /// (order 2) or an explicit root-of-unity mode.
    pub fn is_free_type(&self) -> bool {
        match self {
            QMode::Rational(v) => !(v.is_integer() && v.numer() == &BigInt::from(-1)),
            QMode::Symbolic => true,
            QMode::RootOfUnity(_) => false,
        }
    }

    /// The multiplicative order of q when of torsion type.
    pub fn torsion_order(&self) -> Option<u32> {
        match self {
            QMode::Rational(v) if v.is_integer() && v.numer() == &BigInt::from(-1) => Some(2),
            QMode::RootOfUnity(d) => Some(*d),
            _ => None,
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        match self {
            QMode::Rational(_) => ScalarDomain::Rational,
            QMode::Symbolic => ScalarDomain::RationalFunction,
            QMode::RootOfUnity(d) => ScalarDomain::Cyclotomic(*d),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.domain())
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.domain())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, r: &BigRational) -> Scalar {
        match self {
            QMode::Rational(_) => Scalar::Rational(r.clone()),
            QMode::Symbolic => Scalar::RationalFunction(RatFun::from_rational(r)),
            QMode::RootOfUnity(d) => Scalar::Cyclotomic(CycElem::from_rational(*d, r.clone())),
        }
    }

    /// The scalar value of q itself in this mode's domain.
    pub fn q(&self) -> Scalar {
        match self {
            QMode::Rational(v) => Scalar::Rational(v.clone()),
            QMode::Symbolic => Scalar::RationalFunction(RatFun::generator()),
            QMode::RootOfUnity(d) => Scalar::Cyclotomic(CycElem::generator(*d)),
        }
    }

    /// `q^n` for any integer n (q is invertible in all modes).
    pub fn q_pow(&self, n: i64) -> Scalar {
        match self {
            QMode::Rational(v) => Scalar::Rational(rational_pow(v, n)),
            QMode::Symbolic => {
                if n >= 0 {
                    Scalar::RationalFunction(RatFun::new(
                        ZPoly::monomial(BigInt::one(), n as usize),
                        ZPoly::one(),
                    ))
                } else {
                    Scalar::RationalFunction(RatFun::new(
                        ZPoly::one(),
                        ZPoly::monomial(BigInt::one(), (-n) as usize),
                    ))
                }
            }
            QMode::RootOfUnity(d) => Scalar::Cyclotomic(CycElem::q_power(*d, n)),
        }
    }

    /// Parses the command-line forms: a rational like `2`, `5/3` or `-1`;
    /// `symbolic`; `root:<d>` with d >= 2.
    pub fn parse_spec(spec: &str) -> Result<QMode, String> {
        let s = spec.trim();
        if s.eq_ignore_ascii_case("symbolic") {
            return Ok(QMode::Symbolic);
        }
        if let Some(rest) = s.strip_prefix("root:") {
            let d: u32 = rest
                .parse()
                .map_err(|_| format!("invalid root-of-unity order '{rest}'"))?;
            if d < 2 {
                return Err("root-of-unity order must be at least 2".to_string());
            }
            return Ok(QMode::RootOfUnity(d));
        }
        let v = BigRational::from_str(s).map_err(|_| format!("invalid q value '{s}'"))?;
        if v.is_zero() {
            return Err("q must be nonzero".to_string());
        }
        Ok(QMode::Rational(v))
    }
}

pub(crate) fn rational_pow(v: &BigRational, n: i64) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let mut base = if n < 0 { v.recip() } else { v.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Rational(v) => write!(f, "q = {}", v),
            QMode::Symbolic => write!(f, "q symbolic"),
            QMode::RootOfUnity(d) => write!(f, "q = primitive {}-th root of unity", d),
        }
    }
}
