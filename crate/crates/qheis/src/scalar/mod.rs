//! Exact field arithmetic for the three scalar domains: arbitrary-precision
//! rationals, rational functions of a symbolic q, and cyclotomic quotient
//! fields for q a root of unity.
//!
//! Every value is kept in a unique canonical form, so equality is structural
//! and zero-testing is exact. All operations are pure; values are immutable.

mod cyclotomic;
mod mode;
mod qint;
mod ratfun;
mod zpoly;

pub use cyclotomic::{cyclotomic_polynomial, phi_degree, CycElem};
pub use mode::QMode;
pub use qint::{q_binomial_table, q_factorial, q_integer};
pub use ratfun::RatFun;
pub use zpoly::ZPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarDomain {
    Rational,
    RationalFunction,
    Cyclotomic(u32),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different scalar domains")]
    MixedDomains,
}

/// An exact field element in one of the three scalar domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    RationalFunction(RatFun),
    Cyclotomic(CycElem),
}

impl Scalar {
    pub fn zero(domain: ScalarDomain) -> Self {
        match domain {
            ScalarDomain::Rational => Scalar::Rational(BigRational::zero()),
            ScalarDomain::RationalFunction => Scalar::RationalFunction(RatFun::zero()),
            ScalarDomain::Cyclotomic(d) => Scalar::Cyclotomic(CycElem::zero(d)),
        }
    }

    pub fn one(domain: ScalarDomain) -> Self {
        match domain {
            ScalarDomain::Rational => Scalar::Rational(BigRational::one()),
            ScalarDomain::RationalFunction => Scalar::RationalFunction(RatFun::one()),
            ScalarDomain::Cyclotomic(d) => {
                Scalar::Cyclotomic(CycElem::from_rational(d, BigRational::one()))
            }
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        match self {
            Scalar::Rational(_) => ScalarDomain::Rational,
            Scalar::RationalFunction(_) => ScalarDomain::RationalFunction,
            Scalar::Cyclotomic(c) => ScalarDomain::Cyclotomic(c.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RationalFunction(f) => f.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::RationalFunction(f) => f.is_one(),
            Scalar::Cyclotomic(c) => c.is_one(),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => {
                Ok(Scalar::RationalFunction(a.add(b)))
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => {
                Ok(Scalar::Cyclotomic(a.add(b)))
            }
            _ => Err(ScalarError::MixedDomains),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => {
                Ok(Scalar::RationalFunction(a.mul(b)))
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) if a.order() == b.order() => {
                Ok(Scalar::Cyclotomic(a.mul(b)))
            }
            _ => Err(ScalarError::MixedDomains),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::RationalFunction(f) => Scalar::RationalFunction(f.neg()),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::RationalFunction(f) => f
                .inverse()
                .map(Scalar::RationalFunction)
                .ok_or(ScalarError::DivisionByZero),
            Scalar::Cyclotomic(c) => c
                .inverse()
                .map(Scalar::Cyclotomic)
                .ok_or(ScalarError::DivisionByZero),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inverse()?)
    }

    /// Panicking convenience for same-domain arithmetic; the algebra layers
    /// only ever combine scalars born from a single mode.
    pub fn add(&self, other: &Scalar) -> Scalar {
        self.checked_add(other).expect("mixed scalar domains")
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.checked_sub(other).expect("mixed scalar domains")
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.checked_mul(other).expect("mixed scalar domains")
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.domain());
        let mut base = self.clone();
        let mut e = e;
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

    /// Used only for rendering decisions: does the value print with a
    /// leading minus sign in canonical form?
    pub fn prints_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::RationalFunction(f) => f.num().leading_coeff().is_negative(),
            Scalar::Cyclotomic(c) => {
                for coeff in c.coeffs() {
                    if !coeff.is_zero() {
                        return coeff.is_negative();
                    }
                }
                false
            }
        }
    }

    /// The canonical string form: `a/b` for rationals, `(poly)/(poly)` or a
    /// bare polynomial for rational functions, `c0 + c1*q + ... (mod Phi_d)`
    /// for cyclotomic residues. These strings are the JSON payloads.
    pub fn canonical_string(&self) -> String {
        match self {
            Scalar::Rational(r) => r.to_string(),
            Scalar::RationalFunction(f) => f.to_string(),
            Scalar::Cyclotomic(c) => c.to_string(),
        }
    }

    /// A rendering that the expression grammar can re-parse: like the
    /// canonical string, but cyclotomic residues drop the `(mod Phi_d)`
    /// marker (the mode carries d). Rational functions with a nontrivial
    /// denominator have no grammar form and keep the `(num)/(den)` shape;
    /// they can only arise in computed output, never in parsed input.
    pub fn expr_string(&self) -> String {
        match self {
            Scalar::Cyclotomic(c) => {
                let full = c.to_string();
                match full.rfind(" (mod Phi_") {
                    Some(i) => full[..i].to_string(),
                    None => full,
                }
            }
            Scalar::RationalFunction(f) => {
                let den = f.den();
                if den.is_one() {
                    f.num().to_string_var("q")
                } else if den.degree() == Some(0) {
                    // constant denominator: 1/c times the numerator is
                    // expressible in the grammar
                    let c = den.leading_coeff();
                    if f.num().degree() == Some(0) {
                        format!("{}/{}", f.num().leading_coeff(), c)
                    } else {
                        format!("1/{}*({})", c, f.num().to_string_var("q"))
                    }
                } else {
                    f.to_string()
                }
            }
            other => other.canonical_string(),
        }
    }

    /// Parses a canonical string back into the given domain.
    pub fn parse_canonical(s: &str, domain: ScalarDomain) -> Result<Scalar, String> {
        let s = s.trim();
        match domain {
            ScalarDomain::Rational => BigRational::from_str(s)
                .map(Scalar::Rational)
                .map_err(|e| format!("invalid rational '{s}': {e}")),
            ScalarDomain::RationalFunction => parse_ratfun(s).map(Scalar::RationalFunction),
            ScalarDomain::Cyclotomic(d) => parse_cyclotomic(s, d).map(Scalar::Cyclotomic),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// Parses a q-polynomial in the sparse descending form emitted by
/// `ZPoly::to_string_var`, e.g. `3*q^2 - q + 1`.
fn parse_zpoly(s: &str) -> Result<ZPoly, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty polynomial".to_string());
    }
    let mut acc = ZPoly::zero();
    // split into signed terms
    let mut rest = s;
    let mut sign = BigInt::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    }
    loop {
        let end = rest
            .char_indices()
            .find(|(i, c)| (*c == '+' || *c == '-') && *i > 0)
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let term = rest[..end].trim();
        acc = acc.add(&parse_zpoly_term(term, &sign)?);
        if end == rest.len() {
            break;
        }
        sign = if rest[end..].starts_with('+') {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        rest = rest[end + 1..].trim_start();
    }
    Ok(acc)
}

fn parse_zpoly_term(term: &str, sign: &BigInt) -> Result<ZPoly, String> {
    let term = term.trim();
    if term.is_empty() {
        return Err("empty term in polynomial".to_string());
    }
    let (coeff_str, var_part) = match term.find('q') {
        None => (term, ""),
        Some(0) => ("", &term[..]),
        Some(i) => {
            let head = term[..i].trim().trim_end_matches('*').trim();
            (head, &term[i..])
        }
    };
    let coeff = if coeff_str.is_empty() {
        BigInt::one()
    } else {
        BigInt::from_str(coeff_str).map_err(|_| format!("invalid coefficient '{coeff_str}'"))?
    };
    let exp = if var_part.is_empty() {
        0
    } else if var_part == "q" {
        1
    } else if let Some(e) = var_part.strip_prefix("q^") {
        e.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid exponent in '{term}'"))?
    } else {
        return Err(format!("invalid polynomial term '{term}'"));
    };
    Ok(ZPoly::monomial(coeff * sign, exp))
}

fn parse_ratfun(s: &str) -> Result<RatFun, String> {
    // fractions render as (num)/(den); anything else is a bare polynomial
    if let Some(stripped) = s.strip_prefix('(') {
        if let Some(split) = find_fraction_split(stripped) {
            let num = &stripped[..split];
            let den = stripped[split + 3..]
                .strip_suffix(')')
                .ok_or_else(|| format!("unterminated denominator in '{s}'"))?;
            let n = parse_zpoly(num)?;
            let d = parse_zpoly(den)?;
            if d.is_zero() {
                return Err("zero denominator".to_string());
            }
            return Ok(RatFun::new(n, d));
        }
    }
    parse_zpoly(s).map(RatFun::from_poly)
}

/// Finds the `)/(` separator at paren depth zero, if present.
fn find_fraction_split(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut depth = 0usize;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => {
                if depth == 0 {
                    if s[i..].starts_with(")/(") {
                        return Some(i);
                    }
                    return None;
                }
                depth -= 1;
            }
            _ => {}
        }
    }
    None
}

fn parse_cyclotomic(s: &str, d: u32) -> Result<CycElem, String> {
    let marker = format!(" (mod Phi_{d})");
    let body = s
        .strip_suffix(&marker)
        .ok_or_else(|| format!("cyclotomic scalar must end with '{marker}'"))?;
    // ascending sparse form with rational coefficients
    let mut acc = CycElem::zero(d);
    let mut rest = body.trim();
    let mut neg = false;
    if let Some(r) = rest.strip_prefix('-') {
        neg = true;
        rest = r.trim_start();
    }
    loop {
        let end = rest
            .char_indices()
            .find(|(i, c)| (*c == '+' || *c == '-') && *i > 0 && !rest[..*i].ends_with('/'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let term = rest[..end].trim();
        let (c, e) = parse_cyc_term(term)?;
        let c = if neg { -c } else { c };
        let monomial = CycElem::from_rational(d, c).mul(&CycElem::q_power(d, e as i64));
        acc = acc.add(&monomial);
        if end == rest.len() {
            break;
        }
        neg = rest[end..].starts_with('-');
        rest = rest[end + 1..].trim_start();
    }
    Ok(acc)
}

fn parse_cyc_term(term: &str) -> Result<(BigRational, usize), String> {
    let term = term.trim();
    let (coeff_str, var_part) = match term.find('q') {
        None => (term, ""),
        Some(0) => ("", &term[..]),
        Some(i) => {
            let head = term[..i].trim().trim_end_matches('*').trim();
            (head, &term[i..])
        }
    };
    let coeff = if coeff_str.is_empty() {
        BigRational::one()
    } else {
        BigRational::from_str(coeff_str)
            .map_err(|_| format!("invalid coefficient '{coeff_str}'"))?
    };
    let exp = if var_part.is_empty() {
        0
    } else if var_part == "q" {
        1
    } else if let Some(e) = var_part.strip_prefix("q^") {
        e.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid exponent in '{term}'"))?
    } else {
        return Err(format!("invalid term '{term}'"));
    };
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_field_ops() {
        // 1/3 + 1/6 = 1/2
        assert_eq!(rat(1, 3).add(&rat(1, 6)), rat(1, 2));
        assert_eq!(rat(1, 2).inverse().unwrap(), rat(2, 1));
        assert_eq!(rat(0, 1).inverse(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn mixed_domains_rejected() {
        let a = rat(1, 2);
        let b = QMode::Symbolic.one();
        assert_eq!(a.checked_add(&b), Err(ScalarError::MixedDomains));
        let c = QMode::RootOfUnity(3).one();
        let d = QMode::RootOfUnity(4).one();
        assert_eq!(c.checked_mul(&d), Err(ScalarError::MixedDomains));
    }

    #[test]
    fn cyclotomic_d2_square() {
        // q = -1: q*q = 1
        let m = QMode::RootOfUnity(2);
        assert!(m.q().mul(&m.q()).is_one());
    }

    #[test]
    fn canonical_strings_round_trip() {
        let cases = vec![
            rat(-3, 2),
            rat(7, 1),
            QMode::Symbolic.q_pow(2).sub(&QMode::Symbolic.one()),
            q_integer(-1, &QMode::Symbolic),
            QMode::RootOfUnity(4).q().add(&QMode::RootOfUnity(4).from_int(2)),
            QMode::RootOfUnity(2).q(),
        ];
        for s in cases {
            let text = s.canonical_string();
            let back = Scalar::parse_canonical(&text, s.domain()).unwrap();
            assert_eq!(back, s, "round trip through '{text}'");
        }
    }

    #[test]
    fn rational_display_matches_expectations() {
        assert_eq!(rat(1, 2).canonical_string(), "1/2");
        assert_eq!(rat(-5, 1).canonical_string(), "-5");
        assert_eq!(rat(4, 6).canonical_string(), "2/3");
    }
}
