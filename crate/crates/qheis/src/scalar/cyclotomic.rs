//! Cyclotomic polynomials and the quotient field `Q[q] / (Phi_d(q))`.
//!
//! Adjoining a primitive d-th root of unity to the rationals gives an exact
//! field in which `q^d = 1` with d minimal. Elements are residues modulo the
//! d-th cyclotomic polynomial, stored as dense rational coefficient vectors
//! of length `deg Phi_d`, so structural equality is field equality.

use super::zpoly::ZPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// The d-th cyclotomic polynomial `Phi_d`, monic with integer coefficients.
///
/// Computed by dividing `q^d - 1` by the product of `Phi_e` over proper
/// divisors e of d. Results are memoized; reduction happens on every
/// multiplication in the quotient field.
pub fn cyclotomic_polynomial(d: u32) -> ZPoly {
    static CACHE: OnceLock<Mutex<HashMap<u32, ZPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let p = cyclotomic_polynomial_uncached(d);
    cache.lock().unwrap().insert(d, p.clone());
    p
}

fn cyclotomic_polynomial_uncached(d: u32) -> ZPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut table: Vec<(u32, ZPoly)> = Vec::new();
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        let mut divisor = ZPoly::one();
        for (f, phi) in &table {
            if e % f == 0 {
                divisor = divisor.mul(phi);
            }
        }
        // q^e - 1
        let mut coeffs = vec![BigInt::zero(); e as usize + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[e as usize] = BigInt::one();
        let pe = ZPoly::from_coeffs(coeffs)
            .div_exact(&divisor)
            .expect("cyclotomic division is exact");
        table.push((e, pe));
    }
    table.pop().unwrap().1
}

/// An element of `Q[q] / (Phi_d(q))`.
///
/// `coeffs` always has length `deg Phi_d`; index i is the coefficient of `q^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycElem {
    d: u32,
    coeffs: Vec<BigRational>,
}

impl CycElem {
    pub fn zero(d: u32) -> Self {
        let deg = phi_degree(d);
        CycElem {
            d,
            coeffs: vec![BigRational::zero(); deg],
        }
    }

    pub fn from_rational(d: u32, c: BigRational) -> Self {
        let mut e = CycElem::zero(d);
        // deg Phi_d >= 1 for every d >= 1
        e.coeffs[0] = c;
        e
    }

    /// The residue class of q itself.
    pub fn generator(d: u32) -> Self {
        let mut e = CycElem::zero(d);
        if e.coeffs.len() == 1 {
            // Phi_1 = q - 1, Phi_2 = q + 1: q is congruent to a constant.
            e.coeffs[0] = if d == 1 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
        } else {
            e.coeffs[1] = BigRational::one();
        }
        e
    }

    pub fn order(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        CycElem {
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.d, other.d);
        CycElem {
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.d, other.d);
        let prod = qpoly_mul(&self.coeffs, &other.coeffs);
        CycElem {
            d: self.d,
            coeffs: reduce_mod_phi(prod, self.d),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[q]`;
    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.d)
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a = trim(self.coeffs.clone());
        // Bezout: s*a + t*phi = g with g a nonzero constant (Phi_d irreducible).
        let (g, s) = ext_gcd_first(&a, &phi);
        let g0 = g[0].clone();
        debug_assert!(g.len() == 1 && !g0.is_zero());
        let inv_coeffs = s.iter().map(|c| c / &g0).collect();
        Some(CycElem {
            d: self.d,
            coeffs: reduce_mod_phi(inv_coeffs, self.d),
        })
    }

    /// `q^n` in the quotient field, for any integer n.
    pub fn q_power(d: u32, n: i64) -> Self {
        let e = n.rem_euclid(d as i64) as u32;
        let mut acc = CycElem::from_rational(d, BigRational::one());
        let g = CycElem::generator(d);
        for _ in 0..e {
            acc = acc.mul(&g);
        }
        acc
    }
}

pub fn phi_degree(d: u32) -> usize {
    cyclotomic_polynomial(d).degree().expect("Phi_d is nonzero")
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while matches!(v.last(), Some(c) if c.is_zero()) {
        v.pop();
    }
    v
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Remainder of division by `Phi_d`, padded back to length `deg Phi_d`.
fn reduce_mod_phi(mut v: Vec<BigRational>, d: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(d);
    let deg = phi.degree().unwrap();
    let phi_q: Vec<BigRational> = phi
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    v = trim(v);
    while v.len() > deg {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - deg + 1;
        // subtract top * q^shift * (phi - leading term); phi is monic
        for i in 0..deg {
            let idx = shift - 1 + i;
            let delta = &top * &phi_q[i];
            v[idx] -= delta;
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

/// Polynomial division with remainder over Q.
fn qpoly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if r.len() <= db && r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let top = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        let c = &top / &lead;
        q[k] = c.clone();
        for i in 0..=db {
            let delta = &c * &b[i];
            r[k + i] -= delta;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

/// Extended gcd returning `(g, s)` with `s*a = g (mod b)`.
fn ext_gcd_first(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = Vec::new();
    while !r1.is_empty() {
        let (q, r) = qpoly_divmod(&r0, &r1);
        let qs1 = qpoly_mul(&q, &s1);
        let s = sub(&s0, &qs1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    let zero = BigRational::zero();
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero));
    }
    trim(out)
}

impl fmt::Display for CycElem {
    /// Ascending sparse form with the quotient marker, e.g.
    /// `1/2 + 3*q (mod Phi_4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod Phi_{})", self.d);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if !unit || i == 0 {
                write!(f, "{}", mag)?;
            }
            if i > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "q")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        write!(f, " (mod Phi_{})", self.d)
    }
}
