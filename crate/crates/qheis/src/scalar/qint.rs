//! q-integers, q-factorials and Gaussian binomial coefficients.
//!
//! The q-integer is `{n}_q = (q^n - 1)/(q - 1)` for q != 1 and n for q = 1,
//! defined for every integer n. For n >= 0 it is the polynomial
//! `1 + q + ... + q^(n-1)`; negative n gives a genuine rational function.

use super::mode::QMode;
use super::ratfun::RatFun;
use super::zpoly::ZPoly;
use super::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub fn q_integer(n: i64, mode: &QMode) -> Scalar {
    match mode {
        QMode::Rational(v) => {
            if v.is_one() {
                Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
            } else {
                let num = super::mode::rational_pow(v, n) - BigRational::one();
                let den = v - BigRational::one();
                Scalar::Rational(num / den)
            }
        }
        QMode::Symbolic => {
            if n >= 0 {
                Scalar::RationalFunction(RatFun::from_poly(geometric_sum(n as usize)))
            } else {
                // {-k}_q = -(1 + q + ... + q^(k-1)) / q^k
                let k = (-n) as usize;
                Scalar::RationalFunction(RatFun::new(
                    geometric_sum(k).neg(),
                    ZPoly::monomial(BigInt::one(), k),
                ))
            }
        }
        QMode::RootOfUnity(_) => {
            let qn = mode.q_pow(n);
            let one = mode.one();
            let num = qn.sub(&one);
            let den = mode.q().sub(&one);
            num.checked_div(&den)
                .expect("q - 1 is invertible for d >= 2")
        }
    }
}

/// `1 + q + ... + q^(n-1)` as an integer polynomial.
fn geometric_sum(n: usize) -> ZPoly {
    ZPoly::from_coeffs(vec![BigInt::one(); n])
}

/// `{r}_q! = {1}_q {2}_q ... {r}_q`.
pub fn q_factorial(r: u32, mode: &QMode) -> Scalar {
    let mut acc = mode.one();
    for i in 1..=r {
        acc = acc.mul(&q_integer(i as i64, mode));
    }
    acc
}

/// Pascal-style table of Gaussian binomials `[n choose r]_q` for all
/// n <= n_max, built from `[n r] = [n-1 r-1] + q^r [n-1 r]`.
///
/// The recurrence avoids division, so the table is valid at roots of unity
/// where the factorial quotient would be 0/0.
pub fn q_binomial_table(n_max: u32, mode: &QMode) -> Vec<Vec<Scalar>> {
    let one = mode.one();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n_max as usize + 1);
    rows.push(vec![one.clone()]);
    for n in 1..=n_max as usize {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(one.clone());
        for r in 1..n {
            let qr = mode.q_pow(r as i64);
            row.push(prev[r - 1].add(&qr.mul(&prev[r])));
        }
        row.push(one.clone());
        rows.push(row);
    }
    rows
}
