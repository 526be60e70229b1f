//! Sparse commutative polynomials over the scalar field.
//!
//! Three shapes are used downstream: univariate polynomials (coefficient
//! polynomials of normal forms, leading-coefficient products), bivariate
//! polynomials in (x, y) (annihilating curves), and trivariate polynomials
//! in (M, lambda, mu) (eliminant entries and the eliminant itself).
//!
//! Stored terms never have zero coefficients, so structural equality is
//! polynomial equality. Display and serialization order is graded
//! lexicographic, highest terms first.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Dense univariate polynomial over the scalar field, ascending
/// coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let domain = self.coeffs[0].domain();
        let mut out = vec![Scalar::zero(domain); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Substitutes `c * X` for `X`: coefficient i is scaled by `c^i`.
    pub fn dilate(&self, c: &Scalar) -> Self {
        let mut pw = match self.coeffs.first() {
            Some(s) => Scalar::one(s.domain()),
            None => return UniPoly::zero(),
        };
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&pw));
            pw = pw.mul(c);
        }
        UniPoly::from_coeffs(out)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<(Vec<u32>, &Scalar)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (vec![i as u32], c))
            .collect();
        render_terms(&terms, &[var])
    }
}

/// Sparse bivariate polynomial in (x, y) over the scalar field.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn monomial(dx: u32, dy: u32, c: Scalar) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(dx, dy, c);
        p
    }

    pub fn add_term(&mut self, dx: u32, dy: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(dx, dy)) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&(dx, dy));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert((dx, dy), c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dx, dy), c) in &other.terms {
            out.add_term(dx, dy, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &other.terms {
                let dx = ax.checked_add(bx).expect("x-exponent overflow");
                let dy = ay.checked_add(by).expect("y-exponent overflow");
                out.add_term(dx, dy, ac.mul(bc));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = BiPoly::zero();
        for (&(dx, dy), t) in &self.terms {
            out.add_term(dx, dy, t.mul(c));
        }
        out
    }

    /// Terms in graded-lex order, leading first; the normalization and
    /// display order.
    pub fn terms_graded_desc(&self) -> Vec<((u32, u32), &Scalar)> {
        let mut v: Vec<((u32, u32), &Scalar)> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by(|a, b| graded_key2(b.0).cmp(&graded_key2(a.0)));
        v
    }

    /// Scales so the leading graded-lex coefficient is 1. No-op on zero.
    pub fn normalized_monic(&self) -> Self {
        match self.terms_graded_desc().first() {
            Some((_, lead)) => {
                let inv = lead.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }
}

fn graded_key2(k: (u32, u32)) -> (u64, u32, u32) {
    (k.0 as u64 + k.1 as u64, k.0, k.1)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<u32>, &Scalar)> = self
            .terms_graded_desc()
            .into_iter()
            .map(|((dx, dy), c)| (vec![dx, dy], c))
            .collect();
        write!(f, "{}", render_terms(&terms, &["x", "y"]))
    }
}

/// Sparse trivariate polynomial in (M, lambda, mu) over the scalar field.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), Scalar>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn monomial(dm: u32, dl: u32, du: u32, c: Scalar) -> Self {
        let mut p = TriPoly::zero();
        p.add_term(dm, dl, du, c);
        p
    }

    pub fn constant(c: Scalar) -> Self {
        TriPoly::monomial(0, 0, 0, c)
    }

    pub fn add_term(&mut self, dm: u32, dl: u32, du: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(dm, dl, du)) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&(dm, dl, du));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert((dm, dl, du), c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn degree_m(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn degree_mu(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.2).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dm, dl, du), c) in &other.terms {
            out.add_term(dm, dl, du, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TriPoly::zero();
        for (&(am, al, au), ac) in &self.terms {
            for (&(bm, bl, bu), bc) in &other.terms {
                let dm = am.checked_add(bm).expect("M-exponent overflow");
                let dl = al.checked_add(bl).expect("lambda-exponent overflow");
                let du = au.checked_add(bu).expect("mu-exponent overflow");
                out.add_term(dm, dl, du, ac.mul(bc));
            }
        }
        out
    }

    /// The coefficient of `M^i` as a bivariate polynomial in (lambda, mu).
    pub fn coeff_of_m(&self, i: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(dm, dl, du), c) in &self.terms {
            if dm == i {
                out.add_term(dl, du, c.clone());
            }
        }
        out
    }

    /// The coefficient of `lambda^k` as a polynomial in (M, mu) — returned
    /// as a TriPoly with lambda-degree 0 everywhere.
    pub fn coeff_of_lambda(&self, k: u32) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(dm, dl, du), c) in &self.terms {
            if dl == k {
                out.add_term(dm, 0, du, c.clone());
            }
        }
        out
    }

    pub fn coeff_of_mu(&self, k: u32) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(dm, dl, du), c) in &self.terms {
            if du == k {
                out.add_term(dm, dl, 0, c.clone());
            }
        }
        out
    }

    /// Leading term under graded lex with M > lambda > mu.
    pub fn leading_term(&self) -> Option<((u32, u32, u32), &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| graded_key3(*a.0).cmp(&graded_key3(*b.0)))
            .map(|(k, c)| (*k, c))
    }

    /// Exact division; `None` when `d` does not divide `self`. Used by the
    /// fraction-free determinant, where divisions are exact by construction.
    pub fn div_exact(&self, d: &Self) -> Option<TriPoly> {
        let (dk, dc) = d.leading_term()?;
        let mut rem = self.clone();
        let mut quo = TriPoly::zero();
        while let Some((rk, rc)) = rem.leading_term() {
            if rk.0 < dk.0 || rk.1 < dk.1 || rk.2 < dk.2 {
                return None;
            }
            let mk = (rk.0 - dk.0, rk.1 - dk.1, rk.2 - dk.2);
            let mc = rc.checked_div(dc).ok()?;
            let mono = TriPoly::monomial(mk.0, mk.1, mk.2, mc);
            rem = rem.sub(&mono.mul(d));
            quo = quo.add(&mono);
        }
        Some(quo)
    }

    /// Specializes lambda and mu, leaving a univariate polynomial in M.
    pub fn specialize_lambda_mu(&self, lambda: &Scalar, mu: &Scalar) -> UniPoly {
        let deg = match self.degree_m() {
            Some(d) => d as usize,
            None => return UniPoly::zero(),
        };
        let domain = lambda.domain();
        let mut coeffs = vec![Scalar::zero(domain); deg + 1];
        for (&(dm, dl, du), c) in &self.terms {
            let v = c.mul(&lambda.pow(dl)).mul(&mu.pow(du));
            coeffs[dm as usize] = coeffs[dm as usize].add(&v);
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Embeds a univariate polynomial in M.
    pub fn from_m_poly(p: &UniPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, 0, c.clone());
        }
        out
    }

    /// The M-only content of a TriPoly with no lambda/mu terms; `None` when
    /// lambda or mu actually occurs.
    pub fn as_m_poly(&self) -> Option<UniPoly> {
        let deg = match self.degree_m() {
            Some(d) => d as usize,
            None => return Some(UniPoly::zero()),
        };
        let domain = self.terms.values().next()?.domain();
        let mut coeffs = vec![Scalar::zero(domain); deg + 1];
        for (&(dm, dl, du), c) in &self.terms {
            if dl != 0 || du != 0 {
                return None;
            }
            coeffs[dm as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn terms_graded_desc(&self) -> Vec<((u32, u32, u32), &Scalar)> {
        let mut v: Vec<((u32, u32, u32), &Scalar)> =
            self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by(|a, b| graded_key3(b.0).cmp(&graded_key3(a.0)));
        v
    }
}

fn graded_key3(k: (u32, u32, u32)) -> (u64, u32, u32, u32) {
    (k.0 as u64 + k.1 as u64 + k.2 as u64, k.0, k.1, k.2)
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<u32>, &Scalar)> = self
            .terms_graded_desc()
            .into_iter()
            .map(|((dm, dl, du), c)| (vec![dm, dl, du], c))
            .collect();
        write!(f, "{}", render_terms(&terms, &["M", "lambda", "mu"]))
    }
}

/// Shared term renderer: coefficient then variables with `*`, unit
/// coefficients elided, signs folded into the separators.
pub(crate) fn render_terms(terms: &[(Vec<u32>, &Scalar)], vars: &[&str]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (exps, coeff)) in terms.iter().enumerate() {
        let (neg, mag) = if coeff.prints_negative() {
            (true, coeff.neg())
        } else {
            (false, (*coeff).clone())
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        let trivial = mag.is_one();
        let has_vars = exps.iter().any(|&e| e > 0);
        if !trivial || !has_vars {
            let s = mag.expr_string();
            if s.contains(' ') && has_vars {
                factors.push(format!("({s})"));
            } else {
                factors.push(s);
            }
        }
        for (v, &e) in vars.iter().zip(exps.iter()) {
            if e == 0 {
                continue;
            }
            if e == 1 {
                factors.push(v.to_string());
            } else {
                factors.push(format!("{v}^{e}"));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
