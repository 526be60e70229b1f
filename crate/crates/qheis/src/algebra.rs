//! Normal-form arithmetic in the q-deformed Heisenberg algebra.
//!
//! `H_q` is the unital associative algebra on generators A and B with the
//! relation `AB - qBA = I`. Every element has a unique normal form
//! `sum c_ij B^i A^j`; the element type stores exactly that expansion as a
//! sparse map, so equality of normal forms is equality in the algebra.
//!
//! Products are normalized with the closed-form q-binomial expansion
//!
//! ```text
//! A^j B^k = sum_r q^((j-r)(k-r)) [j r]_q [k r]_q {r}_q!  B^(k-r) A^(j-r)
//! ```
//!
//! which is validated in tests against `rewrite_oracle_product`, an
//! independent (and much slower) normalizer that only ever applies the
//! single-step rewrite `AB -> qBA + I` to adjacent letter pairs.

use crate::poly::{render_terms, BiPoly, UniPoly};
use crate::scalar::{q_binomial_table, q_factorial, QMode, Scalar};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements live in different q-modes")]
    MixedModes,
    #[error("substitution into a commutative polynomial requires a commuting pair")]
    NonCommutingSubstitution,
}

/// An element of `H_q` in normal form: a sparse map from `(i, j)` to the
/// nonzero coefficient of `B^i A^j`, plus the mode that fixes q.
#[derive(Debug, Clone, PartialEq)]
pub struct HqElement {
    mode: QMode,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl HqElement {
    pub fn zero(mode: &QMode) -> Self {
        HqElement {
            mode: mode.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mode: &QMode) -> Self {
        HqElement::monomial(mode, 0, 0, mode.one())
    }

    /// The generator A.
    pub fn gen_a(mode: &QMode) -> Self {
        HqElement::monomial(mode, 0, 1, mode.one())
    }

    /// The generator B.
    pub fn gen_b(mode: &QMode) -> Self {
        HqElement::monomial(mode, 1, 0, mode.one())
    }

    /// `c * B^i A^j`.
    pub fn monomial(mode: &QMode, b_exp: u32, a_exp: u32, c: Scalar) -> Self {
        let mut e = HqElement::zero(mode);
        e.add_term(b_exp, a_exp, c);
        e
    }

    pub fn from_scalar(mode: &QMode, c: Scalar) -> Self {
        HqElement::monomial(mode, 0, 0, c)
    }

    pub fn mode(&self) -> &QMode {
        &self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b_exp: u32, a_exp: u32) -> Scalar {
        self.terms
            .get(&(b_exp, a_exp))
            .cloned()
            .unwrap_or_else(|| self.mode.zero())
    }

    fn add_term(&mut self, b_exp: u32, a_exp: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(b_exp, a_exp)) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&(b_exp, a_exp));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert((b_exp, a_exp), c);
            }
        }
    }

    fn check_mode(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(AlgebraError::MixedModes)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("mixed q-modes")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HqElement {
            mode: self.mode.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = HqElement::zero(&self.mode);
        for (&(i, j), t) in &self.terms {
            out.add_term(i, j, t.mul(c));
        }
        out
    }

    /// Normal form of the product. See the module docs for the monomial
    /// expansion in use.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_mode(other)?;
        Ok(normal_product(self, other))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("mixed q-modes")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = HqElement::one(&self.mode);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `PQ - QP` in normal form.
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.checked_mul(other)?.sub(&other.checked_mul(self)?))
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, AlgebraError> {
        Ok(self.commutator(other)?.is_zero())
    }

    /// The order: the highest A-exponent, or `None` for the zero element.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Total degree: the highest `i + j`, or `None` for the zero element.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    /// The coefficient of `A^j` as a polynomial in B.
    pub fn coeff_poly(&self, a_exp: u32) -> UniPoly {
        let max_b = self
            .terms
            .keys()
            .filter(|k| k.1 == a_exp)
            .map(|k| k.0)
            .max();
        let max_b = match max_b {
            Some(b) => b as usize,
            None => return UniPoly::zero(),
        };
        let mut coeffs = vec![self.mode.zero(); max_b + 1];
        for (&(i, j), c) in &self.terms {
            if j == a_exp {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// The leading coefficient polynomial `p_m(B)` of a nonzero element.
    pub fn leading_coeff_poly(&self) -> Option<UniPoly> {
        self.order().map(|m| self.coeff_poly(m))
    }

    /// Central elements commute with everything; A and B generate, so
    /// commuting with both suffices.
    pub fn is_central(&self) -> bool {
        let a = HqElement::gen_a(&self.mode);
        let b = HqElement::gen_b(&self.mode);
        self.commutes_with(&a).expect("same mode") && self.commutes_with(&b).expect("same mode")
    }

    /// Terms in graded-lex order (total degree, then B-exponent), leading
    /// first; the display and serialization order.
    pub fn terms_graded_desc(&self) -> Vec<((u32, u32), &Scalar)> {
        let mut v: Vec<((u32, u32), &Scalar)> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by(|a, b| {
            let ka = (a.0 .0 as u64 + a.0 .1 as u64, a.0 .0, a.0 .1);
            let kb = (b.0 .0 as u64 + b.0 .1 as u64, b.0 .0, b.0 .1);
            kb.cmp(&ka)
        });
        v
    }
}

impl fmt::Display for HqElement {
    /// Normal-form rendering, B-powers left of A-powers: `B^2*A^3 - 2*B*A + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<u32>, &Scalar)> = self
            .terms_graded_desc()
            .into_iter()
            .map(|((i, j), c)| (vec![i, j], c))
            .collect();
        write!(f, "{}", render_terms(&terms, &["B", "A"]))
    }
}

/// Normal form of `X * Y` via the closed-form monomial expansion.
fn normal_product(x: &HqElement, y: &HqElement) -> HqElement {
    let mode = &x.mode;
    let mut out = HqElement::zero(mode);
    if x.is_zero() || y.is_zero() {
        return out;
    }
    // Table sizes: j ranges over X's A-exponents, k over Y's B-exponents.
    let max_j = x.terms.keys().map(|k| k.1).max().unwrap();
    let max_k = y.terms.keys().map(|k| k.0).max().unwrap();
    let n_max = max_j.max(max_k);
    let binom = q_binomial_table(n_max, mode);
    let fact: Vec<Scalar> = (0..=max_j.min(max_k))
        .map(|r| q_factorial(r, mode))
        .collect();

    for (&(i1, j1), c1) in &x.terms {
        for (&(i2, j2), c2) in &y.terms {
            let c = c1.mul(c2);
            // B^i1 A^j1 * B^i2 A^j2 = B^i1 (A^j1 B^i2) A^j2
            for r in 0..=j1.min(i2) {
                let tw = (j1 - r) as i64 * (i2 - r) as i64;
                let coeff = mode
                    .q_pow(tw)
                    .mul(&binom[j1 as usize][r as usize])
                    .mul(&binom[i2 as usize][r as usize])
                    .mul(&fact[r as usize]);
                let b_exp = i1.checked_add(i2 - r).expect("B-exponent overflow");
                let a_exp = j2.checked_add(j1 - r).expect("A-exponent overflow");
                out.add_term(b_exp, a_exp, c.mul(&coeff));
            }
        }
    }
    out
}

/// Slow reference normalizer: expands both factors into words over the
/// letters {A, B} and repeatedly replaces one adjacent `AB` pair by
/// `q BA + I` until every word is normally ordered. Used as the oracle that
/// the closed-form product must match.
pub fn rewrite_oracle_product(
    x: &HqElement,
    y: &HqElement,
) -> Result<HqElement, AlgebraError> {
    if x.mode != y.mode {
        return Err(AlgebraError::MixedModes);
    }
    let mode = x.mode.clone();
    let mut memo: HashMap<Vec<u8>, HqElement> = HashMap::new();
    let mut out = HqElement::zero(&mode);
    for (&(i1, j1), c1) in &x.terms {
        for (&(i2, j2), c2) in &y.terms {
            let mut word = Vec::new();
            word.extend(std::iter::repeat(b'B').take(i1 as usize));
            word.extend(std::iter::repeat(b'A').take(j1 as usize));
            word.extend(std::iter::repeat(b'B').take(i2 as usize));
            word.extend(std::iter::repeat(b'A').take(j2 as usize));
            let nf = normalize_word(&word, &mode, &mut memo);
            out = out.add(&nf.scale(&c1.mul(c2)));
        }
    }
    Ok(out)
}

fn normalize_word(
    word: &[u8],
    mode: &QMode,
    memo: &mut HashMap<Vec<u8>, HqElement>,
) -> HqElement {
    if let Some(hit) = memo.get(word) {
        return hit.clone();
    }
    let result = match word.windows(2).position(|w| w == b"AB") {
        None => {
            // already normal: B^i A^j
            let i = word.iter().filter(|&&c| c == b'B').count() as u32;
            let j = word.len() as u32 - i;
            HqElement::monomial(mode, i, j, mode.one())
        }
        Some(p) => {
            let mut swapped = word.to_vec();
            swapped[p] = b'B';
            swapped[p + 1] = b'A';
            let mut dropped = word.to_vec();
            dropped.drain(p..p + 2);
            let q = HqElement::from_scalar(mode, mode.q());
            q.mul_unchecked_scalar_free(&normalize_word(&swapped, mode, memo))
                .add(&normalize_word(&dropped, mode, memo))
        }
    };
    memo.insert(word.to_vec(), result.clone());
    result
}

impl HqElement {
    /// Scale by a scalar-only element; keeps the oracle free of the
    /// closed-form product path.
    fn mul_unchecked_scalar_free(&self, other: &HqElement) -> HqElement {
        debug_assert!(self.order() == Some(0) || self.is_zero());
        debug_assert!(self.terms.keys().all(|k| *k == (0, 0)));
        match self.terms.get(&(0, 0)) {
            Some(c) => other.scale(c),
            None => HqElement::zero(&self.mode),
        }
    }
}

/// Evaluates a bivariate polynomial at a commuting pair: `F(P, Q) =
/// sum F_ab P^a Q^b` in normal form. Powers are memoized per call.
pub fn eval_bipoly(f: &BiPoly, p: &HqElement, q: &HqElement) -> Result<HqElement, AlgebraError> {
    let mut cache = PowerCache::new(p.clone(), q.clone())?;
    cache.eval(f)
}

/// Memoized powers and mixed products of a fixed commuting pair, shared
/// across several polynomial evaluations.
pub struct PowerCache {
    p_powers: Vec<HqElement>,
    q_powers: Vec<HqElement>,
    mixed: HashMap<(u32, u32), HqElement>,
}

impl PowerCache {
    pub fn new(p: HqElement, q: HqElement) -> Result<Self, AlgebraError> {
        if p.mode != q.mode {
            return Err(AlgebraError::MixedModes);
        }
        if !p.commutes_with(&q)? {
            return Err(AlgebraError::NonCommutingSubstitution);
        }
        let one = HqElement::one(&p.mode);
        Ok(PowerCache {
            p_powers: vec![one.clone(), p],
            q_powers: vec![one, q],
            mixed: HashMap::new(),
        })
    }

    fn p_pow(&mut self, e: u32) -> HqElement {
        while self.p_powers.len() <= e as usize {
            let next = self.p_powers.last().unwrap().mul(&self.p_powers[1]);
            self.p_powers.push(next);
        }
        self.p_powers[e as usize].clone()
    }

    fn q_pow(&mut self, e: u32) -> HqElement {
        while self.q_powers.len() <= e as usize {
            let next = self.q_powers.last().unwrap().mul(&self.q_powers[1]);
            self.q_powers.push(next);
        }
        self.q_powers[e as usize].clone()
    }

    pub fn mode(&self) -> &QMode {
        self.p_powers[0].mode()
    }

    /// Normal form of `P^a Q^b`.
    pub fn monomial_value(&mut self, a: u32, b: u32) -> HqElement {
        if let Some(hit) = self.mixed.get(&(a, b)) {
            return hit.clone();
        }
        let value = self.p_pow(a).mul(&self.q_pow(b));
        self.mixed.insert((a, b), value.clone());
        value
    }

    pub fn eval(&mut self, f: &BiPoly) -> Result<HqElement, AlgebraError> {
        let mode = self.mode().clone();
        let mut acc = HqElement::zero(&mode);
        for (&(a, b), c) in f.terms() {
            let term = self.monomial_value(a, b).scale(c);
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_integer;

    fn modes() -> Vec<QMode> {
        vec![
            QMode::rational_i64(2, 1),
            QMode::rational_i64(1, 1),
            QMode::Symbolic,
            QMode::RootOfUnity(2),
        ]
    }

    #[test]
    fn defining_relation() {
        for mode in modes() {
            let a = HqElement::gen_a(&mode);
            let b = HqElement::gen_b(&mode);
            // A*B = q*BA + I
            let ab = a.mul(&b);
            let mut expected = HqElement::monomial(&mode, 1, 1, mode.q());
            expected = expected.add(&HqElement::one(&mode));
            assert_eq!(ab, expected, "mode {mode}");
            // A*B - q*B*A = I exactly
            let lhs = ab.sub(&b.mul(&a).scale(&mode.q()));
            assert_eq!(lhs, HqElement::one(&mode), "mode {mode}");
        }
    }

    #[test]
    fn a_times_b_squared() {
        // A*B^2 = q^2 B^2 A + (1+q) B
        let mode = QMode::Symbolic;
        let a = HqElement::gen_a(&mode);
        let b2 = HqElement::gen_b(&mode).pow(2);
        let got = a.mul(&b2);
        let mut expected = HqElement::monomial(&mode, 2, 1, mode.q_pow(2));
        expected = expected.add(&HqElement::monomial(&mode, 1, 0, q_integer(2, &mode)));
        assert_eq!(got, expected);
    }

    #[test]
    fn identity_is_neutral() {
        let mode = QMode::rational_i64(5, 3);
        let one = HqElement::one(&mode);
        let p = HqElement::monomial(&mode, 2, 3, mode.from_int(7))
            .add(&HqElement::monomial(&mode, 0, 1, mode.from_int(-1)));
        assert_eq!(one.mul(&p), p);
        assert_eq!(p.mul(&one), p);
    }

    #[test]
    fn oracle_examples() {
        // A*B via the rewrite oracle
        let mode = QMode::Symbolic;
        let a = HqElement::gen_a(&mode);
        let b = HqElement::gen_b(&mode);
        let got = rewrite_oracle_product(&a, &b).unwrap();
        assert_eq!(got, a.mul(&b));

        // A^2 * B at q = -1 collapses to B A^2
        let m = QMode::rational_i64(-1, 1);
        let a2 = HqElement::gen_a(&m).pow(2);
        let got = rewrite_oracle_product(&a2, &HqElement::gen_b(&m)).unwrap();
        assert_eq!(got, HqElement::monomial(&m, 1, 2, m.one()));

        // B*A is already normal
        let got = rewrite_oracle_product(&b, &a).unwrap();
        assert_eq!(got, HqElement::monomial(&mode, 1, 1, mode.one()));
    }

    #[test]
    fn oracle_agreement_small() {
        // spot check; the acceptance suite sweeps exponents up to 5
        for mode in modes() {
            for (i, j, k, l) in [(0, 2, 2, 0), (1, 2, 2, 1), (0, 3, 3, 0), (2, 2, 2, 2)] {
                let x = HqElement::monomial(&mode, i, j, mode.one());
                let y = HqElement::monomial(&mode, k, l, mode.one());
                assert_eq!(
                    x.mul(&y),
                    rewrite_oracle_product(&x, &y).unwrap(),
                    "mode {mode} B^{i}A^{j} * B^{k}A^{l}"
                );
            }
        }
    }

    #[test]
    fn commutator_examples() {
        // [A, B] = (q-1) BA + I
        let mode = QMode::Symbolic;
        let a = HqElement::gen_a(&mode);
        let b = HqElement::gen_b(&mode);
        let c = a.commutator(&b).unwrap();
        let expected = HqElement::monomial(&mode, 1, 1, mode.q().sub(&mode.one()))
            .add(&HqElement::one(&mode));
        assert_eq!(c, expected);

        // powers of one element commute
        let p = HqElement::monomial(&mode, 1, 1, mode.one()).add(&HqElement::gen_a(&mode));
        assert!(p.commutes_with(&p.pow(2)).unwrap());

        // q = -1: [A^2, B] = 0
        let m = QMode::rational_i64(-1, 1);
        let a2 = HqElement::gen_a(&m).pow(2);
        assert!(a2.commutes_with(&HqElement::gen_b(&m)).unwrap());
    }

    #[test]
    fn order_degree_coeff_poly() {
        // P = (B^2 + 1) A^3 + B A
        let mode = QMode::rational_i64(2, 1);
        let p = HqElement::monomial(&mode, 2, 3, mode.one())
            .add(&HqElement::monomial(&mode, 0, 3, mode.one()))
            .add(&HqElement::monomial(&mode, 1, 1, mode.one()));
        assert_eq!(p.order(), Some(3));
        assert_eq!(p.total_degree(), Some(5));
        let c3 = p.coeff_poly(3);
        assert_eq!(c3.to_string_var("X"), "X^2 + 1");
        assert_eq!(p.coeff_poly(0), UniPoly::zero());
        assert_eq!(HqElement::zero(&mode).order(), None);
        assert_eq!(HqElement::zero(&mode).total_degree(), None);
    }

    #[test]
    fn eval_bipoly_examples() {
        let mode = QMode::rational_i64(2, 1);
        let a = HqElement::gen_a(&mode);

        // F = x - y at P = Q
        let mut f = BiPoly::zero();
        f.add_term(1, 0, mode.from_int(1));
        f.add_term(0, 1, mode.from_int(-1));
        assert!(eval_bipoly(&f, &a, &a).unwrap().is_zero());

        // F = x^2 + 1 - y at P = A, Q = A^2 + I
        let mut f = BiPoly::zero();
        f.add_term(2, 0, mode.from_int(1));
        f.add_term(0, 0, mode.from_int(1));
        f.add_term(0, 1, mode.from_int(-1));
        let q = a.pow(2).add(&HqElement::one(&mode));
        assert!(eval_bipoly(&f, &a, &q).unwrap().is_zero());

        // F = xy at P = Q = A
        let f = BiPoly::monomial(1, 1, mode.from_int(1));
        assert_eq!(eval_bipoly(&f, &a, &a).unwrap(), a.pow(2));

        // non-commuting pair is rejected
        let b = HqElement::gen_b(&mode);
        assert_eq!(
            eval_bipoly(&f, &a, &b),
            Err(AlgebraError::NonCommutingSubstitution)
        );
    }

    #[test]
    fn centrality() {
        // q = -1: A^2 is central
        let m = QMode::rational_i64(-1, 1);
        assert!(HqElement::gen_a(&m).pow(2).is_central());
        assert!(HqElement::gen_b(&m).pow(2).is_central());
        // q = 2: A^2 is not ([A^2, B] = {2}_2 A = 3A)
        let m2 = QMode::rational_i64(2, 1);
        assert!(!HqElement::gen_a(&m2).pow(2).is_central());
        // scalar multiples of I always are
        assert!(HqElement::from_scalar(&m2, m2.from_int(7)).is_central());
    }

    #[test]
    fn order_additivity() {
        let mode = QMode::rational_i64(2, 1);
        let p = HqElement::monomial(&mode, 2, 3, mode.one())
            .add(&HqElement::monomial(&mode, 1, 1, mode.from_int(-2)));
        let q = HqElement::monomial(&mode, 0, 2, mode.from_int(3))
            .add(&HqElement::one(&mode));
        assert_eq!(ter_order(&p.mul(&q)), ter_order(&p) + ter_order(&q));
    }

    fn ter_order(p: &HqElement) -> u32 {
        p.order().expect("nonzero")
    }

    #[test]
    fn mixed_modes_rejected() {
        let a = HqElement::gen_a(&QMode::Symbolic);
        let b = HqElement::gen_b(&QMode::rational_i64(2, 1));
        assert_eq!(a.checked_mul(&b), Err(AlgebraError::MixedModes));
        assert_eq!(a.checked_add(&b), Err(AlgebraError::MixedModes));
        assert_eq!(
            rewrite_oracle_product(&a, &b),
            Err(AlgebraError::MixedModes)
        );
    }

    #[test]
    fn display_normal_form() {
        let mode = QMode::rational_i64(2, 1);
        let p = HqElement::monomial(&mode, 2, 3, mode.one())
            .add(&HqElement::monomial(&mode, 1, 1, mode.from_int(-2)))
            .add(&HqElement::one(&mode));
        assert_eq!(p.to_string(), "B^2*A^3 - 2*B*A + 1");
        assert_eq!(HqElement::zero(&mode).to_string(), "0");
    }
}
