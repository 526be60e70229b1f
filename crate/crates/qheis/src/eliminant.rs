//! The Burchnall-Chaundy eliminant for commuting pairs in `H_q`.
//!
//! For commuting P, Q of orders m >= 1 and n >= 1, write the normal forms of
//! `A^k P` (k = 0..n-1) and `A^l Q` (l = 0..m-1) as polynomials in A with
//! coefficients in B. Viewed through the Laurent-series representation these
//! are `D_q^k P` and `D_q^l Q` with coefficients in M, which is the variable
//! name used here. The eliminant matrix collects those coefficient rows,
//! with a formal `-lambda` on the first diagonal block and `-mu` on the
//! second; its determinant `Delta(M, lambda, mu)` is nonzero, and each
//! coefficient `delta_i(lambda, mu)` of `M^i` vanishes at (P, Q) when q is
//! of free type. That is the annihilating-curve construction this module
//! realizes and checks.

use crate::algebra::{AlgebraError, HqElement, PowerCache};
use crate::poly::{BiPoly, TriPoly, UniPoly};
use crate::scalar::QMode;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EliminantError {
    #[error("the pair does not commute")]
    NonCommutingPair,
    #[error("both operands must have order at least one")]
    OrderZeroOperand,
    #[error("the eliminant construction requires q of free type")]
    TorsionModeUnsupported,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Normal form of `A^k * P`; under the representation, `D_q^k P`. The order
/// grows by exactly k.
pub fn shift_compose(p: &HqElement, k: u32) -> HqElement {
    let mut acc = p.clone();
    let a = HqElement::gen_a(p.mode());
    for _ in 0..k {
        acc = a.mul(&acc);
    }
    acc
}

/// The `(m+n) x (m+n)` eliminant matrix of a commuting pair.
///
/// Row k+1 (k = 0..n-1) holds the A-coefficients of `A^k P - lambda A^k`:
/// entry (k, j) is `p_{k,j}(M)` with `-lambda` added at column k. Rows
/// n+1..n+m hold the same data for Q with `-mu` at column l. Columns beyond
/// the order of the shifted element are structurally zero.
#[derive(Debug, Clone)]
pub struct EliminantMatrix {
    size: usize,
    entries: Vec<Vec<TriPoly>>,
    /// The shifted normal forms the rows were read from.
    pub shifted_p: Vec<HqElement>,
    pub shifted_q: Vec<HqElement>,
    pub order_p: u32,
    pub order_q: u32,
}

impl EliminantMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &TriPoly {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<TriPoly>] {
        &self.entries
    }
}

pub fn build_eliminant_matrix(
    p: &HqElement,
    q: &HqElement,
) -> Result<EliminantMatrix, EliminantError> {
    if !p.commutes_with(q)? {
        return Err(EliminantError::NonCommutingPair);
    }
    let m = p.order().filter(|&m| m >= 1).ok_or(EliminantError::OrderZeroOperand)?;
    let n = q.order().filter(|&n| n >= 1).ok_or(EliminantError::OrderZeroOperand)?;
    let size = (m + n) as usize;
    let mode = p.mode();

    let mut entries = Vec::with_capacity(size);
    let mut shifted_p = Vec::with_capacity(n as usize);
    let mut shifted_q = Vec::with_capacity(m as usize);

    for k in 0..n {
        let s = shift_compose(p, k);
        entries.push(coefficient_row(&s, size, k, 1, mode));
        shifted_p.push(s);
    }
    for l in 0..m {
        let s = shift_compose(q, l);
        entries.push(coefficient_row(&s, size, l, 2, mode));
        shifted_q.push(s);
    }

    Ok(EliminantMatrix {
        size,
        entries,
        shifted_p,
        shifted_q,
        order_p: m,
        order_q: n,
    })
}

/// One row: B-coefficient polynomials become polynomials in M, and the
/// formal variable (lambda for slot 1, mu for slot 2) is subtracted at the
/// diagonal column.
fn coefficient_row(
    shifted: &HqElement,
    size: usize,
    diag_col: u32,
    var_slot: u8,
    mode: &QMode,
) -> Vec<TriPoly> {
    let mut row = Vec::with_capacity(size);
    for j in 0..size as u32 {
        let coeff = shifted.coeff_poly(j);
        let mut entry = TriPoly::zero();
        for (i, c) in coeff.coeffs().iter().enumerate() {
            entry.add_term(i as u32, 0, 0, c.clone());
        }
        if j == diag_col {
            let (dl, du) = if var_slot == 1 { (1, 0) } else { (0, 1) };
            entry.add_term(0, dl, du, mode.from_int(-1));
        }
        row.push(entry);
    }
    row
}

/// Exact determinant by fraction-free Bareiss elimination over the
/// polynomial ring. Divisions by the previous pivot are exact; row swaps
/// track the sign.
pub fn determinant_bareiss(mat: &EliminantMatrix) -> TriPoly {
    determinant_bareiss_grid(&mat.entries)
}

pub(crate) fn determinant_bareiss_grid(grid: &[Vec<TriPoly>]) -> TriPoly {
    let n = grid.len();
    if n == 0 {
        return TriPoly::zero();
    }
    let mut m: Vec<Vec<TriPoly>> = grid.to_vec();
    let mut negate = false;
    let mut prev: Option<TriPoly> = None;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return TriPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                if let Some(d) = &prev {
                    t = t.div_exact(d).expect("Bareiss division is exact");
                }
                m[i][j] = t;
            }
            m[i][k] = TriPoly::zero();
        }
        prev = Some(m[k][k].clone());
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Exact determinant by cofactor expansion along the first column. Only
/// sensible for small matrices; kept as the independent route the Bareiss
/// result is checked against.
pub fn determinant_cofactor(mat: &EliminantMatrix) -> TriPoly {
    determinant_cofactor_grid(&mat.entries)
}

pub(crate) fn determinant_cofactor_grid(grid: &[Vec<TriPoly>]) -> TriPoly {
    let n = grid.len();
    let cols: Vec<usize> = (0..n).collect();
    let rows: Vec<usize> = (0..n).collect();
    cofactor_rec(grid, &rows, &cols)
}

fn cofactor_rec(grid: &[Vec<TriPoly>], rows: &[usize], cols: &[usize]) -> TriPoly {
    if rows.is_empty() {
        // empty product
        return TriPoly::zero();
    }
    if rows.len() == 1 {
        return grid[rows[0]][cols[0]].clone();
    }
    let mut acc = TriPoly::zero();
    let col = cols[0];
    let rest_cols: Vec<usize> = cols[1..].to_vec();
    for (pos, &r) in rows.iter().enumerate() {
        let e = &grid[r][col];
        if e.is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&x| x != r)
            .collect();
        let minor = cofactor_rec(grid, &sub_rows, &rest_cols);
        let signed = if pos % 2 == 0 { e.mul(&minor) } else { e.mul(&minor).neg() };
        acc = acc.add(&signed);
    }
    acc
}

/// The eliminant `Delta(M, lambda, mu)` of a built matrix.
pub fn eliminant_determinant(mat: &EliminantMatrix) -> TriPoly {
    determinant_bareiss(mat)
}

/// Structural data the construction promises about Delta.
#[derive(Debug, Clone)]
pub struct TheoremMetadata {
    /// `n * max_j deg p_j + m * max_j deg q_j`: an upper bound for the
    /// M-degree of Delta.
    pub s_bound: u64,
    /// `n(n-1)/2 * max_j deg p_j + m(m-1)/2 * max_j deg q_j`: an upper bound
    /// for the q-degree of the curve coefficients in symbolic mode.
    pub t_bound: u64,
    pub lambda_degree: u32,
    pub mu_degree: u32,
    /// Observed coefficient of `lambda^n` in Delta, a polynomial in M.
    pub lambda_leading: UniPoly,
    /// Predicted: `(-1)^n prod_{k=0}^{m-1} q_n(q^k M)`.
    pub lambda_leading_expected: UniPoly,
    pub lambda_leading_matches: bool,
    /// Observed coefficient of `mu^m`, and the prediction
    /// `(-1)^m prod_{k=0}^{n-1} p_m(q^k M)`.
    pub mu_leading: UniPoly,
    pub mu_leading_expected: UniPoly,
    pub mu_leading_matches: bool,
}

fn max_coeff_degree(p: &HqElement) -> u64 {
    let m = match p.order() {
        Some(m) => m,
        None => return 0,
    };
    (0..=m)
        .filter_map(|j| p.coeff_poly(j).degree())
        .max()
        .unwrap_or(0) as u64
}

/// Checks the structural claims about Delta against the pair it came from.
pub fn theorem_metadata(
    p: &HqElement,
    q: &HqElement,
    delta: &TriPoly,
) -> Result<TheoremMetadata, EliminantError> {
    let m = p.order().filter(|&m| m >= 1).ok_or(EliminantError::OrderZeroOperand)?;
    let n = q.order().filter(|&n| n >= 1).ok_or(EliminantError::OrderZeroOperand)?;
    let mode = p.mode();

    let maxp = max_coeff_degree(p);
    let maxq = max_coeff_degree(q);
    let s_bound = n as u64 * maxp + m as u64 * maxq;
    let t_bound = (n as u64 * (n as u64 - 1) / 2) * maxp + (m as u64 * (m as u64 - 1) / 2) * maxq;

    let lambda_degree = delta.degree_lambda().unwrap_or(0);
    let mu_degree = delta.degree_mu().unwrap_or(0);

    let lambda_leading = delta
        .coeff_of_lambda(n)
        .as_m_poly()
        .unwrap_or_else(UniPoly::zero);
    let mu_leading = delta
        .coeff_of_mu(m)
        .as_m_poly()
        .unwrap_or_else(UniPoly::zero);

    let lambda_leading_expected = twisted_product(&q.coeff_poly(n), m, n % 2 == 1, mode);
    let mu_leading_expected = twisted_product(&p.coeff_poly(m), n, m % 2 == 1, mode);

    Ok(TheoremMetadata {
        s_bound,
        t_bound,
        lambda_degree,
        mu_degree,
        lambda_leading_matches: lambda_leading == lambda_leading_expected,
        mu_leading_matches: mu_leading == mu_leading_expected,
        lambda_leading,
        lambda_leading_expected,
        mu_leading,
        mu_leading_expected,
    })
}

/// `(+/-1) * prod_{k=0}^{count-1} f(q^k M)`.
fn twisted_product(f: &UniPoly, count: u32, negate: bool, mode: &QMode) -> UniPoly {
    let mut acc = UniPoly::constant(if negate { mode.from_int(-1) } else { mode.one() });
    for k in 0..count {
        acc = acc.mul(&f.dilate(&mode.q_pow(k as i64)));
    }
    acc
}

/// The curves `delta_i(lambda, mu)`: coefficients of `M^i` in Delta, for
/// i = 0 up to the M-degree. Empty for the zero polynomial.
pub fn extract_curves(delta: &TriPoly) -> Vec<BiPoly> {
    match delta.degree_m() {
        Some(d) => (0..=d).map(|i| delta.coeff_of_m(i)).collect(),
        None => Vec::new(),
    }
}

/// Evaluates each curve at the pair and reports which vanish. Only valid
/// for q of free type.
pub fn verify_annihilation(
    p: &HqElement,
    q: &HqElement,
    curves: &[BiPoly],
) -> Result<Vec<bool>, EliminantError> {
    if !p.mode().is_free_type() {
        return Err(EliminantError::TorsionModeUnsupported);
    }
    let mut cache = PowerCache::new(p.clone(), q.clone()).map_err(|e| match e {
        AlgebraError::NonCommutingSubstitution => EliminantError::NonCommutingPair,
        other => EliminantError::Algebra(other),
    })?;
    let mut out = Vec::with_capacity(curves.len());
    for c in curves {
        out.push(cache.eval(c)?.is_zero());
    }
    Ok(out)
}

/// Everything the construction yields for one pair, in one pass.
#[derive(Debug, Clone)]
pub struct EliminantReport {
    pub matrix: EliminantMatrix,
    pub delta: TriPoly,
    /// Curves indexed by M-degree, padded with zero entries up to s_bound.
    pub curves: Vec<BiPoly>,
    pub curve_nonzero: Vec<bool>,
    pub metadata: TheoremMetadata,
    /// Per-curve exact zero test of `delta_i(P, Q)`.
    pub annihilation: Vec<bool>,
}

/// Runs the full construction: build, determinant, metadata, curves,
/// annihilation check. Refuses torsion-type q, where the construction is
/// not known to apply.
pub fn eliminant_report(p: &HqElement, q: &HqElement) -> Result<EliminantReport, EliminantError> {
    if !p.mode().is_free_type() {
        return Err(EliminantError::TorsionModeUnsupported);
    }
    let matrix = build_eliminant_matrix(p, q)?;
    let delta = eliminant_determinant(&matrix);
    let metadata = theorem_metadata(p, q, &delta)?;
    let mut curves = extract_curves(&delta);
    while (curves.len() as u64) < metadata.s_bound + 1 {
        curves.push(BiPoly::zero());
    }
    let curve_nonzero: Vec<bool> = curves.iter().map(|c| !c.is_zero()).collect();
    let annihilation = verify_annihilation(p, q, &curves)?;
    Ok(EliminantReport {
        matrix,
        delta,
        curves,
        curve_nonzero,
        metadata,
        annihilation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QMode;

    fn a_pow(mode: &QMode, e: u32) -> HqElement {
        HqElement::gen_a(mode).pow(e)
    }

    #[test]
    fn shift_compose_examples() {
        let mode = QMode::rational_i64(2, 1);
        let p = HqElement::monomial(&mode, 1, 1, mode.one()); // B A
        assert_eq!(shift_compose(&p, 0), p);
        // A * BA = (2BA + I)A = 2 B A^2 + A  at q = 2
        let s = shift_compose(&p, 1);
        let expected = HqElement::monomial(&mode, 1, 2, mode.from_int(2))
            .add(&HqElement::monomial(&mode, 0, 1, mode.one()));
        assert_eq!(s, expected);
        // pure powers shift trivially and order grows by k
        let am = a_pow(&mode, 3);
        assert_eq!(shift_compose(&am, 2), a_pow(&mode, 5));
        assert_eq!(s.order(), Some(p.order().unwrap() + 1));
    }

    #[test]
    fn pure_power_matrix_shape() {
        // P = A^2, Q = A^3: the 5x5 constant matrix
        let mode = QMode::rational_i64(2, 1);
        let mat = build_eliminant_matrix(&a_pow(&mode, 2), &a_pow(&mode, 3)).unwrap();
        assert_eq!(mat.size(), 5);
        let one = TriPoly::constant(mode.one());
        let neg_lambda = TriPoly::monomial(0, 1, 0, mode.from_int(-1));
        let neg_mu = TriPoly::monomial(0, 0, 1, mode.from_int(-1));
        let z = TriPoly::zero();
        let expected: Vec<Vec<&TriPoly>> = vec![
            vec![&neg_lambda, &z, &one, &z, &z],
            vec![&z, &neg_lambda, &z, &one, &z],
            vec![&z, &z, &neg_lambda, &z, &one],
            vec![&neg_mu, &z, &z, &one, &z],
            vec![&z, &neg_mu, &z, &z, &one],
        ];
        for r in 0..5 {
            for c in 0..5 {
                assert_eq!(mat.entry(r, c), expected[r][c], "entry ({r}, {c})");
            }
        }
    }

    #[test]
    fn row_one_carries_leading_coeff() {
        // entry (0, m) is p_m(M) for any pair
        let mode = QMode::rational_i64(2, 1);
        let p = HqElement::monomial(&mode, 2, 3, mode.one())
            .add(&HqElement::monomial(&mode, 0, 3, mode.one()))
            .add(&HqElement::monomial(&mode, 1, 1, mode.one())); // (B^2+1)A^3 + BA
        let q = p.mul(&p); // commutes with p
        let mat = build_eliminant_matrix(&p, &q).unwrap();
        let expected = TriPoly::monomial(2, 0, 0, mode.one())
            .add(&TriPoly::constant(mode.one()));
        assert_eq!(mat.entry(0, 3), &expected);
    }

    #[test]
    fn golden_delta_pure_powers() {
        // Delta = mu^2 - lambda^3 for P = A^2, Q = A^3 in any free mode
        for mode in [
            QMode::rational_i64(2, 1),
            QMode::rational_i64(1, 1),
            QMode::Symbolic,
        ] {
            let mat = build_eliminant_matrix(&a_pow(&mode, 2), &a_pow(&mode, 3)).unwrap();
            let delta = eliminant_determinant(&mat);
            let expected = TriPoly::monomial(0, 0, 2, mode.one())
                .add(&TriPoly::monomial(0, 3, 0, mode.from_int(-1)));
            assert_eq!(delta, expected, "mode {mode}");
            assert_eq!(determinant_cofactor(&mat), expected, "cofactor route, mode {mode}");
        }
    }

    #[test]
    fn smallest_legal_pair() {
        // P = Q = A gives the 2x2 determinant mu - lambda
        let mode = QMode::rational_i64(2, 1);
        let mat = build_eliminant_matrix(&a_pow(&mode, 1), &a_pow(&mode, 1)).unwrap();
        assert_eq!(mat.size(), 2);
        let delta = eliminant_determinant(&mat);
        let expected = TriPoly::monomial(0, 0, 1, mode.one())
            .add(&TriPoly::monomial(0, 1, 0, mode.from_int(-1)));
        assert_eq!(delta, expected);
    }

    #[test]
    fn golden_metadata() {
        let mode = QMode::rational_i64(2, 1);
        let p = a_pow(&mode, 2);
        let q = a_pow(&mode, 3);
        let mat = build_eliminant_matrix(&p, &q).unwrap();
        let delta = eliminant_determinant(&mat);
        let md = theorem_metadata(&p, &q, &delta).unwrap();
        assert_eq!(md.s_bound, 0);
        assert_eq!(md.t_bound, 0);
        assert_eq!(md.lambda_degree, 3);
        assert_eq!(md.mu_degree, 2);
        // lambda^3 coefficient -1, mu^2 coefficient +1
        assert_eq!(md.lambda_leading, UniPoly::constant(mode.from_int(-1)));
        assert_eq!(md.mu_leading, UniPoly::constant(mode.one()));
        assert!(md.lambda_leading_matches);
        assert!(md.mu_leading_matches);
    }

    #[test]
    fn t_bound_formula() {
        // m = n = 2, max deg p_j = 0, max deg q_j = 1 -> t = 0 + 1 = 1
        let mode = QMode::rational_i64(2, 1);
        let c = HqElement::monomial(&mode, 1, 1, mode.one()); // BA
        let p = c.pow(2);
        // q has a degree-1 coefficient: use BA itself squared plus BA? keep
        // orders equal: P = (BA)^2, Q = (BA)^2 + BA has m = n = 2
        let q = p.add(&c);
        assert_eq!(p.order(), Some(2));
        assert_eq!(q.order(), Some(2));
        let maxp = super::max_coeff_degree(&p);
        let maxq = super::max_coeff_degree(&q);
        assert_eq!((maxp, maxq), (2, 2));
        let mat = build_eliminant_matrix(&p, &q).unwrap();
        let delta = eliminant_determinant(&mat);
        let md = theorem_metadata(&p, &q, &delta).unwrap();
        assert_eq!(md.s_bound, 2 * 2 + 2 * 2);
        assert_eq!(md.t_bound, 2 + 2);

        // constant coefficients on one side: m = n = 2, max deg p_j = 0,
        // max deg q_j = 1 gives s = 2, t = 1 (degree bookkeeping only)
        let p2 = a_pow(&mode, 2);
        let q2 = HqElement::monomial(&mode, 1, 2, mode.one()).add(&a_pow(&mode, 2));
        let md2 = theorem_metadata(&p2, &q2, &TriPoly::zero()).unwrap();
        assert_eq!(md2.s_bound, 2);
        assert_eq!(md2.t_bound, 1);
    }

    #[test]
    fn curve_extraction_round_trip() {
        let mode = QMode::rational_i64(2, 1);
        // Delta = (1 + M) lambda: delta_0 = lambda, delta_1 = lambda
        let delta = TriPoly::monomial(0, 1, 0, mode.one())
            .add(&TriPoly::monomial(1, 1, 0, mode.one()));
        let curves = extract_curves(&delta);
        assert_eq!(curves.len(), 2);
        let lambda_only = BiPoly::monomial(1, 0, mode.one());
        assert_eq!(curves[0], lambda_only);
        assert_eq!(curves[1], lambda_only);
        // reassembly
        let mut back = TriPoly::zero();
        for (i, c) in curves.iter().enumerate() {
            for (&(dl, du), s) in c.terms() {
                back.add_term(i as u32, dl, du, s.clone());
            }
        }
        assert_eq!(back, delta);
    }

    #[test]
    fn golden_annihilation() {
        // delta_0(P, Q) = Q^2 - P^3 = 0 for P = A^2, Q = A^3
        let mode = QMode::rational_i64(2, 1);
        let p = a_pow(&mode, 2);
        let q = a_pow(&mode, 3);
        let report = eliminant_report(&p, &q).unwrap();
        assert_eq!(report.annihilation, vec![true]);
        assert_eq!(report.curves.len(), 1);
    }

    #[test]
    fn function_pair_pipeline() {
        // P = f(C), Q = g(C) with C = BA, f = x^2 + x, g = x^3 at q = 2
        let mode = QMode::rational_i64(2, 1);
        let c = HqElement::monomial(&mode, 1, 1, mode.one());
        let p = c.pow(2).add(&c);
        let q = c.pow(3);
        assert!(p.commutes_with(&q).unwrap());
        let report = eliminant_report(&p, &q).unwrap();
        assert!(!report.delta.is_zero());
        assert!(report.annihilation.iter().all(|&b| b));
    }

    #[test]
    fn non_commuting_pair_rejected() {
        let mode = QMode::rational_i64(2, 1);
        let a = HqElement::gen_a(&mode);
        let b = HqElement::gen_b(&mode);
        assert!(matches!(
            build_eliminant_matrix(&a, &b),
            Err(EliminantError::NonCommutingPair)
        ));
    }

    #[test]
    fn order_zero_rejected() {
        let mode = QMode::rational_i64(2, 1);
        let one = HqElement::one(&mode);
        let a = HqElement::gen_a(&mode);
        assert!(matches!(
            build_eliminant_matrix(&one, &a),
            Err(EliminantError::OrderZeroOperand)
        ));
    }

    #[test]
    fn torsion_mode_refused() {
        let mode = QMode::rational_i64(-1, 1);
        let a2 = HqElement::gen_a(&mode).pow(2);
        let b2 = HqElement::gen_b(&mode).pow(2);
        assert!(matches!(
            eliminant_report(&a2, &b2),
            Err(EliminantError::TorsionModeUnsupported)
        ));
    }

    #[test]
    fn bareiss_handles_zero_leading_pivot() {
        // a grid whose (0,0) entry is zero but determinant is not
        let mode = QMode::rational_i64(2, 1);
        let z = TriPoly::zero();
        let one = TriPoly::constant(mode.one());
        let two = TriPoly::constant(mode.from_int(2));
        let grid = vec![
            vec![z.clone(), one.clone()],
            vec![two.clone(), z.clone()],
        ];
        let det = determinant_bareiss_grid(&grid);
        assert_eq!(det, TriPoly::constant(mode.from_int(-2)));
        assert_eq!(determinant_cofactor_grid(&grid), det);
    }
}
