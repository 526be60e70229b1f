//! Constructive search for annihilating bivariate polynomials.
//!
//! For a commuting pair (alpha, beta), the normal forms of the products
//! `alpha^i beta^j` span a finite-dimensional space of coefficient vectors
//! over the monomial basis `B^r A^s`. A nonzero kernel vector of the linear
//! map from polynomial coefficients to that space is exactly an annihilating
//! polynomial. The search sweeps degree bounds in increasing total degree
//! and returns the first hit.
//!
//! For q of free type the coefficients can be scalars; at a root of unity of
//! order d that can fail outright (A^d and B^d commute but satisfy no scalar
//! polynomial relation), and the right notion is coefficients in the center
//! `K[A^d, B^d]`, which the central search parameterizes directly.

use crate::algebra::{AlgebraError, HqElement, PowerCache};
use crate::poly::BiPoly;
use crate::scalar::{Scalar, ScalarError};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SearchError {
    #[error("the pair does not commute")]
    NonCommutingPair,
    #[error("no relation found within degree caps ({max_x}, {max_y}); kernel was empty at every stage")]
    DegreeCapExceeded {
        max_x: u32,
        max_y: u32,
        /// Kernel dimension observed at each schedule stage, all zero.
        stages: Vec<((u32, u32), usize)>,
    },
    #[error("central-coefficient search requires q of torsion type")]
    NotTorsionMode,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Degree caps and sweep schedule for the search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_degree_x: u32,
    pub max_degree_y: u32,
    /// Explicit (d_x, d_y) stages; `None` selects the default sweep over
    /// rectangles ordered by total degree.
    pub schedule: Option<Vec<(u32, u32)>>,
}

impl SearchConfig {
    pub fn with_caps(max_degree_x: u32, max_degree_y: u32) -> Self {
        SearchConfig {
            max_degree_x,
            max_degree_y,
            schedule: None,
        }
    }

    /// Stages in increasing total degree; within a level, larger x-degree
    /// first. Ends exactly at (max_x, max_y).
    pub fn stages(&self) -> Vec<(u32, u32)> {
        if let Some(s) = &self.schedule {
            return s.clone();
        }
        let mut out = Vec::new();
        for total in 1..=(self.max_degree_x + self.max_degree_y) {
            for dx in (0..=total.min(self.max_degree_x)).rev() {
                let dy = total - dx;
                if dy <= self.max_degree_y {
                    out.push((dx, dy));
                }
            }
        }
        out
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::with_caps(6, 6)
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot_row) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot_row);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for j in c..cols {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..cols {
                let delta = f.mul(&rows[r][j]);
                rows[i][j] = rows[i][j].sub(&delta);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Exact kernel basis of a rectangular scalar matrix.
///
/// Gaussian elimination to reduced echelon form, then one basis vector per
/// free column, in ascending column order. Rejects matrices that mix scalar
/// domains.
pub fn kernel_exact(matrix: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, ScalarError> {
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    let mut domain = None;
    for row in matrix {
        if row.len() != cols {
            // ragged input is a caller bug, not a math condition
            panic!("kernel_exact: ragged matrix");
        }
        for e in row {
            match domain {
                None => domain = Some(e.domain()),
                Some(d) if d == e.domain() => {}
                Some(_) => return Err(ScalarError::MixedDomains),
            }
        }
    }
    let Some(domain) = domain else {
        return Ok(Vec::new());
    };

    let mut rows: Vec<Vec<Scalar>> = matrix
        .iter()
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .cloned()
        .collect();
    let pivots = rref(&mut rows, cols);

    let zero = Scalar::zero(domain);
    let one = Scalar::one(domain);
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().copied().peekable();
    let mut free_cols = Vec::new();
    for c in 0..cols {
        if pivot_iter.peek() == Some(&c) {
            pivot_iter.next();
        } else {
            free_cols.push(c);
        }
    }
    for &f in &free_cols {
        let mut v = vec![zero.clone(); cols];
        v[f] = one.clone();
        for (row_idx, &p) in pivots.iter().enumerate() {
            v[p] = rows[row_idx][f].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Outcome of a successful scalar-coefficient search.
#[derive(Debug, Clone)]
pub struct ScalarSearchResult {
    /// The annihilating polynomial, scaled so its leading graded-lex
    /// coefficient is 1.
    pub polynomial: BiPoly,
    /// First schedule stage with a nonzero kernel.
    pub bounds: (u32, u32),
    /// Kernel dimension at that stage.
    pub kernel_dimension: usize,
    /// Independent re-check: the normal form of F(alpha, beta) is zero.
    pub verified: bool,
}

/// Searches for a scalar-coefficient annihilating polynomial of a commuting
/// pair. Guaranteed to succeed for q of free type once the caps are large
/// enough; a cap hit is reported as an error, not a refutation.
pub fn search_scalar_annihilator(
    alpha: &HqElement,
    beta: &HqElement,
    cfg: &SearchConfig,
) -> Result<ScalarSearchResult, SearchError> {
    let mut powers = PowerCache::new(alpha.clone(), beta.clone()).map_err(|e| match e {
        AlgebraError::NonCommutingSubstitution => SearchError::NonCommutingPair,
        other => SearchError::Algebra(other),
    })?;
    let mode = alpha.mode().clone();
    let mut stages = Vec::new();

    for (dx, dy) in cfg.stages() {
        // columns: one per coefficient unknown, ascending graded-lex
        let unknowns = monomials_graded_asc(dx, dy);
        let products: Vec<HqElement> = unknowns
            .iter()
            .map(|&(i, j)| powers.monomial_value(i, j))
            .collect();
        let matrix = flatten_to_rows(&products);
        let kernel = kernel_exact(&matrix)?;
        if kernel.is_empty() {
            stages.push(((dx, dy), 0));
            continue;
        }
        let vec = &kernel[0];
        let mut poly = BiPoly::zero();
        for (col, &(i, j)) in unknowns.iter().enumerate() {
            poly.add_term(i, j, vec[col].clone());
        }
        let poly = poly.normalized_monic();
        let check = powers.eval(&poly)?;
        return Ok(ScalarSearchResult {
            polynomial: poly,
            bounds: (dx, dy),
            kernel_dimension: kernel.len(),
            verified: check.is_zero(),
        });
    }
    Err(SearchError::DegreeCapExceeded {
        max_x: cfg.max_degree_x,
        max_y: cfg.max_degree_y,
        stages,
    })
}

/// Bivariate polynomial whose coefficients are central elements of the
/// algebra, kept as normal forms.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralBiPoly {
    terms: BTreeMap<(u32, u32), HqElement>,
}

impl CentralBiPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &HqElement)> {
        self.terms.iter()
    }

    /// `sum c_ij alpha^i beta^j`, central coefficients multiplied from the
    /// left (placement is immaterial: they commute with everything).
    pub fn eval(&self, alpha: &HqElement, beta: &HqElement) -> Result<HqElement, AlgebraError> {
        let mut powers = PowerCache::new(alpha.clone(), beta.clone())?;
        let mode = alpha.mode().clone();
        let mut acc = HqElement::zero(&mode);
        for (&(i, j), c) in &self.terms {
            let f = BiPoly::monomial(i, j, mode.one());
            let prod = c.checked_mul(&powers.eval(&f)?)?;
            acc = acc.checked_add(&prod)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CentralBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| {
            let ka = (b.0 as u64 + b.1 as u64, b.0, b.1);
            let kb = (a.0 as u64 + a.1 as u64, a.0, a.1);
            ka.cmp(&kb)
        });
        let mut first = true;
        for k in keys {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", self.terms[&k])?;
            if k.0 > 0 {
                write!(f, "*x")?;
                if k.0 > 1 {
                    write!(f, "^{}", k.0)?;
                }
            }
            if k.1 > 0 {
                write!(f, "*y")?;
                if k.1 > 1 {
                    write!(f, "^{}", k.1)?;
                }
            }
        }
        Ok(())
    }
}

/// Outcome of a successful central-coefficient search.
#[derive(Debug, Clone)]
pub struct CentralSearchResult {
    pub relation: CentralBiPoly,
    pub bounds: (u32, u32),
    pub kernel_dimension: usize,
    /// All coefficients pass `is_central` and the expansion is zero.
    pub verified: bool,
}

/// Searches for an annihilating polynomial with coefficients in the center
/// `K[A^d, B^d]`, for q of torsion type with order d.
///
/// Unknown coefficients are parameterized as scalar combinations of the
/// central monomials `(A^d)^r (B^d)^s` with r, s bounded by
/// `central_degree_cap`.
pub fn search_central_annihilator(
    alpha: &HqElement,
    beta: &HqElement,
    cfg: &SearchConfig,
    central_degree_cap: u32,
) -> Result<CentralSearchResult, SearchError> {
    let mode = alpha.mode().clone();
    let Some(d) = mode.torsion_order() else {
        return Err(SearchError::NotTorsionMode);
    };
    let mut powers = PowerCache::new(alpha.clone(), beta.clone()).map_err(|e| match e {
        AlgebraError::NonCommutingSubstitution => SearchError::NonCommutingPair,
        other => SearchError::Algebra(other),
    })?;

    // central monomials (A^d)^r (B^d)^s in ascending graded-lex over (r, s)
    let central_monomials: Vec<((u32, u32), HqElement)> =
        monomials_graded_asc(central_degree_cap, central_degree_cap)
            .into_iter()
            .map(|(r, s)| {
                let a_part = HqElement::gen_a(&mode).pow(d * r);
                let b_part = HqElement::gen_b(&mode).pow(d * s);
                ((r, s), a_part.mul(&b_part))
            })
            .collect();

    let mut stages = Vec::new();
    for (dx, dy) in cfg.stages() {
        let xy_monomials = monomials_graded_asc(dx, dy);
        // one unknown per (xy monomial, central monomial) pair
        let mut columns: Vec<HqElement> = Vec::new();
        let mut labels: Vec<((u32, u32), usize)> = Vec::new();
        for &(i, j) in &xy_monomials {
            let base = powers.monomial_value(i, j);
            for (cm_idx, (_, cm)) in central_monomials.iter().enumerate() {
                columns.push(cm.mul(&base));
                labels.push(((i, j), cm_idx));
            }
        }
        let matrix = flatten_to_rows(&columns);
        let kernel = kernel_exact(&matrix)?;
        if kernel.is_empty() {
            stages.push(((dx, dy), 0));
            continue;
        }
        let vec = &kernel[0];
        let mut terms: BTreeMap<(u32, u32), HqElement> = BTreeMap::new();
        for (col, &((i, j), cm_idx)) in labels.iter().enumerate() {
            if vec[col].is_zero() {
                continue;
            }
            let contribution = central_monomials[cm_idx].1.scale(&vec[col]);
            let entry = terms
                .entry((i, j))
                .or_insert_with(|| HqElement::zero(&mode));
            *entry = entry.add(&contribution);
        }
        terms.retain(|_, c| !c.is_zero());
        let relation = CentralBiPoly { terms };
        let centrality_ok = relation.terms.values().all(|c| c.is_central());
        let expansion_zero = relation
            .eval(alpha, beta)
            .map(|e| e.is_zero())
            .unwrap_or(false);
        return Ok(CentralSearchResult {
            verified: centrality_ok && expansion_zero && !relation.is_zero(),
            relation,
            bounds: (dx, dy),
            kernel_dimension: kernel.len(),
        });
    }
    Err(SearchError::DegreeCapExceeded {
        max_x: cfg.max_degree_x,
        max_y: cfg.max_degree_y,
        stages,
    })
}

/// All (i, j) with i <= dx, j <= dy, ascending total degree, larger
/// x-degree first within a level.
fn monomials_graded_asc(dx: u32, dy: u32) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..=dx)
        .flat_map(|i| (0..=dy).map(move |j| (i, j)))
        .collect();
    v.sort_by_key(|&(i, j)| (i as u64 + j as u64, std::cmp::Reverse(i)));
    v
}

/// Rows indexed by the union of basis monomials `B^r A^s` across the given
/// elements; one column per element.
fn flatten_to_rows(elements: &[HqElement]) -> Vec<Vec<Scalar>> {
    let mut basis: Vec<(u32, u32)> = elements
        .iter()
        .flat_map(|e| e.terms().map(|(&k, _)| k))
        .collect();
    basis.sort();
    basis.dedup();
    basis
        .iter()
        .map(|&(r, s)| elements.iter().map(|e| e.coeff(r, s)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::eval_bipoly;
    use crate::scalar::QMode;
    use num_rational::BigRational;

    fn rat_mode() -> QMode {
        QMode::rational_i64(2, 1)
    }

    #[test]
    fn kernel_identity_is_trivial() {
        let m = rat_mode();
        let id: Vec<Vec<Scalar>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { m.one() } else { m.zero() })
                    .collect()
            })
            .collect();
        assert!(kernel_exact(&id).unwrap().is_empty());
    }

    #[test]
    fn kernel_single_row() {
        let m = rat_mode();
        let mat = vec![vec![m.one(), m.one()]];
        let basis = kernel_exact(&mat).unwrap();
        assert_eq!(basis, vec![vec![m.from_int(-1), m.one()]]);
    }

    #[test]
    fn kernel_residual_check() {
        // fixed 4x6 matrix of full row rank: kernel dimension 2, and the
        // product A v must vanish for every basis vector
        let m = rat_mode();
        let entries: [[i64; 6]; 4] = [
            [1, 2, 0, -1, 3, 5],
            [0, 1, 4, 2, -2, 1],
            [3, 0, 1, 1, 0, -1],
            [2, -1, 0, 0, 1, 2],
        ];
        let mat: Vec<Vec<Scalar>> = entries
            .iter()
            .map(|row| row.iter().map(|&e| m.from_int(e)).collect())
            .collect();
        let basis = kernel_exact(&mat).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &mat {
                let mut acc = m.zero();
                for (a, b) in row.iter().zip(v) {
                    acc = acc.add(&a.mul(b));
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn kernel_mixed_domains_rejected() {
        let m = rat_mode();
        let mat = vec![vec![m.one(), QMode::Symbolic.one()]];
        assert_eq!(kernel_exact(&mat), Err(ScalarError::MixedDomains));
    }

    #[test]
    fn default_schedule_shape() {
        let cfg = SearchConfig::with_caps(2, 2);
        assert_eq!(
            cfg.stages(),
            vec![(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2), (2, 2)]
        );
    }

    #[test]
    fn scalar_constant_found_at_one_zero() {
        // alpha = cI is annihilated by x - c at bounds (1, 0)
        let m = rat_mode();
        let c = BigRational::new(7.into(), 2.into());
        let alpha = HqElement::from_scalar(&m, m.from_rational(&c));
        let beta = HqElement::gen_a(&m);
        let res =
            search_scalar_annihilator(&alpha, &beta, &SearchConfig::with_caps(4, 4)).unwrap();
        assert_eq!(res.bounds, (1, 0));
        assert!(res.verified);
        let mut expected = BiPoly::monomial(1, 0, m.one());
        expected.add_term(0, 0, m.from_rational(&c).neg());
        assert_eq!(res.polynomial, expected);
    }

    #[test]
    fn scalar_search_quadratic_relation() {
        // alpha = A, beta = A^2 + I: F = x^2 - y + 1 at bounds (2, 1)
        let m = rat_mode();
        let alpha = HqElement::gen_a(&m);
        let beta = alpha.pow(2).add(&HqElement::one(&m));
        let res =
            search_scalar_annihilator(&alpha, &beta, &SearchConfig::with_caps(4, 4)).unwrap();
        assert_eq!(res.bounds, (2, 1));
        assert!(res.verified);
        let mut expected = BiPoly::monomial(2, 0, m.one());
        expected.add_term(0, 1, m.from_int(-1));
        expected.add_term(0, 0, m.one());
        assert_eq!(res.polynomial, expected);
        assert!(eval_bipoly(&res.polynomial, &alpha, &beta).unwrap().is_zero());
    }

    #[test]
    fn torsion_scalar_search_fails_with_empty_kernels() {
        // q = -1: A^2 and B^2 commute but admit no scalar relation
        let m = QMode::rational_i64(-1, 1);
        let alpha = HqElement::gen_a(&m).pow(2);
        let beta = HqElement::gen_b(&m).pow(2);
        let err = search_scalar_annihilator(&alpha, &beta, &SearchConfig::with_caps(4, 4))
            .unwrap_err();
        match err {
            SearchError::DegreeCapExceeded { stages, .. } => {
                assert!(!stages.is_empty());
                assert!(stages.iter().all(|(_, dim)| *dim == 0));
                // every stage up to the caps was tried
                assert_eq!(stages.last().unwrap().0, (4, 4));
            }
            other => panic!("expected DegreeCapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn non_commuting_pair_rejected() {
        let m = rat_mode();
        let err = search_scalar_annihilator(
            &HqElement::gen_a(&m),
            &HqElement::gen_b(&m),
            &SearchConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, SearchError::NonCommutingPair));
    }

    #[test]
    fn central_search_at_minus_one() {
        // q = -1, alpha = A^2, beta = B^2: some verified nonzero central
        // relation exists (B^2 x - A^2 y is one hand witness)
        let m = QMode::rational_i64(-1, 1);
        let alpha = HqElement::gen_a(&m).pow(2);
        let beta = HqElement::gen_b(&m).pow(2);
        let res =
            search_central_annihilator(&alpha, &beta, &SearchConfig::with_caps(2, 2), 2).unwrap();
        assert!(res.verified);
        assert!(!res.relation.is_zero());
        // the hand witness also annihilates
        let witness = CentralBiPoly {
            terms: [
                ((1, 0), HqElement::gen_b(&m).pow(2)),
                ((0, 1), HqElement::gen_a(&m).pow(2).neg()),
            ]
            .into_iter()
            .collect(),
        };
        assert!(witness.eval(&alpha, &beta).unwrap().is_zero());
    }

    #[test]
    fn central_search_scalar_constant() {
        let m = QMode::rational_i64(-1, 1);
        let alpha = HqElement::from_scalar(&m, m.from_int(3));
        let beta = HqElement::gen_a(&m).pow(2);
        let res =
            search_central_annihilator(&alpha, &beta, &SearchConfig::with_caps(2, 2), 2).unwrap();
        assert!(res.verified);
        assert_eq!(res.bounds, (1, 0));
    }

    #[test]
    fn central_search_square_relation() {
        // alpha = A^2, beta = A^4: a verified relation exists; x^2 - y is a
        // scalar-coefficient witness
        let m = QMode::rational_i64(-1, 1);
        let alpha = HqElement::gen_a(&m).pow(2);
        let beta = HqElement::gen_a(&m).pow(4);
        let res =
            search_central_annihilator(&alpha, &beta, &SearchConfig::with_caps(2, 2), 2).unwrap();
        assert!(res.verified);
        let witness = BiPoly::monomial(2, 0, m.one()).add(&BiPoly::monomial(0, 1, m.from_int(-1)));
        assert!(eval_bipoly(&witness, &alpha, &beta).unwrap().is_zero());
    }

    #[test]
    fn central_search_requires_torsion() {
        let m = rat_mode();
        let a = HqElement::gen_a(&m);
        let err = search_central_annihilator(&a, &a, &SearchConfig::default(), 2).unwrap_err();
        assert!(matches!(err, SearchError::NotTorsionMode));
    }
}
