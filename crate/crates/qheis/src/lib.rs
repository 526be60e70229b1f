//! Exact symbolic computation in the q-deformed Heisenberg algebra.
//!
//! The algebra `H_q` is generated by `A` and `B` subject to `AB - qBA = I`.
//! This crate computes normal forms over the basis `B^i A^j`, tests
//! commutativity, builds the Burchnall-Chaundy eliminant determinant whose
//! coefficient curves annihilate a commuting pair, and independently finds
//! annihilating bivariate polynomials by exact nullspace search. The scalar
//! field is exact in all three supported shapes of q: a nonzero rational, a
//! symbolic indeterminate, or a primitive root of unity.
//!
//! A truncated model of the representation on formal Laurent series (`B`
//! acting as multiplication by t, `A` as the Jackson q-derivative) is
//! included for cross-validation and eigenvector demonstrations.

pub mod algebra;
pub mod annihilator;
pub mod eliminant;
pub mod json;
pub mod laurent;
pub mod parse;
pub mod cli;
pub mod poly;
pub mod scalar;
pub mod selftest;

pub use algebra::{eval_bipoly, rewrite_oracle_product, AlgebraError, HqElement};
pub use annihilator::{kernel_exact, search_central_annihilator, search_scalar_annihilator, CentralBiPoly, SearchConfig, SearchError};
pub use eliminant::{eliminant_report, EliminantError, EliminantReport};
pub use laurent::{apply_dq, apply_element, apply_m, homomorphism_check, joint_eigen_check, ActionReport, LaurentError, LaurentVector};
pub use parse::{parse_bipoly, parse_element, parse_laurent, ParseError, ParseErrorKind};
pub use poly::{BiPoly, TriPoly, UniPoly};
pub use scalar::{QMode, Scalar, ScalarDomain, ScalarError};
