//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its timing. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.

use qheis::algebra::{eval_bipoly, rewrite_oracle_product, HqElement, PowerCache};
use qheis::annihilator::{
    search_central_annihilator, search_scalar_annihilator, SearchConfig, SearchError,
};
use qheis::eliminant::{
    build_eliminant_matrix, determinant_bareiss, determinant_cofactor, eliminant_report,
};
use qheis::laurent::{apply_dq, apply_element, apply_m, homomorphism_check, joint_eigen_check, LaurentVector};
use qheis::parse::{parse_bipoly, parse_element};
use qheis::poly::UniPoly;
use qheis::scalar::{q_integer, QMode, Scalar};
use qheis::selftest::{check_eli32_shape, run_selftest};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn pass(criterion: u32, what: &str, t0: Instant) {
    println!(
        "acceptance criterion {criterion}: PASS ({what}) [{:?}]",
        t0.elapsed()
    );
}

/// The commuting-pair catalog: polynomials f(C), g(C) of degree <= 3 over
/// the four generators. Every pair commutes because both sides are
/// polynomials in the same element; that is asserted before use.
fn catalog(mode: &QMode) -> Vec<(HqElement, HqElement)> {
    let generators = ["A", "B*A", "A + B*A^2", "(B^2 + 1)*A"];
    let shapes: [(usize, &str, &str); 12] = [
        (0, "x^2", "x^3"),
        (0, "x^2 + x", "x^3"),
        (0, "x", "x^2 + 1"),
        (0, "x^3 + x", "x^2"),
        (1, "x", "x^2"),
        (1, "x^2 + x", "x^3"),
        (1, "x^3", "x^2"),
        (3, "x", "x^2"),
        (3, "x^2", "x^3"),
        (3, "x^2 + x", "x^3 + 1"),
        (2, "x", "x^2"),
        (2, "x + 1", "x^2"),
    ];
    shapes
        .iter()
        .map(|(ci, f_src, g_src)| {
            let c = parse_element(generators[*ci], mode).expect("generator parses");
            let f = parse_bipoly(f_src, mode).expect("f parses");
            let g = parse_bipoly(g_src, mode).expect("g parses");
            let mut powers =
                PowerCache::new(c.clone(), c.clone()).expect("element commutes with itself");
            let p = powers.eval(&f).expect("f(C) evaluates");
            let q = powers.eval(&g).expect("g(C) evaluates");
            assert!(
                p.commutes_with(&q).expect("same mode"),
                "catalog candidate does not commute"
            );
            (p, q)
        })
        .collect()
}

fn free_catalog_modes() -> Vec<QMode> {
    vec![
        QMode::rational_i64(2, 1),
        QMode::rational_i64(5, 3),
        QMode::Symbolic,
    ]
}

#[test]
fn criterion_1_defining_relation_and_oracle() {
    let t0 = Instant::now();
    let modes = [
        QMode::rational_i64(2, 1),
        QMode::rational_i64(1, 1),
        QMode::Symbolic,
        QMode::RootOfUnity(2),
    ];
    for mode in &modes {
        let a = HqElement::gen_a(mode);
        let b = HqElement::gen_b(mode);
        let relation = a.mul(&b).sub(&b.mul(&a).scale(&mode.q()));
        assert_eq!(relation, HqElement::one(mode), "A*B - q*B*A = I in {mode}");
        for i in 0..=5u32 {
            for j in 0..=5u32 {
                for k in 0..=5u32 {
                    for l in 0..=5u32 {
                        let x = HqElement::monomial(mode, i, j, mode.one());
                        let y = HqElement::monomial(mode, k, l, mode.one());
                        let fast = x.mul(&y);
                        let slow = rewrite_oracle_product(&x, &y).expect("same mode");
                        assert_eq!(
                            fast, slow,
                            "closed form vs rewrite oracle at B^{i}A^{j} * B^{k}A^{l} in {mode}"
                        );
                    }
                }
            }
        }
    }
    assert!(
        t0.elapsed().as_secs() < 10,
        "criterion 1 exceeded its 10 s budget: {:?}",
        t0.elapsed()
    );
    pass(1, "1296 monomial pairs x 4 modes against the rewrite oracle", t0);
}

#[test]
fn criterion_2_eliminant_golden_case() {
    let t0 = Instant::now();
    for mode in [
        QMode::rational_i64(2, 1),
        QMode::rational_i64(1, 1),
        QMode::Symbolic,
    ] {
        let p = HqElement::gen_a(&mode).pow(2);
        let q = HqElement::gen_a(&mode).pow(3);
        let report = eliminant_report(&p, &q).expect("golden pair");
        // Delta = mu^2 - lambda^3 exactly
        assert_eq!(report.delta.to_string(), "-lambda^3 + mu^2", "mode {mode}");
        assert_eq!(report.metadata.lambda_degree, 3);
        assert_eq!(report.metadata.mu_degree, 2);
        // leading coefficients -1 and +1
        assert_eq!(
            report.metadata.lambda_leading,
            UniPoly::constant(mode.from_int(-1))
        );
        assert_eq!(report.metadata.mu_leading, UniPoly::constant(mode.one()));
        assert!(report.metadata.lambda_leading_matches);
        assert!(report.metadata.mu_leading_matches);
        // delta_0(P, Q) = 0 exactly
        assert_eq!(report.annihilation, vec![true]);
    }
    assert!(
        t0.elapsed().as_millis() < 1000,
        "criterion 2 exceeded its 1 s budget: {:?}",
        t0.elapsed()
    );
    pass(2, "delta = mu^2 - lambda^3 with exact metadata", t0);
}

#[test]
fn criterion_3_theorem_suite_on_catalog() {
    let t0 = Instant::now();
    let mut combinations = 0;
    for mode in free_catalog_modes() {
        for (idx, (p, q)) in catalog(&mode).into_iter().enumerate() {
            let m = p.order().expect("nonzero");
            let n = q.order().expect("nonzero");
            let report = eliminant_report(&p, &q)
                .unwrap_or_else(|e| panic!("pair {idx} in {mode}: {e}"));
            assert!(!report.delta.is_zero(), "Delta != 0 for pair {idx} in {mode}");
            assert_eq!(
                report.metadata.lambda_degree, n,
                "lambda-degree = n for pair {idx} in {mode}"
            );
            assert_eq!(
                report.metadata.mu_degree, m,
                "mu-degree = m for pair {idx} in {mode}"
            );
            assert!(
                report.metadata.lambda_leading_matches,
                "lambda leading product for pair {idx} in {mode}"
            );
            assert!(
                report.metadata.mu_leading_matches,
                "mu leading product for pair {idx} in {mode}"
            );
            let m_degree = report.delta.degree_m().unwrap_or(0) as u64;
            assert!(
                m_degree <= report.metadata.s_bound,
                "M-degree {m_degree} <= s = {} for pair {idx} in {mode}",
                report.metadata.s_bound
            );
            assert!(
                report.annihilation.iter().all(|&b| b),
                "all delta_i(P, Q) = 0 for pair {idx} in {mode}"
            );
            // both determinant routes agree on every catalog matrix (<= 6x6)
            let mat = build_eliminant_matrix(&p, &q).expect("matrix");
            assert!(mat.size() <= 6);
            assert_eq!(
                determinant_bareiss(&mat),
                determinant_cofactor(&mat),
                "Bareiss vs cofactor for pair {idx} in {mode}"
            );
            combinations += 1;
        }
    }
    assert_eq!(combinations, 36);
    assert!(
        t0.elapsed().as_secs() < 300,
        "criterion 3 exceeded its 5 min budget: {:?}",
        t0.elapsed()
    );
    pass(3, "12 catalog pairs x 3 modes, full metadata and annihilation", t0);
}

#[test]
fn criterion_4_q_degree_bound() {
    let t0 = Instant::now();
    let mode = QMode::Symbolic;
    for (idx, (p, q)) in catalog(&mode).into_iter().enumerate() {
        let report = eliminant_report(&p, &q).expect("symbolic pair");
        let t_bound = report.metadata.t_bound;
        for (ci, curve) in report.curves.iter().enumerate() {
            for (_, c) in curve.terms() {
                match c {
                    Scalar::RationalFunction(f) => {
                        assert!(
                            f.is_polynomial(),
                            "pair {idx} curve {ci}: coefficient has denominator {}",
                            f.den()
                        );
                        let deg = f.num().degree().unwrap_or(0) as u64;
                        assert!(
                            deg <= t_bound,
                            "pair {idx} curve {ci}: q-degree {deg} > t = {t_bound}"
                        );
                    }
                    other => panic!("unexpected scalar domain: {other:?}"),
                }
            }
        }
    }
    pass(4, "curve coefficients are q-polynomials of degree <= t", t0);
}

#[test]
fn criterion_5_search_soundness_and_cross_validation() {
    let t0 = Instant::now();
    let caps = SearchConfig::with_caps(6, 6);
    for mode in free_catalog_modes() {
        for (idx, (p, q)) in catalog(&mode).into_iter().enumerate() {
            let res = search_scalar_annihilator(&p, &q, &caps)
                .unwrap_or_else(|e| panic!("search failed for pair {idx} in {mode}: {e}"));
            assert!(res.verified, "pair {idx} in {mode}: F(P, Q) != 0");
            assert!(!res.polynomial.is_zero());
            // independent re-check outside the search
            assert!(
                eval_bipoly(&res.polynomial, &p, &q)
                    .expect("commuting pair")
                    .is_zero(),
                "pair {idx} in {mode}: independent evaluation nonzero"
            );
            // the eliminant curves annihilate as well
            let report = eliminant_report(&p, &q).expect("report");
            assert!(report.annihilation.iter().all(|&b| b));
        }
    }
    pass(5, "nullspace search and eliminant curves both annihilate, 36 runs", t0);
}

#[test]
fn criterion_6_torsion_dichotomy() {
    let t0 = Instant::now();
    let mode = QMode::rational_i64(-1, 1);
    let alpha = HqElement::gen_a(&mode).pow(2);
    let beta = HqElement::gen_b(&mode).pow(2);
    assert!(alpha.is_central(), "A^2 is central at q = -1");
    assert!(beta.is_central(), "B^2 is central at q = -1");

    // scalar search finds nothing up to caps (4, 4), kernels empty throughout
    match search_scalar_annihilator(&alpha, &beta, &SearchConfig::with_caps(4, 4)) {
        Err(SearchError::DegreeCapExceeded { stages, .. }) => {
            assert!(!stages.is_empty());
            assert!(
                stages.iter().all(|(_, dim)| *dim == 0),
                "kernels must be empty at every stage"
            );
            assert_eq!(stages.last().expect("stages nonempty").0, (4, 4));
        }
        Ok(res) => panic!("scalar relation should not exist, found {}", res.polynomial),
        Err(other) => panic!("unexpected error: {other}"),
    }

    // central search returns a verified nonzero relation whose coefficients
    // are built from A^2 and B^2 monomials only
    let central = search_central_annihilator(&alpha, &beta, &SearchConfig::with_caps(2, 2), 2)
        .expect("central relation exists");
    assert!(central.verified);
    assert!(!central.relation.is_zero());
    for (_, coeff) in central.relation.terms() {
        assert!(coeff.is_central(), "coefficient {coeff} must be central");
        for (&(b_exp, a_exp), _) in coeff.terms() {
            assert_eq!(b_exp % 2, 0, "coefficient uses a non-central B-power");
            assert_eq!(a_exp % 2, 0, "coefficient uses a non-central A-power");
        }
    }
    // the central expansion vanishes, re-checked here
    assert!(central
        .relation
        .eval(&alpha, &beta)
        .expect("same mode")
        .is_zero());

    assert!(
        t0.elapsed().as_secs() < 60,
        "criterion 6 exceeded its 1 min budget: {:?}",
        t0.elapsed()
    );
    pass(6, "no scalar relation for (A^2, B^2); verified central relation", t0);
}

#[test]
fn criterion_7_representation_suite() {
    let t0 = Instant::now();
    // pinned actions
    let sym = QMode::Symbolic;
    assert_eq!(
        apply_dq(&LaurentVector::monomial(3, sym.one()), &sym),
        LaurentVector::monomial(2, q_integer(3, &sym)),
        "D_q t^3 = (1 + q + q^2) t^2"
    );
    assert_eq!(
        apply_m(&LaurentVector::monomial(-2, sym.one())),
        LaurentVector::monomial(-1, sym.one()),
        "M t^-2 = t^-1"
    );

    // 200 randomized homomorphism triples per mode, fixed seed
    let modes = [
        QMode::rational_i64(2, 1),
        QMode::rational_i64(1, 1),
        QMode::Symbolic,
        QMode::RootOfUnity(2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7115_0bad_5eed);
    for mode in &modes {
        for case in 0..200 {
            let x = random_sparse_element(&mut rng, mode);
            let y = random_sparse_element(&mut rng, mode);
            let n = rng.gen_range(-5..=5i64);
            let v = LaurentVector::monomial(n, mode.one());
            assert!(
                homomorphism_check(&x, &y, &v),
                "homomorphism failed in {mode}, case {case}: X = {x}, Y = {y}, v = t^{n}"
            );
        }
    }

    // joint eigenvector demo for (BA, (BA)^2) on t^n, n in [-5, 5]
    let m2 = QMode::rational_i64(2, 1);
    let ba = HqElement::gen_b(&m2).mul(&HqElement::gen_a(&m2));
    let q = ba.pow(2);
    for n in -5..=5i64 {
        let v = LaurentVector::monomial(n, m2.one());
        let lam = q_integer(n, &m2);
        let mu = lam.mul(&lam);
        assert_eq!(
            joint_eigen_check(&ba, &q, &lam, &mu, &v),
            Ok(true),
            "joint eigenvector at n = {n}"
        );
    }
    pass(7, "pinned actions, 800 homomorphism triples, eigenvector demo", t0);
}

fn random_sparse_element(rng: &mut ChaCha8Rng, mode: &QMode) -> HqElement {
    let mut e = HqElement::zero(mode);
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let b_exp = rng.gen_range(0..=3u32);
        let a_exp = rng.gen_range(0..=3u32);
        let c = rng.gen_range(-4..=4i64);
        if c != 0 {
            e = e.add(&HqElement::monomial(mode, b_exp, a_exp, mode.from_int(c)));
        }
    }
    if e.is_zero() {
        HqElement::one(mode)
    } else {
        e
    }
}

#[test]
fn criterion_8_classical_specialization() {
    let t0 = Instant::now();
    let mode = QMode::rational_i64(1, 1);

    // an (m, n) = (3, 2) pair with the exact 5x5 shape
    let c = parse_element("B*A + 1", &mode).expect("parses");
    let p = c.pow(3);
    let q = c.pow(2);
    assert_eq!(p.order(), Some(3));
    assert_eq!(q.order(), Some(2));
    let mat = build_eliminant_matrix(&p, &q).expect("matrix");
    assert_eq!(mat.size(), 5);
    check_eli32_shape(&mat).expect("5x5 zero pattern");

    // the pure-power pair recovers the classical curve mu^2 = lambda^3
    let report = eliminant_report(
        &HqElement::gen_a(&mode).pow(2),
        &HqElement::gen_a(&mode).pow(3),
    )
    .expect("classical pair");
    assert_eq!(report.delta.to_string(), "-lambda^3 + mu^2");
    assert_eq!(report.annihilation, vec![true]);
    pass(8, "eli32 shape at q = 1 and the classical curve", t0);
}

#[test]
fn criterion_9_selftest_determinism() {
    let t0 = Instant::now();
    let first = run_selftest();
    assert!(first.all_pass, "selftest must pass: {:#?}", first.criteria);
    let second = run_selftest();
    let a = first.to_json();
    let b = second.to_json();
    assert_eq!(a.as_bytes(), b.as_bytes(), "selftest JSON must be byte-identical");
    pass(9, "two selftest runs, byte-identical JSON", t0);
}
