//! Extended Γ, the connection coefficients and the LG/CY maps.

use std::f64::consts::PI;

use glsm_core::coh_ring::DualNum;
use glsm_core::gamma_kit::{gamma, gamma_dual, h_constant, is_pole};
use glsm_core::state_space::{state_basis, unit_class};
use glsm_core::wall_crossing::{grading_defect, hbar_exponents};
use glsm_core::{
    chain_matrix, connection_coeffs, extract_lgcy_matrix, mellin_barnes_continued, mellin_barnes_oracle, term_match,
    Chamber, Complex64, GlsmError, Thirds, Var,
};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(20_170_301),
        ..ProptestConfig::default()
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn near_pole(z: Complex64) -> bool {
    let k = z.re.round();
    k <= 0.0 && (z - c(k)).norm() < 0.05
}

fn point() -> impl Strategy<Value = Complex64> {
    (-4.5f64..6.0, -3.0f64..3.0)
        .prop_map(|(x, y)| Complex64::new(x, y))
        .prop_filter("pole", |z| !near_pole(*z))
}

fn chain() -> Vec<Chamber> {
    ["++++", "++-+", "+--+", "---+"]
        .iter()
        .map(|s| Chamber::parse(s).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn dual_functional_equation(s in point(), b in (-1.0f64..1.0, -1.0f64..1.0)) {
        let b = Complex64::new(b.0, b.1);
        let lhs = gamma_dual(s + 1.0, b).unwrap();
        let rhs = DualNum::new(s, b) * gamma_dual(s, b).unwrap();
        prop_assert!((lhs.a - rhs.a).norm() <= 1e-12 * lhs.a.norm());
        prop_assert!((lhs.b - rhs.b).norm() <= 1e-12 * (lhs.a.norm() * b.norm() + lhs.b.norm()));
    }

    #[test]
    fn dual_part_is_the_derivative(s in point()) {
        let h = 1e-5;
        let d = gamma_dual(s, c(1.0)).unwrap().b;
        let fd = (gamma(s + h) - gamma(s - h)) / (2.0 * h);
        prop_assert!((d - fd).norm() <= 1e-6 * fd.norm());
    }

    #[test]
    fn reflection_identity(alpha in point(), k in 0i32..=5) {
        let k = f64::from(k);
        let args = [alpha + 1.0, alpha - k, -alpha, c(1.0 + k) - alpha];
        prop_assume!(!args.iter().any(|&z| is_pole(z) || near_pole(z)));
        let lhs = gamma(alpha + 1.0) / gamma(alpha - k);
        let sign = if (k as i32 + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = gamma(c(1.0 + k) - alpha) / gamma(-alpha) * sign;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm());
    }

    #[test]
    fn connection_coeffs_see_only_fractional_parts(f in 1i64..=2, g in 0i64..=2, shift in -4i64..=4) {
        prop_assume!(f != g);
        let a = connection_coeffs(Thirds(f), Thirds(g)).unwrap();
        let b = connection_coeffs(Thirds(f + 3 * shift), Thirds(g + 3 * shift.abs())).unwrap();
        prop_assert_eq!(a, b);
    }
}

/// `1/(e^{2πi(β-ξ)} - 1)` to first order in `ξ`, against a Richardson
/// finite difference.
#[test]
fn dual_expansion_of_the_exponential_denominator() {
    let f = |x: f64| (Complex64::new(0.0, 2.0 * PI * x).exp() - 1.0).inv();
    for beta in [1.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0, -5.0 / 3.0] {
        let e = Complex64::new(0.0, 2.0 * PI * beta).exp();
        let first = Complex64::new(0.0, 2.0 * PI) * e / ((e - 1.0) * (e - 1.0));
        let d = |h: f64| (f(beta + h) - f(beta - h)) / (2.0 * h);
        let h = 1e-3;
        let rich = (d(h / 2.0) * 4.0 - d(h)) / 3.0;
        // coefficient of ξ in f(β - ξ) is -f'(β)
        assert!((first + rich).norm() <= 1e-8 * first.norm(), "{beta}");
        // c1/c0 = 2πi e/(e - 1) + 𝔥 for the matching coefficients
        for g in 0..3 {
            let ft = Thirds((3.0 * beta).round() as i64);
            if Thirds(ft.frac3()) == Thirds(g) {
                continue;
            }
            let cc = connection_coeffs(ft, Thirds(g)).unwrap();
            let expect = first * (e - 1.0) + h_constant(Thirds(g));
            assert!((cc.c1 / cc.c0 - expect).norm() <= 1e-12 * expect.norm(), "{beta} {g}");
        }
    }
}

#[test]
fn vanishing_terms() {
    assert!(matches!(
        connection_coeffs(Thirds(0), Thirds(1)),
        Err(GlsmError::VanishingTerm)
    ));
    assert!(matches!(
        connection_coeffs(Thirds(-2), Thirds(1)),
        Err(GlsmError::VanishingTerm)
    ));
}

#[test]
fn term_match_along_the_chain() {
    let chain = chain();
    for (i, v) in [Var::Z, Var::Y, Var::X].into_iter().enumerate() {
        for hbar in [c(1.0), Complex64::new(2.0, 1.0)] {
            let r = term_match(&chain[i], v, 2, hbar).unwrap();
            assert!(r.max_rel_err < 1e-9, "{} {hbar}: {}", chain[i], r.max_rel_err);
            assert_eq!(r.excluded_nonzero, 0);
            assert_eq!(r.continued_terms + r.excluded_terms, r.direct_terms);
        }
    }
}

#[test]
fn lgcy_maps_are_graded_and_invertible() {
    let chain = chain();
    for w in chain.windows(2) {
        let a = extract_lgcy_matrix(&w[0], &w[1], 2, c(1.0)).unwrap();
        let b = extract_lgcy_matrix(&w[0], &w[1], 2, Complex64::new(2.0, 1.0)).unwrap();
        assert!(a.is_invertible() && b.is_invertible());
        assert!(grading_defect(&a, &b) < 1e-12);
        let back = extract_lgcy_matrix(&w[1], &w[0], 2, c(1.0)).unwrap();
        let id = &back.matrix * &a.matrix;
        for i in 0..10 {
            for j in 0..10 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - e).norm() < 1e-10);
            }
        }
        // the unit lands in degrees 0 and 2 only
        let img = a.apply(&unit_class(&w[0])).unwrap();
        let degrees = state_basis(&w[1]).degrees();
        for (j, z) in img.coeffs.iter().enumerate() {
            if z.norm() > 1e-12 {
                assert!(degrees[j] <= 2, "{} {j}", w[0]);
            }
        }
    }
    let total = chain_matrix(&chain, 2, c(1.0)).unwrap();
    let total2 = chain_matrix(&chain, 2, Complex64::new(0.5, -1.5)).unwrap();
    assert!(total.is_invertible());
    assert!(grading_defect(&total, &total2) < 1e-10);
    assert_eq!(hbar_exponents(&chain[0], &chain[0])[(0, 0)], 0);
}

#[test]
fn identity_and_non_adjacent_pairs() {
    let t = Chamber::parse("++-+").unwrap();
    let m = extract_lgcy_matrix(&t, &t, 2, c(1.0)).unwrap();
    assert_eq!(m.matrix, nalgebra::DMatrix::identity(10, 10));
    let far = Chamber::parse("---+").unwrap();
    assert!(matches!(
        extract_lgcy_matrix(&t, &far, 2, c(1.0)),
        Err(GlsmError::NotAdjacent(..))
    ));
}

#[test]
fn mellin_barnes_regions() {
    for (q, a) in [(Complex64::new(0.02, 0.01), 0), (Complex64::new(0.001, -0.02), 2)] {
        assert!(mellin_barnes_oracle(q, Thirds(a), 40, 1e-12).unwrap().discrepancy() < 1e-9);
    }
    for (q, a) in [(c(5.0), 0), (c(1.0), 1), (c(10.0), 2)] {
        assert!(mellin_barnes_continued(q, Thirds(a), 40, 1e-12).unwrap().discrepancy() < 1e-6);
        assert!(matches!(
            mellin_barnes_oracle(q, Thirds(a), 40, 1e-12),
            Err(GlsmError::OutOfRegion(_))
        ));
    }
    assert!(matches!(
        mellin_barnes_oracle(c(30.0), Thirds(0), 40, 1e-12),
        Err(GlsmError::OutOfRegion(_))
    ));
}
