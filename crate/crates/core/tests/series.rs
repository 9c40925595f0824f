//! Degree lattice, I-function coefficients and series.

use glsm_core::i_series::givental_sign;
use glsm_core::orbi_bundle::{hbar_weight, i_coefficient};
use glsm_core::{
    beta_theta, build_givental, build_i_series, enumerate_ifunction_degrees, extremal_degree, passes_effectiveness,
    reduce_to_state, series_from_json, series_to_json, BigRational, Chamber, Coord, Degree, Monomial, Thirds, Var,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(20_170_301),
        ..ProptestConfig::default()
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn chamber() -> impl Strategy<Value = Chamber> {
    (0usize..8).prop_map(|i| Chamber::all_supported()[i])
}

fn hbar() -> impl Strategy<Value = BigRational> {
    (1i64..=7, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| if neg { -q(n, d) } else { q(n, d) })
}

/// `Σ_ρ` over the coordinate rows of `(ρ_weights · (β, -1))`, written out
/// without the library's pairing.
fn pairing(rho: Coord, beta: &Degree) -> BigRational {
    let w = rho.weights();
    let mut s = q(-w[4], 1);
    for i in 0..4 {
        s += q(w[i] * beta.0[i].0, 3);
    }
    s
}

/// Scalar part of the coefficient from the Euler products, looping directly.
fn scalar_oracle(beta: &Degree, theta: &Chamber, h: &BigRational) -> BigRational {
    for v in Var::ALL {
        let (bv, ba) = (beta.get(v), beta.a());
        if theta.is_superscript(v) && bv >= Thirds::ZERO && bv < ba && (bv - ba).is_integer() {
            return BigRational::zero();
        }
    }
    let mut out = BigRational::one();
    for rho in Coord::ALL {
        let b = pairing(rho, beta);
        // D_ρ vanishes at H = 0, leaving only the ℏ shifts
        if b >= BigRational::zero() {
            let mut nu = BigRational::zero();
            while nu < b {
                out /= (&b - &nu) * h;
                nu += BigRational::one();
            }
        } else if b < q(-1, 1) {
            let mut nu = b.floor() + BigRational::one();
            while nu <= q(-1, 1) {
                out *= (&b - &nu) * h;
                nu += BigRational::one();
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn scalar_specialisation(theta in chamber(), h in hbar(), k in 0usize..1000) {
        let degrees = enumerate_ifunction_degrees(&theta, 3);
        let beta = degrees[k % degrees.len()];
        let c = i_coefficient(&beta, &theta, &h).unwrap();
        let (_, p) = c.parts().next().unwrap();
        prop_assert_eq!(p.scalar().clone(), scalar_oracle(&beta, &theta, &h));
    }

    #[test]
    fn hbar_homogeneity(theta in chamber(), h in hbar(), lambda in hbar(), k in 0usize..1000) {
        let degrees = enumerate_ifunction_degrees(&theta, 3);
        let beta = degrees[k % degrees.len()];
        let scaled = i_coefficient(&beta, &theta, &(&h * &lambda)).unwrap();
        let base = i_coefficient(&beta, &theta, &h).unwrap();
        let w = hbar_weight(&beta, &theta);
        let factor = lambda.pow(-w as i32);
        let (s1, p1) = scaled.parts().next().unwrap();
        let (s2, p2) = base.parts().next().unwrap();
        prop_assert_eq!(s1, s2);
        prop_assert_eq!(p1.clone(), p2.rescale_generators(&lambda.recip()).scale(&factor));
    }

    #[test]
    fn json_round_trip(theta in chamber(), h in hbar(), cutoff in 0i64..=2, givental in any::<bool>()) {
        let s = if givental { build_givental(&theta, &h, cutoff) } else { build_i_series(&theta, &h, cutoff) }.unwrap();
        let text = serde_json::to_string(&series_to_json(&s)).unwrap();
        let back = series_from_json::<BigRational>(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn extremal_additivity(theta in chamber(), m1 in 0i64..=6, m2 in 0i64..=6) {
        let lhs = extremal_degree(&theta, m1).add(&extremal_degree(&theta, m2));
        prop_assert_eq!(lhs, extremal_degree(&theta, m1 + m2 - 2));
    }
}

/// Brute-force scan of a box in the (1/3)Z lattice.
fn brute_force(theta: &Chamber, cutoff: i64) -> Vec<Degree> {
    let r = 3 * cutoff + 6;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                for a in 0..=r {
                    let beta = Degree([Thirds(x), Thirds(y), Thirds(z), Thirds(a)]);
                    let lattice_ok = Var::ALL.iter().all(|&v| {
                        let b = beta.get(v);
                        if theta.is_superscript(v) {
                            b.is_integer() && b >= Thirds::ZERO
                        } else {
                            !b.is_integer() && b < Thirds::ZERO
                        }
                    });
                    if lattice_ok && beta_theta(&beta, 1, theta) <= cutoff {
                        out.push(beta);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for theta in Chamber::all_supported() {
        for cutoff in 0..=2 {
            let mut got = enumerate_ifunction_degrees(&theta, cutoff);
            let n = got.len();
            got.sort();
            got.dedup();
            assert_eq!(got.len(), n, "duplicates for {theta}");
            let mut want = brute_force(&theta, cutoff);
            want.sort();
            assert_eq!(got, want, "{theta} cutoff {cutoff}");
            for beta in &got {
                assert!(passes_effectiveness(beta, 1, &theta), "{theta} {beta}");
                let bt = beta_theta(beta, 1, &theta);
                assert!(bt >= 0);
                assert_eq!(bt == 0, *beta == extremal_degree(&theta, 1), "{theta} {beta}");
            }
        }
    }
}

#[test]
fn givental_leading_sign_and_term_counts() {
    for theta in Chamber::theta_set() {
        let g = build_givental(&theta, &q(1, 1), 3).unwrap();
        let p = build_i_series(&theta, &q(1, 1), 3).unwrap();
        assert_eq!(g.len(), enumerate_ifunction_degrees(&theta, 3).len());
        assert_eq!(p.len(), g.len());
        let b0 = extremal_degree(&theta, 1);
        let lead = g.term_for_degree(&b0).unwrap();
        let sign = q(givental_sign(&b0), 1);
        let unit = glsm_core::state_space::unit_class::<BigRational>(&theta).scale(&sign);
        assert_eq!(reduce_to_state(&lead.constant_part(), &theta).unwrap(), unit, "{theta}");
        for (beta, lp) in g.ordered_terms() {
            // L = 0 and sign removed gives the plain coefficient
            let plain = p.terms.get(&p.exponent_of(&beta)).unwrap().constant_part();
            assert_eq!(lp.constant_part().scale(&q(givental_sign(&beta), 1)), plain);
            for c in lp.terms.values() {
                reduce_to_state(c, &theta).unwrap();
            }
        }
    }
}

#[test]
fn a_factor_makes_h_cube() {
    let theta = Chamber::parse("++++").unwrap();
    let c = i_coefficient(&Degree::thirds(0, 0, 0, 3), &theta, &q(1, 1)).unwrap();
    let (_, p) = c.parts().next().unwrap();
    for m in Monomial::all() {
        assert_eq!(p.coeff(m).is_zero(), m != Monomial::from_vars(&Var::ALL), "{m:?}");
    }
}
