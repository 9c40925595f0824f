//! Chamber combinatorics against a GIT cone-membership oracle.

use glsm_core::model::UnstableComponent;
use glsm_core::{is_semistable, toric_divisor, unstable_components, Chamber, Complex64, Coord, Var};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const PERMS: [[Var; 3]; 6] = [
    [Var::X, Var::Y, Var::Z],
    [Var::X, Var::Z, Var::Y],
    [Var::Y, Var::X, Var::Z],
    [Var::Y, Var::Z, Var::X],
    [Var::Z, Var::X, Var::Y],
    [Var::Z, Var::Y, Var::X],
];

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 256,
        rng_seed: RngSeed::Fixed(20_170_301),
        ..ProptestConfig::default()
    }
}

/// Whether `target` is a nonnegative combination of `gens`, via
/// Carathéodory: some linearly independent subset already suffices.
fn in_cone(target: [f64; 4], gens: &[[f64; 4]]) -> bool {
    let n = gens.len();
    let t = DVector::from_column_slice(&target);
    for mask in 1u32..(1 << n) {
        if mask.count_ones() > 4 {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let a = DMatrix::from_fn(4, cols.len(), |r, c| gens[cols[c]][r]);
        let svd = a.clone().svd(true, true);
        if svd.rank(1e-9) < cols.len() {
            continue;
        }
        let Ok(x) = svd.solve(&t, 1e-12) else { continue };
        if (&a * &x - &t).norm() < 1e-9 && x.iter().all(|&c| c > -1e-12) {
            return true;
        }
    }
    false
}

/// King's criterion for a torus: `x` is `θ`-semistable iff `θ` lies in the
/// cone spanned by the weights of the nonzero coordinates.
fn semistable_oracle(nonzero: &[bool; 13], theta: &Chamber) -> bool {
    let mut gens: Vec<[f64; 4]> = Vec::new();
    for c in Coord::ALL {
        if nonzero[c.index()] {
            let w = c.weights();
            let g = [w[0] as f64, w[1] as f64, w[2] as f64, w[3] as f64];
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    in_cone(theta.exponents().map(|e| e as f64), &gens)
}

fn point(nonzero: &[bool; 13]) -> [Complex64; 13] {
    std::array::from_fn(|i| {
        if nonzero[i] {
            Complex64::new(1.0 + i as f64, -0.5)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn semistability_matches_king_criterion(bits in 0u32..(1 << 13), k in 0usize..8) {
        let theta = Chamber::all_supported()[k];
        let nonzero: [bool; 13] = std::array::from_fn(|i| bits & (1 << i) != 0);
        let p = point(&nonzero);
        prop_assert_eq!(is_semistable(&p, &theta), semistable_oracle(&nonzero, &theta));
        let by_components = !unstable_components(&theta).iter().any(|c| c.contains(&p));
        prop_assert_eq!(is_semistable(&p, &theta), by_components);
    }
}

#[test]
fn unstable_loci_are_permutation_equivariant() {
    for theta in Chamber::all_supported() {
        for perm in PERMS {
            let mut image: Vec<UnstableComponent> =
                unstable_components(&theta).iter().map(|c| c.permuted(perm)).collect();
            let mut direct = unstable_components(&theta.permuted(perm));
            image.sort();
            direct.sort();
            assert_eq!(image, direct, "{theta} {perm:?}");
        }
    }
}

#[test]
fn divisors_are_permutation_equivariant() {
    for theta in Chamber::all_supported() {
        for perm in PERMS {
            for rho in Coord::ALL {
                let d = toric_divisor(rho, &theta);
                let e = toric_divisor(rho.permuted(perm), &theta.permuted(perm));
                for v in Var::ALL {
                    assert_eq!(d.coeff(v), e.coeff(perm[v.index()]), "{theta} {rho:?} {perm:?}");
                }
            }
        }
    }
}
