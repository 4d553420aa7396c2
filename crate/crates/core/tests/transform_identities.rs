//! End-to-end transform identities: basis transport, unitarity along both
//! computation paths, commutation of the ladder diagrams, agreement of the
//! kernel quadrature with spectral transport, inverse composition, and the
//! coherent-state relations satisfied by the kernel itself.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use susy_bargmann::holomorphic::{basis_vector, eval_holo};
use susy_bargmann::quadrature::{build_polar_rule, integrate_polar};
use susy_bargmann::realline::{
    eigenfunction, eval_real, LadderOp, Sector, SusyParams, WeightedPoly,
};
use susy_bargmann::transforms::{
    coherent_residual, diagram_residual, forward_quadrature, forward_rule, forward_spectral,
    inverse_quadrature, inverse_rule, spectral_vs_quadrature_residual,
};
use susy_bargmann::C64;

fn params(n: u32) -> SusyParams {
    SusyParams::new(n).unwrap()
}

/// Unit-norm combination of eigenfunctions 0..=top with seeded random
/// coefficients.
fn random_unit_span(
    params: SusyParams,
    sector: Sector,
    top: u32,
    rng: &mut ChaCha8Rng,
) -> WeightedPoly {
    let mut f = WeightedPoly::zero(params, sector);
    for l in 0..=top {
        let psi = eigenfunction(params, sector, l).unwrap();
        f = f.add_scaled(&psi, rng.gen_range(-1.0..1.0)).unwrap();
    }
    let norm = f.norm().unwrap();
    f.scaled(1.0 / norm)
}

/// 25-point complex grid with |z| < 2.
fn sample_grid() -> Vec<C64> {
    let ticks = [-1.4, -0.7, 0.0, 0.7, 1.4];
    let mut grid = Vec::new();
    for &u in &ticks {
        for &v in &ticks {
            grid.push(C64::new(u, v));
        }
    }
    grid
}

#[test]
fn spectral_transform_transports_both_eigenbases() {
    for n in 1..=3u32 {
        let p = params(n);
        for sector in [Sector::One, Sector::Two] {
            for l in 0..=8u32 {
                let psi = eigenfunction(p, sector, l).unwrap();
                let got = forward_spectral(&psi).unwrap();
                let want = basis_vector(p, sector, l);
                let distance = got.sub(&want).unwrap().norm().unwrap();
                assert!(distance < 1e-10, "level {l}, n = {n}, {sector}");
            }
        }
    }
}

#[test]
fn spectral_transform_is_unitary_on_random_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x21b7);
    for n in 1..=3u32 {
        let p = params(n);
        for sector in [Sector::One, Sector::Two] {
            let f = random_unit_span(p, sector, 8, &mut rng);
            let holo = forward_spectral(&f).unwrap();

            // coefficient transport preserves the norm to rounding
            let norm = holo.norm().unwrap();
            assert!((norm - 1.0).abs() < 1e-12, "n = {n}, {sector}: {norm}");

            // the plane-quadrature norm of the transform agrees
            let top = holo.max_exponent().unwrap();
            let rule = build_polar_rule(p, sector, top, 1e-9).unwrap();
            let mass = integrate_polar(
                |z, _| {
                    let value = eval_holo(&holo, z);
                    value * value.conj()
                },
                &rule,
            )
            .unwrap();
            assert!(
                (mass.re - 1.0).abs() < 1e-6 && mass.im.abs() < 1e-9,
                "n = {n}, {sector}: quadrature mass {mass}"
            );
        }
    }
}

#[test]
fn ladder_diagrams_commute_on_both_eigenbases() {
    for n in 1..=3u32 {
        let p = params(n);
        for l in 0..=6u32 {
            let psi = eigenfunction(p, Sector::One, l).unwrap();
            for op in [LadderOp::A, LadderOp::BStar] {
                let r = diagram_residual(op, &psi).unwrap();
                assert!(r <= 1e-9, "{op:?} on psi_{l}, n = {n}: {r}");
            }
            let tpsi = eigenfunction(p, Sector::Two, l).unwrap();
            for op in [LadderOp::B, LadderOp::AStar] {
                let r = diagram_residual(op, &tpsi).unwrap();
                assert!(r <= 1e-9, "{op:?} on tilde psi_{l}, n = {n}: {r}");
            }
        }
    }
}

#[test]
fn kernel_quadrature_matches_spectral_transport_on_random_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x44c1);
    let grid = sample_grid();
    for n in 1..=3u32 {
        let p = params(n);
        let f = random_unit_span(p, Sector::One, 7, &mut rng);
        let holo = forward_spectral(&f).unwrap();
        let rule = forward_rule(p, f.max_exponent().unwrap(), 1e-10).unwrap();
        let worst = spectral_vs_quadrature_residual(&f, &holo, &rule, &grid).unwrap();
        assert!(worst < 1e-7, "n = {n}: worst disagreement {worst}");
    }
}

#[test]
fn kernel_quadrature_sends_eigenfunctions_to_basis_vectors() {
    let grid = sample_grid();
    for n in 1..=2u32 {
        let p = params(n);
        for l in 0..=3u32 {
            let psi = eigenfunction(p, Sector::One, l).unwrap();
            let e = basis_vector(p, Sector::One, l);
            let rule = forward_rule(p, psi.max_exponent().unwrap(), 1e-10).unwrap();
            let worst = spectral_vs_quadrature_residual(&psi, &e, &rule, &grid).unwrap();
            assert!(worst < 1e-7, "level {l}, n = {n}: {worst}");
        }
    }
}

#[test]
fn inverse_quadrature_undoes_the_forward_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5);
    for n in 1..=2u32 {
        let p = params(n);
        for sector in [Sector::One, Sector::Two] {
            let f = random_unit_span(p, sector, 5, &mut rng);
            let holo = forward_spectral(&f).unwrap();
            let rule = inverse_rule(p, sector, holo.max_exponent().unwrap(), 1e-10).unwrap();
            for i in 0..21 {
                let x = -2.0 + 0.2 * i as f64;
                let got = inverse_quadrature(&holo, &rule, x).unwrap();
                let want = eval_real(&f, x);
                assert!(
                    (got.re - want).abs() < 1e-6 && got.im.abs() < 1e-8,
                    "n = {n}, {sector}, x = {x}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn forward_quadrature_is_linear_and_kills_zero() {
    let p = params(2);
    let psi1 = eigenfunction(p, Sector::One, 1).unwrap();
    let psi3 = eigenfunction(p, Sector::One, 3).unwrap();
    let combo = psi1.scaled(0.6).add_scaled(&psi3, -1.1).unwrap();
    let rule = forward_rule(p, combo.max_exponent().unwrap(), 1e-10).unwrap();
    let z = C64::new(0.8, -0.5);
    let separate = forward_quadrature(&psi1, &rule, z).unwrap() * 0.6
        + forward_quadrature(&psi3, &rule, z).unwrap() * -1.1;
    let together = forward_quadrature(&combo, &rule, z).unwrap();
    assert!((separate - together).norm() < 1e-10);

    let zero = WeightedPoly::zero(p, Sector::One);
    let image = forward_quadrature(&zero, &rule, z).unwrap();
    assert_eq!(image, C64::new(0.0, 0.0));
}

#[test]
fn coherent_relations_hold_across_sample_points() {
    // 9 (z, x) pairs per n with |zx| <= 3, away from the x = 0 singular
    // line of the operators for n >= 2.
    let zs = [C64::new(0.5, 0.0), C64::new(1.0, 0.5), C64::new(-0.8, 0.3)];
    let xs = [0.5f64, 1.2, -1.5];
    for n in 1..=2u32 {
        let p = params(n);
        for &z in &zs {
            for &x in &xs {
                assert!(z.norm() * x.abs() <= 3.0);
                let r = coherent_residual(p, z, x).unwrap();
                assert!(r <= 1e-8, "n = {n}, z = {z}, x = {x}: {r}");
            }
        }
    }
}

#[test]
fn expansion_residual_guard_accepts_lattice_inputs() {
    // Any lattice-valid coefficient pattern lies in the eigenfunction span,
    // so the spectral transform must accept it, not just eigenfunction
    // combinations.
    let p = params(3);
    let f = WeightedPoly::from_coeffs(
        p,
        Sector::One,
        BTreeMap::from([(0u32, 0.25), (5, -1.5), (6, 0.75), (12, 0.1)]),
    )
    .unwrap();
    let holo = forward_spectral(&f).unwrap();
    assert_eq!(holo.sector(), Sector::One);
    assert!(holo.max_exponent().unwrap() >= 12);
}
