//! Acceptance suite: twelve criteria covering classical reductions, special
//! functions, orthonormality along both computation paths, the spectrum,
//! the operator algebra, Rodrigues equivalence, transform unitarity, the
//! reproducing property, inverse composition, the coherent-state relations,
//! and report determinism. Each test prints one pass/fail line (visible
//! with --nocapture, and on failure in the captured output).

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use susy_bargmann::holomorphic::{
    basis_vector, eval_holo, holo_inner_product, kernel_vector, reproducing_kernel, weight,
    HoloVector,
};
use susy_bargmann::quadrature::{build_polar_rule, integrate_polar};
use susy_bargmann::realline::{
    apply_ladder, coeff_rel_distance, eigenfunction, eval_real, rodrigues_eigenfunction, LadderOp,
    RodriguesParity, Sector, SusyParams, WeightedPoly,
};
use susy_bargmann::specfun::{bessel_k, SeriesConfig};
use susy_bargmann::transforms::{
    coherent_residual, forward_rule, forward_spectral, inverse_quadrature, inverse_rule, kernel_a,
    kernel_constants, spectral_vs_quadrature_residual,
};
use susy_bargmann::{Result, C64};

fn params(n: u32) -> SusyParams {
    SusyParams::new(n).unwrap()
}

/// Runs a criterion body and prints its single verdict line.
fn criterion<F: FnOnce() + UnwindSafe>(number: u32, description: &str, body: F) {
    let outcome = catch_unwind(body);
    println!(
        "criterion {number:02} ({description}): {}",
        if outcome.is_ok() { "pass" } else { "FAIL" }
    );
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
}

fn compose(ops: &[LadderOp], f: &WeightedPoly) -> Result<WeightedPoly> {
    let mut out = f.clone();
    for &op in ops {
        out = apply_ladder(op, &out)?;
    }
    Ok(out)
}

#[test]
fn criterion_01_classical_reduction_at_n1() {
    criterion(1, "n=1 classical reduction", || {
        let p = params(1);
        let quartic_root_pi = std::f64::consts::PI.powf(0.25);

        // transform kernel against the classical Segal-Bargmann formula
        for iz in -2..=2 {
            for ix in -2..=2 {
                let z = C64::new(iz as f64, 0.0);
                let x = ix as f64;
                let got = kernel_a(p, Sector::One, z, x).unwrap();
                let want = (-z * z / 2.0 + std::f64::consts::SQRT_2 * z * x - x * x / 2.0).exp()
                    / quartic_root_pi;
                assert!((got - want).norm() <= 1e-10, "kernel at z={z}, x={x}");
            }
        }

        // weight against the classical Gaussian
        for i in 0..=12 {
            let r = 0.25 * i as f64;
            let z = C64::from_polar(r, 0.35 * i as f64);
            let got = weight(p, Sector::One, z).unwrap();
            let want = (-r * r).exp() / std::f64::consts::PI;
            assert!((got - want).abs() <= 1e-12, "weight at |z|={r}");
        }

        // reproducing kernel against exp(z conj(w))
        let points = [
            C64::new(2.0, 0.0),
            C64::new(-2.0, 0.0),
            C64::new(1.0, 1.0),
            C64::new(-1.2, 0.8),
            C64::new(0.0, -1.7),
        ];
        for &w in &points {
            for &z in &points {
                let got = reproducing_kernel(p, Sector::One, w, z).unwrap();
                let want = (z * w.conj()).exp();
                assert!((got - want).norm() <= 1e-10, "kernel at z={z}, w={w}");
            }
        }

        // kernel constants collapse to the quartic root of pi
        let constants = kernel_constants(p);
        assert!((constants.alpha - quartic_root_pi).abs() <= 1e-13);
        assert!((constants.beta - quartic_root_pi).abs() <= 1e-13);
    });
}

#[test]
fn criterion_02_bessel_k_half_closed_form() {
    criterion(2, "Bessel K_{1/2} closed form", || {
        let cfg = SeriesConfig::default();
        for x in [0.1, 1.0, 4.0, 12.0] {
            let got = bessel_k(0.5, x, &cfg).unwrap();
            let want = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!((got - want).abs() / want <= 1e-12, "x = {x}");
        }
    });
}

#[test]
fn criterion_03_orthonormality_by_moments() {
    criterion(3, "orthonormality, moments path", || {
        for n in 1..=3u32 {
            let p = params(n);
            for sector in [Sector::One, Sector::Two] {
                let basis: Vec<WeightedPoly> = (0..=8u32)
                    .map(|l| eigenfunction(p, sector, l).unwrap())
                    .collect();
                for (j, f) in basis.iter().enumerate() {
                    for (k, g) in basis.iter().enumerate() {
                        let got = susy_bargmann::realline::inner_product(f, g).unwrap();
                        let want = if j == k { 1.0 } else { 0.0 };
                        assert!(
                            (got - want).abs() <= 1e-10,
                            "n={n}, {sector:?}, entry ({j},{k})"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_04_orthonormality_by_quadrature() {
    criterion(4, "orthonormality, quadrature path", || {
        for n in 1..=3u32 {
            let p = params(n);
            for sector in [Sector::One, Sector::Two] {
                let rule = build_polar_rule(p, sector, sector.exponent_of(p, 6), 1e-10).unwrap();
                let basis: Vec<HoloVector> =
                    (0..=6u32).map(|l| basis_vector(p, sector, l)).collect();
                for (j, f) in basis.iter().enumerate() {
                    for (k, g) in basis.iter().enumerate() {
                        let got =
                            integrate_polar(|z, _| eval_holo(f, z) * eval_holo(g, z).conj(), &rule)
                                .unwrap();
                        let want = if j == k { 1.0 } else { 0.0 };
                        assert!(
                            (got - C64::new(want, 0.0)).norm() <= 1e-8,
                            "n={n}, {sector:?}, entry ({j},{k})"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_05_spectrum() {
    criterion(5, "spectrum of the number operator", || {
        for n in 1..=3u32 {
            let p = params(n);
            let (gamma, delta) = (p.gamma(), p.delta());
            for l in 0..=8u32 {
                let psi = eigenfunction(p, Sector::One, l).unwrap();
                let m = (l / 2) as f64;
                let lambda = if l % 2 == 0 {
                    m * (delta - gamma)
                } else {
                    m * (delta - gamma) + delta
                };
                let got = compose(&[LadderOp::A, LadderOp::AStar], &psi).unwrap();
                assert!(
                    coeff_rel_distance(&got, &psi.scaled(lambda)).unwrap() <= 1e-10,
                    "n={n}, level {l}"
                );
            }
        }
    });
}

#[test]
fn criterion_06_su11_and_partner_relations() {
    criterion(6, "su(1,1) commutators and partner relations", || {
        for n in 1..=3u32 {
            let p = params(n);
            let (gamma, delta) = (p.gamma(), p.delta());
            let spread = delta - gamma;
            for l in 0..=6u32 {
                // first representation, on psi_l
                let psi = eigenfunction(p, Sector::One, l).unwrap();
                let raise = [LadderOp::BStar, LadderOp::AStar];
                let lower = [LadderOp::A, LadderOp::B];
                let number = [LadderOp::A, LadderOp::AStar];

                let raised = compose(&raise, &psi).unwrap();
                let lhs = compose(&number, &raised)
                    .unwrap()
                    .sub(&compose(&raise, &compose(&number, &psi).unwrap()).unwrap())
                    .unwrap();
                assert!(
                    coeff_rel_distance(&lhs, &raised.scaled(spread)).unwrap() <= 1e-9,
                    "n={n}, l={l}, first commutator"
                );

                let lhs = compose(&raise, &compose(&lower, &psi).unwrap())
                    .unwrap()
                    .sub(&compose(&lower, &raised).unwrap())
                    .unwrap();
                let want = compose(&number, &psi)
                    .unwrap()
                    .add_scaled(&psi, -gamma / 2.0)
                    .unwrap()
                    .scaled(-2.0 * spread);
                assert!(
                    coeff_rel_distance(&lhs, &want).unwrap() <= 1e-9,
                    "n={n}, l={l}, second commutator"
                );

                let lhs = compose(&number, &psi).unwrap();
                let rhs = compose(&[LadderOp::BStar, LadderOp::B], &psi)
                    .unwrap()
                    .add_scaled(&psi, gamma)
                    .unwrap();
                assert!(
                    coeff_rel_distance(&lhs, &rhs).unwrap() <= 1e-9,
                    "n={n}, l={l}, first partner relation"
                );

                // second representation, on tilde-psi_l
                let tpsi = eigenfunction(p, Sector::Two, l).unwrap();
                let raise = [LadderOp::AStar, LadderOp::BStar];
                let lower = [LadderOp::B, LadderOp::A];
                let number = [LadderOp::B, LadderOp::BStar];

                let raised = compose(&raise, &tpsi).unwrap();
                let lhs = compose(&number, &raised)
                    .unwrap()
                    .sub(&compose(&raise, &compose(&number, &tpsi).unwrap()).unwrap())
                    .unwrap();
                assert!(
                    coeff_rel_distance(&lhs, &raised.scaled(spread)).unwrap() <= 1e-9,
                    "n={n}, l={l}, mirrored commutator"
                );

                let lhs = compose(&raise, &compose(&lower, &tpsi).unwrap())
                    .unwrap()
                    .sub(&compose(&lower, &raised).unwrap())
                    .unwrap();
                let want = compose(&number, &tpsi)
                    .unwrap()
                    .add_scaled(&tpsi, delta / 2.0)
                    .unwrap()
                    .scaled(-2.0 * spread);
                assert!(
                    coeff_rel_distance(&lhs, &want).unwrap() <= 1e-9,
                    "n={n}, l={l}, mirrored second commutator"
                );

                let lhs = compose(&[LadderOp::AStar, LadderOp::A], &tpsi).unwrap();
                let rhs = compose(&number, &tpsi)
                    .unwrap()
                    .add_scaled(&tpsi, delta)
                    .unwrap();
                assert!(
                    coeff_rel_distance(&lhs, &rhs).unwrap() <= 1e-9,
                    "n={n}, l={l}, second partner relation"
                );
            }
        }
    });
}

#[test]
fn criterion_07_rodrigues_equivalence() {
    criterion(7, "Rodrigues equals ladder construction", || {
        for n in 1..=3u32 {
            let p = params(n);
            for parity in [RodriguesParity::Even, RodriguesParity::Odd] {
                let mut by_ladder = match parity {
                    RodriguesParity::Even => {
                        WeightedPoly::monomial(p, Sector::One, 0, 1.0).unwrap()
                    }
                    RodriguesParity::Odd => {
                        WeightedPoly::monomial(p, Sector::One, 2 * n - 1, 2.0).unwrap()
                    }
                };
                for l in 0..=4u32 {
                    let by_derivative = rodrigues_eigenfunction(p, l, parity).unwrap();
                    assert!(
                        coeff_rel_distance(&by_ladder, &by_derivative).unwrap() <= 1e-10,
                        "n={n}, l={l}, {parity:?}"
                    );
                    by_ladder = compose(&[LadderOp::BStar, LadderOp::AStar], &by_ladder).unwrap();
                }
            }
        }
    });
}

#[test]
fn criterion_08_unitarity_and_basis_transport() {
    criterion(8, "unitarity and basis transport", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xac8);
        let ticks = [-1.4, -0.7, 0.0, 0.7, 1.4];
        let mut grid = Vec::new();
        for &u in &ticks {
            for &v in &ticks {
                grid.push(C64::new(u, v));
            }
        }
        for n in 1..=3u32 {
            let p = params(n);
            for sector in [Sector::One, Sector::Two] {
                for l in 0..=8u32 {
                    let psi = eigenfunction(p, sector, l).unwrap();
                    let got = forward_spectral(&psi).unwrap();
                    let want = basis_vector(p, sector, l);
                    assert!(
                        got.sub(&want).unwrap().norm().unwrap() <= 1e-10,
                        "n={n}, {sector:?}, level {l}"
                    );
                }
            }

            let mut f = WeightedPoly::zero(p, Sector::One);
            for l in 0..=7u32 {
                let psi = eigenfunction(p, Sector::One, l).unwrap();
                f = f.add_scaled(&psi, rng.gen_range(-1.0..1.0)).unwrap();
            }
            f = f.scaled(1.0 / f.norm().unwrap());
            let holo = forward_spectral(&f).unwrap();
            let rule = forward_rule(p, f.max_exponent().unwrap(), 1e-10).unwrap();
            let worst = spectral_vs_quadrature_residual(&f, &holo, &rule, &grid).unwrap();
            assert!(worst <= 1e-7, "n={n}: worst disagreement {worst}");
        }
    });
}

#[test]
fn criterion_09_reproducing_property() {
    criterion(9, "reproducing property", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x4e9);
        for n in 1..=3u32 {
            let p = params(n);
            for sector in [Sector::One, Sector::Two] {
                for trial in 0..10 {
                    let mut coeffs = BTreeMap::new();
                    for l in 0..=8u32 {
                        coeffs.insert(
                            sector.exponent_of(p, l),
                            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                        );
                    }
                    let f = HoloVector::from_coeffs(p, sector, coeffs).unwrap();
                    let w = C64::from_polar(
                        rng.gen_range(0.0..1.5),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    );
                    let kernel = kernel_vector(p, sector, w, 12);
                    let got = holo_inner_product(&f, &kernel).unwrap();
                    let want = eval_holo(&f, w);
                    assert!(
                        (got - want).norm() <= 1e-8,
                        "n={n}, {sector:?}, trial {trial}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_10_round_trip() {
    criterion(10, "inverse undoes forward", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x10aa);
        for n in 1..=2u32 {
            let p = params(n);
            let mut f = WeightedPoly::zero(p, Sector::One);
            for l in 0..=5u32 {
                let psi = eigenfunction(p, Sector::One, l).unwrap();
                f = f.add_scaled(&psi, rng.gen_range(-1.0..1.0)).unwrap();
            }
            f = f.scaled(1.0 / f.norm().unwrap());
            let holo = forward_spectral(&f).unwrap();
            let rule = inverse_rule(p, Sector::One, holo.max_exponent().unwrap(), 1e-10).unwrap();
            for i in 0..21 {
                let x = -2.0 + 0.2 * i as f64;
                let got = inverse_quadrature(&holo, &rule, x).unwrap();
                let want = eval_real(&f, x);
                assert!(
                    (got - C64::new(want, 0.0)).norm() <= 1e-6,
                    "n={n}, x={x}: {got} vs {want}"
                );
            }
        }
    });
}

#[test]
fn criterion_11_coherent_state_relations() {
    criterion(11, "coherent-state kernel relations", || {
        let zs = [C64::new(0.5, 0.0), C64::new(1.0, 0.5), C64::new(-0.8, 0.3)];
        let xs = [0.5f64, 1.2, -1.5];
        for n in 1..=2u32 {
            let p = params(n);
            for &z in &zs {
                for &x in &xs {
                    assert!(z.norm() * x.abs() <= 3.0);
                    let r = coherent_residual(p, z, x).unwrap();
                    assert!(r <= 1e-8, "n={n}, z={z}, x={x}: residual {r}");
                }
            }
        }
    });
}

#[test]
fn criterion_12_report_determinism() {
    criterion(12, "byte-identical repeated reports", || {
        let bin = env!("CARGO_BIN_EXE_susy-bargmann");
        let dir = std::env::temp_dir();
        let stamp = std::process::id();
        for format in ["json", "csv"] {
            let first = dir.join(format!("susy_bargmann_report_{stamp}_a.{format}"));
            let second = dir.join(format!("susy_bargmann_report_{stamp}_b.{format}"));
            for path in [&first, &second] {
                let status = std::process::Command::new(bin)
                    .args(["check", "--n", "2", "--format", format, "--output"])
                    .arg(path)
                    .stdout(std::process::Stdio::null())
                    .status()
                    .expect("spawning the verification binary");
                assert!(status.success(), "check run failed ({format})");
            }
            let bytes_a = std::fs::read(&first).unwrap();
            let bytes_b = std::fs::read(&second).unwrap();
            let _ = std::fs::remove_file(&first);
            let _ = std::fs::remove_file(&second);
            assert!(!bytes_a.is_empty());
            assert_eq!(bytes_a, bytes_b, "reports differ ({format})");
        }
    });
}
