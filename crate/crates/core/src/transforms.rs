//! The pair of Segal-Bargmann-type transforms connecting the real-line
//! spaces to the holomorphic sectors.
//!
//! Two independent implementations are provided on purpose. The spectral
//! path expands the input over the real-line eigenfunctions and transports
//! coefficients onto the holomorphic basis (exact linear algebra). The
//! quadrature path integrates the input against the integral kernel
//! A(z, x) = e^{-z^{2n}/(2n)} B(z, x) e^{-x^{2n}/(2n)}, with B given by
//! closed two-term hypergeometric forms. Their agreement is the unitarity
//! statement in executable form, exposed through residual helpers. The
//! module also checks the ladder-intertwining property of the kernels
//! (coherent-state relations) by symbolic differentiation of the truncated
//! kernel series.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::holomorphic::{apply_holo_ladder, basis_constant, eval_holo, HoloLadderOp, HoloVector};
use crate::quadrature::{build_polar_rule, build_real_rule, integrate_polar};
use crate::quadrature::{pairwise_sum, PolarRule, RealRule};
use crate::realline::{
    apply_ladder, eigenfunction, eval_real, inner_product, LadderOp, Sector, SusyParams,
    WeightedPoly,
};
use crate::specfun::{hyp0f1, lgamma, SeriesConfig};
use crate::{Error, Result, C64};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Inputs further than this from the eigenfunction span are rejected; for
/// lattice-valid inputs the expansion is exact and the residual is rounding
/// noise only.
const SPECTRAL_RESIDUAL_LIMIT: f64 = 1e-9;

/// Truncation length for kernel power series; the factorial tail is below
/// 1e-16 for |zx| <= 4 at every n.
const KERNEL_SERIES_TERMS: usize = 60;

/// The kernel normalization constants, fixed by requiring that the ground
/// states map to the level-zero basis functions:
/// alpha = n^{1/2 - 1/(4n)} sqrt(Gamma(1/(2n))),
/// beta = 2^{-1/2 + 1/(2n)} n^{-1/2 + 3/(4n)} sqrt(Gamma(1/(2n))).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelConstants {
    pub alpha: f64,
    pub beta: f64,
}

pub fn kernel_constants(params: SusyParams) -> KernelConstants {
    let n = params.nf();
    let half_lg = 0.5 * lgamma(1.0 / (2.0 * n));
    let alpha = ((0.5 - 1.0 / (4.0 * n)) * n.ln() + half_lg).exp();
    let beta = ((-0.5 + 1.0 / (2.0 * n)) * std::f64::consts::LN_2
        + (-0.5 + 3.0 / (4.0 * n)) * n.ln()
        + half_lg)
        .exp();
    KernelConstants { alpha, beta }
}

/// Gaussian-free kernel factor B, a function of the product zx only:
///
/// B1 = alpha/Gamma(1/(2n)) 0F1(; 1/(2n); v)
///      + beta (zx)^{2n-1} / (sqrt2 n Gamma(2 - 1/(2n))) 0F1(; 2 - 1/(2n); v)
/// B2 = beta (zx)^{n-1} / Gamma(1 - 1/(2n)) 0F1(; 1 - 1/(2n); v)
///      + sqrt2 alpha (zx)^n / Gamma(1/(2n)) 0F1(; 1 + 1/(2n); v)
///
/// with v = (zx)^{2n} / (2 n^2).
pub fn kernel_b(params: SusyParams, sector: Sector, z: C64, x: C64) -> Result<C64> {
    let n = params.nf();
    let cfg = SeriesConfig::default();
    let kc = kernel_constants(params);
    let t = z * x;
    let v = t.powu(2 * params.n()) / (2.0 * n * n);
    match sector {
        Sector::One => {
            let first =
                kc.alpha / lgamma(1.0 / (2.0 * n)).exp() * hyp0f1(1.0 / (2.0 * n), v, &cfg)?;
            let second = kc.beta / (SQRT_2 * n * lgamma(2.0 - 1.0 / (2.0 * n)).exp())
                * t.powu(2 * params.n() - 1)
                * hyp0f1(2.0 - 1.0 / (2.0 * n), v, &cfg)?;
            Ok(first + second)
        }
        Sector::Two => {
            let first = kc.beta / lgamma(1.0 - 1.0 / (2.0 * n)).exp()
                * t.powu(params.n() - 1)
                * hyp0f1(1.0 - 1.0 / (2.0 * n), v, &cfg)?;
            let second = SQRT_2 * kc.alpha / lgamma(1.0 / (2.0 * n)).exp()
                * t.powu(params.n())
                * hyp0f1(1.0 + 1.0 / (2.0 * n), v, &cfg)?;
            Ok(first + second)
        }
    }
}

/// Full transform kernel A(z, x) = e^{-z^{2n}/(2n)} B(z, x) e^{-x^{2n}/(2n)}.
/// The two Gaussian exponents are combined before the single complex exp.
pub fn kernel_a(params: SusyParams, sector: Sector, z: C64, x: f64) -> Result<C64> {
    let two_n = 2.0 * params.nf();
    let b = kernel_b(params, sector, z, C64::new(x, 0.0))?;
    let log_gaussians = -(z.powu(2 * params.n()) + x.powi(2 * params.n() as i32)) / two_n;
    Ok(log_gaussians.exp() * b)
}

/// Forward transform by coefficient transport: expand over the real-line
/// eigenfunctions, reuse the coefficients over the holomorphic basis. Exact
/// for anything on the lattice; inputs with a genuine expansion residual
/// (which cannot arise from valid `WeightedPoly` values, only from internal
/// inconsistencies) are rejected.
pub fn forward_spectral(f: &WeightedPoly) -> Result<HoloVector> {
    let params = f.params();
    let sector = f.sector();
    let Some(top) = f.max_exponent() else {
        return Ok(HoloVector::zero(params, sector));
    };
    let top_level = sector
        .level_of(params, top)
        .expect("lattice validity is a construction invariant");
    let mut recon = WeightedPoly::zero(params, sector);
    let mut coeffs = BTreeMap::new();
    for level in 0..=top_level {
        let psi = eigenfunction(params, sector, level)?;
        let c = inner_product(f, &psi)?;
        if c == 0.0 {
            continue;
        }
        recon = recon.add_scaled(&psi, c)?;
        let b = basis_constant(params, sector, level);
        coeffs.insert(sector.exponent_of(params, level), C64::new(c * b, 0.0));
    }
    let residual = f.sub(&recon)?.norm()?;
    if residual > SPECTRAL_RESIDUAL_LIMIT {
        return Err(Error::ExpansionResidual {
            residual,
            limit: SPECTRAL_RESIDUAL_LIMIT,
        });
    }
    HoloVector::from_coeffs(params, sector, coeffs)
}

/// Degree headroom added on top of the input degree when building the
/// real-line rule for forward transforms. Against the full-line moments of
/// exp(-x^{2n}/n), the kernel's series in x contributes like q^l / l! per
/// term of x-degree 2n, with q = |z|^{2n}/(2n); at desk scale (|z| up to 2)
/// the tail drops below 1e-12 of its peak within 3q + 20 terms.
fn forward_degree_margin(params: SusyParams) -> u32 {
    let n = params.n();
    3 * (1u32 << (2 * n)) + 40 * n
}

/// Degree headroom for the polar rule of inverse transforms. The plane
/// measure decays twice as fast as the line weight relative to the kernel's
/// own Gaussian factor, so the bandwidth is far smaller there.
fn inverse_degree_margin(params: SusyParams) -> u32 {
    16 + 24 * params.n()
}

/// Real-line rule sized for forward transforms of inputs with the given
/// maximum exponent.
pub fn forward_rule(params: SusyParams, max_input_exponent: u32, tol: f64) -> Result<RealRule> {
    build_real_rule(
        params,
        max_input_exponent + forward_degree_margin(params),
        tol,
    )
}

/// Polar rule sized for inverse transforms of vectors with the given
/// maximum exponent.
pub fn inverse_rule(
    params: SusyParams,
    sector: Sector,
    max_input_exponent: u32,
    tol: f64,
) -> Result<PolarRule> {
    build_polar_rule(
        params,
        sector,
        max_input_exponent + inverse_degree_margin(params),
        tol,
    )
}

/// Pointwise forward transform by quadrature:
/// (B f)(z) = integral of A(z, x) f(x) dx.
pub fn forward_quadrature(f: &WeightedPoly, rule: &RealRule, z: C64) -> Result<C64> {
    let params = f.params();
    let sector = f.sector();
    let mut re = Vec::with_capacity(rule.node_count());
    let mut im = Vec::with_capacity(rule.node_count());
    for (index, (&x, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let value = kernel_a(params, sector, z, x)? * eval_real(f, x);
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonFiniteSample {
                index,
                at: format!("x = {x:.17e}"),
                message: format!("kernel integrand returned {value}"),
            });
        }
        re.push(w * value.re);
        im.push(w * value.im);
    }
    Ok(C64::new(pairwise_sum(&re), pairwise_sum(&im)))
}

/// Pointwise inverse transform by polar quadrature:
/// (B^{-1} F)(x) = integral of A(conj z, x) F(z) rho dA(z).
/// For real-coefficient F the imaginary part of the result is quadrature
/// noise; it is returned, not dropped.
pub fn inverse_quadrature(f: &HoloVector, rule: &PolarRule, x: f64) -> Result<C64> {
    if rule.params() != f.params() || rule.sector() != f.sector() {
        return Err(Error::SectorMismatch {
            message: format!(
                "inverse rule built for (n = {}, {}), input lives in (n = {}, {})",
                rule.params().n(),
                rule.sector(),
                f.params().n(),
                f.sector()
            ),
        });
    }
    let params = f.params();
    let sector = f.sector();
    let nan = C64::new(f64::NAN, f64::NAN);
    // series non-convergence inside the integrand surfaces as a non-finite
    // sample; it cannot occur for in-range parameters
    integrate_polar(
        |z, _| match kernel_a(params, sector, z.conj(), x) {
            Ok(a) => a * eval_holo(f, z),
            Err(_) => nan,
        },
        rule,
    )
}

/// Norm of the commutative-diagram defect for one ladder operator: transform
/// then act holomorphically, versus act on the real line then transform.
pub fn diagram_residual(op: LadderOp, f: &WeightedPoly) -> Result<f64> {
    let holo_op = match op {
        LadderOp::A => HoloLadderOp::FrakA,
        LadderOp::B => HoloLadderOp::FrakB,
        LadderOp::AStar => HoloLadderOp::FrakAStar,
        LadderOp::BStar => HoloLadderOp::FrakBStar,
    };
    let real_path = forward_spectral(&apply_ladder(op, f)?)?;
    let holo_path = apply_holo_ladder(holo_op, &forward_spectral(f)?)?;
    real_path.sub(&holo_path)?.norm()
}

/// Worst spectral-vs-quadrature disagreement of the forward transform over
/// the given sample points.
pub fn spectral_vs_quadrature_residual(
    f: &WeightedPoly,
    holo: &HoloVector,
    rule: &RealRule,
    points: &[C64],
) -> Result<f64> {
    let mut worst = 0.0f64;
    for &z in points {
        let by_quadrature = forward_quadrature(f, rule, z)?;
        let by_spectrum = eval_holo(holo, z);
        worst = worst.max((by_quadrature - by_spectrum).norm());
    }
    Ok(worst)
}

/// Truncated power-series coefficients of B1 and B2 in the x variable for
/// fixed z, keyed by x-exponent. All four constituent series share the term
/// ratio 2 z^{2n} / ((2n)^2 (l + g)(l + 1)).
fn kernel_series_in_x(params: SusyParams, z: C64) -> (BTreeMap<u32, C64>, BTreeMap<u32, C64>) {
    let n = params.n();
    let nf = params.nf();
    let kc = kernel_constants(params);
    let z2n = z.powu(2 * n);
    let mut b1 = BTreeMap::new();
    let mut b2 = BTreeMap::new();
    let accumulate = |map: &mut BTreeMap<u32, C64>, t0: C64, e0: u32, g: f64| {
        let mut term = t0;
        let mut e = e0;
        for l in 0..KERNEL_SERIES_TERMS {
            if term != C64::new(0.0, 0.0) {
                *map.entry(e).or_insert(C64::new(0.0, 0.0)) += term;
            }
            term = term * 2.0 * z2n / ((2.0 * nf) * (2.0 * nf) * (l as f64 + g) * (l as f64 + 1.0));
            e += 2 * n;
        }
    };
    let inv = |g: f64| (-lgamma(g)).exp();
    accumulate(
        &mut b1,
        C64::new(kc.alpha * inv(1.0 / (2.0 * nf)), 0.0),
        0,
        1.0 / (2.0 * nf),
    );
    accumulate(
        &mut b1,
        z.powu(2 * n - 1) * (kc.beta * SQRT_2 / (2.0 * nf) * inv(2.0 - 1.0 / (2.0 * nf))),
        2 * n - 1,
        2.0 - 1.0 / (2.0 * nf),
    );
    accumulate(
        &mut b2,
        z.powu(n - 1) * (kc.beta * inv(1.0 - 1.0 / (2.0 * nf))),
        n - 1,
        1.0 - 1.0 / (2.0 * nf),
    );
    accumulate(
        &mut b2,
        z.powu(n) * (kc.alpha * SQRT_2 / (2.0 * nf) * inv(1.0 + 1.0 / (2.0 * nf))),
        n,
        1.0 + 1.0 / (2.0 * nf),
    );
    (b1, b2)
}

fn eval_series(map: &BTreeMap<u32, C64>, x: f64) -> C64 {
    let terms: Vec<C64> = map.iter().map(|(&e, &c)| c * x.powi(e as i32)).collect();
    terms.into_iter().sum()
}

/// Residual of the coherent-state relations satisfied by the kernels in the
/// x variable: a_x A1(z, .) = z^n A2(z, .) and b_x A2(z, .) = z^n A1(z, .).
/// The ladder action is applied symbolically to the truncated kernel series
/// (never by finite differences); the shared Gaussian factors cancel, so the
/// check runs on the B level. Returns the larger of the two relative
/// residuals at the point (z, x).
pub fn coherent_residual(params: SusyParams, z: C64, x: f64) -> Result<f64> {
    let n = params.n();
    if x == 0.0 && n >= 2 {
        return Err(Error::SingularPoint {
            message: format!(
                "the ladder operators carry x^{} and are checked away from x = 0",
                1 - (n as i64)
            ),
        });
    }
    let nf = params.nf();
    let (b1, b2) = kernel_series_in_x(params, z);
    let zn = z.powu(n);

    // a_x on p(x) e^{-G}: coefficient c at exponent m maps to c m / sqrt2 at
    // exponent m - n; zero multipliers keep every exponent non-negative
    let mut lhs1_terms = Vec::with_capacity(b1.len());
    for (&m, &c) in &b1 {
        if m == 0 {
            continue;
        }
        lhs1_terms.push(c * (m as f64 / SQRT_2) * x.powi(m as i32 - n as i32));
    }
    let lhs1: C64 = lhs1_terms.into_iter().sum();
    let rhs1 = zn * eval_series(&b2, x);

    // b_x: coefficient c at exponent m maps to c (m - n + 1) / sqrt2 at m - n
    let mut lhs2_terms = Vec::with_capacity(b2.len());
    for (&m, &c) in &b2 {
        let mult = m as f64 - nf + 1.0;
        if mult == 0.0 {
            continue;
        }
        lhs2_terms.push(c * (mult / SQRT_2) * x.powi(m as i32 - n as i32));
    }
    let lhs2: C64 = lhs2_terms.into_iter().sum();
    let rhs2 = zn * eval_series(&b1, x);

    let rel = |lhs: C64, rhs: C64| {
        let scale = lhs.norm().max(rhs.norm());
        if scale == 0.0 {
            0.0
        } else {
            (lhs - rhs).norm() / scale
        }
    };
    Ok(rel(lhs1, rhs1).max(rel(lhs2, rhs2)))
}

/// A forward transform output with its cross-path diagnostic, the shape the
/// command-line tool serializes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformResult {
    pub holo: HoloVector,
    pub residual_vs_quadrature: Option<f64>,
}

#[cfg(test)]
// frozen oracle values keep every digit the oracle printed
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::holomorphic::basis_vector;
    use crate::realline::ground_state;

    fn params(n: u32) -> SusyParams {
        SusyParams::new(n).unwrap()
    }

    const PI_QUARTER: f64 = 1.3313353638003897128; // pi^{1/4}

    #[test]
    fn constants_reduce_to_quartic_root_of_pi_at_n1() {
        let kc = kernel_constants(params(1));
        assert!((kc.alpha - PI_QUARTER).abs() < 1e-14);
        assert!((kc.beta - PI_QUARTER).abs() < 1e-14);
    }

    #[test]
    fn constants_frozen_values() {
        let kc = kernel_constants(params(2));
        assert!((kc.alpha - 2.4693166564586858126).abs() < 1e-13);
        assert!((kc.beta - 1.4682644685276995236).abs() < 1e-13);
        let kc = kernel_constants(params(3));
        assert!((kc.alpha - 3.7289318964809231499).abs() < 1e-13);
        assert!((kc.beta - 1.4228538171377064207).abs() < 1e-13);
        for n in 1..=6 {
            let kc = kernel_constants(params(n));
            assert!(kc.alpha > 0.0 && kc.beta > 0.0);
        }
    }

    #[test]
    fn kernel_b_at_zero_argument() {
        // only the leading term of the first series survives: alpha/Gamma(1/(2n))
        let want = [
            (1, 0.75112554446494248286),
            (2, 0.68107621033882869135),
            (3, 0.66991020547312179517),
        ];
        for (n, value) in want {
            let got = kernel_b(
                params(n),
                Sector::One,
                C64::new(0.0, 0.0),
                C64::new(1.3, 0.0),
            )
            .unwrap();
            assert!((got - C64::new(value, 0.0)).norm() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn kernel_b_classical_form_at_n1() {
        // B(z, x) = pi^{-1/4} e^{sqrt2 z x}
        let z = C64::new(1.0, 0.0);
        let x = C64::new(1.0, 0.0);
        let got = kernel_b(params(1), Sector::One, z, x).unwrap();
        let want = SQRT_2.exp() / PI_QUARTER;
        assert!((got.re - want).abs() < 1e-12 * want, "{got} vs {want}");
        assert!(got.im.abs() < 1e-14);
        // sector two agrees at n = 1
        let got2 = kernel_b(params(1), Sector::Two, z, x).unwrap();
        assert!((got2 - got).norm() < 1e-12 * want);
    }

    #[test]
    fn kernel_b_symmetric_in_z_and_x() {
        let z = C64::new(0.8, 0.6);
        let x = C64::new(1.4, 0.0);
        for n in 1..=3 {
            for sector in [Sector::One, Sector::Two] {
                let zx = kernel_b(params(n), sector, z, x).unwrap();
                let xz = kernel_b(params(n), sector, x, z).unwrap();
                assert!((zx - xz).norm() < 1e-13 * zx.norm().max(1.0));
            }
        }
    }

    #[test]
    fn kernel_b_matches_truncated_double_series() {
        for n in 1..=3u32 {
            for (z, x) in [
                (C64::new(0.9, 0.0), 1.1f64),
                (C64::new(1.3, -0.8), 1.9),
                (C64::new(0.0, 2.0), 2.0),
            ] {
                let (b1, b2) = kernel_series_in_x(params(n), z);
                let series1 = eval_series(&b1, x);
                let series2 = eval_series(&b2, x);
                let closed1 = kernel_b(params(n), Sector::One, z, C64::new(x, 0.0)).unwrap();
                let closed2 = kernel_b(params(n), Sector::Two, z, C64::new(x, 0.0)).unwrap();
                // Complex z makes the defining series alternate, so the
                // value itself can be tiny compared to the terms summed.
                // Scale by the same kernel at (|z|, x), where every term is
                // positive: that majorant bounds the term sizes both paths
                // actually add, which is the right yardstick for agreement.
                let zm = C64::new(z.norm(), 0.0);
                let major1 = kernel_b(params(n), Sector::One, zm, C64::new(x, 0.0))
                    .unwrap()
                    .re;
                let major2 = kernel_b(params(n), Sector::Two, zm, C64::new(x, 0.0))
                    .unwrap()
                    .re;
                assert!(
                    (series1 - closed1).norm() < 1e-10 * major1.max(1.0),
                    "B1 n={n} z={z} x={x}"
                );
                assert!(
                    (series2 - closed2).norm() < 1e-10 * major2.max(1.0),
                    "B2 n={n} z={z} x={x}"
                );
            }
        }
    }

    #[test]
    fn kernel_a_classical_grid_at_n1() {
        let p = params(1);
        for iz in 0..5 {
            for ix in 0..5 {
                let z = C64::new(-1.0 + 0.5 * iz as f64, 0.0);
                let x = -1.0 + 0.5 * ix as f64;
                let got = kernel_a(p, Sector::One, z, x).unwrap();
                let want = (-z * z / 2.0 + SQRT_2 * z * x - x * x / 2.0).exp() / PI_QUARTER;
                assert!((got - want).norm() < 1e-12, "z={z} x={x}");
            }
        }
        // a complex sample off the real axis
        let z = C64::new(0.7, -1.2);
        let x = 0.9;
        let got = kernel_a(p, Sector::One, z, x).unwrap();
        let want = (-z * z / 2.0 + SQRT_2 * z * x - x * x / 2.0).exp() / PI_QUARTER;
        assert!((got - want).norm() < 1e-12 * want.norm());
        // A(0,0) = pi^{-1/4}
        let got = kernel_a(p, Sector::One, C64::new(0.0, 0.0), 0.0).unwrap();
        assert!((got.re - 1.0 / PI_QUARTER).abs() < 1e-14);
    }

    #[test]
    fn forward_spectral_maps_ground_states_to_level_zero() {
        for n in 1..=3 {
            let e0 = forward_spectral(&ground_state(params(n), Sector::One)).unwrap();
            let want = basis_vector(params(n), Sector::One, 0);
            assert!((e0.coeff(0) - want.coeff(0)).norm() < 1e-12, "n = {n}");
            let te0 = forward_spectral(&ground_state(params(n), Sector::Two)).unwrap();
            let want = basis_vector(params(n), Sector::Two, 0);
            let e = Sector::Two.exponent_of(params(n), 0);
            assert!((te0.coeff(e) - want.coeff(e)).norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn forward_spectral_is_linear_on_eigenfunctions() {
        let p = params(2);
        let psi1 = eigenfunction(p, Sector::One, 1).unwrap();
        let psi4 = eigenfunction(p, Sector::One, 4).unwrap();
        let f = psi1.scaled(0.3).add_scaled(&psi4, 0.7).unwrap();
        let holo = forward_spectral(&f).unwrap();
        let want = basis_vector(p, Sector::One, 1)
            .scaled(C64::new(0.3, 0.0))
            .add_scaled(&basis_vector(p, Sector::One, 4), C64::new(0.7, 0.0))
            .unwrap();
        let diff = holo.sub(&want).unwrap();
        let worst = diff.coeffs().values().fold(0.0f64, |m, c| m.max(c.norm()));
        assert!(worst < 1e-12);
    }

    #[test]
    fn forward_spectral_transports_bases() {
        for n in 1..=3u32 {
            for sector in [Sector::One, Sector::Two] {
                for level in 0..=6u32 {
                    let psi = eigenfunction(params(n), sector, level).unwrap();
                    let holo = forward_spectral(&psi).unwrap();
                    let want = basis_vector(params(n), sector, level);
                    let diff = holo.sub(&want).unwrap();
                    let worst = diff.coeffs().values().fold(0.0f64, |m, c| m.max(c.norm()));
                    assert!(worst < 1e-10, "n={n} {sector} l={level}: {worst:.3e}");
                }
            }
        }
    }

    #[test]
    fn forward_spectral_preserves_norm() {
        let p = params(2);
        let mut f = WeightedPoly::zero(p, Sector::One);
        for (l, c) in [(0, 0.4), (1, -0.7), (2, 0.2), (5, 0.55)] {
            f = f
                .add_scaled(&eigenfunction(p, Sector::One, l).unwrap(), c)
                .unwrap();
        }
        let norm_in = f.norm().unwrap();
        let norm_out = forward_spectral(&f).unwrap().norm().unwrap();
        assert!((norm_in - norm_out).abs() < 1e-12 * norm_in);
    }

    #[test]
    fn forward_quadrature_sends_ground_state_to_one() {
        for n in 1..=2u32 {
            let p = params(n);
            let psi0 = ground_state(p, Sector::One);
            let rule = forward_rule(p, 0, 1e-11).unwrap();
            for z in [
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(-0.6, 1.1),
                C64::new(0.0, 1.9),
            ] {
                let got = forward_quadrature(&psi0, &rule, z).unwrap();
                assert!(
                    (got - C64::new(1.0, 0.0)).norm() < 1e-9,
                    "n={n} z={z}: {got}"
                );
            }
        }
    }

    #[test]
    fn forward_quadrature_matches_spectral_path() {
        let p = params(2);
        let psi2 = eigenfunction(p, Sector::One, 2).unwrap();
        let rule = forward_rule(p, psi2.max_exponent().unwrap(), 1e-11).unwrap();
        let z = C64::new(1.3, 0.0);
        let got = forward_quadrature(&psi2, &rule, z).unwrap();
        let want = eval_holo(&basis_vector(p, Sector::One, 2), z);
        assert!(
            (got - want).norm() < 1e-7 * want.norm().max(1.0),
            "{got} vs {want}"
        );
        // zero input transforms to zero
        let zero = WeightedPoly::zero(p, Sector::One);
        let got = forward_quadrature(&zero, &rule, z).unwrap();
        assert_eq!(got, C64::new(0.0, 0.0));
    }

    #[test]
    fn inverse_quadrature_recovers_ground_state() {
        for n in 1..=2u32 {
            let p = params(n);
            let e0 = basis_vector(p, Sector::One, 0);
            let rule = inverse_rule(p, Sector::One, 0, 1e-10).unwrap();
            let psi0 = ground_state(p, Sector::One);
            for x in [0.0f64, 0.5, 1.0] {
                let got = inverse_quadrature(&e0, &rule, x).unwrap();
                let want = eval_real(&psi0, x);
                assert!((got.re - want).abs() < 1e-7, "n={n} x={x}: {got} vs {want}");
                assert!(got.im.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn round_trip_is_identity_on_an_eigenfunction() {
        let p = params(1);
        let psi3 = eigenfunction(p, Sector::One, 3).unwrap();
        let holo = forward_spectral(&psi3).unwrap();
        let rule = inverse_rule(p, Sector::One, holo.max_exponent().unwrap(), 1e-10).unwrap();
        for x in [-1.5f64, -0.4, 0.3, 1.1] {
            let got = inverse_quadrature(&holo, &rule, x).unwrap();
            let want = eval_real(&psi3, x);
            assert!((got.re - want).abs() < 1e-6, "x={x}: {} vs {want}", got.re);
        }
    }

    #[test]
    fn inverse_quadrature_rejects_mismatched_rule() {
        let p = params(2);
        let e0 = basis_vector(p, Sector::One, 0);
        let rule = inverse_rule(p, Sector::Two, 4, 1e-8).unwrap();
        assert!(matches!(
            inverse_quadrature(&e0, &rule, 0.5),
            Err(Error::SectorMismatch { .. })
        ));
    }

    #[test]
    fn diagram_commutes_for_all_ladder_operators() {
        let p = params(2);
        for level in 0..=3u32 {
            let psi = eigenfunction(p, Sector::One, level).unwrap();
            let tpsi = eigenfunction(p, Sector::Two, level).unwrap();
            for (op, f) in [
                (LadderOp::A, &psi),
                (LadderOp::BStar, &psi),
                (LadderOp::B, &tpsi),
                (LadderOp::AStar, &tpsi),
            ] {
                let r = diagram_residual(op, f).unwrap();
                assert!(r <= 1e-9, "op {op:?} level {level}: {r:.3e}");
            }
        }
        // both paths vanish identically on the annihilated ground state
        let r = diagram_residual(LadderOp::A, &ground_state(p, Sector::One)).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn coherent_relations_hold_pointwise() {
        // classical case is near machine exact
        let r = coherent_residual(params(1), C64::new(0.7, 0.0), 0.4).unwrap();
        assert!(r < 1e-10, "{r:.3e}");
        // z = 0 degenerates to the homogeneous identity
        let r = coherent_residual(params(2), C64::new(0.0, 0.0), 1.0).unwrap();
        assert!(r < 1e-10, "{r:.3e}");
        // generic n = 2 point
        let r = coherent_residual(params(2), C64::new(0.9, 0.0), 1.1).unwrap();
        assert!(r < 1e-8, "{r:.3e}");
        // complex z
        let r = coherent_residual(params(2), C64::new(0.5, 0.8), -1.2).unwrap();
        assert!(r < 1e-8, "{r:.3e}");
        // the x = 0 singular point is rejected for n >= 2 but fine at n = 1
        assert!(matches!(
            coherent_residual(params(2), C64::new(0.4, 0.0), 0.0),
            Err(Error::SingularPoint { .. })
        ));
        assert!(coherent_residual(params(1), C64::new(0.4, 0.0), 0.0).is_ok());
    }
}
