//! Deterministic quadrature for the two geometries in play: real-line
//! integrals against the generalized Gaussian decay e^{-x^{2n}/n} (products
//! of two weighted polynomials) and complex-plane integrals against the
//! radial Bessel weights in polar form.
//!
//! Both rules are truncated Gauss-Legendre constructions. The truncation
//! length comes from an explicit decay envelope; the node count is then
//! calibrated against exact moment targets (real line: the generalized
//! Gaussian moments; polar: the inverse squared basis constants). Builders
//! fail loudly when the node budget cannot reach the requested tolerance.
//! Summation is pairwise everywhere so results are independent of platform
//! fold order.

use crate::holomorphic::{basis_constant, weight};
use crate::realline::{Sector, SusyParams};
use crate::specfun::gaussian_moment;
use crate::{Error, Result, C64};

const MAX_NODES: usize = 2000;
const PI: f64 = std::f64::consts::PI;

/// Pairwise (cascade) summation: deterministic and with O(log n) error
/// growth instead of O(n).
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let (a, b) = values.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn pairwise_sum_complex(values: &[C64]) -> C64 {
    match values.len() {
        0 => C64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let (a, b) = values.split_at(len / 2);
            pairwise_sum_complex(a) + pairwise_sum_complex(b)
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence. Nodes are mirrored so symmetry is exact.
fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    debug_assert!(m >= 1);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=m {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_m(x), p0 = P_{m-1}(x)
            dp = mf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Symmetric rule on [-L, L] for integrands with generalized Gaussian decay.
#[derive(Clone, Debug)]
pub struct RealRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    halfwidth: f64,
}

impl RealRule {
    /// Plain Gauss-Legendre rule mapped onto [-halfwidth, halfwidth], with
    /// no calibration. Building block for the calibrated constructor and for
    /// refinement studies.
    pub fn gauss_legendre(node_count: usize, halfwidth: f64) -> RealRule {
        let (t, w) = gauss_legendre(node_count);
        RealRule {
            nodes: t.iter().map(|t| t * halfwidth).collect(),
            weights: w.iter().map(|w| w * halfwidth).collect(),
            halfwidth,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Same halfwidth, twice the nodes (for refinement checks).
    pub fn doubled(&self) -> RealRule {
        RealRule::gauss_legendre(2 * self.node_count(), self.halfwidth)
    }
}

/// Smallest truncation point where the log envelope
/// degree*ln(r) - r^{2n}/(2n) drops below ln(bound), stepped on a fixed
/// deterministic grid.
fn truncation_radius(n: u32, degree: f64, bound: f64) -> Result<f64> {
    let log_bound = bound.ln();
    let mut r = 1.0f64;
    loop {
        let log_envelope = degree * r.ln() - r.powi(2 * n as i32) / (2.0 * n as f64);
        if log_envelope < log_bound {
            return Ok(r);
        }
        r += 0.125;
        if r > 64.0 {
            return Err(Error::Calibration {
                message: format!(
                    "no truncation radius below 64 reaches envelope bound {bound:.3e} \
                     (n = {n}, degree = {degree})"
                ),
            });
        }
    }
}

/// Builds a rule that reproduces every even generalized Gaussian moment
/// x^j e^{-x^{2n}/n}, j <= max_degree, within `tol` relative. The halfwidth
/// is set where the worst monomial-times-half-Gaussian envelope falls below
/// tol/100; the node count grows until calibration passes.
pub fn build_real_rule(params: SusyParams, max_degree: u32, tol: f64) -> Result<RealRule> {
    if tol <= 0.0 {
        return Err(Error::Domain {
            context: "build_real_rule",
            message: "tolerance must be positive".into(),
        });
    }
    let n = params.n();
    let halfwidth = truncation_radius(n, max_degree as f64, tol * 1e-2)?;
    let mut m = (max_degree as usize + 16).max(32);
    loop {
        let rule = RealRule::gauss_legendre(m, halfwidth);
        let mut worst = 0.0f64;
        for j in (0..=max_degree).step_by(2) {
            let target = gaussian_moment(n, j)?;
            let got = integrate_real(
                |x| x.powi(j as i32) * (-x.powi(2 * n as i32) / n as f64).exp(),
                &rule,
            )?;
            worst = worst.max(((got - target) / target).abs());
        }
        if worst <= tol {
            return Ok(rule);
        }
        if m >= MAX_NODES {
            return Err(Error::Calibration {
                message: format!(
                    "real rule stuck at relative error {worst:.3e} > {tol:.3e} \
                     with {m} nodes (n = {n}, max_degree = {max_degree})"
                ),
            });
        }
        m = (m * 3 / 2 + 8).min(MAX_NODES);
    }
}

/// Weighted sum over the rule nodes. Rejects non-finite samples with the
/// offending node identified.
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, rule: &RealRule) -> Result<f64> {
    let mut terms = Vec::with_capacity(rule.nodes.len());
    for (index, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let value = f(x);
        if !value.is_finite() {
            return Err(Error::NonFiniteSample {
                index,
                at: format!("x = {x:.17e}"),
                message: format!("integrand returned {value}"),
            });
        }
        terms.push(w * value);
    }
    Ok(pairwise_sum(&terms))
}

/// Polar rule for integrals of f(z, conj z) rho_sector against Lebesgue
/// measure on the disc |z| <= radius. The radial direction substitutes
/// u = r^2 (under which both weights are analytic through the origin) and
/// applies Gauss-Legendre on [0, radius^2]; the angular direction is the
/// uniform M-point trapezoid, exact for trigonometric polynomials of degree
/// below M. Radial weights absorb the Jacobian and the sector weight.
#[derive(Clone, Debug)]
pub struct PolarRule {
    params: SusyParams,
    sector: Sector,
    radial_nodes: Vec<f64>,
    radial_weights: Vec<f64>,
    angular_count: usize,
    radius: f64,
}

impl PolarRule {
    #[inline]
    pub fn params(&self) -> SusyParams {
        self.params
    }

    #[inline]
    pub fn sector(&self) -> Sector {
        self.sector
    }

    #[inline]
    pub fn radial_count(&self) -> usize {
        self.radial_nodes.len()
    }

    #[inline]
    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn radial_nodes(&self) -> &[f64] {
        &self.radial_nodes
    }

    pub fn radial_weights(&self) -> &[f64] {
        &self.radial_weights
    }
}

fn polar_radial_rule(
    params: SusyParams,
    sector: Sector,
    m: usize,
    radius: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let (t, glw) = gauss_legendre(m);
    let u_max = radius * radius;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (t, glw) in t.into_iter().zip(glw) {
        let u = 0.5 * u_max * (t + 1.0);
        let r = u.sqrt();
        let rho = weight(params, sector, C64::new(r, 0.0))?;
        nodes.push(r);
        weights.push(0.5 * u_max * glw * 0.5 * rho);
    }
    Ok((nodes, weights))
}

/// Radial-only shortcut for rotation-invariant monomials:
/// integral of |z|^{2k} rho dA = 2 pi * sum_i W_i r_i^{2k}.
fn radial_monomial_integral(nodes: &[f64], weights: &[f64], k: u32) -> f64 {
    let terms: Vec<f64> = nodes
        .iter()
        .zip(weights)
        .map(|(&r, &w)| w * r.powi(2 * k as i32))
        .collect();
    2.0 * PI * pairwise_sum(&terms)
}

/// Builds a polar rule calibrated so that every rotation-invariant monomial
/// integral with exponent on the sector lattice, up to `max_exponent`,
/// reproduces the orthonormality-implied target 1/basis_constant^2 within
/// `tol` relative.
pub fn build_polar_rule(
    params: SusyParams,
    sector: Sector,
    max_exponent: u32,
    tol: f64,
) -> Result<PolarRule> {
    if tol <= 0.0 {
        return Err(Error::Domain {
            context: "build_polar_rule",
            message: "tolerance must be positive".into(),
        });
    }
    let n = params.n();
    // conservative envelope: half the weight's true decay rate, so the same
    // radius also covers kernel-carrying integrands in inverse transforms
    let radius = truncation_radius(n, (2 * max_exponent + n) as f64, tol * 1e-2)?;
    let angular_count = (2 * max_exponent as usize + 4).max(8);
    let targets: Vec<(u32, f64)> = (0..)
        .map(|l| sector.exponent_of(params, l))
        .take_while(|&e| e <= max_exponent)
        .enumerate()
        .map(|(l, e)| {
            let b = basis_constant(params, sector, l as u32);
            (e, 1.0 / (b * b))
        })
        .collect();
    let mut m = (32 + max_exponent as usize).max(48);
    loop {
        let (nodes, weights) = polar_radial_rule(params, sector, m, radius)?;
        let mut worst = 0.0f64;
        for &(k, target) in &targets {
            let got = radial_monomial_integral(&nodes, &weights, k);
            worst = worst.max(((got - target) / target).abs());
        }
        if worst <= tol {
            return Ok(PolarRule {
                params,
                sector,
                radial_nodes: nodes,
                radial_weights: weights,
                angular_count,
                radius,
            });
        }
        if m >= MAX_NODES {
            return Err(Error::Calibration {
                message: format!(
                    "polar rule stuck at relative error {worst:.3e} > {tol:.3e} \
                     with {m} radial nodes (n = {n}, {sector}, max_exponent = {max_exponent})"
                ),
            });
        }
        m = (m * 3 / 2 + 8).min(MAX_NODES);
    }
}

/// Integral of f(z, conj z) rho_sector dA over the truncated disc. The
/// sector weight is already folded into the radial weights; node order is
/// fixed (radial outer, angular inner) and summation pairwise.
pub fn integrate_polar<F: Fn(C64, C64) -> C64>(f: F, rule: &PolarRule) -> Result<C64> {
    let m = rule.angular_count;
    let mut radial_terms = Vec::with_capacity(rule.radial_nodes.len());
    let mut angular_terms = Vec::with_capacity(m);
    for (i, (&r, &w)) in rule
        .radial_nodes
        .iter()
        .zip(&rule.radial_weights)
        .enumerate()
    {
        angular_terms.clear();
        for j in 0..m {
            let theta = 2.0 * PI * j as f64 / m as f64;
            let z = C64::new(r * theta.cos(), r * theta.sin());
            let value = f(z, z.conj());
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(Error::NonFiniteSample {
                    index: i * m + j,
                    at: format!("z = {z}"),
                    message: format!("integrand returned {value}"),
                });
            }
            angular_terms.push(value);
        }
        radial_terms.push(pairwise_sum_complex(&angular_terms) * w);
    }
    Ok(pairwise_sum_complex(&radial_terms) * (2.0 * PI / m as f64))
}
