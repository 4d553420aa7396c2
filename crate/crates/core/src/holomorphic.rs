//! The holomorphic sides of the pair: entire-function spaces carried by
//! monomial coefficient vectors.
//!
//! Each sector has an orthonormal basis of normalized monomials e_l (sector
//! one) and tilde-e_l (sector two) whose exponents run over the same
//! congruence lattices as the real-line eigenfunctions. The module provides
//! the bases, the holomorphic ladder operators (z^{1-n} d/dz and its
//! partner, with multiplication by z^n as adjoints), the positive radial
//! weights rho_1/rho_2 built from the modified Bessel function K_nu, and the
//! two-term hypergeometric closed forms of the reproducing kernels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::realline::{Sector, SusyParams};
use crate::specfun::{bessel_k, hyp0f1, lgamma, SeriesConfig};
use crate::{Error, Result, C64};

/// An entire function F(z) = sum_k coeffs[k] z^k with finite lattice-valid
/// support in one of the two sectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HoloJson", into = "HoloJson")]
pub struct HoloVector {
    params: SusyParams,
    sector: Sector,
    coeffs: BTreeMap<u32, C64>,
}

/// JSON shape: {"n": 2, "sector": "one", "coeffs": {"4": [0.5, -0.1]}}.
#[derive(Serialize, Deserialize)]
struct HoloJson {
    n: u32,
    sector: Sector,
    coeffs: BTreeMap<String, [f64; 2]>,
}

impl TryFrom<HoloJson> for HoloVector {
    type Error = Error;

    fn try_from(raw: HoloJson) -> Result<HoloVector> {
        let params = SusyParams::new(raw.n)?;
        let mut coeffs = BTreeMap::new();
        for (key, [re, im]) in raw.coeffs {
            let exponent: u32 = key.parse().map_err(|_| Error::Domain {
                context: "HoloVector",
                message: format!("coefficient key {key:?} is not a non-negative integer"),
            })?;
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Domain {
                    context: "HoloVector",
                    message: format!("coefficient at exponent {exponent} is not finite"),
                });
            }
            coeffs.insert(exponent, C64::new(re, im));
        }
        HoloVector::from_coeffs(params, raw.sector, coeffs)
    }
}

impl From<HoloVector> for HoloJson {
    fn from(v: HoloVector) -> HoloJson {
        HoloJson {
            n: v.params.n(),
            sector: v.sector,
            coeffs: v
                .coeffs
                .into_iter()
                .map(|(e, c)| (e.to_string(), [c.re, c.im]))
                .collect(),
        }
    }
}

impl HoloVector {
    pub fn zero(params: SusyParams, sector: Sector) -> HoloVector {
        HoloVector {
            params,
            sector,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(
        params: SusyParams,
        sector: Sector,
        coeffs: BTreeMap<u32, C64>,
    ) -> Result<HoloVector> {
        for (&exponent, &value) in &coeffs {
            if value != C64::new(0.0, 0.0) && !sector.admits(params, exponent) {
                return Err(Error::LatticeViolation {
                    exponent: exponent as i64,
                    sector,
                    n: params.n(),
                });
            }
        }
        let mut v = HoloVector {
            params,
            sector,
            coeffs,
        };
        v.coeffs.retain(|_, c| *c != C64::new(0.0, 0.0));
        Ok(v)
    }

    pub fn monomial(params: SusyParams, sector: Sector, exponent: u32, c: C64) -> Result<Self> {
        Self::from_coeffs(params, sector, BTreeMap::from([(exponent, c)]))
    }

    #[inline]
    pub fn params(&self) -> SusyParams {
        self.params
    }

    #[inline]
    pub fn sector(&self) -> Sector {
        self.sector
    }

    #[inline]
    pub fn coeffs(&self) -> &BTreeMap<u32, C64> {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: u32) -> C64 {
        self.coeffs
            .get(&exponent)
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scaled(&self, s: C64) -> HoloVector {
        let mut out = self.clone();
        out.coeffs.values_mut().for_each(|c| *c *= s);
        out.coeffs.retain(|_, c| *c != C64::new(0.0, 0.0));
        out
    }

    pub fn add_scaled(&self, other: &HoloVector, s: C64) -> Result<HoloVector> {
        check_same_space(self, other, "add_scaled")?;
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &other.coeffs {
            let entry = coeffs.entry(e).or_insert(C64::new(0.0, 0.0));
            *entry += s * c;
        }
        coeffs.retain(|_, c| *c != C64::new(0.0, 0.0));
        Ok(HoloVector {
            params: self.params,
            sector: self.sector,
            coeffs,
        })
    }

    pub fn sub(&self, other: &HoloVector) -> Result<HoloVector> {
        self.add_scaled(other, C64::new(-1.0, 0.0))
    }

    /// Norm in the sector inner product (exact basis-coefficient sum).
    pub fn norm(&self) -> Result<f64> {
        Ok(holo_inner_product(self, self)?.re.max(0.0).sqrt())
    }
}

fn check_same_space(f: &HoloVector, g: &HoloVector, context: &str) -> Result<()> {
    if f.params != g.params || f.sector != g.sector {
        return Err(Error::SectorMismatch {
            message: format!(
                "{context}: operands live in (n = {}, {}) and (n = {}, {})",
                f.params.n(),
                f.sector,
                g.params.n(),
                g.sector
            ),
        });
    }
    Ok(())
}

/// Holomorphic ladder operators. frak_a = z^{1-n} d/dz maps sector one to
/// two; frak_b = d/dz z^{1-n} maps two to one; the adjoints multiply by z^n
/// in the opposite directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoloLadderOp {
    FrakA,
    FrakB,
    FrakAStar,
    FrakBStar,
}

impl HoloLadderOp {
    pub fn domain(self) -> Sector {
        match self {
            HoloLadderOp::FrakA | HoloLadderOp::FrakBStar => Sector::One,
            HoloLadderOp::FrakB | HoloLadderOp::FrakAStar => Sector::Two,
        }
    }

    pub fn codomain(self) -> Sector {
        match self {
            HoloLadderOp::FrakA | HoloLadderOp::FrakBStar => Sector::Two,
            HoloLadderOp::FrakB | HoloLadderOp::FrakAStar => Sector::One,
        }
    }
}

/// Normalization constant of the level-`level` basis monomial, computed in
/// log space. With k = level/2 the four cases are
/// sqrt(Gamma(1/(2n)) / ((2n)^p Gamma(g) k!)) for
/// (p, g) = (2k, k+1/(2n)), (2k+2-1/n, k+2-1/(2n)) in sector one and
/// (2k+1-1/n, k+1-1/(2n)), (2k+1, k+1+1/(2n)) in sector two.
pub fn basis_constant(params: SusyParams, sector: Sector, level: u32) -> f64 {
    let n = params.nf();
    let k = (level / 2) as f64;
    let (p, g) = match (sector, level % 2) {
        (Sector::One, 0) => (2.0 * k, k + 1.0 / (2.0 * n)),
        (Sector::One, _) => (2.0 * k + 2.0 - 1.0 / n, k + 2.0 - 1.0 / (2.0 * n)),
        (Sector::Two, 0) => (2.0 * k + 1.0 - 1.0 / n, k + 1.0 - 1.0 / (2.0 * n)),
        (Sector::Two, _) => (2.0 * k + 1.0, k + 1.0 + 1.0 / (2.0 * n)),
    };
    let log_c2 = lgamma(1.0 / (2.0 * n)) - p * (2.0 * n).ln() - lgamma(g) - lgamma(k + 1.0);
    (0.5 * log_c2).exp()
}

/// The level-`l` orthonormal basis monomial of a sector.
pub fn basis_vector(params: SusyParams, sector: Sector, level: u32) -> HoloVector {
    let exponent = sector.exponent_of(params, level);
    let c = basis_constant(params, sector, level);
    HoloVector {
        params,
        sector,
        coeffs: BTreeMap::from([(exponent, C64::new(c, 0.0))]),
    }
}

/// Exact monomial action of the holomorphic ladders:
/// frak_a: c z^k -> c k z^{k-n}; frak_b: c z^k -> c (k-n+1) z^{k-n};
/// both adjoints: c z^k -> c z^{k+n}.
pub fn apply_holo_ladder(op: HoloLadderOp, f: &HoloVector) -> Result<HoloVector> {
    if f.sector != op.domain() {
        return Err(Error::SectorMismatch {
            message: format!(
                "holomorphic operator expects sector {}, got sector {}",
                op.domain(),
                f.sector
            ),
        });
    }
    let n = f.params.n() as i64;
    let sector = op.codomain();
    let mut coeffs = BTreeMap::new();
    for (&eu, &c) in &f.coeffs {
        let k = eu as i64;
        let (e, value) = match op {
            HoloLadderOp::FrakA => (k - n, c * k as f64),
            HoloLadderOp::FrakB => (k - n, c * (k - n + 1) as f64),
            HoloLadderOp::FrakAStar | HoloLadderOp::FrakBStar => (k + n, c),
        };
        if value == C64::new(0.0, 0.0) {
            continue;
        }
        if e < 0 || !sector.admits(f.params, e as u32) {
            return Err(Error::LatticeViolation {
                exponent: e,
                sector,
                n: f.params.n(),
            });
        }
        coeffs.insert(e as u32, value);
    }
    Ok(HoloVector {
        params: f.params,
        sector,
        coeffs,
    })
}

/// Sector inner product by orthonormal expansion: monomial coefficients are
/// divided by the basis constants, then sum_l fhat_l conj(ghat_l)
/// (conjugate-linear in the second argument). Exact for finite vectors.
pub fn holo_inner_product(f: &HoloVector, g: &HoloVector) -> Result<C64> {
    check_same_space(f, g, "holo_inner_product")?;
    let mut total = C64::new(0.0, 0.0);
    for (&e, &fc) in &f.coeffs {
        let Some(gc) = g.coeffs.get(&e) else {
            continue;
        };
        let level = f
            .sector
            .level_of(f.params, e)
            .expect("lattice validity is a construction invariant");
        let b = basis_constant(f.params, f.sector, level);
        total += (fc / b) * (gc / b).conj();
    }
    Ok(total)
}

/// Radial weight functions of the two sectors:
/// rho = C (z zbar)^{n-1/2} K_nu((z zbar)^n / n) with nu = 1 - 1/(2n) for
/// sector one, nu = 1/(2n) for sector two, and the shared constant
/// C = 2 / ((2n)^{1/(2n)} pi Gamma(1/(2n))). The removable limit at z = 0 is
/// evaluated in closed form from the small-argument Bessel expansion.
pub fn weight(params: SusyParams, sector: Sector, z: C64) -> Result<f64> {
    let n = params.nf();
    let u = z.norm_sqr();
    let arg = u.powi(params.n() as i32) / n;
    if arg == 0.0 {
        return Ok(match sector {
            Sector::One => {
                (lgamma(1.0 - 1.0 / (2.0 * n)) - lgamma(1.0 / (2.0 * n))).exp()
                    * (2.0 * n).powf(1.0 - 1.0 / n)
                    / std::f64::consts::PI
            }
            Sector::Two if params.n() == 1 => 1.0 / std::f64::consts::PI,
            Sector::Two => 0.0,
        });
    }
    let nu = match sector {
        Sector::One => 1.0 - 1.0 / (2.0 * n),
        Sector::Two => 1.0 / (2.0 * n),
    };
    let log_shared = std::f64::consts::LN_2
        - (1.0 / (2.0 * n)) * (2.0 * n).ln()
        - std::f64::consts::PI.ln()
        - lgamma(1.0 / (2.0 * n));
    Ok(log_shared.exp() * u.powf(n - 0.5) * bessel_k(nu, arg, &SeriesConfig::default())?)
}

/// Reproducing kernel value F_w(z) (sector one) or its sector-two partner,
/// through the two-term 0F1 closed forms. Both reduce to exp(z conj(w)) at
/// n = 1.
pub fn reproducing_kernel(params: SusyParams, sector: Sector, w: C64, z: C64) -> Result<C64> {
    let n = params.nf();
    let cfg = SeriesConfig::default();
    let t = z * w.conj();
    let v = t.powu(2 * params.n()) / ((2.0 * n) * (2.0 * n));
    match sector {
        Sector::One => {
            let first = hyp0f1(1.0 / (2.0 * n), v, &cfg)?;
            let ratio = (lgamma(1.0 / (2.0 * n)) - lgamma(2.0 - 1.0 / (2.0 * n))).exp()
                / (2.0 * n).powf(2.0 - 1.0 / n);
            let second = hyp0f1(2.0 - 1.0 / (2.0 * n), v, &cfg)?;
            Ok(first + ratio * t.powu(2 * params.n() - 1) * second)
        }
        Sector::Two => {
            let ratio = (lgamma(1.0 / (2.0 * n)) - lgamma(1.0 - 1.0 / (2.0 * n))).exp()
                / (2.0 * n).powf(1.0 - 1.0 / n);
            let first = hyp0f1(1.0 - 1.0 / (2.0 * n), v, &cfg)?;
            let second = hyp0f1(1.0 + 1.0 / (2.0 * n), v, &cfg)?;
            Ok(ratio * t.powu(params.n() - 1) * first + t.powu(params.n()) * second)
        }
    }
}

/// Truncated kernel element F_w = sum_{l <= levels} conj(e_l(w)) e_l as a
/// coefficient vector, for reproducing-property checks.
pub fn kernel_vector(params: SusyParams, sector: Sector, w: C64, levels: u32) -> HoloVector {
    let mut coeffs = BTreeMap::new();
    for l in 0..=levels {
        let e = sector.exponent_of(params, l);
        let b = basis_constant(params, sector, l);
        let value = (b * w.powu(e)).conj() * b;
        if value != C64::new(0.0, 0.0) {
            coeffs.insert(e, value);
        }
    }
    HoloVector {
        params,
        sector,
        coeffs,
    }
}

/// Pointwise evaluation of the monomial sum (Horner over exponent gaps).
pub fn eval_holo(f: &HoloVector, z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    let mut prev: Option<u32> = None;
    for (&e, &c) in f.coeffs.iter().rev() {
        acc = match prev {
            None => c,
            Some(p) => acc * z.powu(p - e) + c,
        };
        prev = Some(e);
    }
    if let Some(lowest) = prev {
        acc *= z.powu(lowest);
    }
    acc
}
