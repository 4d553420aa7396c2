//! Weighted-polynomial algebra on the real line.
//!
//! Every bound state of the coupled pair of oscillators has the form
//! p(x) exp(-x^{2n}/(2n)) with p a sparse polynomial whose exponents live on
//! a sector-dependent congruence lattice. This module represents such
//! functions exactly (exponent -> coefficient maps), implements the four
//! ladder operators through their closed-form action on that representation,
//! generates the eigenfunctions both by ladder composition and by the
//! Rodrigues formula, and computes inner products exactly through the
//! generalized Gaussian moments.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::specfun::{gaussian_moment, lgamma};
use crate::{Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Parameters of the coupled pair: the superpotential degree `n`.
///
/// The coupling constants are determined by `n`: gamma = -1 and
/// delta = 2n - 1, so that a*a = bb* + gamma and aa* = b*b + delta.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SusyParams {
    n: u32,
}

impl SusyParams {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain {
                context: "SusyParams",
                message: "n must be at least 1".into(),
            });
        }
        Ok(SusyParams { n })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// Coupling constant gamma = -1.
    #[inline]
    pub fn gamma(&self) -> f64 {
        -1.0
    }

    /// Coupling constant delta = 2n - 1.
    #[inline]
    pub fn delta(&self) -> f64 {
        2.0 * self.nf() - 1.0
    }
}

/// The two coupled function spaces.
///
/// Sector one holds the spectrum of a*a (states generated over psi_0);
/// sector two holds the spectrum of b*b (states generated over tilde-psi_0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    One,
    Two,
}

impl Sector {
    /// Whether `exponent` lies on this sector's congruence lattice:
    /// sector one admits exponents = 0 or 2n-1 (mod 2n), sector two admits
    /// n-1 or n (mod 2n). For n = 1 both lattices cover all of N.
    pub fn admits(self, params: SusyParams, exponent: u32) -> bool {
        let n = params.n();
        let m = exponent % (2 * n);
        match self {
            Sector::One => m == 0 || m == 2 * n - 1,
            Sector::Two => m == n - 1 || m == n,
        }
    }

    /// Ladder level whose basis element has top exponent `exponent`, if the
    /// exponent is on the lattice. Levels interleave the two residue classes:
    /// even levels take the lower class, odd levels the upper.
    pub fn level_of(self, params: SusyParams, exponent: u32) -> Option<u32> {
        let n = params.n();
        let m = exponent % (2 * n);
        match self {
            Sector::One => {
                if m == 0 {
                    Some(2 * (exponent / (2 * n)))
                } else if m == 2 * n - 1 {
                    Some(2 * (exponent / (2 * n)) + 1)
                } else {
                    None
                }
            }
            Sector::Two => {
                if m == n - 1 {
                    Some(2 * (exponent / (2 * n)))
                } else if m == n {
                    Some(2 * (exponent / (2 * n)) + 1)
                } else {
                    None
                }
            }
        }
    }

    /// Top exponent of the level-`level` basis element (inverse of
    /// [`Sector::level_of`]).
    pub fn exponent_of(self, params: SusyParams, level: u32) -> u32 {
        let n = params.n();
        let k = level / 2;
        match (self, level % 2) {
            (Sector::One, 0) => 2 * n * k,
            (Sector::One, _) => 2 * n * k + 2 * n - 1,
            (Sector::Two, 0) => 2 * n * k + n - 1,
            (Sector::Two, _) => 2 * n * k + n,
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sector::One => write!(f, "one"),
            Sector::Two => write!(f, "two"),
        }
    }
}

/// A function p(x) exp(-x^{2n}/(2n)) with sparse lattice-valid p.
///
/// Coefficients are stored exponent -> value with exact zeros pruned, so
/// equality of representations is equality of functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct WeightedPoly {
    params: SusyParams,
    sector: Sector,
    coeffs: BTreeMap<u32, f64>,
}

/// JSON shape: {"n": 2, "sector": "one", "coeffs": {"0": 1.5, "4": -0.25}}.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: u32,
    sector: Sector,
    coeffs: BTreeMap<String, f64>,
}

impl TryFrom<PolyJson> for WeightedPoly {
    type Error = Error;

    fn try_from(raw: PolyJson) -> Result<WeightedPoly> {
        let params = SusyParams::new(raw.n)?;
        let mut coeffs = BTreeMap::new();
        for (key, value) in raw.coeffs {
            let exponent: u32 = key.parse().map_err(|_| Error::Domain {
                context: "WeightedPoly",
                message: format!("coefficient key {key:?} is not a non-negative integer"),
            })?;
            if !value.is_finite() {
                return Err(Error::Domain {
                    context: "WeightedPoly",
                    message: format!("coefficient at exponent {exponent} is not finite"),
                });
            }
            coeffs.insert(exponent, value);
        }
        WeightedPoly::from_coeffs(params, raw.sector, coeffs)
    }
}

impl From<WeightedPoly> for PolyJson {
    fn from(poly: WeightedPoly) -> PolyJson {
        PolyJson {
            n: poly.params.n(),
            sector: poly.sector,
            coeffs: poly
                .coeffs
                .into_iter()
                .map(|(e, c)| (e.to_string(), c))
                .collect(),
        }
    }
}

impl WeightedPoly {
    /// The zero function of a sector.
    pub fn zero(params: SusyParams, sector: Sector) -> WeightedPoly {
        WeightedPoly {
            params,
            sector,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from explicit coefficients, rejecting off-lattice exponents.
    pub fn from_coeffs(
        params: SusyParams,
        sector: Sector,
        coeffs: BTreeMap<u32, f64>,
    ) -> Result<WeightedPoly> {
        for (&exponent, &value) in &coeffs {
            if value != 0.0 && !sector.admits(params, exponent) {
                return Err(Error::LatticeViolation {
                    exponent: exponent as i64,
                    sector,
                    n: params.n(),
                });
            }
        }
        let mut poly = WeightedPoly {
            params,
            sector,
            coeffs,
        };
        poly.coeffs.retain(|_, c| *c != 0.0);
        Ok(poly)
    }

    /// Single term c x^e exp(-G).
    pub fn monomial(params: SusyParams, sector: Sector, exponent: u32, c: f64) -> Result<Self> {
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
    pub fn coeffs(&self) -> &BTreeMap<u32, f64> {
        &self.coeffs
    }

    /// Coefficient at `exponent` (zero if absent).
    pub fn coeff(&self, exponent: u32) -> f64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Largest coefficient magnitude (zero function -> 0).
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scaled(&self, s: f64) -> WeightedPoly {
        let mut out = self.clone();
        out.coeffs.values_mut().for_each(|c| *c *= s);
        out.coeffs.retain(|_, c| *c != 0.0);
        out
    }

    /// self + s * other (sectors and params must match).
    pub fn add_scaled(&self, other: &WeightedPoly, s: f64) -> Result<WeightedPoly> {
        check_same_space(self, other, "add_scaled")?;
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &other.coeffs {
            let entry = coeffs.entry(e).or_insert(0.0);
            *entry += s * c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Ok(WeightedPoly {
            params: self.params,
            sector: self.sector,
            coeffs,
        })
    }

    pub fn add(&self, other: &WeightedPoly) -> Result<WeightedPoly> {
        self.add_scaled(other, 1.0)
    }

    pub fn sub(&self, other: &WeightedPoly) -> Result<WeightedPoly> {
        self.add_scaled(other, -1.0)
    }

    /// L^2 norm, via the exact moment formula. Rounding can push the
    /// squared norm of a near-zero difference a hair negative; clamp it.
    pub fn norm(&self) -> Result<f64> {
        Ok(inner_product(self, self)?.max(0.0).sqrt())
    }
}

fn check_same_space(f: &WeightedPoly, g: &WeightedPoly, context: &str) -> Result<()> {
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

/// The four ladder operators. Domains and codomains:
/// `A` and `BStar` map sector one to two; `B` and `AStar` map two to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderOp {
    A,
    B,
    AStar,
    BStar,
}

impl LadderOp {
    pub fn domain(self) -> Sector {
        match self {
            LadderOp::A | LadderOp::BStar => Sector::One,
            LadderOp::B | LadderOp::AStar => Sector::Two,
        }
    }

    pub fn codomain(self) -> Sector {
        match self {
            LadderOp::A | LadderOp::BStar => Sector::Two,
            LadderOp::B | LadderOp::AStar => Sector::One,
        }
    }
}

impl std::fmt::Display for LadderOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LadderOp::A => write!(f, "a"),
            LadderOp::B => write!(f, "b"),
            LadderOp::AStar => write!(f, "a*"),
            LadderOp::BStar => write!(f, "b*"),
        }
    }
}

/// Normalized ground states: sector one is the constant profile
/// n^{1/2-1/(4n)}/sqrt(Gamma(1/(2n))) at exponent 0; sector two is the
/// n^{1/(4n)}/sqrt(Gamma(1-1/(2n))) profile at exponent n-1.
pub fn ground_state(params: SusyParams, sector: Sector) -> WeightedPoly {
    let n = params.nf();
    let (exponent, log_c) = match sector {
        Sector::One => (
            0,
            (0.5 - 1.0 / (4.0 * n)) * n.ln() - 0.5 * lgamma(1.0 / (2.0 * n)),
        ),
        Sector::Two => (
            params.n() - 1,
            (1.0 / (4.0 * n)) * n.ln() - 0.5 * lgamma(1.0 - 1.0 / (2.0 * n)),
        ),
    };
    WeightedPoly {
        params,
        sector,
        coeffs: BTreeMap::from([(exponent, log_c.exp())]),
    }
}

/// Applies a ladder operator through its exact closed-form action on the
/// polynomial part (G := x^{2n}/(2n)):
///
/// - a  (p e^{-G}) = 1/sqrt2 * x^{1-n} p' e^{-G}
/// - b* (p e^{-G}) = 1/sqrt2 * (2 x^n p - x^{1-n} p') e^{-G}
/// - b  (q e^{-G}) = 1/sqrt2 * (x^{1-n} q' - (n-1) x^{-n} q) e^{-G}
/// - a* (q e^{-G}) = 1/sqrt2 * (2 x^n q - x^{1-n} q' + (n-1) x^{-n} q) e^{-G}
///
/// On lattice-valid input every monomial image lands back on the integer
/// lattice: the apparently negative powers carry multiplier zero exactly.
pub fn apply_ladder(op: LadderOp, f: &WeightedPoly) -> Result<WeightedPoly> {
    if f.sector != op.domain() {
        return Err(Error::SectorMismatch {
            message: format!(
                "operator {op} expects sector {}, got sector {}",
                op.domain(),
                f.sector
            ),
        });
    }
    let n = f.params.n() as i64;
    let mut acc: BTreeMap<i64, f64> = BTreeMap::new();
    let mut put = |e: i64, c: f64| {
        if c != 0.0 {
            *acc.entry(e).or_insert(0.0) += c;
        }
    };
    for (&eu, &c) in &f.coeffs {
        let k = eu as i64;
        let kf = k as f64;
        match op {
            // x^{1-n} p' : k -> k - n with factor k
            LadderOp::A => put(k - n, c * kf / SQRT_2),
            // 2 x^n p - x^{1-n} p'
            LadderOp::BStar => {
                put(k + n, c * SQRT_2);
                put(k - n, -c * kf / SQRT_2);
            }
            // x^{1-n} q' - (n-1) x^{-n} q : both terms merge at k - n
            LadderOp::B => put(k - n, c * (kf - n as f64 + 1.0) / SQRT_2),
            // 2 x^n q - x^{1-n} q' + (n-1) x^{-n} q
            LadderOp::AStar => {
                put(k + n, c * SQRT_2);
                put(k - n, -c * (kf - n as f64 + 1.0) / SQRT_2);
            }
        }
    }
    let sector = op.codomain();
    let mut coeffs = BTreeMap::new();
    for (e, c) in acc {
        if c == 0.0 {
            continue;
        }
        if e < 0 || !sector.admits(f.params, e as u32) {
            return Err(Error::LatticeViolation {
                exponent: e,
                sector,
                n: f.params.n(),
            });
        }
        coeffs.insert(e as u32, c);
    }
    Ok(WeightedPoly {
        params: f.params,
        sector,
        coeffs,
    })
}

/// The level-`l` normalized eigenfunction of a sector.
///
/// Sector one: psi_{2m} ~ (a*b*)^m psi_0, psi_{2m+1} ~ (a*b*)^m a* tilde-psi_0.
/// Sector two: tilde-psi_{2m} ~ (b*a*)^m tilde-psi_0,
/// tilde-psi_{2m+1} ~ (b*a*)^m b* psi_0.
/// Normalized to unit L^2 norm with positive leading coefficient.
pub fn eigenfunction(params: SusyParams, sector: Sector, level: u32) -> Result<WeightedPoly> {
    let m = level / 2;
    let mut f = match (sector, level % 2) {
        (Sector::One, 0) => ground_state(params, Sector::One),
        (Sector::One, _) => apply_ladder(LadderOp::AStar, &ground_state(params, Sector::Two))?,
        (Sector::Two, 0) => ground_state(params, Sector::Two),
        (Sector::Two, _) => apply_ladder(LadderOp::BStar, &ground_state(params, Sector::One))?,
    };
    for _ in 0..m {
        f = match sector {
            Sector::One => apply_ladder(LadderOp::AStar, &apply_ladder(LadderOp::BStar, &f)?)?,
            Sector::Two => apply_ladder(LadderOp::BStar, &apply_ladder(LadderOp::AStar, &f)?)?,
        };
    }
    let norm = f.norm()?;
    debug_assert!(norm > 0.0);
    let mut f = f.scaled(1.0 / norm);
    if let Some(top) = f.max_exponent() {
        if f.coeff(top) < 0.0 {
            f = f.scaled(-1.0);
        }
    }
    Ok(f)
}

/// Which of the two Rodrigues seeds to iterate from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RodriguesParity {
    Even,
    Odd,
}

/// Unnormalized eigenfunction from the Rodrigues formula:
///
/// (a*b*)^l seed = (1/2^l) e^{x^{2n}/(2n)} (d/dx x^{2-2n} d/dx)^l
///                 [seed_poly e^{-x^{2n}/n}]
///
/// with seed_poly = 1 (even, seed e^{-G}) or 2 x^{2n-1} (odd). The repeated
/// differentiation is exact on the polynomial x exp(-x^{2n}/n)
/// representation; the result is returned as a sector-one WeightedPoly and
/// must agree with the ladder composition coefficient for coefficient.
pub fn rodrigues_eigenfunction(
    params: SusyParams,
    l: u32,
    parity: RodriguesParity,
) -> Result<WeightedPoly> {
    let n = params.n() as i64;
    // polynomial r in r(x) e^{-x^{2n}/n}, exponents kept signed mid-flight
    let mut r: BTreeMap<i64, f64> = match parity {
        RodriguesParity::Even => BTreeMap::from([(0, 1.0)]),
        RodriguesParity::Odd => BTreeMap::from([(2 * n - 1, 2.0)]),
    };
    // d/dx [r e^{-x^{2n}/n}] = (r' - 2 x^{2n-1} r) e^{-x^{2n}/n}
    let derivative = |r: &BTreeMap<i64, f64>| {
        let mut out: BTreeMap<i64, f64> = BTreeMap::new();
        for (&e, &c) in r {
            if e != 0 {
                *out.entry(e - 1).or_insert(0.0) += c * e as f64;
            }
            *out.entry(e + 2 * n - 1).or_insert(0.0) += -2.0 * c;
        }
        out.retain(|_, c| *c != 0.0);
        out
    };
    for _ in 0..l {
        let step = derivative(&r);
        let shifted: BTreeMap<i64, f64> =
            step.into_iter().map(|(e, c)| (e + 2 - 2 * n, c)).collect();
        r = derivative(&shifted);
    }
    let scale = 0.5f64.powi(l as i32);
    let mut coeffs = BTreeMap::new();
    for (e, c) in r {
        if c == 0.0 {
            continue;
        }
        if e < 0 || !Sector::One.admits(params, e as u32) {
            return Err(Error::LatticeViolation {
                exponent: e,
                sector: Sector::One,
                n: params.n(),
            });
        }
        coeffs.insert(e as u32, c * scale);
    }
    Ok(WeightedPoly {
        params,
        sector: Sector::One,
        coeffs,
    })
}

/// L^2(R, dx) inner product of two weighted polynomials:
/// sum_{j,k} f_j g_k moment(n, j + k). Exact up to rounding.
pub fn inner_product(f: &WeightedPoly, g: &WeightedPoly) -> Result<f64> {
    check_same_space(f, g, "inner_product")?;
    let n = f.params.n();
    let mut total = 0.0;
    for (&j, &fj) in &f.coeffs {
        for (&k, &gk) in &g.coeffs {
            if (j + k) % 2 == 1 {
                continue;
            }
            total += fj * gk * gaussian_moment(n, j + k)?;
        }
    }
    Ok(total)
}

/// Eigenvalue of the level-`l` eigenfunction: under a*a for sector one
/// (2nk and 2nk + 2n - 1 interleaved), under b*b for sector two
/// (2nk and 2nk + 1 interleaved, matching the construction order).
pub fn eigenvalue(params: SusyParams, sector: Sector, level: u32) -> f64 {
    let n = params.nf();
    let l = level as f64;
    match (sector, level % 2) {
        (_, 0) => n * l,
        (Sector::One, _) => n * (l - 1.0) + 2.0 * n - 1.0,
        (Sector::Two, _) => n * (l - 1.0) + 1.0,
    }
}

/// Pointwise evaluation p(x) exp(-x^{2n}/(2n)), with the exponential factored
/// out once; underflow of the exponential yields exact 0.
pub fn eval_real(f: &WeightedPoly, x: f64) -> f64 {
    let n = f.params.n();
    let envelope = (-x.powi(2 * n as i32) / (2.0 * n as f64)).exp();
    if envelope == 0.0 || f.coeffs.is_empty() {
        return 0.0;
    }
    // Horner over the sparse exponent gaps, highest exponent first
    let mut acc = 0.0;
    let mut prev: Option<u32> = None;
    for (&e, &c) in f.coeffs.iter().rev() {
        acc = match prev {
            None => c,
            Some(p) => acc * x.powi((p - e) as i32) + c,
        };
        prev = Some(e);
    }
    if let Some(lowest) = prev {
        acc *= x.powi(lowest as i32);
    }
    acc * envelope
}

/// Largest coefficient difference between two representations, scaled by the
/// largest coefficient present (zero functions compare at distance 0).
pub fn coeff_rel_distance(f: &WeightedPoly, g: &WeightedPoly) -> Result<f64> {
    check_same_space(f, g, "coeff_rel_distance")?;
    let scale = f.max_coeff().max(g.max_coeff());
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for &e in f.coeffs.keys().chain(g.coeffs.keys()) {
        worst = worst.max((f.coeff(e) - g.coeff(e)).abs());
    }
    Ok(worst / scale)
}
