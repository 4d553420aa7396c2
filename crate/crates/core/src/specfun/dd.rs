//! Minimal double-double (~31 significant digits) arithmetic.
//!
//! The reflection formula for K_nu subtracts two modified Bessel functions
//! of nearly equal size; near the asymptotic switch the cancellation eats
//! around eight decimal digits, which plain `f64` cannot spare at the
//! tolerances this crate promises. The handful of operations below (Dekker/
//! Knuth error-free transforms plus a small exp/ln) give the reflection
//! branch enough headroom that its result is correctly rounded in `f64`.
//! Inputs and outputs of the public special functions remain `f64`.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two doubles (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Error-free sum assuming `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// ln 2 to double-double precision.
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub fn from_f64(a: f64) -> Dd {
        Dd { hi: a, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        self.mul(Dd::from_f64(b))
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    /// exp(self) by base-2 range reduction and a Taylor tail.
    pub fn exp(self) -> Dd {
        let k = (self.to_f64() / std::f64::consts::LN_2).round();
        let r = self.sub(Dd::LN2.mul_f64(k));
        // |r| <= ln2/2; the factorial series reaches 1e-35 well before 30 terms.
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for j in 1..=30 {
            term = term.mul(r).div(Dd::from_f64(j as f64));
            sum = sum.add(term);
            if term.abs() < 1e-35 * sum.abs() {
                break;
            }
        }
        let scale = 2f64.powi(k as i32);
        Dd {
            hi: sum.hi * scale,
            lo: sum.lo * scale,
        }
    }

    /// ln(a) for finite a > 0, via an f64 seed plus one Newton step.
    pub fn ln_f64(a: f64) -> Dd {
        debug_assert!(a > 0.0 && a.is_finite());
        let y0 = a.ln();
        // y1 = y0 + a e^{-y0} - 1, quadratic convergence from the f64 seed
        let r = Dd::from_f64(a).mul(Dd::from_f64(-y0).exp());
        Dd::from_f64(y0).add(r.sub(Dd::ONE))
    }

    /// a^p for a > 0.
    pub fn powf_f64(a: f64, p: f64) -> Dd {
        Dd::ln_f64(a).mul_f64(p).exp()
    }
}

/// Taylor coefficients of 1/Gamma(1+s) about s = 0, split into double-double
/// pairs. 49 terms hold the truncation error below 1e-41 on s in [-1, 1],
/// which covers every order the reflection branch needs. Generated with
/// 50-digit arithmetic.
pub(crate) const RECIP_GAMMA_TAYLOR: [(f64, f64); 49] = [
    (1.0, 0.0),
    (0.5772156649015329, -4.942915152430645e-18),
    (-0.6558780715202539, 2.137185197068536e-17),
    (-0.04200263503409524, 1.4920306285650505e-18),
    (0.16653861138229148, 1.0189144546842026e-17),
    (-0.04219773455554433, -3.3579992682480134e-18),
    (-0.009621971527876973, -5.300031368830263e-19),
    (0.0072189432466631, -3.6006537063394283e-19),
    (-0.0011651675918590652, 5.659947853880981e-20),
    (-0.00021524167411495098, 2.3758686180729364e-21),
    (0.0001280502823881162, -9.359124499198967e-21),
    (-2.013485478078824e-05, 3.0488773972037385e-23),
    (-1.2504934821426706e-06, -2.66214092271898e-23),
    (1.133027231981696e-06, -4.622235212104869e-23),
    (-2.056338416977607e-07, -3.0061601618645134e-24),
    (6.116095104481416e-09, -2.693458298171306e-25),
    (5.002007644469223e-09, -1.538123614056751e-26),
    (-1.18127457048702e-09, -1.0052356155716208e-25),
    (1.0434267116911005e-10, -2.9298419956825035e-27),
    (7.782263439905071e-12, 4.397255556595848e-28),
    (-3.696805618642206e-12, 2.7050034921703885e-28),
    (5.100370287454476e-13, 2.253001461085878e-29),
    (-2.0583260535665066e-14, -1.4747481491954336e-30),
    (-5.348122539423018e-15, -1.6208384686356568e-31),
    (1.2267786282382608e-15, -5.072915146023867e-32),
    (-1.1812593016974588e-16, 6.422257838149681e-33),
    (1.1866922547516004e-18, -4.2037265494226014e-35),
    (1.4123806553180319e-18, -7.576946701116294e-35),
    (-2.29874568443537e-19, 1.3335481917069145e-36),
    (1.7144063219273374e-20, 5.230715150426935e-38),
    (1.337351730493693e-22, 2.6434059649079228e-39),
    (-2.0542335517666728e-22, 3.6856892424568953e-39),
    (2.736030048608e-23, -2.8599315416397774e-39),
    (-1.7323564459105165e-24, -1.7540883508197598e-40),
    (-2.3606190244992872e-26, -1.260225016995785e-42),
    (1.8649829417172943e-26, 8.774775617290965e-43),
    (-2.2180956242071973e-27, 6.809640315042753e-44),
    (1.2977819749479937e-28, -3.325692466804093e-45),
    (1.1806974749665284e-30, -4.184949275966516e-48),
    (-1.124584349277088e-30, -2.01842815487355e-47),
    (1.277085175140866e-31, 1.0535632367878753e-47),
    (-7.391451169615141e-33, 1.8114253268366145e-49),
    (1.1347502575542158e-35, -4.9791058715013306e-52),
    (4.639134641058722e-35, 2.6040634859975098e-52),
    (-5.3473368184391986e-36, -2.3112956912714733e-52),
    (3.2079959236133524e-37, 2.002602532430018e-53),
    (-4.4458297365507567e-39, -2.221752100199567e-55),
    (-1.3111745188819888e-39, 6.77884564695514e-56),
    (1.647033352543814e-40, -3.070068892723406e-57),
];

/// 1/Gamma(1+s) for s in [-1, 1], to double-double accuracy.
pub(crate) fn recip_gamma_dd(s: f64) -> Dd {
    debug_assert!((-1.0..=1.0).contains(&s));
    let s = Dd::from_f64(s);
    let mut sum = Dd::ZERO;
    for &(hi, lo) in RECIP_GAMMA_TAYLOR.iter().rev() {
        sum = sum.mul(s).add(Dd { hi, lo });
    }
    sum
}
