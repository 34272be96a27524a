//! Closed-form bounds tying the integrability exponents `(p₁, p₂)` of a
//! density to the regularity exponents of its measure, plus the sharp
//! spectra attained by the reference constructions.
//!
//! Infinite exponents are carried as the distinguished value `f64::INFINITY`
//! and immediately converted to reciprocals (`1/∞ = 0`), so no infinity ever
//! enters an arithmetic expression.

use crate::dyadic::recip;
use crate::ModelError;

/// Which bound family applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// No shape assumption on the density.
    General,
    /// Monotone density.
    Monotone,
    /// Piecewise monotone density (upper bound as in the general case,
    /// lower bound as in the monotone case).
    PiecewiseMonotone,
    /// Density taken with respect to a reference measure whose ball masses
    /// satisfy `r^s ≲ ν(B(x,r)) ≲ r^t` with `t ≤ s`.
    GeneralReference,
}

/// Exponent data for the bounds: direct exponent `p1 ≥ 1` (density in
/// `L^{p1}`), inverse exponent `p2 > 0` (density in `L^{-p2}`), and the
/// reference-measure regularity exponents `s ≥ 0`, `t ≥ 0` (only consulted in
/// the `GeneralReference` regime; `(1, 1)` recovers the plain bounds).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundSet {
    pub p1: f64,
    pub p2: f64,
    pub s: f64,
    pub t: f64,
    pub regime: Regime,
}

impl BoundSet {
    pub fn new(p1: f64, p2: f64, regime: Regime) -> Result<Self, ModelError> {
        BoundSet::with_reference(p1, p2, 1.0, 1.0, regime)
    }

    pub fn with_reference(
        p1: f64,
        p2: f64,
        s: f64,
        t: f64,
        regime: Regime,
    ) -> Result<Self, ModelError> {
        let ok_p = |p: f64| p.is_infinite() && p > 0.0 || (p.is_finite() && p > 0.0);
        if !ok_p(p1) || p1 < 1.0 {
            return Err(ModelError::InvalidParameter(format!(
                "direct exponent p1 must satisfy p1 ≥ 1 (or be infinite): got {p1}"
            )));
        }
        if !ok_p(p2) {
            return Err(ModelError::InvalidParameter(format!(
                "inverse exponent p2 must be positive (or infinite): got {p2}"
            )));
        }
        if !(s >= 0.0 && t >= 0.0 && s.is_finite() && t.is_finite()) {
            return Err(ModelError::InvalidParameter(format!(
                "reference exponents must be finite and nonnegative: got s={s}, t={t}"
            )));
        }
        if regime == Regime::GeneralReference && t > s {
            return Err(ModelError::InvalidParameter(format!(
                "reference exponents need t ≤ s (upper ball decay cannot beat lower): got s={s}, t={t}"
            )));
        }
        Ok(BoundSet { p1, p2, s, t, regime })
    }

    /// Upper bound for the Assouad spectrum at `theta`.
    pub fn assouad_upper_bound(&self, theta: f64) -> f64 {
        assouad_upper_bound(self, theta)
    }

    /// Lower bound for the lower spectrum at `theta`.
    pub fn lower_lower_bound(&self, theta: f64) -> f64 {
        lower_lower_bound(self, theta)
    }

    /// Phase transitions of the bound curves in (0, 1).
    pub fn phase_transitions(&self) -> Vec<PhaseTransition> {
        phase_transitions(self)
    }
}

fn check_theta(theta: f64) {
    assert!(
        theta > 0.0 && theta < 1.0,
        "θ must lie strictly between 0 and 1, got {theta}"
    );
}

/// Upper bound for the Assouad spectrum at `theta`.
pub fn assouad_upper_bound(b: &BoundSet, theta: f64) -> f64 {
    check_theta(theta);
    let ip1 = recip(b.p1);
    let ip2 = recip(b.p2);
    match b.regime {
        Regime::General | Regime::PiecewiseMonotone => {
            1.0 + (ip2 + theta * ip1) / (1.0 - theta)
        }
        Regime::Monotone => {
            let a = 1.0 + ip2 / (1.0 - theta);
            let c = 1.0 + theta * ip1 / (1.0 - theta);
            a.max(c)
        }
        Regime::GeneralReference => {
            (b.s - theta * b.t) / (1.0 - theta)
                + (b.s * ip2 + theta * b.t * ip1) / (1.0 - theta)
        }
    }
}

/// Lower bound for the lower spectrum at `theta` (may be negative; a
/// negative value is information-free but reported as-is).
pub fn lower_lower_bound(b: &BoundSet, theta: f64) -> f64 {
    check_theta(theta);
    let ip1 = recip(b.p1);
    let ip2 = recip(b.p2);
    match b.regime {
        Regime::General => 1.0 - (theta * ip2 + ip1) / (1.0 - theta),
        Regime::Monotone | Regime::PiecewiseMonotone => {
            let a = 1.0 - theta * ip2 / (1.0 - theta);
            let c = 1.0 - ip1 / (1.0 - theta);
            a.min(c)
        }
        Regime::GeneralReference => {
            (b.t - theta * b.s) / (1.0 - theta)
                - (theta * b.s * ip2 + b.t * ip1) / (1.0 - theta)
        }
    }
}

/// The exact Assouad spectrum of the construction attaining the general
/// upper bound — it coincides with the bound at every θ.
pub fn sharp_assouad_spectrum(p1: f64, p2: f64, theta: f64) -> f64 {
    let b = BoundSet::new(p1, p2, Regime::General).expect("valid exponents");
    assouad_upper_bound(&b, theta)
}

/// The exact lower spectrum of the construction attaining the general lower
/// bound: the bound clipped at zero.
pub fn sharp_lower_spectrum(p1: f64, p2: f64, theta: f64) -> f64 {
    let b = BoundSet::new(p1, p2, Regime::General).expect("valid exponents");
    lower_lower_bound(&b, theta).max(0.0)
}

/// The θ at which the general lower bound reaches zero:
/// `θ* = p₂(p₁ - 1) / (p₁(p₂ + 1))` (computed through reciprocals so
/// infinite exponents stay exact).
pub fn sharp_lower_zero_threshold(p1: f64, p2: f64) -> f64 {
    let ip1 = recip(p1);
    let ip2 = recip(p2);
    // 1 - (θ·ip2 + ip1)/(1-θ) = 0  ⟺  θ = (1 - ip1)/(1 + ip2)
    (1.0 - ip1) / (1.0 + ip2)
}

/// The claimed spectra of the monotone sharp example: upper and clipped
/// lower, both in the monotone regime.
pub fn mono_sharp_spectra(p1: f64, p2: f64, theta: f64) -> (f64, f64) {
    let b = BoundSet::new(p1, p2, Regime::Monotone).expect("valid exponents");
    let upper = assouad_upper_bound(&b, theta);
    let lower = lower_lower_bound(&b, theta).max(0.0);
    (upper, lower)
}

/// A θ value where a bound curve changes analytic form.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseTransition {
    pub theta: f64,
    pub description: String,
}

/// Locations in (0, 1) where the bounds of `b` kink or clip, with exact
/// closed-form θ values (rendered as rationals when the inputs allow).
pub fn phase_transitions(b: &BoundSet) -> Vec<PhaseTransition> {
    let ip1 = recip(b.p1);
    let ip2 = recip(b.p2);
    let mut out = Vec::new();
    let mut push = |theta: f64, what: &str| {
        if theta > 0.0 && theta < 1.0 {
            let pretty = approx_rational(theta, 1_000_000)
                .map(|(n, d)| format!(" = {n}/{d}"))
                .unwrap_or_default();
            out.push(PhaseTransition {
                theta,
                description: format!("{what} at θ{pretty}"),
            });
        }
    };
    match b.regime {
        Regime::General => {
            // The upper bound is smooth; the clipped sharp lower spectrum
            // leaves zero at θ*.
            push(
                sharp_lower_zero_threshold(b.p1, b.p2),
                "lower bound reaches zero",
            );
        }
        Regime::Monotone | Regime::PiecewiseMonotone => {
            if b.regime == Regime::Monotone && ip1 > ip2 {
                // max{1 + ip2/(1-θ), 1 + θ·ip1/(1-θ)} switches branch at
                // θ = ip2/ip1 = p1/p2.
                push(ip2 / ip1, "upper bound switches branch");
            }
            // min{1 - θ·ip2/(1-θ), 1 - ip1/(1-θ)} switches branch at
            // θ = ip1/ip2 = p2/p1.
            if ip2 > ip1 {
                push(ip1 / ip2, "lower bound switches branch");
            }
            // Each lower branch reaches zero at its own θ.
            let zero_a = 1.0 / (1.0 + ip2); // 1 - θ·ip2/(1-θ) = 0
            let zero_c = 1.0 - ip1; // 1 - ip1/(1-θ) = 0
            push(zero_a.min(zero_c), "lower bound reaches zero");
        }
        Regime::GeneralReference => {
            let denom = b.s * (1.0 + ip2);
            if denom > 0.0 {
                push(
                    b.t * (1.0 - ip1) / denom,
                    "lower bound reaches zero",
                );
            }
        }
    }
    out.sort_by(|a, c| a.theta.total_cmp(&c.theta));
    out.dedup_by(|a, c| (a.theta - c.theta).abs() < 1e-12);
    out
}

/// Best rational `n/d` with `d ≤ max_den` reproducing `x` to within 1e-9
/// relative error (continued-fraction convergents); used to print exact
/// rational bound values.
pub fn approx_rational(x: f64, max_den: u64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut h0, mut h1, mut k0, mut k1) = (1i64, v.floor() as i64, 0i64, 1i64);
    let mut frac = v - v.floor();
    for _ in 0..64 {
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
        let a = v.floor();
        if a >= i64::MAX as f64 {
            break;
        }
        let ai = a as i64;
        let h2 = match ai.checked_mul(h1).and_then(|m| m.checked_add(h0)) {
            Some(v) => v,
            None => break,
        };
        let k2 = match ai.checked_mul(k1).and_then(|m| m.checked_add(k0)) {
            Some(v) => v,
            None => break,
        };
        if k2 as u64 > max_den {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        frac = v - a;
    }
    if k1 <= 0 {
        return None;
    }
    let approx = h1 as f64 / k1 as f64;
    if (approx - x.abs()).abs() <= 1e-9 * x.abs().max(1.0) {
        Some((if neg { -h1 } else { h1 }, k1 as u64))
    } else {
        None
    }
}
