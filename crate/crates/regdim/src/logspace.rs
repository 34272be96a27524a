//! Log-space arithmetic for masses spanning hundreds of binary orders of
//! magnitude.
//!
//! Masses are stored as natural logarithms; zero mass is `NEG_INFINITY`.
//! Sums and differences go through `ln_1p`/`exp_m1` so that nearly-equal and
//! wildly-unequal operands both keep full relative precision.

/// Log of zero mass.
pub const LOG_ZERO: f64 = f64::NEG_INFINITY;

/// `ln(e^a + e^b)`, exact for either operand being `LOG_ZERO`.
#[inline]
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == LOG_ZERO {
        return b;
    }
    if b == LOG_ZERO {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(e^a - e^b)` for `a ≥ b`; returns `LOG_ZERO` when the difference
/// rounds to nothing.
#[inline]
pub fn log_sub(a: f64, b: f64) -> f64 {
    if b == LOG_ZERO {
        return a;
    }
    if a <= b {
        return LOG_ZERO;
    }
    // e^a - e^b = e^a (1 - e^{b-a}); b - a < 0 so exp_m1 ∈ (-1, 0).
    a + (-((b - a).exp_m1())).ln()
}

/// `ln(Σ e^{v})` over a slice.
pub fn log_sum(vals: &[f64]) -> f64 {
    let mut acc = LOG_ZERO;
    for &v in vals {
        acc = log_add(acc, v);
    }
    acc
}

/// `ln ∫_{d_lo}^{d_hi} u^{β-1} du` with `0 ≤ d_lo < d_hi` and `w = d_hi - d_lo`
/// supplied separately so that a narrow window far from zero keeps the
/// precision of its exactly-known width.
///
/// Returns `None` when the integral diverges (`d_lo == 0` with `β ≤ 0`).
pub fn log_power_integral(beta: f64, d_lo: f64, d_hi: f64, w: f64) -> Option<f64> {
    debug_assert!(d_lo >= 0.0 && d_hi > 0.0 && w > 0.0);
    if beta > 0.0 {
        // (d_hi^β - d_lo^β)/β = d_hi^β · (1 - (d_lo/d_hi)^β) / β.
        // ln(d_lo/d_hi) = ln(1 - w/d_hi); exact -∞ when d_lo = 0.
        let log_frac = (-(w / d_hi).min(1.0)).ln_1p();
        let one_minus = -((beta * log_frac).exp_m1());
        Some(beta * d_hi.ln() + one_minus.ln() - beta.ln())
    } else if d_lo == 0.0 {
        None
    } else if beta == 0.0 {
        // ∫ u^{-1} = ln(d_hi/d_lo) = ln(1 + w/d_lo).
        Some((w / d_lo).ln_1p().ln())
    } else {
        // β < 0: (d_lo^β - d_hi^β)/(-β) = d_lo^β (1 - (d_hi/d_lo)^β)/(-β).
        let log_frac = (w / d_lo).ln_1p(); // ln(d_hi/d_lo) ≥ 0
        let one_minus = -((beta * log_frac).exp_m1());
        Some(beta * d_lo.ln() + one_minus.ln() - (-beta).ln())
    }
}
