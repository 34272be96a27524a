//! Piecewise power-law densities `f(x) = c·|x - anchor|^α` per segment, with
//! exact closed-form ball masses, CDF, and `L^p` / inverse-`L^p` norms.
//!
//! Every integral reduces to `∫ u^{β-1} du` over a distance range from the
//! segment's anchor, evaluated in log-space. Ball overlaps are clipped in
//! ball-relative coordinates so that radii near 2⁻⁶⁰ keep full precision even
//! when the ball sits at unit distance from the anchor.

use crate::interval::{merge_touching, Interval};
use crate::logspace::{log_add, log_power_integral, LOG_ZERO};
use crate::ModelError;

/// Which side of its anchor a segment lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    LeftOfAnchor,
    RightOfAnchor,
}

/// One density piece: `coefficient · |x - anchor|^exponent` on `support`.
///
/// Invariants enforced by the constructor:
/// * `exponent > -1` (integrability),
/// * the anchor never lies strictly inside the support,
/// * `coefficient > 0`, or the segment is an explicit zero segment
///   (`coefficient == 0`, `exponent == 0`).
#[derive(Clone, Debug)]
pub struct PowerSegment {
    pub support: Interval,
    pub coefficient: f64,
    pub exponent: f64,
    pub anchor: f64,
    pub side: Side,
    /// Support endpoints as offsets from the anchor (cached; exact arithmetic
    /// happens in these coordinates).
    off_lo: f64,
    off_hi: f64,
    log_coeff: f64,
}

impl PowerSegment {
    pub fn new(
        support: Interval,
        coefficient: f64,
        exponent: f64,
        anchor: f64,
    ) -> Result<Self, ModelError> {
        if !(exponent > -1.0) || !exponent.is_finite() {
            return Err(ModelError::NonIntegrableExponent(exponent));
        }
        if !(coefficient >= 0.0) || !coefficient.is_finite() || !anchor.is_finite() {
            return Err(ModelError::NegativeCoefficient(coefficient));
        }
        if coefficient == 0.0 && exponent != 0.0 {
            return Err(ModelError::ZeroSegmentExponent(exponent));
        }
        if support.lo < anchor && anchor < support.hi {
            return Err(ModelError::AnchorInsideSupport {
                anchor,
                lo: support.lo,
                hi: support.hi,
            });
        }
        let side = if anchor <= support.lo {
            Side::RightOfAnchor
        } else {
            Side::LeftOfAnchor
        };
        Ok(PowerSegment {
            support,
            coefficient,
            exponent,
            anchor,
            side,
            off_lo: support.lo - anchor,
            off_hi: support.hi - anchor,
            log_coeff: if coefficient == 0.0 {
                LOG_ZERO
            } else {
                coefficient.ln()
            },
        })
    }

    /// A constant segment (exponent 0); the anchor is placed at the left end.
    pub fn constant(support: Interval, value: f64) -> Result<Self, ModelError> {
        PowerSegment::new(support, value, 0.0, support.lo)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == 0.0
    }

    /// Distance range of the full support from the anchor: `(d_lo, d_hi, width)`.
    fn full_distance_range(&self) -> (f64, f64, f64) {
        let w = self.off_hi - self.off_lo;
        match self.side {
            Side::RightOfAnchor => (self.off_lo, self.off_hi, w),
            Side::LeftOfAnchor => (-self.off_hi, -self.off_lo, w),
        }
    }

    /// `ln ∫_seg f` over the overlap of the support with the ball `B(x, r)`,
    /// computed in ball-relative coordinates so the overlap width is exact.
    fn log_ball_mass(&self, x: f64, r: f64) -> f64 {
        if self.is_zero() {
            return LOG_ZERO;
        }
        let u = x - self.anchor;
        // Positions of the segment endpoints relative to the ball center.
        let lo_rel = self.off_lo - u;
        let hi_rel = self.off_hi - u;
        let a = lo_rel.max(-r);
        let b = hi_rel.min(r);
        if b <= a {
            return LOG_ZERO;
        }
        let w = b - a;
        // Offsets (from the anchor) of the overlap endpoints.
        let s = u + a;
        let t = u + b;
        let d_hi = s.abs().max(t.abs());
        let d_lo = s.abs().min(t.abs()).min(d_hi - w).max(0.0);
        // β = exponent + 1 > 0, so the integral always converges and only
        // d_hi and w enter the computation.
        match log_power_integral(self.exponent + 1.0, d_lo, d_hi, w) {
            Some(v) => self.log_coeff + v,
            None => LOG_ZERO,
        }
    }

    /// `ln ∫_seg f` over the overlap of the support with `[a, b]` in absolute
    /// coordinates (moderate precision; used for CDFs and interval masses).
    fn log_mass_between(&self, a: f64, b: f64) -> f64 {
        if self.is_zero() {
            return LOG_ZERO;
        }
        let s = (a - self.anchor).max(self.off_lo);
        let t = (b - self.anchor).min(self.off_hi);
        if t <= s {
            return LOG_ZERO;
        }
        let w = t - s;
        let (d_lo, d_hi) = if s >= 0.0 { (s, t) } else { (-t, -s) };
        match log_power_integral(self.exponent + 1.0, d_lo.max(0.0), d_hi, w) {
            Some(v) => self.log_coeff + v,
            None => LOG_ZERO,
        }
    }

    /// `ln ∫_seg f^q` over the whole support; `None` means the integral
    /// diverges. Zero segments give `Some(LOG_ZERO)` for `q > 0` and `None`
    /// for `q ≤ 0`.
    fn log_power_mass(&self, q: f64) -> Option<f64> {
        if self.is_zero() {
            return if q > 0.0 { Some(LOG_ZERO) } else { None };
        }
        let beta = self.exponent * q + 1.0;
        let (d_lo, d_hi, w) = self.full_distance_range();
        log_power_integral(beta, d_lo, d_hi, w).map(|v| q * self.log_coeff + v)
    }

    /// Density value at `x` within the support (+∞ at a negative-exponent
    /// anchor endpoint).
    fn eval(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let d = (x - self.anchor).abs();
        self.coefficient * d.powf(self.exponent)
    }

    /// Essential range of the density over this segment: `(inf, sup)`;
    /// `sup = +∞` for a negative-exponent segment touching its anchor.
    fn value_range(&self) -> (f64, f64) {
        if self.is_zero() {
            return (0.0, 0.0);
        }
        let (d_lo, d_hi, _) = self.full_distance_range();
        let at = |d: f64| {
            if d == 0.0 {
                if self.exponent > 0.0 {
                    0.0
                } else if self.exponent == 0.0 {
                    self.coefficient
                } else {
                    f64::INFINITY
                }
            } else {
                self.coefficient * d.powf(self.exponent)
            }
        };
        let v1 = at(d_lo);
        let v2 = at(d_hi);
        (v1.min(v2), v1.max(v2))
    }

    fn touches_anchor(&self) -> bool {
        let (d_lo, _, _) = self.full_distance_range();
        d_lo == 0.0
    }
}

/// `L^p`-style norm results.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Norm {
    Finite(f64),
    /// The defining integral diverges for this exponent.
    Divergent,
    /// The density vanishes on a set of positive measure, so no inverse
    /// norm is finite for any exponent.
    NotInAnyInverse,
}

impl Norm {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Norm::Finite(v) => Some(*v),
            _ => None,
        }
    }
    pub fn is_finite(&self) -> bool {
        matches!(self, Norm::Finite(_))
    }
}

/// Integrability profile of a density: the supremal exponents for membership
/// in `L^p` (direct) and `L^{-p}` (inverse).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothnessProfile {
    /// `sup { p ≥ 1 : f ∈ L^p }`; `f64::INFINITY` when every exponent works.
    pub p1_sup: f64,
    /// `sup { p > 0 : f ∈ L^{-p} }`; `f64::INFINITY` when every exponent
    /// works, `0` when the density vanishes on positive measure.
    pub p2_sup: f64,
    /// Whether membership holds *at* the supremal exponent itself
    /// (direct side, inverse side).
    pub attained_at_sup: (bool, bool),
    /// Density vanishes on a set of positive measure, hence lies in no
    /// inverse space at all.
    pub not_in_any_inverse: bool,
}

/// An absolutely continuous measure given by ordered, contiguous power-law
/// segments. Gaps in the support must be written as explicit zero segments.
#[derive(Clone, Debug)]
pub struct PiecewisePowerDensity {
    segments: Vec<PowerSegment>,
    log_mass: f64,
}

impl PiecewisePowerDensity {
    pub fn new(mut segments: Vec<PowerSegment>) -> Result<Self, ModelError> {
        if segments.is_empty() {
            return Err(ModelError::ZeroMass);
        }
        segments.sort_by(|a, b| a.support.lo.total_cmp(&b.support.lo));
        for pair in segments.windows(2) {
            if pair[0].support.hi != pair[1].support.lo {
                return Err(ModelError::NonContiguousSegments {
                    prev_hi: pair[0].support.hi,
                    next_lo: pair[1].support.lo,
                });
            }
        }
        let mut log_mass = LOG_ZERO;
        for seg in &segments {
            log_mass = log_add(log_mass, seg.log_power_mass(1.0).expect("β > 0"));
        }
        if log_mass == LOG_ZERO {
            return Err(ModelError::ZeroMass);
        }
        Ok(PiecewisePowerDensity { segments, log_mass })
    }

    pub fn segments(&self) -> &[PowerSegment] {
        &self.segments
    }

    /// Total mass `∫ f`.
    pub fn mass(&self) -> f64 {
        self.log_mass.exp()
    }

    /// Rescale all coefficients so the total mass becomes 1.
    pub fn normalize(mut self) -> Self {
        let log_mass = self.log_mass;
        for seg in &mut self.segments {
            if !seg.is_zero() {
                seg.log_coeff -= log_mass;
                seg.coefficient = seg.log_coeff.exp();
            }
        }
        self.log_mass = 0.0;
        self
    }

    /// Smallest closed interval containing the support.
    pub fn hull(&self) -> Interval {
        Interval {
            lo: self.segments.first().unwrap().support.lo,
            hi: self.segments.last().unwrap().support.hi,
        }
    }

    /// Support as a union of maximal closed intervals (zero segments removed,
    /// touching pieces merged).
    pub fn support(&self) -> Vec<Interval> {
        merge_touching(
            self.segments
                .iter()
                .filter(|s| !s.is_zero())
                .map(|s| s.support)
                .collect(),
        )
    }

    pub fn in_support(&self, x: f64) -> bool {
        self.support().iter().any(|iv| iv.contains(x))
    }

    /// Density value at `x` (0 outside the hull; +∞ at singular anchors; at an
    /// interior junction the right segment wins).
    pub fn eval(&self, x: f64) -> f64 {
        let mut val = 0.0;
        for seg in &self.segments {
            if seg.support.contains(x) {
                val = seg.eval(x);
            }
        }
        val
    }

    /// `ln μ([a, b])`.
    pub fn log_mass_between(&self, a: f64, b: f64) -> f64 {
        let mut acc = LOG_ZERO;
        for seg in &self.segments {
            acc = log_add(acc, seg.log_mass_between(a, b));
        }
        acc
    }

    /// `μ((-∞, x])`; equals the total mass at and beyond the right endpoint.
    pub fn cdf(&self, x: f64) -> f64 {
        self.log_mass_between(f64::NEG_INFINITY, x).exp()
    }

    /// `ln μ(B(x, r))` for the closed ball; full precision down to r = 2⁻⁶⁰
    /// and beyond.
    pub fn log_ball_mass(&self, x: f64, r: f64) -> f64 {
        let mut acc = LOG_ZERO;
        for seg in &self.segments {
            acc = log_add(acc, seg.log_ball_mass(x, r));
        }
        acc
    }

    pub fn ball_measure(&self, x: f64, r: f64) -> f64 {
        self.log_ball_mass(x, r).exp()
    }

    /// `‖f‖_p` for `p ≥ 1`, including `p = ∞` (essential supremum).
    pub fn lp_norm(&self, p: f64) -> Norm {
        assert!(p >= 1.0, "lp_norm requires p >= 1, got {p}");
        if p.is_infinite() {
            let sup = self
                .segments
                .iter()
                .map(|s| s.value_range().1)
                .fold(0.0f64, f64::max);
            return if sup.is_finite() {
                Norm::Finite(sup)
            } else {
                Norm::Divergent
            };
        }
        let mut acc = LOG_ZERO;
        for seg in &self.segments {
            match seg.log_power_mass(p) {
                Some(v) => acc = log_add(acc, v),
                None => return Norm::Divergent,
            }
        }
        Norm::Finite((acc / p).exp())
    }

    /// `‖f‖_{-p} = (∫ f^{-p})^{-1/p}` for `p > 0`, over the hull. A zero
    /// segment (positive-measure zero set) puts the density in no inverse
    /// space at all; `p = ∞` returns the essential infimum.
    pub fn inverse_lp_norm(&self, p: f64) -> Norm {
        assert!(p > 0.0, "inverse_lp_norm requires p > 0, got {p}");
        if self.segments.iter().any(|s| s.is_zero()) {
            return Norm::NotInAnyInverse;
        }
        if p.is_infinite() {
            let inf = self
                .segments
                .iter()
                .map(|s| s.value_range().0)
                .fold(f64::INFINITY, f64::min);
            return if inf > 0.0 {
                Norm::Finite(inf)
            } else {
                Norm::Divergent
            };
        }
        let mut acc = LOG_ZERO;
        for seg in &self.segments {
            match seg.log_power_mass(-p) {
                Some(v) => acc = log_add(acc, v),
                None => return Norm::Divergent,
            }
        }
        Norm::Finite((-acc / p).exp())
    }

    /// Supremal integrability exponents, with attainment flags.
    pub fn smoothness_profile(&self) -> SmoothnessProfile {
        let not_in_any_inverse = self.segments.iter().any(|s| s.is_zero());
        let mut p1_sup = f64::INFINITY;
        let mut p2_sup = f64::INFINITY;
        for seg in &self.segments {
            if seg.is_zero() || !seg.touches_anchor() {
                continue;
            }
            if seg.exponent < 0.0 {
                p1_sup = p1_sup.min(-1.0 / seg.exponent);
            } else if seg.exponent > 0.0 {
                p2_sup = p2_sup.min(1.0 / seg.exponent);
            }
        }
        if not_in_any_inverse {
            p2_sup = 0.0;
        }
        let attained_p1 = if p1_sup.is_infinite() {
            self.lp_norm(f64::INFINITY).is_finite()
        } else {
            false // ∫ f^{p1_sup} has β = 0 at a touching anchor: divergent
        };
        let attained_p2 = if not_in_any_inverse {
            false
        } else if p2_sup.is_infinite() {
            matches!(self.inverse_lp_norm(f64::INFINITY), Norm::Finite(_))
        } else {
            false
        };
        SmoothnessProfile {
            p1_sup,
            p2_sup,
            attained_at_sup: (attained_p1, attained_p2),
            not_in_any_inverse,
        }
    }

    /// Is the density (essentially) nonincreasing on its hull?
    pub fn is_nonincreasing(&self) -> bool {
        for seg in &self.segments {
            if seg.is_zero() {
                continue;
            }
            let decreasing_ok = match seg.side {
                Side::RightOfAnchor => seg.exponent <= 0.0,
                Side::LeftOfAnchor => seg.exponent >= 0.0,
            };
            if !decreasing_ok {
                return false;
            }
        }
        // Junction values must not jump upward (compare the limiting value at
        // the end of each segment with the limit at the start of the next).
        for pair in self.segments.windows(2) {
            let left_end = value_at_limit(&pair[0], pair[0].support.hi);
            let right_start = value_at_limit(&pair[1], pair[1].support.lo);
            if right_start > left_end * (1.0 + 1e-12) {
                return false;
            }
        }
        true
    }

    /// Pushforward under `y = a·x + b` with `a > 0`; total mass is preserved.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        assert!(a > 0.0 && a.is_finite() && b.is_finite());
        let segments = self
            .segments
            .iter()
            .map(|seg| {
                let support = Interval {
                    lo: a * seg.support.lo + b,
                    hi: a * seg.support.hi + b,
                };
                let coefficient = if seg.is_zero() {
                    0.0
                } else {
                    (seg.log_coeff - (seg.exponent + 1.0) * a.ln()).exp()
                };
                PowerSegment::new(support, coefficient, seg.exponent, a * seg.anchor + b)
                    .expect("affine image of a valid segment is valid")
            })
            .collect();
        PiecewisePowerDensity::new(segments).expect("affine image of a valid density is valid")
    }

    /// Segment endpoints and anchors: the natural probe points for spectra.
    pub fn structural_points(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(2 * self.segments.len() + 2);
        for seg in &self.segments {
            pts.push(seg.support.lo);
            pts.push(seg.support.hi);
            pts.push(seg.anchor);
        }
        pts
    }

    /// Lebesgue length of `support ∩ B(x, r)`.
    ///
    /// Clipped in offsets from `x`, the same arithmetic the ball-mass
    /// integrals use: an interval edge inside the ball subtracts exactly
    /// (the operands are within a factor of two), and a far edge clamps to
    /// `±r` exactly, so the length agrees with the mass at any radius. In
    /// absolute coordinates an endpoint ball of tiny radius would lose the
    /// sub-ulp part of its width.
    pub fn support_length_in_ball(&self, x: f64, r: f64) -> f64 {
        self.support()
            .iter()
            .map(|iv| {
                let a = (iv.lo - x).max(-r);
                let b = (iv.hi - x).min(r);
                (b - a).max(0.0)
            })
            .sum()
    }
}

/// One-sided limiting value of the density as `x` approaches `at` from inside
/// the segment (+∞ at a singular anchor).
fn value_at_limit(seg: &PowerSegment, at: f64) -> f64 {
    if seg.is_zero() {
        return 0.0;
    }
    let d = (at - seg.anchor).abs();
    if d == 0.0 && seg.exponent < 0.0 {
        f64::INFINITY
    } else {
        seg.coefficient * d.powf(seg.exponent)
    }
}
