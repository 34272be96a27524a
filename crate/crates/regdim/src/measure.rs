//! A single handle over both measure representations, so the estimators and
//! checks can treat densities and block measures uniformly.

use crate::density::{Norm, PiecewisePowerDensity, SmoothnessProfile};
use crate::dyadic::DyadicBlockMeasure;
use crate::interval::Interval;

#[derive(Clone, Debug)]
pub enum MeasureModel {
    Density(PiecewisePowerDensity),
    Blocks(DyadicBlockMeasure),
}

impl From<PiecewisePowerDensity> for MeasureModel {
    fn from(d: PiecewisePowerDensity) -> Self {
        MeasureModel::Density(d)
    }
}

impl From<DyadicBlockMeasure> for MeasureModel {
    fn from(b: DyadicBlockMeasure) -> Self {
        MeasureModel::Blocks(b)
    }
}

impl MeasureModel {
    /// `ln μ(B(x, r))` (closed ball, intersected with the support).
    pub fn log_ball_mass(&self, x: f64, r: f64) -> f64 {
        match self {
            MeasureModel::Density(d) => d.log_ball_mass(x, r),
            MeasureModel::Blocks(b) => b.log_ball_mass(x, r),
        }
    }

    pub fn ball_measure(&self, x: f64, r: f64) -> f64 {
        self.log_ball_mass(x, r).exp()
    }

    /// `μ((-∞, x])`.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            MeasureModel::Density(d) => d.cdf(x),
            MeasureModel::Blocks(b) => b.cdf(x),
        }
    }

    /// Smallest closed interval containing the support.
    pub fn hull(&self) -> Interval {
        match self {
            MeasureModel::Density(d) => d.hull(),
            MeasureModel::Blocks(b) => b.hull(),
        }
    }

    /// Support as maximal closed intervals.
    pub fn support(&self) -> Vec<Interval> {
        match self {
            MeasureModel::Density(d) => d.support(),
            MeasureModel::Blocks(b) => b.support(),
        }
    }

    pub fn in_support(&self, x: f64) -> bool {
        match self {
            MeasureModel::Density(d) => d.in_support(x),
            MeasureModel::Blocks(b) => b.in_support(x),
        }
    }

    /// Natural probe points: segment endpoints and anchors, or block centers,
    /// tier edges and accumulation points.
    pub fn structural_points(&self) -> Vec<f64> {
        match self {
            MeasureModel::Density(d) => d.structural_points(),
            MeasureModel::Blocks(b) => b.structural_points(),
        }
    }

    /// Lebesgue length of `support ∩ B(x, r)`.
    pub fn support_length_in_ball(&self, x: f64, r: f64) -> f64 {
        match self {
            MeasureModel::Density(d) => d.support_length_in_ball(x, r),
            MeasureModel::Blocks(b) => b.support_length_in_ball(x, r),
        }
    }

    /// `‖f‖_p` of the density (`p = ∞` allowed).
    pub fn lp_norm(&self, p: f64) -> Norm {
        match self {
            MeasureModel::Density(d) => d.lp_norm(p),
            MeasureModel::Blocks(b) => b.lp_norm(p),
        }
    }

    /// `‖f‖_{-p}` of the density; for block measures the defining integral
    /// runs over the support.
    pub fn inverse_lp_norm(&self, p: f64) -> Norm {
        match self {
            MeasureModel::Density(d) => d.inverse_lp_norm(p),
            MeasureModel::Blocks(b) => b.inverse_lp_norm(p),
        }
    }

    /// Supremal integrability exponents. Block measures are finite
    /// truncations, hence bounded above and below on their support — their
    /// profile is `(∞, ∞)`, attained; the limiting behaviour of a family
    /// lives in the family's declared exponents, not in any single truncation.
    pub fn smoothness_profile(&self) -> SmoothnessProfile {
        match self {
            MeasureModel::Density(d) => d.smoothness_profile(),
            MeasureModel::Blocks(_) => SmoothnessProfile {
                p1_sup: f64::INFINITY,
                p2_sup: f64::INFINITY,
                attained_at_sup: (true, true),
                not_in_any_inverse: false,
            },
        }
    }

    /// Is the density (essentially) nonincreasing on its hull? Block
    /// measures: only a staircase-shaped layout could be, and the families
    /// built here are not (they vanish between blocks), so: false.
    pub fn is_nonincreasing(&self) -> bool {
        match self {
            MeasureModel::Density(d) => d.is_nonincreasing(),
            MeasureModel::Blocks(_) => false,
        }
    }

    /// Natural-log density value at `x` (for plotting; `-∞` off the support).
    pub fn log_eval(&self, x: f64) -> f64 {
        match self {
            MeasureModel::Density(d) => {
                let v = d.eval(x);
                if v > 0.0 {
                    v.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            MeasureModel::Blocks(b) => b.log_eval(x),
        }
    }

    /// Pushforward under `y = a·x + b` with `a > 0`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        match self {
            MeasureModel::Density(d) => MeasureModel::Density(d.affine(a, b)),
            MeasureModel::Blocks(m) => MeasureModel::Blocks(m.affine(a, b)),
        }
    }

    /// Total mass (1 for the normalized presets).
    pub fn total_mass(&self) -> f64 {
        let hull = self.hull();
        self.ball_measure(hull.mid(), hull.len())
    }
}

/// The two-scale ball-mass exponent
/// `ln(μ(B(x,R)) / μ(B(x,r))) / ln(R/r)` with `r = R^{1/θ}`.
///
/// Returns `+∞` when the inner ball carries no mass but the outer one does
/// (point beyond resolution or outside the support closure), and NaN when
/// both balls are empty.
pub fn scale_exponent(m: &MeasureModel, x: f64, big_r: f64, theta: f64) -> f64 {
    assert!(theta > 0.0 && theta < 1.0, "theta must lie in (0,1)");
    let r = small_radius(big_r, theta);
    let log_outer = m.log_ball_mass(x, big_r);
    let log_inner = m.log_ball_mass(x, r);
    if log_inner == f64::NEG_INFINITY {
        return if log_outer == f64::NEG_INFINITY {
            f64::NAN
        } else {
            f64::INFINITY
        };
    }
    (log_outer - log_inner) / (big_r.ln() - r.ln())
}

/// The coupled inner radius `r = R^{1/θ}`, computed through `exp2/log2` so
/// dyadic `R` stays exact.
pub fn small_radius(big_r: f64, theta: f64) -> f64 {
    (big_r.log2() / theta).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{PiecewisePowerDensity, PowerSegment};

    fn linear_2x() -> MeasureModel {
        MeasureModel::Density(
            PiecewisePowerDensity::new(vec![PowerSegment::new(
                Interval::new(0.0, 1.0).unwrap(),
                2.0,
                1.0,
                0.0,
            )
            .unwrap()])
            .unwrap(),
        )
    }

    #[test]
    fn linear_density_ball_formula() {
        // μ(B(x, r)) = min(1, x+r)² − max(0, x−r)²
        let m = linear_2x();
        for &(x, r) in &[(0.3f64, 0.1f64), (0.0, 0.2), (1.0, 0.5), (0.5, 0.75)] {
            let want = (x + r).min(1.0).powi(2) - (x - r).max(0.0).powi(2);
            let got = m.ball_measure(x, r);
            assert!((got - want).abs() < 1e-14, "({x},{r}): {got} vs {want}");
        }
    }

    #[test]
    fn scale_exponent_reference_values() {
        // uniform: exponent is exactly 1 at interior points
        let u = MeasureModel::Density(
            PiecewisePowerDensity::new(vec![PowerSegment::constant(
                Interval::new(0.0, 1.0).unwrap(),
                1.0,
            )
            .unwrap()])
            .unwrap(),
        );
        let e = scale_exponent(&u, 0.5, 0.01, 0.5);
        assert!((e - 1.0).abs() < 1e-12);

        // f = 2x: near the origin the exponent approaches 2, at the right
        // endpoint it approaches 1.
        let m = linear_2x();
        let near0 = scale_exponent(&m, 1e-9, 1e-3, 0.5);
        assert!((near0 - 2.0).abs() < 0.01, "{near0}");
        let at1 = scale_exponent(&m, 1.0, 1e-3, 0.5);
        assert!((at1 - 1.0).abs() < 0.01, "{at1}");
    }

    #[test]
    fn empty_inner_ball_markers() {
        let m = linear_2x();
        // far outside the support: both balls empty → NaN
        assert!(scale_exponent(&m, 10.0, 1e-3, 0.5).is_nan());
        // just outside with the outer ball reaching in → +∞
        let e = scale_exponent(&m, 1.0 + 1e-4, 1e-3, 0.5);
        assert!(e.is_infinite() && e > 0.0);
    }

    #[test]
    fn small_radius_dyadic_exact() {
        let r = small_radius(0.25, 0.5);
        assert_eq!(r, 0.0625);
        let r = small_radius(0.5f64.powi(9), 0.3);
        assert_eq!(r, (-(9.0f64 / 0.3)).exp2());
    }
}
