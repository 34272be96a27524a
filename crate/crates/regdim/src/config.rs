//! Run configuration: a TOML file mirrors the command-line flags, so a run
//! can be pinned down in a file and overridden selectively on the command
//! line.

use serde::Deserialize;

use crate::density::{PiecewisePowerDensity, PowerSegment};
use crate::interval::Interval;
use crate::measure::MeasureModel;
use crate::presets::{self, PresetParams};
use crate::spectrum::{dyadic_r_grid, geometric_r_grid, Extrapolation, SweepConfig, XStrategy};
use crate::ModelError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Subcommand to run when none is given on the command line.
    pub command: Option<String>,
    #[serde(default)]
    pub measure: MeasureSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub verify: VerifySection,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSection {
    /// Name of a built-in preset; see `presets` for the catalog.
    pub preset: Option<String>,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub p: Option<f64>,
    pub depth: Option<usize>,
    pub theta_list: Option<Vec<f64>>,
    pub k_outer: Option<usize>,
    pub k_inner: Option<usize>,
    /// Custom piecewise power density (alternative to `preset`).
    pub segments: Option<Vec<SegmentSpec>>,
    /// Normalize a custom density to total mass 1 (default true).
    pub normalize: Option<bool>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub lo: f64,
    pub hi: f64,
    pub coefficient: f64,
    pub exponent: f64,
    /// Reference point of the power law; defaults to `lo`.
    pub anchor: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub theta_steps: Option<usize>,
    /// "dyadic" (default) or "geometric".
    pub r_grid: Option<String>,
    /// Dyadic grid: outer scales 2^-j for j in j_min..=j_max (default
    /// 3..=240). Block families probe their own covering ladder within this
    /// range, so the deep default only affects densities.
    pub j_min: Option<u32>,
    pub j_max: Option<u32>,
    /// Geometric grid bounds and density.
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub points_per_decade: Option<usize>,
    /// Number of uniform witness fill points (default 256).
    pub fill_points: Option<usize>,
    /// "regression" (default) or "max-tail".
    pub extrapolation: Option<String>,
    /// Tail length for "max-tail".
    pub tail: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: Option<String>,
    /// "csv" (default for spectrum) or "text".
    pub format: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub tolerance: Option<f64>,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ModelError> {
        toml::from_str(text)
            .map_err(|e| ModelError::InvalidParameter(format!("config parse error: {e}")))
    }

    pub fn load(path: &str) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ModelError::InvalidParameter(format!("cannot read {path}: {e}")))?;
        Self::from_toml_str(&text)
    }

    /// Preset parameters with the configured overrides applied.
    pub fn preset_params(&self) -> PresetParams {
        let mut p = PresetParams::default();
        let m = &self.measure;
        if let Some(v) = m.p1 {
            p.p1 = v;
        }
        if let Some(v) = m.p2 {
            p.p2 = v;
        }
        if let Some(v) = m.p {
            p.p = v;
        }
        if let Some(v) = m.depth {
            p.depth = Some(v);
        }
        if let Some(v) = &m.theta_list {
            p.theta_list = v.clone();
        }
        if let Some(v) = m.k_outer {
            p.k_outer = v;
        }
        if let Some(v) = m.k_inner {
            p.k_inner = v;
        }
        p
    }

    /// Build the measure described by the `[measure]` section: a custom
    /// segment list if one is given, otherwise the named preset.
    pub fn build_measure(&self) -> Result<MeasureModel, ModelError> {
        if let Some(specs) = &self.measure.segments {
            if self.measure.preset.is_some() {
                return Err(ModelError::InvalidParameter(
                    "give either measure.preset or measure.segments, not both".into(),
                ));
            }
            let mut segments = Vec::with_capacity(specs.len());
            for s in specs {
                let support = Interval::new(s.lo, s.hi)?;
                let anchor = s.anchor.unwrap_or(s.lo);
                segments.push(PowerSegment::new(support, s.coefficient, s.exponent, anchor)?);
            }
            let d = PiecewisePowerDensity::new(segments)?;
            let d = if self.measure.normalize.unwrap_or(true) {
                d.normalize()
            } else {
                d
            };
            return Ok(MeasureModel::Density(d));
        }
        let name = self.measure.preset.as_deref().unwrap_or("uniform");
        Ok(presets::build(name, &self.preset_params())?.model)
    }

    /// Sweep settings with the configured overrides applied.
    pub fn sweep_config(&self) -> Result<SweepConfig, ModelError> {
        let mut cfg = SweepConfig::default();
        let s = &self.sweep;
        let theta_min = s.theta_min.unwrap_or(0.05);
        let theta_max = s.theta_max.unwrap_or(0.95);
        let steps = s.theta_steps.unwrap_or(19);
        if steps == 0 || !(theta_min > 0.0) || !(theta_max < 1.0) || theta_max < theta_min {
            return Err(ModelError::InvalidParameter(format!(
                "bad θ grid: [{theta_min}, {theta_max}] in {steps} steps"
            )));
        }
        cfg.theta_grid = if steps == 1 {
            vec![theta_min]
        } else {
            (0..steps)
                .map(|i| theta_min + (theta_max - theta_min) * i as f64 / (steps - 1) as f64)
                .collect()
        };
        match s.r_grid.as_deref().unwrap_or("dyadic") {
            "dyadic" => {
                cfg.r_grid = dyadic_r_grid(s.j_min.unwrap_or(3), s.j_max.unwrap_or(240));
            }
            "geometric" => {
                let r_min = s.r_min.unwrap_or(1e-9);
                let r_max = s.r_max.unwrap_or(0.125);
                cfg.r_grid =
                    geometric_r_grid(r_min, r_max, s.points_per_decade.unwrap_or(4));
            }
            other => {
                return Err(ModelError::InvalidParameter(format!(
                    "unknown r_grid mode '{other}' (use \"dyadic\" or \"geometric\")"
                )))
            }
        }
        cfg.x_strategy = XStrategy::Combined(s.fill_points.unwrap_or(256));
        cfg.extrapolation = match s.extrapolation.as_deref().unwrap_or("regression") {
            "regression" => Extrapolation::RegressionDecade,
            "max-tail" => Extrapolation::MaxTail(s.tail.unwrap_or(3)),
            other => {
                return Err(ModelError::InvalidParameter(format!(
                    "unknown extrapolation '{other}' (use \"regression\" or \"max-tail\")"
                )))
            }
        };
        cfg.validate()
            .map_err(|e| ModelError::InvalidParameter(e.to_string()))?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = RunConfig::from_toml_str("").unwrap();
        let sweep = cfg.sweep_config().unwrap();
        assert_eq!(sweep.theta_grid.len(), 19);
        assert!((sweep.theta_grid[0] - 0.05).abs() < 1e-12);
        assert!((sweep.theta_grid[18] - 0.95).abs() < 1e-12);
        assert_eq!(sweep.r_grid.len(), 238);
        let m = cfg.build_measure().unwrap();
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn preset_with_overrides() {
        let cfg = RunConfig::from_toml_str(
            r#"
            [measure]
            preset = "assouad-sharp"
            p1 = 2.0
            p2 = 3.0

            [sweep]
            theta_min = 0.25
            theta_max = 0.75
            theta_steps = 3
            "#,
        )
        .unwrap();
        let m = cfg.build_measure().unwrap();
        let hull = m.hull();
        assert_eq!((hull.lo, hull.hi), (-1.0, 1.0));
        let sweep = cfg.sweep_config().unwrap();
        assert_eq!(sweep.theta_grid, vec![0.25, 0.5, 0.75]);
    }

    #[test]
    fn custom_segments() {
        let cfg = RunConfig::from_toml_str(
            r#"
            [measure]
            normalize = true

            [[measure.segments]]
            lo = 0.0
            hi = 1.0
            coefficient = 1.0
            exponent = -0.5

            [[measure.segments]]
            lo = 1.0
            hi = 2.0
            coefficient = 1.0
            exponent = 0.0
            "#,
        )
        .unwrap();
        let m = cfg.build_measure().unwrap();
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
        // unnormalized mass: 2 + 1 = 3, so the flat piece has height 1/3
        assert!((m.log_eval(1.5).exp() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(RunConfig::from_toml_str("nonsense = true").is_err());
        let cfg = RunConfig::from_toml_str(
            r#"
            [sweep]
            r_grid = "unknown-mode"
            "#,
        )
        .unwrap();
        assert!(cfg.sweep_config().is_err());
        let cfg = RunConfig::from_toml_str(
            r#"
            [measure]
            preset = "uniform"

            [[measure.segments]]
            lo = 0.0
            hi = 1.0
            coefficient = 1.0
            exponent = 0.0
            "#,
        )
        .unwrap();
        assert!(cfg.build_measure().is_err());
    }
}
