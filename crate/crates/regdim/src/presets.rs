//! The reference example measures, each packaged with its natural bound
//! profile and (where one exists) the closed-form spectrum it attains.

use crate::density::{PiecewisePowerDensity, PowerSegment};
use crate::dyadic::{self, recip};
use crate::interval::Interval;
use crate::measure::MeasureModel;
use crate::oracle::{self, BoundSet, Regime};
use crate::ModelError;

/// A closed-form spectrum curve θ ↦ value.
#[derive(Clone, Debug)]
pub enum OracleCurve {
    Const(f64),
    /// The general upper bound, attained exactly by the two-sided power
    /// density.
    SharpAssouad { p1: f64, p2: f64 },
    /// The general lower bound clipped at zero, attained by the dyadic-shell
    /// construction built for each θ.
    SharpLower { p1: f64, p2: f64 },
    /// The claimed Assouad spectrum of the monotone sharp example.
    MonoAssouad { p1: f64, p2: f64 },
    /// The claimed lower spectrum of the monotone sharp example.
    MonoLower { p1: f64, p2: f64 },
}

impl OracleCurve {
    pub fn eval(&self, theta: f64) -> f64 {
        match *self {
            OracleCurve::Const(v) => v,
            OracleCurve::SharpAssouad { p1, p2 } => oracle::sharp_assouad_spectrum(p1, p2, theta),
            OracleCurve::SharpLower { p1, p2 } => oracle::sharp_lower_spectrum(p1, p2, theta),
            OracleCurve::MonoAssouad { p1, p2 } => oracle::mono_sharp_spectra(p1, p2, theta).0,
            OracleCurve::MonoLower { p1, p2 } => oracle::mono_sharp_spectra(p1, p2, theta).1,
        }
    }
}

/// Parameters accepted by the preset builders; each builder reads the fields
/// it needs and ignores the rest.
#[derive(Clone, Debug)]
pub struct PresetParams {
    pub p1: f64,
    pub p2: f64,
    /// Borderline-integrability parameter for the `mu-p` family.
    pub p: f64,
    /// Truncation depth; `None` picks the family default (40 for
    /// `lower-sharp`, 60 for the staircase and borderline families whose
    /// deep small-θ probes need the extra levels).
    pub depth: Option<usize>,
    pub theta_list: Vec<f64>,
    pub k_outer: usize,
    pub k_inner: usize,
}

impl Default for PresetParams {
    fn default() -> Self {
        PresetParams {
            p1: 2.0,
            p2: 3.0,
            p: 1.5,
            depth: None,
            theta_list: vec![0.5],
            k_outer: 4,
            k_inner: 24,
        }
    }
}

/// A built preset: the measure plus everything the checks and figures need.
#[derive(Clone, Debug)]
pub struct PresetInstance {
    pub name: String,
    pub model: MeasureModel,
    /// Natural `(p1, p2, regime)` profile for bound-compliance checks.
    pub bounds: Option<BoundSet>,
    pub assouad_oracle: Option<OracleCurve>,
    pub lower_oracle: Option<OracleCurve>,
}

/// Canonical preset names, with one-line descriptions for the CLI.
pub fn preset_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("uniform", "uniform density on [0, 1]; both spectra constant 1"),
        (
            "linear-2x",
            "density 2x on [0, 1]; Assouad spectrum 2, lower spectrum 1",
        ),
        (
            "assouad-sharp",
            "two-sided power density attaining the Assouad-spectrum upper bound for (p1, p2)",
        ),
        (
            "mono-sharp",
            "monotone two-piece power density for the monotone-regime bounds (p1, p2)",
        ),
        (
            "lower-sharp",
            "dyadic-shell construction attaining the lower-spectrum bound for (p1, p2) at the listed θ",
        ),
        (
            "staircase",
            "dyadic staircase; bounded density whose small-scale ratios grow like 2^k",
        ),
        (
            "mu-p",
            "borderline family: in L^q exactly for q < p, Assouad spectrum constant 1",
        ),
        (
            "composite",
            "weighted union of contracted borderline copies: in no L^q for q > 1, spectrum still 1",
        ),
    ]
}

/// Uniform density on [0, 1].
pub fn uniform() -> PiecewisePowerDensity {
    PiecewisePowerDensity::new(vec![PowerSegment::constant(
        Interval::new(0.0, 1.0).unwrap(),
        1.0,
    )
    .unwrap()])
    .unwrap()
}

/// Density `f(x) = 2x` on [0, 1].
pub fn linear_2x() -> PiecewisePowerDensity {
    PiecewisePowerDensity::new(vec![PowerSegment::new(
        Interval::new(0.0, 1.0).unwrap(),
        2.0,
        1.0,
        0.0,
    )
    .unwrap()])
    .unwrap()
}

/// Two-sided power density on [-1, 1]: `|x|^{1/p2}` left of 0 and
/// `x^{-1/p1}` right of 0, normalized to mass 1.
pub fn assouad_sharp_density(p1: f64, p2: f64) -> Result<PiecewisePowerDensity, ModelError> {
    let d = PiecewisePowerDensity::new(vec![
        PowerSegment::new(Interval::new(-1.0, 0.0)?, 1.0, recip(p2), 0.0)?,
        PowerSegment::new(Interval::new(0.0, 1.0)?, 1.0, -recip(p1), 0.0)?,
    ])?;
    Ok(d.normalize())
}

/// Monotone two-piece power density on [0, 2]: `x^{-1/p1}` on (0, 1] and
/// `(2-x)^{1/p2}` on (1, 2], normalized to mass 1.
pub fn mono_sharp_density(p1: f64, p2: f64) -> Result<PiecewisePowerDensity, ModelError> {
    let d = PiecewisePowerDensity::new(vec![
        PowerSegment::new(Interval::new(0.0, 1.0)?, 1.0, -recip(p1), 0.0)?,
        PowerSegment::new(Interval::new(1.0, 2.0)?, 1.0, recip(p2), 2.0)?,
    ])?;
    Ok(d.normalize())
}

/// Build a preset by canonical name.
pub fn build(name: &str, params: &PresetParams) -> Result<PresetInstance, ModelError> {
    let inst = match name {
        "uniform" => PresetInstance {
            name: "uniform".into(),
            model: MeasureModel::Density(uniform()),
            bounds: Some(BoundSet::new(
                f64::INFINITY,
                f64::INFINITY,
                Regime::General,
            )?),
            assouad_oracle: Some(OracleCurve::Const(1.0)),
            lower_oracle: Some(OracleCurve::Const(1.0)),
        },
        "linear-2x" => PresetInstance {
            name: "linear-2x".into(),
            model: MeasureModel::Density(linear_2x()),
            // f = 2x is bounded and lies in L^{-q} exactly for q < 1.
            bounds: Some(BoundSet::new(f64::INFINITY, 0.9, Regime::General)?),
            assouad_oracle: Some(OracleCurve::Const(2.0)),
            lower_oracle: Some(OracleCurve::Const(1.0)),
        },
        "assouad-sharp" => PresetInstance {
            name: format!("assouad-sharp({}, {})", params.p1, params.p2),
            model: MeasureModel::Density(assouad_sharp_density(params.p1, params.p2)?),
            bounds: Some(BoundSet::new(params.p1, params.p2, Regime::General)?),
            assouad_oracle: Some(OracleCurve::SharpAssouad {
                p1: params.p1,
                p2: params.p2,
            }),
            lower_oracle: None,
        },
        "mono-sharp" => PresetInstance {
            name: format!("mono-sharp({}, {})", params.p1, params.p2),
            model: MeasureModel::Density(mono_sharp_density(params.p1, params.p2)?),
            bounds: Some(BoundSet::new(params.p1, params.p2, Regime::Monotone)?),
            assouad_oracle: Some(OracleCurve::MonoAssouad {
                p1: params.p1,
                p2: params.p2,
            }),
            lower_oracle: Some(OracleCurve::MonoLower {
                p1: params.p1,
                p2: params.p2,
            }),
        },
        "lower-sharp" => {
            let k = params.depth.unwrap_or(40);
            PresetInstance {
                name: format!(
                    "lower-sharp({}, {}; θ={:?}, K={})",
                    params.p1, params.p2, params.theta_list, k
                ),
                model: MeasureModel::Blocks(dyadic::build_lower_sharp(
                    params.p1,
                    params.p2,
                    &params.theta_list,
                    k,
                )?),
                bounds: Some(BoundSet::new(params.p1, params.p2, Regime::General)?),
                assouad_oracle: None,
                lower_oracle: Some(OracleCurve::SharpLower {
                    p1: params.p1,
                    p2: params.p2,
                }),
            }
        }
        "staircase" => {
            let k = params.depth.unwrap_or(60);
            PresetInstance {
                name: format!("staircase(K={k})"),
                model: MeasureModel::Blocks(dyadic::build_staircase(k)?),
                // Bounded density; the untruncated staircase lies in L^{-q}
                // exactly for q < 1.
                bounds: Some(BoundSet::new(f64::INFINITY, 0.9, Regime::General)?),
                assouad_oracle: None,
                lower_oracle: None,
            }
        }
        "mu-p" => {
            let k = params.depth.unwrap_or(60);
            PresetInstance {
                name: format!("mu-p({}, K={k})", params.p),
                model: MeasureModel::Blocks(dyadic::build_mu_p(params.p, k)?),
                bounds: Some(BoundSet::new(params.p, f64::INFINITY, Regime::General)?),
                assouad_oracle: Some(OracleCurve::Const(1.0)),
                lower_oracle: None,
            }
        }
        "composite" => PresetInstance {
            name: format!("composite(K={}, depth={})", params.k_outer, params.k_inner),
            model: MeasureModel::Blocks(dyadic::build_composite(
                params.k_outer,
                params.k_inner,
            )?),
            // Lies in L^1 but in no L^q for q > 1; bounded below on blocks.
            bounds: Some(BoundSet::new(1.0, f64::INFINITY, Regime::General)?),
            assouad_oracle: None,
            lower_oracle: None,
        },
        other => {
            return Err(ModelError::InvalidParameter(format!(
                "unknown preset '{other}'; available: {}",
                preset_catalog()
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", ")
            )))
        }
    };
    Ok(inst)
}
