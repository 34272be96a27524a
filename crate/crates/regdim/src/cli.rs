//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 verification
//! failure (a check ran and failed), 3 runtime error or a check whose
//! hypothesis the measure does not satisfy.

use std::collections::BTreeMap;
use std::path::Path;

use crate::config::RunConfig;
use crate::csvio::{self, write_atomic};
use crate::density::Norm;
use crate::interval::Interval;
use crate::measure::MeasureModel;
use crate::oracle::{approx_rational, BoundSet, Regime};
use crate::presets::{self, OracleCurve};
use crate::spectrum::estimate_spectra;
use crate::svg;
use crate::verify::{self, VerifyError};

type Flags = BTreeMap<String, String>;
type CliResult = Result<i32, (i32, String)>;

const HELP: &str = "\
regdim — regularity dimensions of measures on compact intervals

USAGE
    regdim <command> [--key=value ...]

COMMANDS
    spectrum   estimate the Assouad and lower spectra of a measure
    norms      print L^p and inverse L^p norms and the smoothness profile
    oracle     print the closed-form bounds for an integrability profile
    verify     run verification checks (use --all for the full battery)
    plot       render the built-in figures as SVG
    presets    list the built-in measures
    help       show this message

MEASURE SELECTION (spectrum, norms, verify, plot)
    --config=FILE        TOML run configuration (flags override the file)
    --preset=NAME        built-in measure (see `regdim presets`)
    --p1=V --p2=V        exponent parameters of the preset families
    --p=V                borderline parameter of the mu-p family
    --depth=N            truncation depth of the block families
    --theta-list=A,B,..  target θ list for the lower-sharp construction
    --k-outer=N --k-inner=N   composite-family sizes

SWEEP GRID (spectrum, verify, plot)
    --theta-min=V --theta-max=V --theta-steps=N     θ grid (default 0.05..0.95 in 19)
    --r-grid=dyadic|geometric                       outer-scale grid (default dyadic)
    --j-min=N --j-max=N                             dyadic grid 2^-j, j = j_min..j_max
    --r-min=V --r-max=V --points-per-decade=N      geometric grid parameters
    --fill-points=N                                 uniform witness fill (default 256)
    --extrapolation=regression|max-tail --tail=N    depth extrapolation strategy

OUTPUT
    --out=FILE           write output to FILE (atomic); default stdout
    --format=csv|text    spectrum output format (default csv)

VERIFY
    --all                run the full battery (exit 2 if any check fails)
    --check=NAME         one of: bound-compliance, sharpness, mass-decay,
                         combining, equal-spaced, norm-sandwich
    --tol=V              spectrum tolerance (default 0.05)
    --bound-p1=V --bound-p2=V --regime=general|monotone|piecewise-monotone
                         profile for bound-compliance (defaults: the preset's)
    --c=V --p=V          regularity-hypothesis constants for combining and
                         equal-spaced (defaults C = 1, p = 2)
    --i1=A:B --i2=A:B --r=V      intervals and ball radius for combining
    --n=N --l=V --rho=V          layout for equal-spaced

PLOT
    --figure=NAME|INDEX|all      see `regdim plot --list`
    --out=FILE / --out-dir=DIR   output file (single figure) or directory

ORACLE
    --p1=V --p2=V --regime=...   integrability profile ('inf' allowed)
    --s=V --t=V                  reference exponents (regime=reference)
    --theta-list=A,B,..          evaluation points (default: the θ grid)

NORMS
    --ps=A,B,..  --qs=A,B,..     exponents to print ('inf' allowed)
";

pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn dispatch(args: &[String]) -> CliResult {
    let Some(cmd) = args.first() else {
        print!("{HELP}");
        return Ok(0);
    };
    let flags = parse_flags(&args[1..])?;
    match cmd.as_str() {
        "spectrum" => cmd_spectrum(&flags),
        "norms" => cmd_norms(&flags),
        "oracle" => cmd_oracle(&flags),
        "verify" => cmd_verify(&flags),
        "plot" => cmd_plot(&flags),
        "presets" => cmd_presets(&flags),
        "help" | "--help" | "-h" => {
            print!("{HELP}");
            Ok(0)
        }
        other => Err((1, format!("unknown command '{other}' (try `regdim help`)"))),
    }
}

fn parse_flags(args: &[String]) -> Result<Flags, (i32, String)> {
    let mut flags = Flags::new();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        let Some(body) = arg.strip_prefix("--") else {
            return Err((1, format!("expected --key=value, got '{arg}'")));
        };
        if body.is_empty() {
            return Err((1, "empty flag '--'".into()));
        }
        if let Some((k, v)) = body.split_once('=') {
            flags.insert(k.to_string(), v.to_string());
        } else if i + 1 < args.len() && !args[i + 1].starts_with("--") {
            flags.insert(body.to_string(), args[i + 1].clone());
            i += 1;
        } else {
            flags.insert(body.to_string(), "true".to_string());
        }
        i += 1;
    }
    Ok(flags)
}

const MEASURE_FLAGS: &[&str] = &[
    "config", "preset", "p1", "p2", "p", "depth", "theta-list", "k-outer", "k-inner",
];
const SWEEP_FLAGS: &[&str] = &[
    "theta-min",
    "theta-max",
    "theta-steps",
    "r-grid",
    "j-min",
    "j-max",
    "r-min",
    "r-max",
    "points-per-decade",
    "fill-points",
    "extrapolation",
    "tail",
];

/// Reject flags the command does not read: a typo that silently falls back
/// to a default is worse than an error.
fn check_known(flags: &Flags, groups: &[&[&str]]) -> Result<(), (i32, String)> {
    for key in flags.keys() {
        if !groups.iter().any(|g| g.contains(&key.as_str())) {
            return Err((1, format!("unknown flag --{key} for this command")));
        }
    }
    Ok(())
}

fn get_parsed<T: std::str::FromStr>(flags: &Flags, key: &str) -> Result<Option<T>, (i32, String)> {
    match flags.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| (1, format!("bad value for --{key}: '{raw}'"))),
    }
}

fn parse_f64_list(raw: &str, key: &str) -> Result<Vec<f64>, (i32, String)> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| (1, format!("bad value in --{key}: '{s}'")))
        })
        .collect()
}

fn parse_interval(raw: &str, key: &str) -> Result<Interval, (i32, String)> {
    let (a, b) = raw
        .split_once(':')
        .ok_or_else(|| (1, format!("--{key} expects A:B, got '{raw}'")))?;
    let lo: f64 = a
        .trim()
        .parse()
        .map_err(|_| (1, format!("bad number in --{key}: '{a}'")))?;
    let hi: f64 = b
        .trim()
        .parse()
        .map_err(|_| (1, format!("bad number in --{key}: '{b}'")))?;
    Interval::new(lo, hi).map_err(|e| (1, format!("--{key}: {e}")))
}

/// Merge command-line flags over the (optional) config file.
fn load_config(flags: &Flags) -> Result<RunConfig, (i32, String)> {
    let mut cfg = match flags.get("config") {
        Some(path) => RunConfig::load(path).map_err(|e| (1, e.to_string()))?,
        None => RunConfig::default(),
    };
    if let Some(v) = flags.get("preset") {
        cfg.measure.preset = Some(v.clone());
        cfg.measure.segments = None;
    }
    if let Some(v) = get_parsed::<f64>(flags, "p1")? {
        cfg.measure.p1 = Some(v);
    }
    if let Some(v) = get_parsed::<f64>(flags, "p2")? {
        cfg.measure.p2 = Some(v);
    }
    if let Some(v) = get_parsed::<f64>(flags, "p")? {
        cfg.measure.p = Some(v);
    }
    if let Some(v) = get_parsed::<usize>(flags, "depth")? {
        cfg.measure.depth = Some(v);
    }
    if let Some(raw) = flags.get("theta-list") {
        cfg.measure.theta_list = Some(parse_f64_list(raw, "theta-list")?);
    }
    if let Some(v) = get_parsed::<usize>(flags, "k-outer")? {
        cfg.measure.k_outer = Some(v);
    }
    if let Some(v) = get_parsed::<usize>(flags, "k-inner")? {
        cfg.measure.k_inner = Some(v);
    }
    if let Some(v) = get_parsed::<f64>(flags, "theta-min")? {
        cfg.sweep.theta_min = Some(v);
    }
    if let Some(v) = get_parsed::<f64>(flags, "theta-max")? {
        cfg.sweep.theta_max = Some(v);
    }
    if let Some(v) = get_parsed::<usize>(flags, "theta-steps")? {
        cfg.sweep.theta_steps = Some(v);
    }
    if let Some(v) = flags.get("r-grid") {
        cfg.sweep.r_grid = Some(v.clone());
    }
    if let Some(v) = get_parsed::<u32>(flags, "j-min")? {
        cfg.sweep.j_min = Some(v);
    }
    if let Some(v) = get_parsed::<u32>(flags, "j-max")? {
        cfg.sweep.j_max = Some(v);
    }
    if let Some(v) = get_parsed::<f64>(flags, "r-min")? {
        cfg.sweep.r_min = Some(v);
    }
    if let Some(v) = get_parsed::<f64>(flags, "r-max")? {
        cfg.sweep.r_max = Some(v);
    }
    if let Some(v) = get_parsed::<usize>(flags, "points-per-decade")? {
        cfg.sweep.points_per_decade = Some(v);
    }
    if let Some(v) = get_parsed::<usize>(flags, "fill-points")? {
        cfg.sweep.fill_points = Some(v);
    }
    if let Some(v) = flags.get("extrapolation") {
        cfg.sweep.extrapolation = Some(v.clone());
    }
    if let Some(v) = get_parsed::<usize>(flags, "tail")? {
        cfg.sweep.tail = Some(v);
    }
    if let Some(v) = flags.get("out") {
        cfg.output.path = Some(v.clone());
    }
    if let Some(v) = flags.get("format") {
        cfg.output.format = Some(v.clone());
    }
    if let Some(v) = get_parsed::<f64>(flags, "tol")? {
        cfg.verify.tolerance = Some(v);
    }
    Ok(cfg)
}

/// Build the measure plus its oracle curves (when it is a preset).
fn build_instance(
    cfg: &RunConfig,
) -> Result<(MeasureModel, Option<OracleCurve>, Option<OracleCurve>, String), (i32, String)> {
    if cfg.measure.segments.is_some() {
        let m = cfg.build_measure().map_err(|e| (1, e.to_string()))?;
        return Ok((m, None, None, "custom density".to_string()));
    }
    let name = cfg.measure.preset.as_deref().unwrap_or("uniform");
    let inst =
        presets::build(name, &cfg.preset_params()).map_err(|e| (1, e.to_string()))?;
    Ok((
        inst.model,
        inst.assouad_oracle,
        inst.lower_oracle,
        inst.name,
    ))
}

fn fmt_norm(n: &Norm) -> String {
    match n {
        Norm::Finite(v) => format!("{v:.12}"),
        Norm::Divergent => "divergent".into(),
        Norm::NotInAnyInverse => {
            "undefined (density vanishes on a set of positive measure)".into()
        }
    }
}

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

/// Annotate a value with a small-denominator rational form when one matches.
fn fmt_rational(v: f64) -> String {
    match approx_rational(v, 1000) {
        Some((num, 1)) => format!("{num}"),
        Some((num, den)) => format!("{num}/{den} ≈ {v:.6}"),
        None => format!("{v:.6}"),
    }
}

fn cmd_spectrum(flags: &Flags) -> CliResult {
    check_known(flags, &[MEASURE_FLAGS, SWEEP_FLAGS, &["out", "format"]])?;

    let cfg = load_config(flags)?;
    let (model, a_or, l_or, name) = build_instance(&cfg)?;
    let sweep = cfg.sweep_config().map_err(|e| (1, e.to_string()))?;
    let est = estimate_spectra(&model, &sweep).map_err(|e| (3, e.to_string()))?;
    let rows = csvio::rows_from_estimate(&est, a_or.as_ref(), l_or.as_ref());

    let format = cfg.output.format.as_deref().unwrap_or("csv");
    let rendered = match format {
        "csv" => csvio::to_csv(&rows),
        "text" => {
            let mut s = format!(
                "{:>8} {:>14} {:>14} {:>14} {:>14} {:>12} {:>8}\n",
                "theta", "assouad_est", "lower_est", "assouad_oracle", "lower_oracle", "residual",
                "dropped"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:>8.4} {:>14.6} {:>14.6} {:>14} {:>14} {:>12.3e} {:>8}\n",
                    r.theta,
                    r.assouad_est,
                    r.lower_est,
                    r.assouad_oracle
                        .map(|v| format!("{v:.6}"))
                        .unwrap_or_else(|| "-".into()),
                    r.lower_oracle
                        .map(|v| format!("{v:.6}"))
                        .unwrap_or_else(|| "-".into()),
                    r.residual,
                    r.dropped_pairs
                ));
            }
            s
        }
        other => return Err((1, format!("unknown format '{other}'"))),
    };

    match &cfg.output.path {
        Some(path) => {
            write_atomic(Path::new(path), &rendered)
                .map_err(|e| (3, format!("cannot write {path}: {e}")))?;
            eprintln!("wrote {} rows for {name} to {path}", rows.len());
        }
        None => print!("{rendered}"),
    }

    // quasi-limit summary (θ → 1 behaviour) when the grid reaches deep enough
    if let (Some(last), Some(mid)) = (
        est.records.last(),
        est.records.iter().min_by(|a, b| {
            (a.theta - 0.5).abs().total_cmp(&(b.theta - 0.5).abs())
        }),
    ) {
        if last.theta >= 0.95 - 1e-9 {
            let divergent = last.upper_exponent > 4.0 * mid.upper_exponent.max(0.25);
            eprintln!(
                "quasi-limits at θ = {:.2}: Assouad-side {:.4}, lower-side {:.4}{}",
                last.theta,
                last.upper_exponent,
                last.lower_exponent,
                if divergent {
                    " (Assouad side still climbing: likely divergent)"
                } else {
                    ""
                }
            );
        }
    }
    Ok(0)
}

fn cmd_norms(flags: &Flags) -> CliResult {
    check_known(flags, &[MEASURE_FLAGS, &["ps", "qs"]])?;

    let cfg = load_config(flags)?;
    let (model, _, _, name) = build_instance(&cfg)?;
    let ps = match flags.get("ps") {
        Some(raw) => parse_f64_list(raw, "ps")?,
        None => vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY],
    };
    let qs = match flags.get("qs") {
        Some(raw) => parse_f64_list(raw, "qs")?,
        None => vec![0.5, 0.9, 1.0, 2.0, 3.0, f64::INFINITY],
    };
    println!("measure: {name}");
    let hull = model.hull();
    println!("hull: [{}, {}], total mass {:.12}", hull.lo, hull.hi, model.total_mass());
    if let MeasureModel::Density(d) = &model {
        println!("nonincreasing density: {}", d.is_nonincreasing());
    }
    println!("\nL^p norms of the density:");
    for &p in &ps {
        println!("  p = {:>5}: {}", fmt_p(p), fmt_norm(&model.lp_norm(p)));
    }
    println!("\ninverse L^p norms of the density:");
    for &q in &qs {
        println!("  q = {:>5}: {}", fmt_p(q), fmt_norm(&model.inverse_lp_norm(q)));
    }
    let prof = model.smoothness_profile();
    println!("\nsmoothness profile:");
    println!(
        "  integrability supremum p1 = {} ({})",
        fmt_p(prof.p1_sup),
        if prof.attained_at_sup.0 { "attained" } else { "not attained" }
    );
    println!(
        "  inverse-integrability supremum p2 = {} ({})",
        fmt_p(prof.p2_sup),
        if prof.not_in_any_inverse {
            "no inverse norm is finite"
        } else if prof.attained_at_sup.1 {
            "attained"
        } else {
            "not attained"
        }
    );
    Ok(0)
}

fn cmd_oracle(flags: &Flags) -> CliResult {
    check_known(flags, &[MEASURE_FLAGS, SWEEP_FLAGS, &["regime", "s", "t"]])?;

    let p1 = get_parsed::<f64>(flags, "p1")?.unwrap_or(2.0);
    let p2 = get_parsed::<f64>(flags, "p2")?.unwrap_or(3.0);
    let regime = match flags.get("regime").map(String::as_str) {
        None | Some("general") => Regime::General,
        Some("monotone") => Regime::Monotone,
        Some("piecewise-monotone") => Regime::PiecewiseMonotone,
        Some("reference") => Regime::GeneralReference,
        Some(other) => return Err((1, format!("unknown regime '{other}'"))),
    };
    let s = get_parsed::<f64>(flags, "s")?.unwrap_or(1.0);
    let t = get_parsed::<f64>(flags, "t")?.unwrap_or(1.0);
    let bounds =
        BoundSet::with_reference(p1, p2, s, t, regime).map_err(|e| (1, e.to_string()))?;

    let thetas = match flags.get("theta-list") {
        Some(raw) => parse_f64_list(raw, "theta-list")?,
        None => {
            let cfg = load_config(flags)?;
            cfg.sweep_config().map_err(|e| (1, e.to_string()))?.theta_grid
        }
    };
    println!(
        "profile: p1 = {}, p2 = {}, regime = {:?}",
        fmt_p(p1),
        fmt_p(p2),
        regime
    );
    println!(
        "{:>8}  {:>28}  {:>28}",
        "theta", "assouad upper bound", "lower lower bound"
    );
    for &theta in &thetas {
        if !(theta > 0.0 && theta < 1.0) {
            return Err((1, format!("θ must lie in (0, 1), got {theta}")));
        }
        println!(
            "{:>8.4}  {:>28}  {:>28}",
            theta,
            fmt_rational(bounds.assouad_upper_bound(theta)),
            fmt_rational(bounds.lower_lower_bound(theta))
        );
    }
    let transitions = bounds.phase_transitions();
    if transitions.is_empty() {
        println!("\nno phase transitions in (0, 1) for this profile");
    } else {
        println!("\nphase transitions:");
        for tr in transitions {
            println!("  θ = {}: {}", fmt_rational(tr.theta), tr.description);
        }
    }
    Ok(0)
}

fn verify_code(reports: &[verify::CheckReport]) -> i32 {
    if reports.iter().all(|r| r.passed) {
        0
    } else {
        2
    }
}

fn map_verify_err(e: VerifyError) -> (i32, String) {
    (3, e.to_string())
}

fn cmd_verify(flags: &Flags) -> CliResult {
    check_known(
        flags,
        &[
            MEASURE_FLAGS,
            SWEEP_FLAGS,
            &["all", "check", "tol", "bound-p1", "bound-p2", "regime", "c", "i1", "i2", "r", "n", "l", "rho"],
        ],
    )?;

    let cfg = load_config(flags)?;
    let tol = cfg.verify.tolerance.unwrap_or(0.05);
    let sweep = cfg.sweep_config().map_err(|e| (1, e.to_string()))?;

    if flags.contains_key("all") {
        let reports = verify::run_all(&sweep, tol).map_err(map_verify_err)?;
        for r in &reports {
            println!("{}", r.line());
        }
        let failed = reports.iter().filter(|r| !r.passed).count();
        println!(
            "\n{} checks, {} passed, {} failed",
            reports.len(),
            reports.len() - failed,
            failed
        );
        return Ok(verify_code(&reports));
    }

    let check = flags
        .get("check")
        .ok_or((1, "verify needs --all or --check=NAME".to_string()))?;
    let report = match check.as_str() {
        "bound-compliance" => {
            let (model, _, _, name) = build_instance(&cfg)?;
            let bounds = match (
                get_parsed::<f64>(flags, "bound-p1")?,
                get_parsed::<f64>(flags, "bound-p2")?,
            ) {
                (Some(p1), Some(p2)) => {
                    let regime = match flags.get("regime").map(String::as_str) {
                        None | Some("general") => Regime::General,
                        Some("monotone") => Regime::Monotone,
                        Some("piecewise-monotone") => Regime::PiecewiseMonotone,
                        Some(other) => return Err((1, format!("unknown regime '{other}'"))),
                    };
                    BoundSet::new(p1, p2, regime).map_err(|e| (1, e.to_string()))?
                }
                (None, None) => {
                    let preset = cfg.measure.preset.as_deref().unwrap_or("uniform");
                    presets::build(preset, &cfg.preset_params())
                        .map_err(|e| (1, e.to_string()))?
                        .bounds
                        .ok_or((
                            1,
                            format!("preset '{preset}' has no natural bound profile"),
                        ))?
                }
                _ => {
                    return Err((
                        1,
                        "give both --bound-p1 and --bound-p2 (or neither)".to_string(),
                    ))
                }
            };
            let mut rep =
                verify::check_theorem_main(&model, &bounds, &sweep, tol).map_err(map_verify_err)?;
            rep.name = format!("bound-compliance: {name}");
            rep
        }
        "sharpness" => {
            let family = cfg.measure.preset.as_deref().ok_or((
                1,
                "sharpness needs --preset (assouad-sharp, lower-sharp, mono-sharp, or mu-p)"
                    .to_string(),
            ))?;
            verify::check_sharpness(family, &cfg.preset_params(), &sweep, tol)
                .map_err(map_verify_err)?
        }
        "mass-decay" => {
            let (model, _, _, _) = build_instance(&cfg)?;
            let p = get_parsed::<f64>(flags, "p")?.unwrap_or(2.0);
            let ys: Vec<f64> = (0..=32)
                .map(|k| 0.5 * 10f64.powf(-(k as f64) / 4.0))
                .collect();
            verify::check_cdf_decay(&model, p, &ys, 1e-9).map_err(map_verify_err)?
        }
        "combining" => {
            let (model, _, _, _) = build_instance(&cfg)?;
            let c = get_parsed::<f64>(flags, "c")?.unwrap_or(1.0);
            let p = get_parsed::<f64>(flags, "p")?.unwrap_or(2.0);
            let i1 = match flags.get("i1") {
                Some(raw) => parse_interval(raw, "i1")?,
                None => Interval::new(0.1, 0.2).unwrap(),
            };
            let i2 = match flags.get("i2") {
                Some(raw) => parse_interval(raw, "i2")?,
                None => Interval::new(0.3, 0.4).unwrap(),
            };
            let r = get_parsed::<f64>(flags, "r")?.unwrap_or(0.3);
            verify::check_combining_intervals(&model, c, p, i1, i2, r, 1e-9)
                .map_err(map_verify_err)?
        }
        "equal-spaced" => {
            let (model, _, _, _) = build_instance(&cfg)?;
            let c = get_parsed::<f64>(flags, "c")?.unwrap_or(1.0);
            let p = get_parsed::<f64>(flags, "p")?.unwrap_or(2.0);
            let nn = get_parsed::<usize>(flags, "n")?.unwrap_or(4);
            let l = get_parsed::<f64>(flags, "l")?.unwrap_or(0.1);
            let rho = get_parsed::<f64>(flags, "rho")?.unwrap_or(1.0);
            verify::check_equal_spaced(&model, c, p, nn, l, rho, 1e-9).map_err(map_verify_err)?
        }
        "norm-sandwich" => {
            let (model, _, _, _) = build_instance(&cfg)?;
            let mut balls = Vec::new();
            for x in model.structural_points() {
                for r in [0.5, 0.1, 1e-3, 1e-6, 1e-12] {
                    balls.push((x, r));
                }
            }
            verify::check_holder_chain(&model, &balls, 1e-10).map_err(map_verify_err)?
        }
        other => {
            return Err((
                1,
                format!(
                    "unknown check '{other}'; available: bound-compliance, sharpness, \
                     mass-decay, combining, equal-spaced, norm-sandwich"
                ),
            ))
        }
    };
    println!("{}", report.line());
    Ok(if report.passed { 0 } else { 2 })
}

fn cmd_plot(flags: &Flags) -> CliResult {
    check_known(flags, &[MEASURE_FLAGS, SWEEP_FLAGS, &["figure", "out", "out-dir", "list"]])?;

    if flags.contains_key("list") {
        for (name, desc) in svg::figure_catalog() {
            println!("{name:<20} {desc}");
        }
        return Ok(0);
    }
    let cfg = load_config(flags)?;
    let sweep = cfg.sweep_config().map_err(|e| (1, e.to_string()))?;
    let which = flags.get("figure").cloned().unwrap_or_else(|| "all".into());
    if which == "all" {
        let dir = flags.get("out-dir").cloned().unwrap_or_else(|| ".".into());
        std::fs::create_dir_all(&dir).map_err(|e| (3, format!("cannot create {dir}: {e}")))?;
        for (name, _) in svg::figure_catalog() {
            let svg_text = svg::figure_by_name(name, &sweep).map_err(map_verify_err)?;
            let path = Path::new(&dir).join(format!("fig-{name}.svg"));
            write_atomic(&path, &svg_text)
                .map_err(|e| (3, format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        return Ok(0);
    }
    let svg_text = svg::figure_by_name(&which, &sweep).map_err(|e| match e {
        VerifyError::Precondition(msg) => (1, msg),
        other => map_verify_err(other),
    })?;
    match cfg.output.path {
        Some(path) => {
            write_atomic(Path::new(&path), &svg_text)
                .map_err(|e| (3, format!("cannot write {path}: {e}")))?;
            eprintln!("wrote {path}");
        }
        None => print!("{svg_text}"),
    }
    Ok(0)
}

fn cmd_presets(_flags: &Flags) -> CliResult {
    println!("built-in measures (all normalized to total mass 1):\n");
    for (name, desc) in presets::preset_catalog() {
        println!("{name:<16} {desc}");
    }
    println!(
        "\ndefaults: p1 = 2, p2 = 3, p = 1.5, depth = 40 (staircase and mu-p 60), \
         theta-list = 0.5, k-outer = 4, k-inner = 24"
    );
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(args: &[&str]) -> Vec<String> {
        args.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn flag_parsing_forms() {
        let flags = parse_flags(&s(&["--p1=2", "--p2", "3", "--all"])).unwrap();
        assert_eq!(flags.get("p1").unwrap(), "2");
        assert_eq!(flags.get("p2").unwrap(), "3");
        assert_eq!(flags.get("all").unwrap(), "true");
        assert!(parse_flags(&s(&["oops"])).is_err());
        assert!(parse_flags(&s(&["--"])).is_err());
    }

    #[test]
    fn unknown_command_is_usage_error() {
        assert_eq!(run(&s(&["frobnicate"])), 1);
        assert_eq!(run(&s(&["spectrum", "--format=mp3"])), 1);
    }

    #[test]
    fn help_prints_and_succeeds() {
        assert_eq!(run(&s(&["help"])), 0);
        assert_eq!(run(&[]), 0);
        assert_eq!(run(&s(&["presets"])), 0);
    }

    #[test]
    fn interval_flag_parses() {
        let i = parse_interval("0.1:0.25", "i1").unwrap();
        assert_eq!((i.lo, i.hi), (0.1, 0.25));
        assert!(parse_interval("0.1", "i1").is_err());
        assert!(parse_interval("0.5:0.1", "i1").is_err());
    }

    #[test]
    fn rational_annotation() {
        assert_eq!(fmt_rational(13.0 / 6.0), "13/6 ≈ 2.166667");
        assert_eq!(fmt_rational(2.0), "2");
        assert_eq!(fmt_rational(0.375), "3/8 ≈ 0.375000");
    }
}
