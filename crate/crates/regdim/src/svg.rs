//! Deterministic two-panel SVG figures.
//!
//! Everything is rendered by hand into a fixed 960×430 canvas with no
//! external assets; identical inputs produce byte-identical files, so the
//! figures are safe to diff and regression-test.

use std::f64::consts::LN_10;

use crate::dyadic::{self, Block};
use crate::measure::MeasureModel;
use crate::oracle::BoundSet;
use crate::presets::{self, OracleCurve, PresetParams};
use crate::spectrum::{estimate_spectra, SweepConfig};
use crate::verify::VerifyError;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 430.0;

const EST_BLUE: &str = "#2f6fb4";
const ORACLE_RED: &str = "#c83737";
const SECOND_GREEN: &str = "#3c8a4e";
const CLAIM_ORANGE: &str = "#e0882f";
const REF_GREY: &str = "#9a9a9a";
const COLLAR_LIGHT: &str = "#a8c8e8";
const SPIKE_DARK: &str = "#3a3a50";

/// One plot panel: a rectangle in canvas coordinates plus data ranges.
struct Panel {
    px: f64,
    py: f64,
    pw: f64,
    ph: f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

fn n(v: f64) -> String {
    format!("{v:.2}")
}

fn fmt_tick(v: f64) -> String {
    let mut s = format!("{v:.2}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

impl Panel {
    fn mx(&self, x: f64) -> f64 {
        self.px + (x - self.x0) / (self.x1 - self.x0) * self.pw
    }

    fn my(&self, y: f64) -> f64 {
        let y = y.clamp(self.y0, self.y1);
        self.py + self.ph - (y - self.y0) / (self.y1 - self.y0) * self.ph
    }

    fn frame(&self, out: &mut String, title: &str) {
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
            n(self.px), n(self.py), n(self.pw), n(self.ph)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" fill=\"#222222\">{}</text>\n",
            n(self.px + self.pw / 2.0), n(self.py - 12.0), title
        ));
    }

    fn x_ticks(&self, out: &mut String, ticks: &[f64], label: &str) {
        for &t in ticks {
            let x = self.mx(t);
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
                n(x), n(self.py + self.ph), n(x), n(self.py + self.ph + 5.0)
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333333\">{}</text>\n",
                n(x), n(self.py + self.ph + 18.0), fmt_tick(t)
            ));
        }
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" fill=\"#222222\">{}</text>\n",
            n(self.px + self.pw / 2.0), n(self.py + self.ph + 36.0), label
        ));
    }

    fn y_ticks(&self, out: &mut String, ticks: &[(f64, String)], label: &str) {
        for (t, text) in ticks {
            let y = self.my(*t);
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>\n",
                n(self.px - 5.0), n(y), n(self.px), n(y)
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">{}</text>\n",
                n(self.px - 8.0), n(y + 4.0), text
            ));
        }
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\" fill=\"#222222\">{}</text>\n",
            n(self.px - 44.0),
            n(self.py + self.ph / 2.0),
            n(self.px - 44.0),
            n(self.py + self.ph / 2.0),
            label
        ));
    }

    fn polyline(&self, out: &mut String, pts: &[(f64, f64)], stroke: &str, width: f64, dash: Option<&str>) {
        if pts.len() < 2 {
            return;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", n(self.mx(x)), n(self.my(y))))
            .collect();
        let dash_attr = dash
            .map(|d| format!(" stroke-dasharray=\"{d}\""))
            .unwrap_or_default();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
            coords.join(" "),
            stroke,
            n(width),
            dash_attr
        ));
    }

    fn markers(&self, out: &mut String, pts: &[(f64, f64)], fill: &str) {
        for &(x, y) in pts {
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"2.8\" fill=\"{}\"/>\n",
                n(self.mx(x)),
                n(self.my(y)),
                fill
            ));
        }
    }

    fn bar(&self, out: &mut String, x_lo: f64, x_hi: f64, y_top: f64, fill: &str, min_px: f64) {
        let mut a = self.mx(x_lo.max(self.x0));
        let mut b = self.mx(x_hi.min(self.x1));
        if b - a < min_px {
            let mid = 0.5 * (a + b);
            a = mid - min_px / 2.0;
            b = mid + min_px / 2.0;
        }
        let top = self.my(y_top);
        let bottom = self.py + self.ph;
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"none\"/>\n",
            n(a),
            n(top),
            n(b - a),
            n((bottom - top).max(0.0)),
            fill
        ));
    }

    fn legend(&self, out: &mut String, entries: &[(&str, Option<&str>, &str)]) {
        let x = self.px + 10.0;
        let mut y = self.py + 16.0;
        for (color, dash, label) in entries {
            let dash_attr = dash
                .map(|d| format!(" stroke-dasharray=\"{d}\""))
                .unwrap_or_default();
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"{}/>\n",
                n(x), n(y - 4.0), n(x + 24.0), n(y - 4.0), color, dash_attr
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222222\">{}</text>\n",
                n(x + 30.0), n(y), label
            ));
            y += 15.0;
        }
    }

    fn note(&self, out: &mut String, text: &str) {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" font-style=\"italic\" text-anchor=\"middle\" fill=\"#555555\">{}</text>\n",
            n(self.px + self.pw / 2.0),
            n(self.py + self.ph - 6.0),
            text
        ));
    }
}

fn left_panel(xr: (f64, f64), yr: (f64, f64)) -> Panel {
    Panel {
        px: 70.0,
        py: 60.0,
        pw: 370.0,
        ph: 290.0,
        x0: xr.0,
        x1: xr.1,
        y0: yr.0,
        y1: yr.1,
    }
}

fn right_panel(xr: (f64, f64), yr: (f64, f64)) -> Panel {
    Panel {
        px: 560.0,
        py: 60.0,
        pw: 370.0,
        ph: 290.0,
        x0: xr.0,
        x1: xr.1,
        y0: yr.0,
        y1: yr.1,
    }
}

fn document(title: &str, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <!-- deterministic output: identical inputs render identical bytes -->\n\
         <rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n\
         <text x=\"{cx}\" y=\"26\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\" fill=\"#111111\">{title}</text>\n\
         {body}</svg>\n",
        w = n(WIDTH),
        h = n(HEIGHT),
        cx = n(WIDTH / 2.0),
        title = title,
        body = body
    )
}

fn log10_density_curve(m: &MeasureModel, x0: f64, x1: f64, samples: usize) -> Vec<(f64, f64)> {
    (0..samples)
        .map(|i| {
            let x = x0 + (x1 - x0) * (i as f64 + 0.5) / samples as f64;
            (x, m.log_eval(x) / LN_10)
        })
        .filter(|&(_, y)| y.is_finite())
        .collect()
}

fn log_ticks(range: std::ops::RangeInclusive<i32>) -> Vec<(f64, String)> {
    range.map(|k| (k as f64, format!("1e{k}"))).collect()
}

fn density_log_panel(m: &MeasureModel, xr: (f64, f64), yr: (i32, i32), title: &str) -> String {
    let mut out = String::new();
    let p = left_panel(xr, (yr.0 as f64, yr.1 as f64));
    p.frame(&mut out, title);
    let xticks: Vec<f64> = (0..=4)
        .map(|i| xr.0 + (xr.1 - xr.0) * i as f64 / 4.0)
        .collect();
    p.x_ticks(&mut out, &xticks, "x");
    p.y_ticks(&mut out, &log_ticks(yr.0..=yr.1), "density (log scale)");
    let curve = log10_density_curve(m, xr.0, xr.1, 600);
    // split at support gaps: break the polyline where consecutive samples
    // are far apart in x
    let mut run: Vec<(f64, f64)> = Vec::new();
    let step = (xr.1 - xr.0) / 600.0 * 1.5;
    for &(x, y) in &curve {
        if let Some(&(px, _)) = run.last() {
            if x - px > step {
                p.polyline(&mut out, &run, EST_BLUE, 1.6, None);
                run.clear();
            }
        }
        run.push((x, y));
    }
    p.polyline(&mut out, &run, EST_BLUE, 1.6, None);
    out
}

fn spectrum_right_panel(
    title: &str,
    ymax: f64,
    series: &[(&str, Option<&str>, &str, Vec<(f64, f64)>, bool)],
) -> String {
    // series entries: (color, dash, label, points, draw_markers)
    let mut out = String::new();
    let p = right_panel((0.0, 1.0), (0.0, ymax));
    p.frame(&mut out, title);
    p.x_ticks(&mut out, &[0.0, 0.25, 0.5, 0.75, 1.0], "θ");
    let yticks: Vec<(f64, String)> = (0..=4)
        .map(|i| {
            let v = ymax * i as f64 / 4.0;
            (v, fmt_tick(v))
        })
        .collect();
    p.y_ticks(&mut out, &yticks, "dimension");
    let mut legend: Vec<(&str, Option<&str>, &str)> = Vec::new();
    for (color, dash, label, pts, markers) in series {
        p.polyline(&mut out, pts, color, 1.8, *dash);
        if *markers {
            p.markers(&mut out, pts, color);
        }
        legend.push((color, *dash, label));
    }
    p.legend(&mut out, &legend);
    out
}

fn sample_curve(f: impl Fn(f64) -> f64, t0: f64, t1: f64, samples: usize) -> Vec<(f64, f64)> {
    (0..=samples)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / samples as f64;
            (t, f(t))
        })
        .collect()
}

fn block_sketch_panel(
    blocks: &[Block],
    take: usize,
    xr: (f64, f64),
    yr: (i32, i32),
    title: &str,
    note: &str,
) -> String {
    let mut out = String::new();
    let p = left_panel(xr, (yr.0 as f64, yr.1 as f64));
    p.frame(&mut out, title);
    let xticks: Vec<f64> = (0..=4)
        .map(|i| xr.0 + (xr.1 - xr.0) * i as f64 / 4.0)
        .collect();
    p.x_ticks(&mut out, &xticks, "x");
    p.y_ticks(&mut out, &log_ticks(yr.0..=yr.1), "height (log scale, unnormalized)");
    // blocks are sorted by center ascending (deepest first); sketch the
    // shallowest `take`
    let start = blocks.len().saturating_sub(take);
    for b in &blocks[start..] {
        if b.radius_outer > 0.0 {
            p.bar(
                &mut out,
                b.center - b.radius_outer,
                b.center + b.radius_outer,
                b.height_outer.log10(),
                COLLAR_LIGHT,
                1.0,
            );
        }
        p.bar(
            &mut out,
            b.center - b.radius_inner,
            b.center + b.radius_inner,
            b.height_inner.log10(),
            SPIKE_DARK,
            2.0,
        );
    }
    p.note(&mut out, note);
    out
}

/// Catalog of figure names with descriptions.
pub fn figure_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "sharp-assouad",
            "two-sided power density and its Assouad spectrum against the closed form",
        ),
        (
            "lower-construction",
            "dyadic-shell construction and per-θ lower-spectrum estimates against the closed form",
        ),
        (
            "monotone-claims",
            "monotone two-piece density: estimated spectra against the claimed monotone-regime curves",
        ),
        (
            "borderline",
            "borderline-integrability family: flat Assouad spectrum against its diverging upper bound",
        ),
    ]
}

/// Render a figure by name (or 1-based index) into an SVG string.
pub fn figure_by_name(which: &str, cfg: &SweepConfig) -> Result<String, VerifyError> {
    match which {
        "1" | "sharp-assouad" => sharp_assouad_figure(cfg),
        "2" | "lower-construction" => lower_construction_figure(cfg),
        "3" | "monotone-claims" => monotone_claims_figure(cfg),
        "4" | "borderline" => borderline_figure(cfg),
        other => Err(VerifyError::Precondition(format!(
            "unknown figure '{other}'; available: {}",
            figure_catalog()
                .iter()
                .map(|(f, _)| *f)
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn sharp_assouad_figure(cfg: &SweepConfig) -> Result<String, VerifyError> {
    let params = PresetParams::default();
    let inst = presets::build("assouad-sharp", &params)?;
    let est = estimate_spectra(&inst.model, cfg)?;
    let est_pts: Vec<(f64, f64)> = est
        .records
        .iter()
        .map(|r| (r.theta, r.upper_exponent))
        .collect();
    let curve = OracleCurve::SharpAssouad {
        p1: params.p1,
        p2: params.p2,
    };
    let t0 = cfg.theta_grid[0];
    let t1 = cfg.theta_grid[cfg.theta_grid.len() - 1];
    let oracle_pts = sample_curve(|t| curve.eval(t), t0, t1, 200);
    let ymax = est_pts
        .iter()
        .chain(&oracle_pts)
        .fold(0.0f64, |a, &(_, y)| a.max(y))
        .ceil()
        + 1.0;

    let mut body = density_log_panel(
        &inst.model,
        (-1.0, 1.0),
        (-2, 2),
        "density: |x|^(1/3) left of 0, x^(-1/2) right of 0",
    );
    body.push_str(&spectrum_right_panel(
        "Assouad spectrum",
        ymax,
        &[
            (
                ORACLE_RED,
                Some("6 4"),
                "closed form (attains the bound)",
                oracle_pts,
                false,
            ),
            (EST_BLUE, None, "estimate", est_pts, true),
        ],
    ));
    Ok(document(
        "Two-sided power density: the Assouad-spectrum bound is attained",
        &body,
    ))
}

fn lower_construction_figure(cfg: &SweepConfig) -> Result<String, VerifyError> {
    let params = PresetParams::default();
    let sketch = dyadic::build_lower_sharp(params.p1, params.p2, &[0.5], 8)?;
    let depth = params.depth.unwrap_or(40);

    let mut est_pts: Vec<(f64, f64)> = Vec::new();
    for &theta in &cfg.theta_grid {
        let m = MeasureModel::Blocks(dyadic::build_lower_sharp(
            params.p1,
            params.p2,
            &[theta],
            depth,
        )?);
        let mut single = cfg.clone();
        single.theta_grid = vec![theta];
        let est = estimate_spectra(&m, &single)?;
        est_pts.push((theta, est.records[0].lower_exponent));
    }
    let curve = OracleCurve::SharpLower {
        p1: params.p1,
        p2: params.p2,
    };
    let t0 = cfg.theta_grid[0];
    let t1 = cfg.theta_grid[cfg.theta_grid.len() - 1];
    let oracle_pts = sample_curve(|t| curve.eval(t), t0, t1, 200);
    let ymax = est_pts
        .iter()
        .chain(&oracle_pts)
        .fold(0.0f64, |a, &(_, y)| a.max(y))
        .max(0.5)
        * 1.3;

    let mut body = block_sketch_panel(
        sketch.blocks(),
        6,
        (0.0, 1.05),
        (-1, 3),
        "shell construction: spike and collar per level (θ = 0.5)",
        "widths exaggerated where needed; not drawn to scale",
    );
    body.push_str(&spectrum_right_panel(
        "lower spectrum (one construction per θ)",
        ymax,
        &[
            (
                ORACLE_RED,
                Some("6 4"),
                "closed form (attains the bound)",
                oracle_pts,
                false,
            ),
            (EST_BLUE, None, "estimate", est_pts, true),
        ],
    ));
    Ok(document(
        "Dyadic-shell construction: the lower-spectrum bound is attained",
        &body,
    ))
}

fn monotone_claims_figure(cfg: &SweepConfig) -> Result<String, VerifyError> {
    let params = PresetParams::default();
    let inst = presets::build("mono-sharp", &params)?;
    let est = estimate_spectra(&inst.model, cfg)?;
    let est_up: Vec<(f64, f64)> = est
        .records
        .iter()
        .map(|r| (r.theta, r.upper_exponent))
        .collect();
    let est_lo: Vec<(f64, f64)> = est
        .records
        .iter()
        .map(|r| (r.theta, r.lower_exponent))
        .collect();
    let t0 = cfg.theta_grid[0];
    let t1 = cfg.theta_grid[cfg.theta_grid.len() - 1];
    let claim_up = sample_curve(
        |t| crate::oracle::mono_sharp_spectra(params.p1, params.p2, t).0,
        t0,
        t1,
        200,
    );
    let claim_lo = sample_curve(
        |t| crate::oracle::mono_sharp_spectra(params.p1, params.p2, t).1,
        t0,
        t1,
        200,
    );
    let ymax = est_up
        .iter()
        .chain(&claim_up)
        .fold(0.0f64, |a, &(_, y)| a.max(y))
        .ceil()
        + 1.0;

    let mut body = density_log_panel(
        &inst.model,
        (0.0, 2.0),
        (-2, 2),
        "density: x^(-1/2) on (0,1], (2-x)^(1/3) on (1,2]",
    );
    body.push_str(&spectrum_right_panel(
        "estimates vs claimed monotone-regime curves",
        ymax,
        &[
            (ORACLE_RED, Some("6 4"), "claimed Assouad spectrum", claim_up, false),
            (CLAIM_ORANGE, Some("6 4"), "claimed lower spectrum", claim_lo, false),
            (EST_BLUE, None, "Assouad estimate", est_up, true),
            (SECOND_GREEN, None, "lower estimate", est_lo, true),
        ],
    ));
    Ok(document(
        "Monotone two-piece density: claimed curves against measured spectra",
        &body,
    ))
}

fn borderline_figure(cfg: &SweepConfig) -> Result<String, VerifyError> {
    let params = PresetParams::default();
    let inst = presets::build("mu-p", &params)?;
    let est = estimate_spectra(&inst.model, cfg)?;
    let est_pts: Vec<(f64, f64)> = est
        .records
        .iter()
        .map(|r| (r.theta, r.upper_exponent))
        .collect();
    let bounds = BoundSet::new(params.p, f64::INFINITY, crate::oracle::Regime::General)
        .map_err(VerifyError::Model)?;
    let t0 = cfg.theta_grid[0];
    let t1 = cfg.theta_grid[cfg.theta_grid.len() - 1];
    let ymax = 4.0;
    let bound_pts: Vec<(f64, f64)> = sample_curve(|t| bounds.assouad_upper_bound(t), t0, t1, 400)
        .into_iter()
        .filter(|&(_, y)| y <= ymax * 1.05)
        .collect();
    let one = vec![(0.0, 1.0), (1.0, 1.0)];

    let blocks_model = match &inst.model {
        MeasureModel::Blocks(b) => b,
        MeasureModel::Density(_) => unreachable!("mu-p is a block family"),
    };
    let mut body = block_sketch_panel(
        blocks_model.blocks(),
        6,
        (0.0, 0.7),
        (0, 2),
        "borderline family: plateau heights grow toward 0",
        "plateau widths exaggerated where needed; not drawn to scale",
    );
    body.push_str(&spectrum_right_panel(
        "Assouad spectrum vs its upper bound",
        ymax,
        &[
            (
                REF_GREY,
                Some("4 4"),
                "upper bound for the (p, ∞) profile",
                bound_pts,
                false,
            ),
            (ORACLE_RED, Some("2 3"), "constant 1", one, false),
            (EST_BLUE, None, "estimate", est_pts, true),
        ],
    ));
    Ok(document(
        "Borderline integrability: spectrum far below its profile bound",
        &body,
    ))
}
