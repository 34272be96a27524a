//! Shared oracles and randomized-suite runners for the integration tests.
//!
//! Everything here is deterministic: randomized cases come from fixed-seed
//! ChaCha8 streams, and the quadrature oracle is independent of the library
//! (composite Gauss–Legendre with interval splitting driven by comparing
//! rules of different order).

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regdim::density::Norm;
use regdim::presets::{self, PresetParams};
use regdim::verify::{check_combining_intervals, check_holder_chain};
use regdim::{Interval, MeasureModel};

pub fn seeded_rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_ba5e_0000_0000 ^ salt)
}

// ---------------------------------------------------------------------------
// Independent quadrature oracle
// ---------------------------------------------------------------------------

/// 16-point Gauss–Legendre abscissae (positive half) and weights on [-1, 1].
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003_0,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_533_9,
    0.095_158_511_682_492_8,
    0.062_253_523_938_647_9,
    0.027_152_459_411_754_1,
];
/// 8-point rule, used as the error reference.
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

fn gl_panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64, xs: &[f64], ws: &[f64]) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in xs.iter().zip(ws) {
        acc += w * (f(c + h * x) + f(c - h * x));
    }
    acc * h
}

/// Adaptive composite Gauss–Legendre integral of `f` over `[a, b]`.
///
/// A panel is split until its 16-point and 8-point estimates agree to
/// `rel_tol` of the global scale. Integrable endpoint singularities make the
/// split chain near the singular endpoint linear in depth, and each halving
/// shrinks the panel error geometrically, so a depth cap of 2000 total
/// panels suffices for tolerances down to ~1e-12 while non-singular panels
/// converge immediately.
pub fn adaptive_quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    let rough = gl_panel(f, a, b, &GL16_X, &GL16_W).abs();
    let tol_abs = rel_tol * (rough + 1e-30);
    let mut total = 0.0;
    let mut stack = vec![(a, b, 0u32)];
    let mut panels = 0usize;
    while let Some((lo, hi, depth)) = stack.pop() {
        panels += 1;
        let g16 = gl_panel(f, lo, hi, &GL16_X, &GL16_W);
        let g8 = gl_panel(f, lo, hi, &GL8_X, &GL8_W);
        if (g16 - g8).abs() <= tol_abs || depth >= 110 || panels > 2000 {
            total += g16;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    total
}

/// Adaptive quadrature with forced cuts at known breakpoints.
///
/// Comparing two Gauss rules misses a feature that hides between both node
/// sets — an interior singularity falls into that trap once the panel edge
/// is closer to it than the innermost node. Cutting at the integrand's
/// structural points (segment ends, anchors) moves every singularity and
/// kink to a panel endpoint, where the refinement chain is reliable.
pub fn adaptive_quad_split(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
) -> f64 {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&p| p > a && p < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut total = 0.0;
    let mut lo = a;
    for c in cuts {
        total += adaptive_quad(f, lo, c, rel_tol);
        lo = c;
    }
    total + adaptive_quad(f, lo, b, rel_tol)
}

// ---------------------------------------------------------------------------
// Model zoo
// ---------------------------------------------------------------------------

/// Every built-in measure, by preset name with default parameters.
pub fn all_models() -> Vec<(String, MeasureModel)> {
    [
        "uniform",
        "linear-2x",
        "assouad-sharp",
        "mono-sharp",
        "lower-sharp",
        "staircase",
        "mu-p",
        "composite",
    ]
    .iter()
    .map(|name| {
        let inst = presets::build(name, &PresetParams::default()).expect("preset builds");
        (inst.name, inst.model)
    })
    .collect()
}

/// The density-backed subset (exact quadrature applies to these).
pub fn density_models() -> Vec<(String, MeasureModel)> {
    all_models()
        .into_iter()
        .filter(|(_, m)| matches!(m, MeasureModel::Density(_)))
        .collect()
}

/// Total support length (the measure space the norms integrate over).
pub fn support_length(m: &MeasureModel) -> f64 {
    let hull = m.hull();
    let span = hull.hi - hull.lo;
    m.support_length_in_ball(0.5 * (hull.lo + hull.hi), span)
}

/// Random point in the hull, biased toward the support's fine structure:
/// half the draws are uniform over the hull, half are jittered structural
/// points (block edges, anchors), where the deep behaviour lives.
fn random_probe(m: &MeasureModel, structural: &[f64], rng: &mut ChaCha8Rng) -> f64 {
    let hull = m.hull();
    if structural.is_empty() || rng.random_range(0.0..1.0) < 0.5 {
        rng.random_range(hull.lo..hull.hi)
    } else {
        let s = structural[rng.random_range(0..structural.len())];
        let jitter: f64 = rng.random_range(-1.0f64..1.0);
        (s + jitter * s.abs().max(1e-3) * 0.25).clamp(hull.lo, hull.hi)
    }
}

// ---------------------------------------------------------------------------
// Suite 1: Hölder chain between norms
// ---------------------------------------------------------------------------

/// On a measure space of total length `L`, `‖f‖_q ≤ L^{1/q-1/p} ‖f‖_p`
/// whenever `1 ≤ q < p ≤ ∞`, and `‖f‖_{-q} ≥ L^{1/p-1/q} ‖f‖_{-p}` whenever
/// `0 < q < p ≤ ∞`. A finite higher norm with a divergent lower one (direct
/// side), or a finite `-p` norm with a divergent `-q` one (inverse side),
/// violates the chain outright.
pub fn run_holder_chain_suite() -> (usize, usize) {
    let models = all_models();
    let mut rng = seeded_rng(1);
    let mut cases = 0usize;
    let mut violations = 0usize;
    let per_model = 10_000usize.div_ceil(models.len());
    for (_, m) in &models {
        let ln_l = support_length(m).ln();
        for _ in 0..per_model {
            cases += 1;
            let direct = rng.random_range(0.0..1.0) < 0.5;
            let (q, p) = loop {
                let a = if rng.random_range(0.0..1.0) < 0.1 {
                    f64::INFINITY
                } else if direct {
                    rng.random_range(1.0..30.0)
                } else {
                    rng.random_range(0.05..30.0)
                };
                let b = if direct {
                    rng.random_range(1.0..30.0)
                } else {
                    rng.random_range(0.05..30.0)
                };
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                // hi > lo needed; equal exponents say nothing
                if hi > lo * (1.0 + 1e-9) {
                    break (lo, hi);
                }
            };
            let ok = if direct {
                match (m.lp_norm(q), m.lp_norm(p)) {
                    (Norm::Finite(nq), Norm::Finite(np)) => {
                        let slack = (1.0 / q - recip_inf(p)) * ln_l;
                        nq.ln() <= np.ln() + slack + 1e-9
                    }
                    (Norm::Divergent, Norm::Finite(_)) => false,
                    _ => true,
                }
            } else {
                match (m.inverse_lp_norm(q), m.inverse_lp_norm(p)) {
                    (Norm::Finite(nq), Norm::Finite(np)) => {
                        let slack = (recip_inf(p) - 1.0 / q) * ln_l;
                        nq.ln() >= np.ln() + slack - 1e-9
                    }
                    (Norm::Divergent, Norm::Finite(_)) => false,
                    _ => true,
                }
            };
            if !ok {
                violations += 1;
            }
        }
    }
    (cases, violations)
}

fn recip_inf(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

// ---------------------------------------------------------------------------
// Suite 2: ball-mass monotonicity
// ---------------------------------------------------------------------------

/// `μ(B(x, r₁)) ≤ μ(B(x, r₂))` for `r₁ ≤ r₂`, and every ball mass lies in
/// `[0, total]`. Radii span the designed depth of each family.
pub fn run_ball_monotonicity_suite() -> (usize, usize) {
    let models = all_models();
    let mut rng = seeded_rng(2);
    let mut cases = 0usize;
    let mut violations = 0usize;
    let per_model = 10_000usize.div_ceil(models.len());
    for (_, m) in &models {
        let structural = m.structural_points();
        for _ in 0..per_model {
            cases += 1;
            let x = random_probe(m, &structural, &mut rng);
            let e1: f64 = rng.random_range(-120.0..1.0);
            let e2: f64 = rng.random_range(-120.0..1.0);
            let (r1, r2) = if e1 < e2 {
                (e1.exp2(), e2.exp2())
            } else {
                (e2.exp2(), e1.exp2())
            };
            let m1 = m.log_ball_mass(x, r1);
            let m2 = m.log_ball_mass(x, r2);
            // log of the normalized total is 0
            let ok = m1 <= m2 + 1e-11 && m2 <= 1e-11;
            if !ok {
                violations += 1;
            }
        }
    }
    (cases, violations)
}

// ---------------------------------------------------------------------------
// Suite 3: CDF against independent quadrature
// ---------------------------------------------------------------------------

/// `μ([hull.lo, x])` from the model's CDF against adaptive Gauss–Legendre
/// integration of the density, to 1e-9.
pub fn run_cdf_quadrature_suite() -> (usize, usize) {
    let models = density_models();
    let mut rng = seeded_rng(3);
    let mut cases = 0usize;
    let mut violations = 0usize;
    let per_model = 10_000usize.div_ceil(models.len());
    for (_, m) in &models {
        let hull = m.hull();
        let f = |x: f64| {
            let v = m.log_eval(x).exp();
            if v.is_finite() {
                v
            } else {
                0.0 // integrable endpoint singularity: quadrature nodes are
                    // interior, this only guards an exact endpoint hit
            }
        };
        let breakpoints = m.structural_points();
        for _ in 0..per_model {
            cases += 1;
            let x = rng.random_range(hull.lo..hull.hi);
            let want = adaptive_quad_split(&f, hull.lo, x, &breakpoints, 1e-12);
            let got = m.cdf(x);
            if (got - want).abs() > 1e-9 {
                violations += 1;
            }
        }
    }
    (cases, violations)
}

// ---------------------------------------------------------------------------
// Suite 4: norm sandwich on balls
// ---------------------------------------------------------------------------

/// `‖f‖_{-q} λ(B∩S)^{1+1/q} ≤ μ(B) ≤ ‖f‖_p λ(B∩S)^{1-1/p}` on random balls,
/// for every finite norm in a fixed exponent family.
pub fn run_sandwich_suite() -> (usize, usize) {
    let models = all_models();
    let mut rng = seeded_rng(4);
    let mut cases = 0usize;
    let mut violations = 0usize;
    let upper_ps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let lower_qs = [0.5, 0.9, 1.0, 2.0, 3.0, f64::INFINITY];
    let cases_per_model = 10_000usize.div_ceil(models.len());
    for (_, m) in &models {
        let ups: Vec<(f64, f64)> = upper_ps
            .iter()
            .filter_map(|&p| match m.lp_norm(p) {
                Norm::Finite(v) => Some((p, v)),
                _ => None,
            })
            .collect();
        let los: Vec<(f64, f64)> = lower_qs
            .iter()
            .filter_map(|&q| match m.inverse_lp_norm(q) {
                Norm::Finite(v) => Some((q, v)),
                _ => None,
            })
            .collect();
        let structural = m.structural_points();
        // some models have divergent norms at part of the exponent family,
        // so size the ball sample from the norms actually available
        let balls_per_model = cases_per_model.div_ceil((ups.len() + los.len()).max(1));
        let mut balls = Vec::with_capacity(balls_per_model);
        for _ in 0..balls_per_model {
            let x = random_probe(m, &structural, &mut rng);
            let r = rng.random_range(-60.0f64..1.0).exp2();
            balls.push((x, r));
        }
        for &(x, r) in &balls {
            let mb = m.ball_measure(x, r);
            let len = m.support_length_in_ball(x, r);
            for &(p, np) in &ups {
                cases += 1;
                if mb == 0.0 {
                    continue;
                }
                let bound = np * len.powf(1.0 - recip_inf(p));
                if !(bound > 0.0) || mb / bound - 1.0 > 1e-9 {
                    violations += 1;
                }
            }
            for &(q, nq) in &los {
                cases += 1;
                let bound = nq * len.powf(1.0 + 1.0 / q);
                if bound == 0.0 {
                    continue;
                }
                if !(mb > 0.0) || bound / mb - 1.0 > 1e-9 {
                    violations += 1;
                }
            }
        }
        // cross-check against the library's own reporting of the same claim
        let rep = check_holder_chain(m, &balls, 1e-9).expect("sandwich check runs");
        if !rep.passed {
            violations += 1;
        }
    }
    (cases, violations)
}

// ---------------------------------------------------------------------------
// Suite 5: closed-form bound identities
// ---------------------------------------------------------------------------

/// Algebraic identities of the closed-form bound curves, checked on random
/// profiles `(p1, p2, θ)`:
///  1. upper(p1, p2, θ) + lower(p2, p1, θ) = 2 (the two formulas are dual);
///  2. a doubly-∞ profile pins both bounds at 1;
///  3. the reference-measure regime with exponents (1, 1) reduces to the
///     plain regime;
///  4. the sharp example curves coincide with the bounds they attain, and
///     the sharp lower curve crosses zero exactly at its threshold.
pub fn run_oracle_identity_suite() -> (usize, usize) {
    use regdim::oracle::{
        assouad_upper_bound, lower_lower_bound, sharp_assouad_spectrum, sharp_lower_spectrum,
        sharp_lower_zero_threshold,
    };
    use regdim::{BoundSet, Regime};
    let mut rng = seeded_rng(5);
    let mut cases = 0usize;
    let mut violations = 0usize;
    for _ in 0..10_000 {
        cases += 1;
        let inf1 = rng.random_range(0.0..1.0) < 0.08;
        let inf2 = rng.random_range(0.0..1.0) < 0.08;
        let p1 = if inf1 {
            f64::INFINITY
        } else {
            rng.random_range(1.01..40.0)
        };
        let p2 = if inf2 {
            f64::INFINITY
        } else {
            rng.random_range(p1.min(30.0)..60.0)
        };
        let theta = rng.random_range(0.01..0.99);
        let ok = (|| {
            let b = BoundSet::new(p1, p2, Regime::General).ok()?;
            let up = assouad_upper_bound(&b, theta);
            // duality: swap the exponent roles in the lower bound
            let b_swap = BoundSet::new(p2.max(1.0), p1, Regime::General).ok();
            if p2.max(1.0) == p2 {
                let lo_swap = lower_lower_bound(b_swap.as_ref()?, theta);
                if (up + lo_swap - 2.0).abs() > 1e-9 {
                    return Some(false);
                }
            }
            if p1.is_infinite() && p2.is_infinite() {
                let lo = lower_lower_bound(&b, theta);
                if (up - 1.0).abs() > 1e-12 || (lo - 1.0).abs() > 1e-12 {
                    return Some(false);
                }
            }
            let br = BoundSet::with_reference(p1, p2, 1.0, 1.0, Regime::GeneralReference).ok()?;
            if (assouad_upper_bound(&br, theta) - up).abs() > 1e-9 {
                return Some(false);
            }
            if (lower_lower_bound(&br, theta) - lower_lower_bound(&b, theta)).abs() > 1e-9 {
                return Some(false);
            }
            if p1.is_finite() && p2.is_finite() {
                if (sharp_assouad_spectrum(p1, p2, theta) - up).abs() > 1e-9 {
                    return Some(false);
                }
                let t0 = sharp_lower_zero_threshold(p1, p2);
                if t0 > 0.0 && t0 < 1.0 {
                    let v = sharp_lower_spectrum(p1, p2, t0);
                    if v.abs() > 1e-9 {
                        return Some(false);
                    }
                }
            }
            Some(true)
        })();
        match ok {
            Some(true) => {}
            Some(false) => violations += 1,
            None => {} // profile rejected by validation: vacuous case
        }
    }
    (cases, violations)
}

// ---------------------------------------------------------------------------
// Suite 6: combining two intervals through a bridging ball
// ---------------------------------------------------------------------------

/// For a measure satisfying the two-scale regularity hypothesis with
/// constants `(C, p)` — the uniform measure satisfies it with `(1, 2)` — a
/// ball centred at the balanced midpoint of two disjoint intervals and
/// reaching both carries at least
/// `C² (2R/(l1+l2))^{1-1/p} (μ(I1)+μ(I2))`.
pub fn run_combining_suite() -> (usize, usize) {
    let uni = presets::build("uniform", &PresetParams::default())
        .expect("uniform builds")
        .model;
    let (c_const, p) = (1.0f64, 2.0f64);
    let mut rng = seeded_rng(6);
    let mut cases = 0usize;
    let mut violations = 0usize;
    for i in 0..10_000 {
        cases += 1;
        // Keep every scale inside the range where the two-scale hypothesis
        // was verified (R ≤ 1/2): the cuts live in [0, 0.3], so the
        // covering radius stays below 0.45.
        let mut cuts = [0.0f64; 4];
        for c in cuts.iter_mut() {
            *c = rng.random_range(0.0..0.3);
        }
        cuts.sort_by(f64::total_cmp);
        let [a, b, c, d] = cuts;
        if b - a < 1e-6 || d - c < 1e-6 || c - b < 1e-6 {
            continue; // keep the geometry non-degenerate
        }
        let (i1, i2) = (
            Interval::new(a, b).expect("ordered"),
            Interval::new(c, d).expect("ordered"),
        );
        let (l1, l2) = (b - a, d - c);
        let gap = c - b;
        let r_min = 0.5 * (l1 + l2) + gap;
        let big_r = (r_min * rng.random_range(1.0..2.5)).min(0.5);
        // balanced midpoint: each interval is covered by a ball reaching
        // its share of the gap, and x0 is the midpoint of the union
        let left = a - gap * l1 / (l1 + l2);
        let right = d + gap * l2 / (l1 + l2);
        let x0 = 0.5 * (left + right);
        let lhs = uni.ball_measure(x0, big_r);
        let mass = (uni.cdf(b) - uni.cdf(a)) + (uni.cdf(d) - uni.cdf(c));
        let rhs = c_const * c_const * (2.0 * big_r / (l1 + l2)).powf(1.0 - 1.0 / p) * mass;
        if lhs < rhs * (1.0 - 1e-9) {
            violations += 1;
        }
        // tie a sample of cases to the library's own check
        if i % 1000 == 0 {
            let rep = check_combining_intervals(&uni, c_const, p, i1, i2, big_r, 1e-9)
                .expect("hypothesis holds for uniform with (1, 2)");
            if !rep.passed {
                violations += 1;
            }
        }
    }
    (cases, violations)
}
