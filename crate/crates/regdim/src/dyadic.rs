//! Truncated dyadic block measures: finitely many disjoint blocks, each a
//! constant-density inner plateau optionally surrounded by a constant-density
//! outer collar.
//!
//! Heights and radii are generated in log₂ form first, so families whose
//! inner scales collapse doubly-exponentially stay meaningful even when the
//! linear radius underflows; such blocks are flagged and all mass arithmetic
//! stays in log-space.

use std::f64::consts::LN_2;

use crate::interval::{merge_touching, Interval};
use crate::logspace::{log_add, log_sub, LOG_ZERO};
use crate::ModelError;

/// Reciprocal that treats `p = ∞` as 0 (so `1/∞ = 0` exactly).
pub fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// One block: density `height_inner` on `[center - radius_inner, center + radius_inner]`
/// and `height_outer` on the collar out to `radius_outer`.
/// `radius_outer == 0` marks a single-plateau block (no collar).
///
/// Each radius is snapped at construction to the nearest value whose edge
/// positions `center ± radius` are exactly representable, and the height is
/// re-derived so the tier's designed mass is preserved bit-for-bit. Tier
/// arithmetic is then exact on the local floating-point grid: a witness at
/// an edge sees its slice computed exactly even when the ball radius is far
/// below one grid step. Without the snap, the sub-ulp dregs between a
/// stored radius and the representable edge corrupt slice widths once the
/// ball radius drops near them. Dyadic designs snap to themselves. Radii
/// narrower than one grid step at the center cannot be snapped (their edges
/// collapse onto the center); those keep the ideal values and are probed
/// exactly at their centers, where the relative arithmetic needs no snap.
#[derive(Clone, Debug)]
pub struct Block {
    pub center: f64,
    pub radius_inner: f64,
    pub radius_outer: f64,
    pub height_inner: f64,
    pub height_outer: f64,
    /// Natural-log forms — the source of truth for all mass arithmetic.
    pub log_radius_inner: f64,
    pub log_radius_outer: f64,
    pub log_height_inner: f64,
    pub log_height_outer: f64,
    /// Linear inner radius lies below 2⁻⁶⁰. Mass queries use the log forms
    /// for every block, but for these blocks that is essential: linear-space
    /// arithmetic on their dimensions would under/overflow.
    pub log_space_only: bool,
    /// Inner radius has exactly representable edges (see above); false means
    /// the block is reliable only at center-anchored probes.
    pub edge_exact: bool,
    // cached masses (raw, i.e. before normalization)
    log_mass_inner: f64,
    log_mass_outer_half: f64,
    log_mass_total: f64,
}

/// `radius` snapped to the nearest positive value for which both
/// `center - radius` and `center + radius` are exactly representable
/// (verified by evaluation), or None when the radius is below the local
/// grid. A radius already exact — every dyadic design — snaps to itself.
fn snap_radius(center: f64, radius: f64) -> Option<f64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return None;
    }
    // Granularity that covers both edges' binades; widen twice if rounding
    // at a binade boundary still fails the round-trip test.
    let mut g = f64::max(ulp(center - radius), ulp(center + radius));
    for _ in 0..3 {
        let q = (radius / g).round() * g;
        if q > 0.0 && (center + q) - center == q && (center - q) - center == -q {
            return Some(q);
        }
        g *= 2.0;
    }
    None
}

/// Unit in the last place of `x` (distance to the next representable
/// magnitude), for normal `x`.
fn ulp(x: f64) -> f64 {
    let a = x.abs();
    let next = f64::from_bits(a.to_bits() + 1);
    next - a
}

impl Block {
    /// Build from log₂ data. `log2_outer = None` for a single-plateau block.
    fn from_log2(
        center: f64,
        log2_r_in: f64,
        log2_h_in: f64,
        log2_outer: Option<(f64, f64)>, // (log2 radius_outer, log2 height_outer)
    ) -> Block {
        // Designed tier mass, exact in log form at any depth.
        let log_mass_inner = LN_2 + (log2_h_in + log2_r_in) * LN_2;
        let (radius_inner, height_inner, log_radius_inner, log_height_inner, edge_exact) =
            match snap_radius(center, log2_r_in.exp2()) {
                Some(r_q) => {
                    // Preserve the designed mass exactly: h = mass / (2 r_q).
                    let log_r = r_q.ln();
                    let log_h = log_mass_inner - LN_2 - log_r;
                    (r_q, log_h.exp(), log_r, log_h, true)
                }
                None => (
                    log2_r_in.exp2(),
                    log2_h_in.exp2(),
                    log2_r_in * LN_2,
                    log2_h_in * LN_2,
                    false,
                ),
            };
        let (radius_outer, height_outer, log_radius_outer, log_height_outer, log_mass_outer_half) =
            match log2_outer {
                Some((lr, lh)) => {
                    // Designed one-sided collar mass h_out · (r_out - r_in).
                    let half = lh * LN_2 + log_sub(lr * LN_2, log2_r_in * LN_2);
                    match snap_radius(center, lr.exp2()) {
                        Some(r_q) if r_q > radius_inner => {
                            let log_r = r_q.ln();
                            let log_h = half - (r_q - radius_inner).ln();
                            (r_q, log_h.exp(), log_r, log_h, half)
                        }
                        _ => (lr.exp2(), lh.exp2(), lr * LN_2, lh * LN_2, half),
                    }
                }
                None => (0.0, 0.0, LOG_ZERO, LOG_ZERO, LOG_ZERO),
            };
        let log_mass_total = log_add(log_mass_inner, log_mass_outer_half + LN_2);
        Block {
            center,
            radius_inner,
            radius_outer,
            height_inner,
            height_outer,
            log_radius_inner,
            log_radius_outer,
            log_height_inner,
            log_height_outer,
            log_space_only: radius_inner < crate::MIN_SCALE,
            edge_exact,
            log_mass_inner,
            log_mass_outer_half,
            log_mass_total,
        }
    }

    /// Extent of the block: collar radius when present, else plateau radius.
    pub fn extent(&self) -> f64 {
        if self.radius_outer > 0.0 {
            self.radius_outer
        } else {
            self.radius_inner
        }
    }

    /// Raw (unnormalized) total mass, in logs.
    pub fn log_mass(&self) -> f64 {
        self.log_mass_total
    }

    /// `ln` of the raw mass the block contributes to the closed ball `B(x, r)`.
    fn log_ball_mass(&self, x: f64, r: f64) -> f64 {
        let u = x - self.center;
        let ext = self.extent();
        if u - r > ext || u + r < -ext {
            return LOG_ZERO;
        }
        let mut acc = tier_overlap(
            u,
            r,
            -self.radius_inner,
            self.radius_inner,
            self.log_height_inner,
            self.log_mass_inner,
        );
        if self.radius_outer > 0.0 {
            acc = log_add(
                acc,
                tier_overlap(
                    u,
                    r,
                    -self.radius_outer,
                    -self.radius_inner,
                    self.log_height_outer,
                    self.log_mass_outer_half,
                ),
            );
            acc = log_add(
                acc,
                tier_overlap(
                    u,
                    r,
                    self.radius_inner,
                    self.radius_outer,
                    self.log_height_outer,
                    self.log_mass_outer_half,
                ),
            );
        }
        acc
    }

    /// `ln` of the raw mass the block contributes to `(-∞, x]`.
    fn log_mass_upto(&self, x: f64) -> f64 {
        let u = x - self.center;
        let mut acc = tier_upto(
            u,
            -self.radius_inner,
            self.radius_inner,
            self.log_height_inner,
            self.log_mass_inner,
        );
        if self.radius_outer > 0.0 {
            acc = log_add(
                acc,
                tier_upto(
                    u,
                    -self.radius_outer,
                    -self.radius_inner,
                    self.log_height_outer,
                    self.log_mass_outer_half,
                ),
            );
            acc = log_add(
                acc,
                tier_upto(
                    u,
                    self.radius_inner,
                    self.radius_outer,
                    self.log_height_outer,
                    self.log_mass_outer_half,
                ),
            );
        }
        acc
    }
}

/// Overlap of one constant-density tier `[lo, hi]` (center-offset
/// coordinates) with a ball of radius `r` around offset `u`, in logs.
/// Fully covered tiers return their exact precomputed mass.
fn tier_overlap(u: f64, r: f64, lo: f64, hi: f64, log_h: f64, log_full: f64) -> f64 {
    let lo_rel = lo - u;
    let hi_rel = hi - u;
    if lo_rel >= -r && hi_rel <= r {
        return log_full;
    }
    let a = lo_rel.max(-r);
    let b = hi_rel.min(r);
    if b <= a {
        return LOG_ZERO;
    }
    log_h + (b - a).ln()
}

/// Overlap of a tier with the half-line `(-∞, u]` in center offsets.
fn tier_upto(u: f64, lo: f64, hi: f64, log_h: f64, log_full: f64) -> f64 {
    if hi <= u {
        log_full
    } else if lo >= u || lo == hi {
        LOG_ZERO
    } else {
        log_h + (u - lo).ln()
    }
}

/// Which reference construction a block measure belongs to.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockFamily {
    /// Attains the lower-spectrum bound: inner plateaus at scale
    /// `2^{-(i+1)/θᵢ}` inside dyadic shells, with θ cycling through `theta_list`.
    LowerSharp {
        p1: f64,
        p2: f64,
        theta_list: Vec<f64>,
    },
    /// Dyadic staircase: plateau `2^{-k}` on `[2^{-k}, 2^{-k+1})` plus a flat
    /// part on `[-1, 0]` absorbing the truncation tail.
    Staircase,
    /// Borderline-integrable family: block at `2^{-k}` of height
    /// `½(2^k/k)^{1/(p-1)}` and radius `(k·2^{-pk})^{1/(p-1)}`, mass `2^{-k}`.
    MuP { p: f64 },
    /// Weighted union of contracted borderline copies with parameters
    /// `p = 1 + 2^{-k}` placed at `2^{-k}`.
    Composite { k_outer: usize },
}

/// A measure given by finitely many disjoint constant-density blocks.
#[derive(Clone, Debug)]
pub struct DyadicBlockMeasure {
    blocks: Vec<Block>, // sorted by center, disjoint interiors
    log_normalizer: f64, // ln of total raw mass
    truncation_depth: usize,
    family: BlockFamily,
    support_cache: Vec<Interval>,
    accumulation_points: Vec<f64>,
}

impl DyadicBlockMeasure {
    fn assemble(
        mut blocks: Vec<Block>,
        truncation_depth: usize,
        family: BlockFamily,
        accumulation_points: Vec<f64>,
    ) -> Result<Self, ModelError> {
        blocks.sort_by(|a, b| a.center.total_cmp(&b.center));
        for pair in blocks.windows(2) {
            let right_edge = pair[0].center + pair[0].extent();
            let left_edge = pair[1].center - pair[1].extent();
            if right_edge > left_edge + 1e-15 * left_edge.abs().max(1.0) {
                return Err(ModelError::OverlappingBlocks(right_edge));
            }
        }
        let mut log_normalizer = LOG_ZERO;
        for b in &blocks {
            log_normalizer = log_add(log_normalizer, b.log_mass_total);
        }
        if log_normalizer == LOG_ZERO {
            return Err(ModelError::ZeroMass);
        }
        let support_cache = merge_touching(
            blocks
                .iter()
                .map(|b| Interval {
                    lo: b.center - b.extent(),
                    hi: b.center + b.extent(),
                })
                .collect(),
        );
        Ok(DyadicBlockMeasure {
            blocks,
            log_normalizer,
            truncation_depth,
            family,
            support_cache,
            accumulation_points,
        })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn family(&self) -> &BlockFamily {
        &self.family
    }

    pub fn truncation_depth(&self) -> usize {
        self.truncation_depth
    }

    /// Smallest designed inner radius across the blocks — the finest scale
    /// at which the construction still prescribes structure. Probing below
    /// it measures the truncation, not the design.
    pub fn finest_designed_scale(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.radius_inner)
            .fold(f64::INFINITY, f64::min)
    }

    /// The construction's own covering ladder: every block extent, sorted
    /// from coarse to fine. These are the outer scales at which a ball
    /// centered on a block exactly covers it. A truncated construction has
    /// integer level structure, and probing it at scales off this ladder
    /// aliases against that structure (the estimate picks up a sawtooth
    /// from partially resolved levels); on the ladder the level constants
    /// cancel exactly. For the dyadic-shell families the ladder coincides
    /// with the dyadic scales `2^-j`.
    pub fn designed_scale_ladder(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.blocks.iter().map(|b| b.extent()).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s.dedup();
        s
    }

    /// The constant `C = 1 /` (raw total mass) that normalizes the measure.
    pub fn normalizer(&self) -> f64 {
        (-self.log_normalizer).exp()
    }

    pub fn hull(&self) -> Interval {
        Interval {
            lo: self.support_cache.first().unwrap().lo,
            hi: self.support_cache.last().unwrap().hi,
        }
    }

    pub fn support(&self) -> Vec<Interval> {
        self.support_cache.clone()
    }

    pub fn in_support(&self, x: f64) -> bool {
        self.support_cache.iter().any(|iv| iv.contains(x))
    }

    /// `ln μ(B(x, r))` for the normalized measure, found by binary search for
    /// the contiguous run of blocks meeting the ball.
    pub fn log_ball_mass(&self, x: f64, r: f64) -> f64 {
        let lo = x - r;
        let hi = x + r;
        let start = self
            .blocks
            .partition_point(|b| b.center + b.extent() < lo);
        let end = self.blocks.partition_point(|b| b.center - b.extent() <= hi);
        let mut acc = LOG_ZERO;
        for b in &self.blocks[start..end] {
            acc = log_add(acc, b.log_ball_mass(x, r));
        }
        acc - self.log_normalizer
    }

    /// Brute-force scan over every block; used as the oracle for the binary
    /// search. Accumulates in the same order, so results agree bit-for-bit.
    pub fn log_ball_mass_scan(&self, x: f64, r: f64) -> f64 {
        let mut acc = LOG_ZERO;
        for b in &self.blocks {
            acc = log_add(acc, b.log_ball_mass(x, r));
        }
        acc - self.log_normalizer
    }

    pub fn ball_measure(&self, x: f64, r: f64) -> f64 {
        self.log_ball_mass(x, r).exp()
    }

    /// `μ((-∞, x])` of the normalized measure.
    pub fn cdf(&self, x: f64) -> f64 {
        let mut acc = LOG_ZERO;
        for b in &self.blocks {
            if b.center - b.extent() >= x {
                break;
            }
            acc = log_add(acc, b.log_mass_upto(x));
        }
        (acc - self.log_normalizer).exp()
    }

    /// `ln` of the normalized density at `x` (`LOG_ZERO` off the blocks).
    pub fn log_eval(&self, x: f64) -> f64 {
        let idx = self.blocks.partition_point(|b| b.center + b.extent() < x);
        for b in self.blocks[idx.min(self.blocks.len().saturating_sub(1))..]
            .iter()
            .take(2)
        {
            let u = x - b.center;
            if u.abs() <= b.radius_inner {
                return b.log_height_inner - self.log_normalizer;
            }
            if b.radius_outer > 0.0 && u.abs() <= b.radius_outer {
                return b.log_height_outer - self.log_normalizer;
            }
        }
        LOG_ZERO
    }

    /// `‖f‖_p` of the normalized density over its support; `p = ∞` gives the
    /// essential supremum.
    pub fn lp_norm(&self, p: f64) -> crate::density::Norm {
        assert!(p >= 1.0);
        if p.is_infinite() {
            let sup = self
                .blocks
                .iter()
                .map(|b| b.log_height_inner.max(b.log_height_outer))
                .fold(LOG_ZERO, f64::max);
            return crate::density::Norm::Finite((sup - self.log_normalizer).exp());
        }
        let mut acc = LOG_ZERO;
        for b in &self.blocks {
            let h_in = p * (b.log_height_inner - self.log_normalizer);
            acc = log_add(acc, h_in + LN_2 + b.log_radius_inner);
            if b.radius_outer > 0.0 {
                let h_out = p * (b.log_height_outer - self.log_normalizer);
                acc = log_add(
                    acc,
                    h_out + LN_2 + log_sub(b.log_radius_outer, b.log_radius_inner),
                );
            }
        }
        crate::density::Norm::Finite((acc / p).exp())
    }

    /// `‖f‖_{-p}` of the normalized density, with the integral taken over the
    /// support (the natural domain for a blockwise-positive density).
    pub fn inverse_lp_norm(&self, p: f64) -> crate::density::Norm {
        assert!(p > 0.0);
        if p.is_infinite() {
            let inf = self
                .blocks
                .iter()
                .map(|b| {
                    if b.radius_outer > 0.0 {
                        b.log_height_inner.min(b.log_height_outer)
                    } else {
                        b.log_height_inner
                    }
                })
                .fold(f64::INFINITY, f64::min);
            return crate::density::Norm::Finite((inf - self.log_normalizer).exp());
        }
        let mut acc = LOG_ZERO;
        for b in &self.blocks {
            let h_in = -p * (b.log_height_inner - self.log_normalizer);
            acc = log_add(acc, h_in + LN_2 + b.log_radius_inner);
            if b.radius_outer > 0.0 {
                let h_out = -p * (b.log_height_outer - self.log_normalizer);
                acc = log_add(
                    acc,
                    h_out + LN_2 + log_sub(b.log_radius_outer, b.log_radius_inner),
                );
            }
        }
        crate::density::Norm::Finite((-acc / p).exp())
    }

    /// Block centers and tier edges: the natural probe points for spectra,
    /// plus the families' accumulation points.
    pub fn structural_points(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(5 * self.blocks.len() + 2);
        for b in &self.blocks {
            pts.push(b.center);
            pts.push(b.center - b.radius_inner);
            pts.push(b.center + b.radius_inner);
            if b.radius_outer > 0.0 {
                pts.push(b.center - b.radius_outer);
                pts.push(b.center + b.radius_outer);
            }
        }
        pts.extend_from_slice(&self.accumulation_points);
        pts
    }

    /// Lebesgue length of `support ∩ B(x, r)`.
    ///
    /// Computed per block in the same ball-relative coordinates as the mass
    /// queries, so a block whose width lies below one floating-point grid
    /// step at its position still contributes its true length — its
    /// absolute interval endpoints would collapse onto the center. The
    /// sandwich checks compare this length against the ball mass, so the
    /// two must clip with the same arithmetic.
    pub fn support_length_in_ball(&self, x: f64, r: f64) -> f64 {
        let lo = x - r;
        let hi = x + r;
        let start = self
            .blocks
            .partition_point(|b| b.center + b.extent() < lo);
        let end = self.blocks.partition_point(|b| b.center - b.extent() <= hi);
        let mut acc = 0.0;
        for b in &self.blocks[start..end] {
            let ext = b.extent();
            let u = x - b.center;
            let lo_rel = -ext - u;
            let hi_rel = ext - u;
            if lo_rel >= -r && hi_rel <= r {
                acc += 2.0 * ext;
            } else {
                let a = lo_rel.max(-r);
                let b2 = hi_rel.min(r);
                if b2 > a {
                    acc += b2 - a;
                }
            }
        }
        acc
    }

    /// Pushforward under `y = a·x + b`, `a > 0`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        assert!(a > 0.0 && a.is_finite() && b.is_finite());
        let ln_a = a.ln();
        let mut blocks: Vec<Block> = self
            .blocks
            .iter()
            .map(|blk| {
                let log2_r_in = (blk.log_radius_inner + ln_a) / LN_2;
                let log2_h_in = (blk.log_height_inner - ln_a) / LN_2;
                let outer = if blk.radius_outer > 0.0 {
                    Some((
                        (blk.log_radius_outer + ln_a) / LN_2,
                        (blk.log_height_outer - ln_a) / LN_2,
                    ))
                } else {
                    None
                };
                Block::from_log2(a * blk.center + b, log2_r_in, log2_h_in, outer)
            })
            .collect();
        blocks.sort_by(|x, y| x.center.total_cmp(&y.center));
        let accumulation_points = self
            .accumulation_points
            .iter()
            .map(|&p| a * p + b)
            .collect();
        DyadicBlockMeasure::assemble(
            blocks,
            self.truncation_depth,
            self.family.clone(),
            accumulation_points,
        )
        .expect("affine image of a valid block measure is valid")
    }
}

fn check_depth(k: usize) -> Result<(), ModelError> {
    if k < 8 {
        Err(ModelError::InvalidParameter(format!(
            "truncation depth {k} is too shallow (need at least 8 levels)"
        )))
    } else {
        Ok(())
    }
}

fn check_exponent_pair(p1: f64, p2: f64) -> Result<(), ModelError> {
    let ok = |p: f64| p.is_infinite() || (p.is_finite() && p > 1.0);
    if ok(p1) && ok(p2) {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter(format!(
            "smoothness exponents must exceed 1 (or be infinite): got ({p1}, {p2})"
        )))
    }
}

/// The construction attaining the lower-spectrum bound.
///
/// Level `i` (for `i = 1..=k`) occupies the dyadic shell
/// `(2^{-i}, 2^{-i+1})`: an inner plateau of radius `2^{-(i+1)/θᵢ}` and
/// height `∝ 2^{i/(θᵢ p₁)}` around the shell midpoint `3·2^{-(i+1)}`,
/// surrounded by a collar of height `∝ 2^{-i/p₂}` out to radius `2^{-(i+1)}`.
/// `θᵢ` cycles through `theta_list`.
pub fn build_lower_sharp(
    p1: f64,
    p2: f64,
    theta_list: &[f64],
    k: usize,
) -> Result<DyadicBlockMeasure, ModelError> {
    check_depth(k)?;
    check_exponent_pair(p1, p2)?;
    if theta_list.is_empty() || theta_list.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(ModelError::InvalidParameter(format!(
            "theta list must be nonempty with entries in (0, 1): got {theta_list:?}"
        )));
    }
    let ip1 = recip(p1);
    let ip2 = recip(p2);
    let mut blocks = Vec::with_capacity(k);
    for i in 1..=k {
        let theta = theta_list[(i - 1) % theta_list.len()];
        let fi = i as f64;
        let log2_r_in = -(fi + 1.0) / theta;
        let log2_r_out = -(fi + 1.0);
        let log2_h_in = fi * ip1 / theta;
        let log2_h_out = -fi * ip2;
        let center = 3.0 * (-(fi + 1.0)).exp2();
        blocks.push(Block::from_log2(
            center,
            log2_r_in,
            log2_h_in,
            Some((log2_r_out, log2_h_out)),
        ));
    }
    DyadicBlockMeasure::assemble(
        blocks,
        k,
        BlockFamily::LowerSharp {
            p1,
            p2,
            theta_list: theta_list.to_vec(),
        },
        vec![0.0],
    )
}

/// The dyadic staircase, truncated at depth `k`: plateau `2^{-j}` on
/// `[2^{-j}, 2^{-j+1}]` for `j = 1..=k`, and a flat part on `[-1, 0]` whose
/// height `2/3 + 4^{-k}/3` absorbs the truncated tail, so the total mass is
/// exactly 1.
pub fn build_staircase(k: usize) -> Result<DyadicBlockMeasure, ModelError> {
    check_depth(k)?;
    let mut blocks = Vec::with_capacity(k + 1);
    let flat_height = 2.0 / 3.0 + 0.25_f64.powi(k as i32) / 3.0;
    blocks.push(Block::from_log2(-0.5, -1.0, flat_height.log2(), None));
    for j in 1..=k {
        let fj = j as f64;
        let center = 3.0 * (-(fj + 1.0)).exp2();
        blocks.push(Block::from_log2(center, -(fj + 1.0), -fj, None));
    }
    DyadicBlockMeasure::assemble(blocks, k, BlockFamily::Staircase, vec![0.0])
}

/// The borderline-integrable family: for `p ∈ (1, 1.5]`, block `j` sits at
/// `2^{-j}` with height `½(2^j/j)^{1/(p-1)}` and radius `(j·2^{-pj})^{1/(p-1)}`,
/// so each block carries mass exactly `2^{-j}` while `Σ (2h_j)^p ρ_j` is the
/// harmonic series.
pub fn build_mu_p(p: f64, k: usize) -> Result<DyadicBlockMeasure, ModelError> {
    check_depth(k)?;
    if !(p > 1.0 && p <= 1.5) {
        return Err(ModelError::InvalidParameter(format!(
            "borderline family needs p in (1, 1.5], got {p}"
        )));
    }
    let e = 1.0 / (p - 1.0);
    let mut blocks = Vec::with_capacity(k);
    for j in 1..=k {
        let fj = j as f64;
        let l2j = fj.log2();
        let log2_rho = e * (l2j - p * fj);
        let log2_h = -1.0 + e * (fj - l2j);
        blocks.push(Block::from_log2((-fj).exp2(), log2_rho, log2_h, None));
    }
    DyadicBlockMeasure::assemble(blocks, k, BlockFamily::MuP { p }, vec![0.0])
}

/// Partial sums of the series `Σ_{j≤n} (2h_j)^p ρ_j` for the borderline
/// family — termwise equal to the harmonic series.
pub fn mu_p_display_series(p: f64, k: usize) -> Vec<f64> {
    let e = 1.0 / (p - 1.0);
    let mut sums = Vec::with_capacity(k);
    let mut acc = 0.0;
    for j in 1..=k {
        let fj = j as f64;
        let l2j = fj.log2();
        let log2_rho = e * (l2j - p * fj);
        let log2_h = -1.0 + e * (fj - l2j);
        acc += (p * (1.0 + log2_h) + log2_rho).exp2();
        sums.push(acc);
    }
    sums
}

/// Weighted union of contracted borderline copies: copy `k` (for
/// `k = 1..=k_outer ≤ 5`) uses `p = 1 + 2^{-k}`, is contracted by `2^{-2^k}`,
/// translated to `2^{-k}`, and weighted by `2^{-k}`.
pub fn build_composite(k_outer: usize, k_inner: usize) -> Result<DyadicBlockMeasure, ModelError> {
    if k_outer == 0 || k_outer > 5 {
        return Err(ModelError::InvalidParameter(format!(
            "composite depth {k_outer} out of range: the copies contract \
             doubly-exponentially (scale 2^(-2^k)), so beyond 5 levels the \
             geometry collapses past representable scales"
        )));
    }
    check_depth(k_inner)?;
    let mut blocks = Vec::new();
    let mut bases = Vec::new();
    for kk in 1..=k_outer {
        let p = 1.0 + (-(kk as f64)).exp2();
        let e = (kk as f64).exp2(); // 1/(p-1) = 2^k
        let log2_a = -e; // contraction 2^{-2^k}
        let base = (-(kk as f64)).exp2();
        bases.push(base);
        // copy raw mass Σ 2^{-j} = 1 - 2^{-k_inner}; weight 2^{-k}
        let log2_copy_mass = (1.0 - (-(k_inner as f64)).exp2()).log2();
        let log2_weight = -(kk as f64) - log2_copy_mass;
        for j in 1..=k_inner {
            let fj = j as f64;
            let l2j = fj.log2();
            let log2_rho = e * (l2j - p * fj) + log2_a;
            let log2_h = -1.0 + e * (fj - l2j) - log2_a + log2_weight;
            let center = base + log2_a.exp2() * (-fj).exp2();
            blocks.push(Block::from_log2(center, log2_rho, log2_h, None));
        }
    }
    DyadicBlockMeasure::assemble(blocks, k_inner, BlockFamily::Composite { k_outer }, bases)
}

/// Normalized ball measure (convenience wrapper used by the examples).
pub fn block_ball_measure(m: &DyadicBlockMeasure, x: f64, r: f64) -> f64 {
    m.ball_measure(x, r)
}
