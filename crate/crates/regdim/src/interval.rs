//! Closed intervals on the real line.

use crate::ModelError;

/// A closed interval `[lo, hi]` with `lo < hi` (positive length) unless noted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// A positive-length interval; rejects reversed, empty, or non-finite endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self, ModelError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(ModelError::BadInterval { lo, hi })
        }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Length of the overlap with `[a, b]` (zero when disjoint).
    pub fn overlap_len(&self, a: f64, b: f64) -> f64 {
        (self.hi.min(b) - self.lo.max(a)).max(0.0)
    }

    /// Does the interval intersect `[a, b]` in more than a point?
    pub fn meets(&self, a: f64, b: f64) -> bool {
        self.lo.max(a) < self.hi.min(b)
    }
}

/// Merge a sorted list of intervals, joining pieces that touch or overlap.
pub fn merge_touching(mut parts: Vec<Interval>) -> Vec<Interval> {
    parts.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
    for p in parts {
        match out.last_mut() {
            Some(last) if p.lo <= last.hi => {
                if p.hi > last.hi {
                    last.hi = p.hi;
                }
            }
            _ => out.push(p),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn overlap_and_merge() {
        let i = Interval::new(0.0, 1.0).unwrap();
        assert_eq!(i.overlap_len(0.5, 2.0), 0.5);
        assert_eq!(i.overlap_len(2.0, 3.0), 0.0);
        let merged = merge_touching(vec![
            Interval::new(0.5, 1.0).unwrap(),
            Interval::new(0.0, 0.5).unwrap(),
            Interval::new(2.0, 3.0).unwrap(),
        ]);
        assert_eq!(merged.len(), 2);
        assert_eq!(merged[0], Interval { lo: 0.0, hi: 1.0 });
    }
}
