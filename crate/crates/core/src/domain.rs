use std::fmt;

use crate::error::{Error, Result};

/// A parameter interval. `lo_open` only affects which endpoint zeros are
/// reported; evaluation is allowed on the closed hull.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: false }
    }

    pub fn left_open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: true }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn slack(&self) -> f64 {
        1e-12 * (1.0 + self.lo.abs().max(self.hi.abs()))
    }

    pub fn contains(&self, t: f64) -> bool {
        let s = self.slack();
        t >= self.lo - s && t <= self.hi + s
    }

    /// Membership honoring an open left end.
    pub fn contains_strict(&self, t: f64) -> bool {
        if self.lo_open && t <= self.lo + self.slack() {
            return false;
        }
        self.contains(t)
    }

    pub fn clamp(&self, t: f64) -> f64 {
        t.clamp(self.lo, self.hi)
    }

    pub fn check(&self, t: f64) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, domain: *self })
        }
    }

    pub fn covers(&self, o: &Interval) -> bool {
        self.contains(o.lo) && self.contains(o.hi)
    }

    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        let (lo, lo_open) = if self.lo > o.lo {
            (self.lo, self.lo_open)
        } else if o.lo > self.lo {
            (o.lo, o.lo_open)
        } else {
            (self.lo, self.lo_open || o.lo_open)
        };
        let hi = self.hi.min(o.hi);
        (lo <= hi).then_some(Interval { lo, hi, lo_open })
    }

    pub fn approx_eq(&self, o: &Interval) -> bool {
        let s = self.slack().max(o.slack());
        (self.lo - o.lo).abs() <= s && (self.hi - o.hi).abs() <= s
    }

    /// `n` equispaced points with exact endpoints.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2, "a grid needs at least two points");
        let w = self.hi - self.lo;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| if i == n - 1 { self.hi } else { self.lo + w * (i as f64 / last) })
            .collect()
    }

    /// Number of cells of width at most `step`.
    pub fn cells(&self, step: f64) -> usize {
        ((self.width() / step).ceil() as usize).max(1)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        write!(f, "{l}{}, {}]", self.lo, self.hi)
    }
}
