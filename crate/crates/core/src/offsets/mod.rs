//! Horocyclic evolutes, parallels and involutes.

use std::fmt;
use std::sync::Arc;

use crate::domain::Interval;
use crate::error::{Error, Result};
use crate::jet::Jet5;
use crate::legendre::{CurvaturePair, LegendreCurve};
use crate::par;
use crate::tol::Tolerances;
use crate::Sign;

mod curves;
pub mod known;
mod ratio;
mod solve;

pub use curves::{evolute, involute, parallel, OffsetCurve, OffsetKind};
pub use ratio::{evolute_ratio, evolute_ratio_explicit};
pub use solve::{
    constant_solution, evolute_involute_scale, involute_integrate, parallel_closed_form, parallel_integrate,
    ParallelFamily,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    /// f with m + f n = 0.
    EvoluteRatio,
    /// λ± solving the Bernoulli equation.
    ParallelLambda,
    /// s± solving the Riccati equation.
    InvoluteS,
    /// S_E± relating the evolute's involutes to parallels.
    EvoluteInvoluteScale,
}

impl SolutionKind {
    pub fn symbol(self) -> &'static str {
        match self {
            SolutionKind::EvoluteRatio => "f",
            SolutionKind::ParallelLambda => "lambda",
            SolutionKind::InvoluteS => "s",
            SolutionKind::EvoluteInvoluteScale => "S_E",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolutionSource {
    /// A closed-form family member; `None` when the formula has no constant.
    ClosedForm { c: Option<f64> },
    Integrated { t0: f64, y0: f64, step: f64 },
    /// A constant solution checked against the equation.
    Constant { value: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationReason {
    BlowUp,
    DenominatorVanishes,
    NoSmoothExtension,
    BranchMismatch,
    EvaluationFailed,
}

impl fmt::Display for TruncationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruncationReason::BlowUp => "blow-up",
            TruncationReason::DenominatorVanishes => "denominator vanishes",
            TruncationReason::NoSmoothExtension => "no smooth extension",
            TruncationReason::BranchMismatch => "quotient and L'Hôpital branches disagree",
            TruncationReason::EvaluationFailed => "evaluation failed",
        })
    }
}

/// Where and why a validity interval was cut short.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncation {
    pub t: f64,
    pub reason: TruncationReason,
}

type ScalarFn = dyn Fn(f64) -> Result<Jet5> + Send + Sync;

/// A scalar field along a curve with the interval where it is trusted.
#[derive(Clone)]
pub struct OffsetSolution {
    kind: SolutionKind,
    sign: Option<Sign>,
    source: SolutionSource,
    validity: Interval,
    truncations: Vec<Truncation>,
    eval: Arc<ScalarFn>,
}

impl fmt::Debug for OffsetSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OffsetSolution")
            .field("kind", &self.kind)
            .field("sign", &self.sign)
            .field("source", &self.source)
            .field("validity", &self.validity)
            .field("truncations", &self.truncations)
            .finish()
    }
}

impl OffsetSolution {
    /// A solution trusted on all of `validity` without scanning.
    pub fn explicit(
        kind: SolutionKind,
        sign: Option<Sign>,
        source: SolutionSource,
        validity: Interval,
        eval: impl Fn(f64) -> Result<Jet5> + Send + Sync + 'static,
    ) -> Self {
        Self { kind, sign, source, validity, truncations: Vec::new(), eval: Arc::new(eval) }
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn sign(&self) -> Option<Sign> {
        self.sign
    }

    pub fn source(&self) -> &SolutionSource {
        &self.source
    }

    pub fn validity(&self) -> Interval {
        self.validity
    }

    pub fn truncations(&self) -> &[Truncation] {
        &self.truncations
    }

    /// Jets at `t`, refused outside the validity interval.
    pub fn values(&self, t: f64) -> Result<Jet5> {
        if !self.validity.contains(t) {
            return Err(Error::OutsideValidity { t, validity: self.validity });
        }
        (self.eval)(t)
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.values(t).map(|j| j.value())
    }

    /// −self, e.g. s̄± = −s∓ for the flipped curve.
    pub fn negated(&self, kind: SolutionKind, sign: Option<Sign>) -> Self {
        let e = self.eval.clone();
        Self {
            kind,
            sign,
            source: self.source.clone(),
            validity: self.validity,
            truncations: self.truncations.clone(),
            eval: Arc::new(move |t| e(t).map(|j| -j)),
        }
    }

    /// The same field on a smaller interval.
    pub fn restrict(&self, iv: Interval) -> Result<Self> {
        let validity = self.validity.intersect(&iv).ok_or(Error::DomainMismatch(self.validity, iv))?;
        let mut s = self.clone();
        s.validity = validity;
        Ok(s)
    }

    fn with_validity(mut self, validity: Interval, truncations: Vec<Truncation>) -> Self {
        self.validity = validity;
        self.truncations = truncations;
        self
    }
}

/// Grid and anchoring policy for building solutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Integration and quadrature step.
    pub step: f64,
    /// Grid size used when scanning a closed form for its validity interval.
    pub samples: usize,
    /// Point the validity interval must contain; the domain midpoint by default.
    pub anchor: Option<f64>,
    pub tol: Tolerances,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { step: 1e-3, samples: 2001, anchor: None, tol: Tolerances::default() }
    }
}

impl SolveOptions {
    pub fn anchored(mut self, t: f64) -> Self {
        self.anchor = Some(t);
        self
    }

    fn anchor_in(&self, d: Interval) -> f64 {
        self.anchor.map(|a| d.clamp(a)).unwrap_or_else(|| d.mid())
    }
}

/// Outcome of probing one point while scanning for validity.
type Probe = std::result::Result<Option<f64>, TruncationReason>;

/// Largest sub-interval around `anchor` where `good` holds, where the guard
/// returned by `good` keeps its sign, and which contains none of `breaks`.
fn scan_validity(
    domain: Interval,
    anchor: f64,
    samples: usize,
    breaks: &[(f64, TruncationReason)],
    sign_reason: TruncationReason,
    good: impl Fn(f64) -> Probe + Sync + Send,
) -> Result<(Interval, Vec<Truncation>)> {
    let grid = domain.grid(samples.max(3));
    let probes = par::map(&grid, |&t| good(t));
    let a = grid
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - anchor).abs().total_cmp(&(y.1 - anchor).abs()))
        .map(|(i, _)| i)
        .expect("non-empty grid");
    if probes[a].is_err() || breaks.iter().any(|b| (b.0 - grid[a]).abs() < 1e-12) {
        return Err(Error::Invalid(format!("solution is not defined near t = {}", grid[a])));
    }
    let refine = |mut g: f64, mut b: f64| {
        for _ in 0..64 {
            let mid = 0.5 * (g + b);
            if mid == g || mid == b {
                break;
            }
            let ok = good(mid).is_ok() && !breaks.iter().any(|x| (x.0 - mid) * (x.0 - g) <= 0.0);
            if ok {
                g = mid;
            } else {
                b = mid;
            }
        }
        g
    };
    let crossing = |mut l: f64, mut r: f64, gl: f64| {
        for _ in 0..64 {
            let mid = 0.5 * (l + r);
            match good(mid) {
                Ok(Some(g)) if g.signum() == gl.signum() => l = mid,
                _ => r = mid,
            }
        }
        0.5 * (l + r)
    };
    let mut truncations = Vec::new();
    let mut walk = |dir: isize| -> f64 {
        let mut i = a as isize;
        loop {
            let j = i + dir;
            if j < 0 || j as usize >= grid.len() {
                return grid[i as usize];
            }
            let (ti, tj) = (grid[i as usize], grid[j as usize]);
            let (lo, hi) = if ti < tj { (ti, tj) } else { (tj, ti) };
            if let Some(b) = breaks.iter().filter(|b| b.0 > lo && b.0 <= hi || b.0 >= lo && b.0 < hi).min_by(|x, y| {
                (x.0 - ti).abs().total_cmp(&(y.0 - ti).abs())
            }) {
                truncations.push(Truncation { t: b.0, reason: b.1 });
                return refine(ti, b.0);
            }
            match (&probes[i as usize], &probes[j as usize]) {
                (_, Err(reason)) => {
                    let edge = refine(ti, tj);
                    truncations.push(Truncation { t: edge, reason: *reason });
                    return edge;
                }
                (Ok(Some(gi)), Ok(Some(gj))) if gi.signum() != gj.signum() => {
                    let tc = crossing(ti, tj, *gi);
                    truncations.push(Truncation { t: tc, reason: sign_reason });
                    return refine(ti, tc);
                }
                _ => i = j,
            }
        }
    };
    let hi = walk(1);
    let lo = walk(-1);
    let lo_open = domain.lo_open && lo == domain.lo;
    truncations.sort_by(|x, y| x.t.total_cmp(&y.t));
    Ok((Interval { lo, hi, lo_open }, truncations))
}

/// Validity of a closed form: finite, below the blow-up cap, denominator clear of zero.
fn closed_form_validity(
    eval: &ScalarFn,
    guard: Option<&(dyn Fn(f64) -> Result<f64> + Send + Sync)>,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<(Interval, Vec<Truncation>)> {
    let tol = opts.tol;
    scan_validity(domain, opts.anchor_in(domain), opts.samples, &[], TruncationReason::DenominatorVanishes, |t| {
        let g = match guard {
            Some(g) => {
                let v = g(t).map_err(|_| TruncationReason::EvaluationFailed)?;
                if !(v.abs() >= tol.denominator) {
                    return Err(TruncationReason::DenominatorVanishes);
                }
                Some(v)
            }
            None => None,
        };
        let v = eval(t).map_err(|_| TruncationReason::EvaluationFailed)?.value();
        if !(v.abs() <= tol.blowup) {
            return Err(TruncationReason::BlowUp);
        }
        Ok(g)
    })
}

/// Largest residual of `f` over a grid inside the validity of `sol`.
pub fn max_over_validity(
    sol: &OffsetSolution,
    samples: usize,
    f: impl Fn(f64) -> Result<f64> + Sync + Send,
) -> Result<f64> {
    let grid = sol.validity().grid(samples);
    Ok(par::try_map(&grid, |&t| f(t))?.into_iter().fold(0.0, par::nan_max))
}

/// Right-hand side of the equation each solution kind satisfies, as jets.
pub fn equation_rhs(kind: SolutionKind, sign: Sign, m: Jet5, n: Jet5, y: Jet5) -> Option<Jet5> {
    let e = sign.f();
    match kind {
        SolutionKind::ParallelLambda => Some(-(y * y * n * 0.5 + y * m) * e),
        // S_E is an involute scale of the evolute, so (m, n) there are the evolute's
        SolutionKind::InvoluteS | SolutionKind::EvoluteInvoluteScale => Some((m + n * e) * 0.5 * y * y - m),
        SolutionKind::EvoluteRatio => None,
    }
}

/// |y' − rhs| at `t` for a Bernoulli or Riccati solution over curvature `mn`.
pub fn ode_residual(mn: &CurvaturePair, sol: &OffsetSolution, t: f64) -> Result<f64> {
    let sign = sol.sign().ok_or_else(|| Error::Invalid("solution has no sign".into()))?;
    let (m, n) = mn.at(t)?;
    let y = sol.values(t)?;
    let rhs = equation_rhs(sol.kind(), sign, m, n, y)
        .ok_or_else(|| Error::Invalid(format!("{} has no differential equation", sol.kind().symbol())))?;
    Ok((y.d(1) - rhs.value()).abs())
}

/// The base curve and its curvature, bundled for offset constructions.
#[derive(Clone, Debug)]
pub struct Base {
    pub curve: LegendreCurve,
    pub mn: CurvaturePair,
}

impl Base {
    pub fn new(curve: &LegendreCurve) -> Self {
        Self { curve: curve.clone(), mn: curve.curvature() }
    }
}
