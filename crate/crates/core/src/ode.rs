//! Fixed-grid quadrature and Riccati integration.

use std::sync::Arc;

use crate::domain::Interval;
use crate::error::{Error, Result};
use crate::jet::{taylor_ode, Jet5};
use crate::par;

type RealFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// Cumulative composite Simpson integral anchored at the left end of a grid.
pub struct Antiderivative {
    lo: f64,
    h: f64,
    cum: Vec<f64>,
    f: Arc<RealFn>,
}

fn simpson(f: &RealFn, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    Ok((b - a) / 6.0 * (f(a)? + 4.0 * f(0.5 * (a + b))? + f(b)?))
}

impl Antiderivative {
    pub fn build(domain: Interval, step: f64, f: Arc<RealFn>) -> Result<Self> {
        let cells = domain.cells(step);
        let h = domain.width() / cells as f64;
        let idx: Vec<usize> = (0..cells).collect();
        let parts = par::try_map(&idx, |&i| {
            let a = domain.lo + h * i as f64;
            let b = if i + 1 == cells { domain.hi } else { domain.lo + h * (i + 1) as f64 };
            simpson(&*f, a, b)
        })?;
        let mut cum = Vec::with_capacity(cells + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for p in parts {
            acc += p;
            cum.push(acc);
        }
        Ok(Self { lo: domain.lo, h, cum, f })
    }

    /// ∫ from the left end to `t`; the last partial cell uses its own Simpson rule.
    pub fn at(&self, t: f64) -> Result<f64> {
        let cells = self.cum.len() - 1;
        let i = (((t - self.lo) / self.h).floor().max(0.0) as usize).min(cells - 1);
        let a = self.lo + self.h * i as f64;
        Ok(self.cum[i] + simpson(&*self.f, a, t)?)
    }
}

/// Jet coefficients (q0, q1, q2) of y' = q0 + q1 y + q2 y².
pub type RiccatiCoeffs = Arc<dyn Fn(f64) -> Result<[Jet5; 3]> + Send + Sync>;

/// A value stored either directly or as its reciprocal, so poles can be
/// stepped through.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Chart {
    Direct(f64),
    Inverse(f64),
}

impl Chart {
    fn of(y: f64) -> Self {
        if y.abs() > 2.0 {
            Chart::Inverse(1.0 / y)
        } else {
            Chart::Direct(y)
        }
    }

    fn value(self) -> f64 {
        match self {
            Chart::Direct(y) => y,
            Chart::Inverse(w) => 1.0 / w,
        }
    }

    fn raw(self) -> f64 {
        match self {
            Chart::Direct(v) | Chart::Inverse(v) => v,
        }
    }

    fn rechart(self) -> Self {
        match self {
            Chart::Direct(y) if y.abs() > 2.0 => Chart::Inverse(1.0 / y),
            Chart::Inverse(w) if w.abs() > 2.0 => Chart::Direct(1.0 / w),
            c => c,
        }
    }
}

fn slope(c: &Chart, q: [f64; 3]) -> f64 {
    match *c {
        Chart::Direct(y) => q[0] + q[1] * y + q[2] * y * y,
        Chart::Inverse(w) => -q[2] - q[1] * w - q[0] * w * w,
    }
}

fn with_raw(c: Chart, v: f64) -> Chart {
    match c {
        Chart::Direct(_) => Chart::Direct(v),
        Chart::Inverse(_) => Chart::Inverse(v),
    }
}

fn qvals(coeffs: &RiccatiCoeffs, t: f64) -> Result<[f64; 3]> {
    Ok(coeffs(t)?.map(|j| j.value()))
}

fn rk4(coeffs: &RiccatiCoeffs, t: f64, c: Chart, h: f64) -> Result<Chart> {
    let y = c.raw();
    let k1 = slope(&c, qvals(coeffs, t)?);
    let k2 = slope(&with_raw(c, y + 0.5 * h * k1), qvals(coeffs, t + 0.5 * h)?);
    let k3 = slope(&with_raw(c, y + 0.5 * h * k2), qvals(coeffs, t + 0.5 * h)?);
    let k4 = slope(&with_raw(c, y + h * k3), qvals(coeffs, t + h)?);
    Ok(with_raw(c, y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)))
}

/// Why an integration stopped before the end of the domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Stop {
    /// Escape to infinity, located at `t`.
    BlowUp { t: f64 },
    /// The coefficients could not be evaluated at `t`.
    Failed { t: f64, error: Error },
}

/// A Riccati solution on a fixed grid through `t0`.
pub struct RiccatiTrack {
    coeffs: RiccatiCoeffs,
    nodes: Vec<(f64, Chart)>,
    pub stops: Vec<Stop>,
}

impl RiccatiTrack {
    /// RK4 from `y(t0) = y0` towards both ends of `domain`, switching to the
    /// reciprocal chart when |y| grows, and stopping once |y| exceeds `cap`.
    pub fn integrate(
        coeffs: RiccatiCoeffs,
        t0: f64,
        y0: f64,
        domain: Interval,
        step: f64,
        cap: f64,
    ) -> Result<Self> {
        domain.check(t0)?;
        if !(step > 0.0) {
            return Err(Error::Invalid(format!("step must be positive, got {step}")));
        }
        if !y0.is_finite() {
            return Err(Error::Invalid(format!("initial value must be finite, got {y0}")));
        }
        let mut stops = Vec::new();
        let (left, stop_l) = sweep(&coeffs, t0, y0, domain.lo, step, cap);
        let (right, stop_r) = sweep(&coeffs, t0, y0, domain.hi, step, cap);
        stops.extend(stop_l);
        stops.extend(stop_r);
        let mut nodes: Vec<(f64, Chart)> = left.into_iter().rev().collect();
        nodes.push((t0, Chart::of(y0)));
        nodes.extend(right);
        Ok(Self { coeffs, nodes, stops })
    }

    /// The interval covered by accepted nodes.
    pub fn span(&self) -> (f64, f64) {
        (self.nodes[0].0, self.nodes[self.nodes.len() - 1].0)
    }

    /// Value from the nearest node plus one RK4 substep, then jets by Taylor recursion.
    pub fn jet_at(&self, t: f64) -> Result<Jet5> {
        let i = self.nodes.partition_point(|(s, _)| *s < t);
        let k = match i {
            0 => 0,
            i if i == self.nodes.len() => i - 1,
            i => {
                if (self.nodes[i].0 - t).abs() < (t - self.nodes[i - 1].0).abs() {
                    i
                } else {
                    i - 1
                }
            }
        };
        let (tk, c) = self.nodes[k];
        let y = if tk == t { c.value() } else { rk4(&self.coeffs, tk, c, t - tk)?.value() };
        let q = (self.coeffs)(t)?;
        let [j] = taylor_ode::<6, 1>([y], |y| [q[0] + q[1] * y[0] + q[2] * y[0] * y[0]]);
        Ok(j)
    }
}

fn sweep(coeffs: &RiccatiCoeffs, t0: f64, y0: f64, end: f64, step: f64, cap: f64) -> (Vec<(f64, Chart)>, Option<Stop>) {
    let dir = if end >= t0 { 1.0 } else { -1.0 };
    let mut out = Vec::new();
    let mut t = t0;
    let mut c = Chart::of(y0);
    while (end - t) * dir > 1e-14 * (1.0 + end.abs()) {
        let remaining = (end - t).abs();
        let (h, tn) = if remaining <= step * (1.0 + 1e-9) { (end - t, end) } else { (dir * step, t + dir * step) };
        let next = match rk4(coeffs, t, c, h) {
            Ok(n) => n,
            Err(error) => return (out, Some(Stop::Failed { t, error })),
        };
        let escaped = match (c, next) {
            (_, n) if !n.raw().is_finite() => Some(t + 0.5 * h),
            (Chart::Inverse(w0), Chart::Inverse(w1)) if w0 * w1 <= 0.0 => Some(t + h * w0 / (w0 - w1)),
            (_, Chart::Inverse(w1)) if w1.abs() < 1.0 / cap => {
                let d = qvals(coeffs, tn).map(|q| slope(&Chart::Inverse(w1), q)).unwrap_or(0.0);
                Some(if d != 0.0 { tn - w1 / d } else { tn })
            }
            (_, Chart::Direct(y1)) if y1.abs() > cap => Some(tn),
            _ => None,
        };
        if let Some(te) = escaped {
            return (out, Some(Stop::BlowUp { t: te }));
        }
        c = next.rechart();
        t = tn;
        out.push((t, c));
    }
    (out, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_integrates_sine() {
        let a = Antiderivative::build(Interval::closed(0.0, PI), 1e-2, Arc::new(|t: f64| Ok(t.sin()))).unwrap();
        for t in [0.3, 1.0, 2.2, PI] {
            assert!((a.at(t).unwrap() - (1.0 - t.cos())).abs() < 1e-10, "{t}");
        }
    }

    fn constant(q0: f64, q1: f64, q2: f64) -> RiccatiCoeffs {
        Arc::new(move |_| Ok([Jet5::constant(q0), Jet5::constant(q1), Jet5::constant(q2)]))
    }

    #[test]
    fn tangent_blows_up_at_half_pi() {
        let tr = RiccatiTrack::integrate(constant(1.0, 0.0, 1.0), 0.0, 0.0, Interval::closed(-1.0, 3.0), 1e-3, 1e6)
            .unwrap();
        let Stop::BlowUp { t } = tr.stops[0] else { panic!("{:?}", tr.stops) };
        assert!((t - PI / 2.0).abs() < 1e-6, "{t}");
        for t in [-0.9, 0.3, 1.2, 1.5] {
            assert!((tr.jet_at(t).unwrap().value() - t.tan()).abs() < 1e-9 * (1.0 + t.tan().powi(2)));
        }
    }

    #[test]
    fn jets_follow_the_equation() {
        let tr = RiccatiTrack::integrate(constant(1.0, 0.0, 1.0), 0.0, 0.0, Interval::closed(0.0, 1.0), 1e-3, 1e6)
            .unwrap();
        let j = tr.jet_at(0.7).unwrap();
        let c = 0.7f64.cos();
        assert!((j.d(1) - 1.0 / (c * c)).abs() < 1e-10);
    }

    #[test]
    fn equilibrium_is_exact() {
        let tr = RiccatiTrack::integrate(constant(0.0, -1.0, -0.5), 0.0, -2.0, Interval::closed(-1.0, 1.0), 1e-3, 1e6)
            .unwrap();
        assert!(tr.stops.is_empty());
        assert_eq!(tr.jet_at(0.8).unwrap().value(), -2.0);
    }
}
