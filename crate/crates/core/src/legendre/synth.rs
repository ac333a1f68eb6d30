use std::sync::Arc;

use super::{frenet_jets, CurvaturePair, Frame, FrameJet, LegendreCurve, Provenance};
use crate::domain::Interval;
use crate::error::{Error, Result};
use crate::lorentz::Vec3L;

/// Drift allowed in a single step before renormalization.
const MAX_STEP_DRIFT: f64 = 1e-3;

#[derive(Clone, Copy)]
struct State([Vec3L; 3]);

impl State {
    fn of(f: &Frame) -> Self {
        State([f.gamma, f.nu, f.mu])
    }

    fn frame(&self) -> Frame {
        Frame { gamma: self.0[0], nu: self.0[1], mu: self.0[2] }
    }

    fn axpy(&self, h: f64, k: &State) -> State {
        State([self.0[0] + k.0[0] * h, self.0[1] + k.0[1] * h, self.0[2] + k.0[2] * h])
    }
}

fn rhs(mn: &CurvaturePair, t: f64, y: &State) -> Result<State> {
    let (m, n) = mn.values(t)?;
    let [g, v, u] = y.0;
    Ok(State([u * m, u * n, g * m - v * n]))
}

fn rk4(mn: &CurvaturePair, t: f64, y: &State, h: f64) -> Result<State> {
    let k1 = rhs(mn, t, y)?;
    let k2 = rhs(mn, t + 0.5 * h, &y.axpy(0.5 * h, &k1))?;
    let k3 = rhs(mn, t + 0.5 * h, &y.axpy(0.5 * h, &k2))?;
    let k4 = rhs(mn, t + h, &y.axpy(h, &k3))?;
    let mut out = *y;
    for i in 0..3 {
        out.0[i] = out.0[i] + (k1.0[i] + k2.0[i] * 2.0 + k3.0[i] * 2.0 + k4.0[i]) * (h / 6.0);
    }
    Ok(out)
}

struct Track {
    lo: f64,
    h: f64,
    nodes: Vec<Frame>,
    mn: CurvaturePair,
}

impl Track {
    fn frame_at(&self, t: f64) -> Result<FrameJet> {
        let last = self.nodes.len() - 1;
        let i = (((t - self.lo) / self.h).round().max(0.0) as usize).min(last);
        let ti = if i == last { self.lo + self.h * last as f64 } else { self.lo + self.h * i as f64 };
        let dt = t - ti;
        let base = self.nodes[i];
        let f = if dt == 0.0 { base } else { rk4(&self.mn, ti, &State::of(&base), dt)?.frame().renormalized() };
        let (m, n) = self.mn.at(t)?;
        Ok(frenet_jets(&f, m, n))
    }
}

/// Integrates γ̇ = mμ, ν̇ = nμ, μ̇ = mγ − nν from `frame0` at `domain.lo`.
///
/// Classical RK4 on a fixed grid, renormalizing the frame after every step.
/// Off-grid values take one RK4 substep from the nearest node.
pub fn synthesize_from_curvature(
    mn: &CurvaturePair,
    frame0: &Frame,
    domain: Interval,
    step: f64,
) -> Result<LegendreCurve> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Invalid(format!("step must be positive, got {step}")));
    }
    if !mn.domain().covers(&domain) {
        return Err(Error::DomainMismatch(mn.domain(), domain));
    }
    let r = frame0.residual();
    if !(r <= 1e-9) || frame0.gamma.x1 <= 0.0 {
        return Err(Error::InvalidInitialFrame { residual: r });
    }
    let cells = domain.cells(step);
    let h = domain.width() / cells as f64;
    let mut nodes = Vec::with_capacity(cells + 1);
    nodes.push(*frame0);
    let mut y = State::of(frame0);
    for i in 0..cells {
        let t = domain.lo + h * i as f64;
        let next = rk4(mn, t, &y, h)?;
        let drift = next.frame().residual();
        if !(drift <= MAX_STEP_DRIFT) {
            return Err(Error::StepTooLarge { t, drift });
        }
        let f = next.frame().renormalized();
        nodes.push(f);
        y = State::of(&f);
    }
    let track = Arc::new(Track { lo: domain.lo, h, nodes, mn: mn.clone() });
    Ok(LegendreCurve::new("synthesized", Provenance::Synthesized { step: h }, domain, move |t| {
        track.frame_at(t)
    }))
}
