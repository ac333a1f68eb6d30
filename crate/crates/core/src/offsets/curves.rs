use std::fmt;

use super::{OffsetSolution, SolutionKind};
use crate::error::{Error, Result};
use crate::jet::Jet5;
use crate::legendre::{CurvaturePair, FrameJet, LegendreCurve, Provenance, JV};
use crate::lorentz::Vec3L;
use crate::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OffsetKind {
    Evolute,
    Parallel,
    Involute,
}

impl OffsetKind {
    pub fn name(self) -> &'static str {
        match self {
            OffsetKind::Evolute => "evolute",
            OffsetKind::Parallel => "parallel",
            OffsetKind::Involute => "involute",
        }
    }

    fn solution_kind(self) -> SolutionKind {
        match self {
            OffsetKind::Evolute => SolutionKind::EvoluteRatio,
            OffsetKind::Parallel => SolutionKind::ParallelLambda,
            OffsetKind::Involute => SolutionKind::InvoluteS,
        }
    }
}

impl fmt::Display for OffsetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An offset curve together with the base curve and scalar field it came from.
#[derive(Clone, Debug)]
pub struct OffsetCurve {
    pub kind: OffsetKind,
    pub sign: Sign,
    pub curve: LegendreCurve,
    pub base: LegendreCurve,
    pub solution: OffsetSolution,
}

fn jv(v: Vec3L<Jet5>, s: Jet5) -> JV {
    v.scale(s)
}

/// Frame jets of the offset at `t` from the base frame and the scalar jets.
fn offset_frame(kind: OffsetKind, sign: Sign, b: &FrameJet, y: Jet5) -> FrameJet {
    let e = sign.f();
    let h = y * y * 0.5;
    let (g, v, u) = (b.gamma, b.nu, b.mu);
    match kind {
        OffsetKind::Evolute => {
            let gamma = g + jv(v, y) + jv(g + u.scale_f(e), h);
            let nu = jv(g, h * -e) + jv(v, y * -e) + jv(u, 1.0 - h);
            FrameJet::from_gamma_nu(gamma, nu)
        }
        OffsetKind::Parallel => {
            let gamma = g + jv(v, y) + jv(g + u.scale_f(e), h);
            let nu = jv(g, y) + v + jv(u, y * e);
            FrameJet::from_gamma_nu(gamma, nu)
        }
        OffsetKind::Involute => {
            let gamma = g + jv(u, y) + jv(g + v.scale_f(e), h);
            let nu = jv(g, -y) - u + jv(v, y * -e);
            FrameJet::from_gamma_nu(gamma, nu)
        }
    }
}

/// Curvature of the offset from the base curvature and the scalar jets.
pub(super) fn offset_curvature(kind: OffsetKind, sign: Sign, m: Jet5, n: Jet5, y: Jet5) -> (Jet5, Jet5) {
    let e = sign.f();
    match kind {
        OffsetKind::Evolute => {
            let yd = y.diff();
            let q = y * y * n * 0.5;
            (q * e - yd, yd * e - q + n)
        }
        OffsetKind::Parallel => (y * n + m, n),
        OffsetKind::Involute => {
            let k = n + m * e;
            (-(y * k), k)
        }
    }
}

fn build(kind: OffsetKind, base: &LegendreCurve, sol: &OffsetSolution, sign: Sign) -> Result<OffsetCurve> {
    if sol.kind() != kind.solution_kind() && !(kind == OffsetKind::Involute && sol.kind() == SolutionKind::EvoluteInvoluteScale) {
        return Err(Error::Invalid(format!("a {} needs {}, got {}", kind, kind.solution_kind().symbol(), sol.kind().symbol())));
    }
    if let Some(s) = sol.sign() {
        if s != sign {
            return Err(Error::Invalid(format!("{} solution used for the {} {}", s, sign, kind)));
        }
    }
    let domain = base
        .domain()
        .intersect(&sol.validity())
        .ok_or(Error::DomainMismatch(base.domain(), sol.validity()))?;
    let (b, s) = (base.clone(), sol.clone());
    let name = format!("{} {} of {}", kind, sign, base.name());
    let curve = LegendreCurve::new(name.clone(), Provenance::Derived(name), domain, move |t| {
        Ok(offset_frame(kind, sign, &b.evaluate_frame(t)?, s.values(t)?))
    })
    .with_frame_tolerance(base.frame_tolerance());
    Ok(OffsetCurve { kind, sign, curve, base: base.clone(), solution: sol.clone() })
}

/// Ev± = γ + fν + (f²/2)(γ ± μ).
pub fn evolute(base: &LegendreCurve, f: &OffsetSolution, sign: Sign) -> Result<OffsetCurve> {
    build(OffsetKind::Evolute, base, f, sign)
}

/// P± = γ + λν + (λ²/2)(γ ± μ).
pub fn parallel(base: &LegendreCurve, lambda: &OffsetSolution, sign: Sign) -> Result<OffsetCurve> {
    build(OffsetKind::Parallel, base, lambda, sign)
}

/// Inv± = γ + sμ + (s²/2)(γ ± ν).
pub fn involute(base: &LegendreCurve, s: &OffsetSolution, sign: Sign) -> Result<OffsetCurve> {
    build(OffsetKind::Involute, base, s, sign)
}

impl OffsetCurve {
    pub fn domain(&self) -> crate::domain::Interval {
        self.curve.domain()
    }

    pub fn point(&self, t: f64) -> Result<Vec3L> {
        self.curve.point(t)
    }

    /// The curvature predicted from the base curvature and the scalar field.
    pub fn closed_form_curvature(&self) -> CurvaturePair {
        let mn = self.base.curvature();
        let sol = self.solution.clone();
        let (kind, sign) = (self.kind, self.sign);
        CurvaturePair::new(self.domain(), move |t| {
            let (m, n) = mn.at(t)?;
            Ok(offset_curvature(kind, sign, m, n, sol.values(t)?))
        })
    }

    /// Largest gap between extracted and predicted curvature on a grid.
    pub fn curvature_mismatch(&self, grid: &[f64]) -> Result<f64> {
        let ext = self.curve.curvature();
        let cf = self.closed_form_curvature();
        let d = crate::par::try_map(grid, |&t| -> Result<f64> {
            let (a, b) = ext.values(t)?;
            let (c, d) = cf.values(t)?;
            Ok((a - c).abs().max((b - d).abs()))
        })?;
        Ok(d.into_iter().fold(0.0, crate::par::nan_max))
    }

    /// As [`Self::curvature_mismatch`], each gap divided by max(1, |closed form|).
    pub fn relative_curvature_mismatch(&self, grid: &[f64]) -> Result<f64> {
        let ext = self.curve.curvature();
        let cf = self.closed_form_curvature();
        let d = crate::par::try_map(grid, |&t| -> Result<f64> {
            let (a, b) = ext.values(t)?;
            let (c, d) = cf.values(t)?;
            Ok(((a - c).abs() / c.abs().max(1.0)).max((b - d).abs() / d.abs().max(1.0)))
        })?;
        Ok(d.into_iter().fold(0.0, crate::par::nan_max))
    }
}
