//! Horocycles and the normal and tangent horocycle families along a curve.

use crate::error::{Error, Result};
use crate::jet::Jet5;
use crate::legendre::{Frame, FrameJet, LegendreCurve, JV};
use crate::lorentz::{Vec3L, H2_TOL};
use crate::offsets::OffsetSolution;
use crate::tol::Tolerances;
use crate::Sign;

/// HC(ℓ, −1) = {x ∈ H² : ⟨x, ℓ⟩ = −1} for a lightlike ℓ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Horocycle {
    pub ell: Vec3L,
}

impl Horocycle {
    pub fn new(ell: Vec3L, eps: f64) -> Result<Self> {
        if ell.max_abs() == 0.0 {
            return Err(Error::ZeroVector);
        }
        let q = ell.dot(&ell);
        if !(q.abs() <= eps * ell.norm_e().powi(2).max(1.0)) {
            return Err(Error::Invalid(format!("horocycle director is not lightlike: <l,l> = {q}")));
        }
        Ok(Self { ell })
    }

    /// The horocycle through x₀ tangent to x₁ that bends towards ±x₂.
    pub fn through(x0: Vec3L, x1: Vec3L, sign: Sign) -> Result<Self> {
        check_frame(&x0, &x1)?;
        Self::new(x0 + x0.wedge(&x1) * sign.f(), 1e-9)
    }

    /// ⟨x, ℓ⟩ + 1.
    pub fn residual(&self, x: &Vec3L) -> f64 {
        x.dot(&self.ell) + 1.0
    }
}

fn check_frame(x0: &Vec3L, x1: &Vec3L) -> Result<()> {
    let r = (x0.dot(x0) + 1.0).abs().max((x1.dot(x1) - 1.0).abs()).max(x0.dot(x1).abs());
    if !(r <= 1e-9) {
        return Err(Error::BadFrame { residual: r });
    }
    Ok(())
}

/// x₀ + s x₁ + (s²/2)(x₀ ± x₂) with x₂ = x₀ ∧ x₁.
pub fn horocycle_point(x0: Vec3L, x1: Vec3L, sign: Sign, s: f64) -> Result<Vec3L> {
    check_frame(&x0, &x1)?;
    let x2 = x0.wedge(&x1);
    Ok(x0 + x1 * s + (x0 + x2 * sign.f()) * (0.5 * s * s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Horocycles through γ(t) tangent to ν(t).
    Normal,
    /// Horocycles through γ(t) tangent to μ(t).
    Tangent,
}

/// Curvature (m*, n*, L, M, N) of a one-parameter family of Legendre curves:
/// x_s = m* μ, ν_s = n* μ, x_t = L ν + M μ, ν_t = L x + N μ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyCurvature {
    pub m: f64,
    pub n: f64,
    pub l: f64,
    pub mm: f64,
    pub nn: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySample {
    pub point: Vec3L,
    pub frame: Frame,
    pub curvature: FamilyCurvature,
}

#[derive(Clone, Debug)]
pub struct HorocycleFamily {
    pub base: LegendreCurve,
    pub kind: FamilyKind,
    pub sign: Sign,
}

impl HorocycleFamily {
    pub fn new(base: &LegendreCurve, kind: FamilyKind, sign: Sign) -> Self {
        Self { base: base.clone(), kind, sign }
    }

    /// Point and family normal at (s, t) as jets in t.
    pub fn jets(&self, s: f64, t: f64) -> Result<FrameJet> {
        let b = self.base.evaluate_frame(t)?;
        let e = self.sign.f();
        let h = 0.5 * s * s;
        let (x, nu) = match self.kind {
            FamilyKind::Normal => {
                let bend = b.gamma + b.mu.scale_f(e);
                (b.gamma + b.nu.scale_f(s) + bend.scale_f(h), b.mu.scale_f(-e) + b.nu.scale_f(s) + bend.scale_f(h))
            }
            FamilyKind::Tangent => {
                let bend = b.gamma + b.nu.scale_f(e);
                (b.gamma + b.mu.scale_f(s) + bend.scale_f(h), b.nu.scale_f(-e) + b.mu.scale_f(s) + bend.scale_f(h))
            }
        };
        Ok(FrameJet::from_gamma_nu(x, nu))
    }

    pub fn eval(&self, s: f64, t: f64) -> Result<FamilySample> {
        let (m, n) = self.base.evaluate_frame(t)?.curvature();
        let frame = self.jets(s, t)?.value();
        Ok(FamilySample { point: frame.gamma, frame, curvature: self.curvature_at(s, m.value(), n.value()) })
    }

    fn curvature_at(&self, s: f64, m: f64, n: f64) -> FamilyCurvature {
        let e = self.sign.f();
        let s2 = s * s;
        match self.kind {
            FamilyKind::Normal => {
                let mm = 0.5 * s2 * n + s * m;
                FamilyCurvature { m: e, n: e, l: -e * (m + s * n), mm, nn: mm + n }
            }
            FamilyKind::Tangent => {
                let k = m + e * n;
                FamilyCurvature { m: -e, n: -e, l: s * k, mm: -e * m + e * 0.5 * s2 * k, nn: n + e * 0.5 * s2 * k }
            }
        }
    }

    /// ṡ m* sin α + ṫ M sin α − ṫ L cos α along a pre-curve u ↦ (s(u), t(u)).
    pub fn enveloid_residual<'a>(
        &'a self,
        pre_curve: impl Fn(f64) -> Result<(Jet5, Jet5)> + 'a,
        alpha: f64,
    ) -> impl Fn(f64) -> Result<f64> + 'a {
        let (sa, ca) = alpha.sin_cos();
        move |u| {
            let (s, t) = pre_curve(u)?;
            let (m, n) = self.base.evaluate_frame(t.value())?.curvature();
            let k = self.curvature_at(s.value(), m.value(), n.value());
            Ok(s.d(1) * k.m * sa + t.d(1) * k.mm * sa - t.d(1) * k.l * ca)
        }
    }
}

/// The pre-curve t ↦ (y(t), t) of a scalar field along the base.
pub fn graph_pre_curve(sol: &OffsetSolution) -> impl Fn(f64) -> Result<(Jet5, Jet5)> + '_ {
    move |t| Ok((sol.values(t)?, Jet5::variable(t)))
}

fn on_h2(x: &Vec3L) -> Result<()> {
    let r = x.h2_residual();
    if !(r <= H2_TOL) || x.x1 <= 0.0 {
        return Err(Error::NotOnH2 { residual: r });
    }
    Ok(())
}

/// H_E± = ⟨γ ± μ, x⟩ + 1 and its t-derivative.
pub fn discriminant_he(base: &LegendreCurve, sign: Sign, t: f64, x: &Vec3L) -> Result<(f64, f64)> {
    on_h2(x)?;
    let b = base.evaluate_frame(t)?;
    let d: JV = b.gamma + b.mu.scale_f(sign.f());
    Ok((d.value().dot(x) + 1.0, d.d(1).dot(x)))
}

/// H_I± = ⟨γ ∓ μ + s(μ ∓ γ − ν) + (s²/2)(γ ± ν), x⟩ + 1 and its t-derivative.
pub fn discriminant_hi(
    base: &LegendreCurve,
    sign: Sign,
    s_sol: &OffsetSolution,
    t: f64,
    x: &Vec3L,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    on_h2(x)?;
    let b = base.evaluate_frame(t)?;
    let s = s_sol.values(t)?;
    let (m, n) = b.curvature();
    let e = sign.f();
    let gate = (s.value() - e) * (n.value() - e * m.value());
    if !(gate.abs() >= tol.degenerate) {
        return Err(Error::DegenerateFamily { t, value: gate });
    }
    let d: JV = b.gamma - b.mu.scale_f(e)
        + (b.mu - b.gamma.scale_f(e) - b.nu).scale(s)
        + (b.gamma + b.nu.scale_f(e)).scale(s * s * 0.5);
    Ok((d.value().dot(x) + 1.0, d.d(1).dot(x)))
}
