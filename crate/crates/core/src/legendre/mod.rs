//! Spacelike Legendre curves (γ, ν) in H² × S₁².

use std::fmt;
use std::sync::Arc;

use crate::domain::Interval;
use crate::error::{Error, Result};
use crate::expr::{eval_jet_n, Expr};
use crate::jet::{taylor_ode, Jet5};
use crate::lorentz::{JetVec, Vec3L};
use crate::par;
use crate::tol::Tolerances;

pub mod builtin;
mod synth;

pub use synth::synthesize_from_curvature;

/// Jet-valued vector at the working order.
pub type JV = JetVec<6>;

/// A frame value {γ, ν, μ}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub gamma: Vec3L,
    pub nu: Vec3L,
    pub mu: Vec3L,
}

impl Frame {
    pub fn new(gamma: Vec3L, nu: Vec3L) -> Self {
        Self { gamma, nu, mu: gamma.wedge(&nu) }
    }

    /// Largest violation of ⟨γ,γ⟩ = −1, ⟨ν,ν⟩ = 1, ⟨γ,ν⟩ = 0 and μ = γ∧ν.
    pub fn residual(&self) -> f64 {
        let w = self.mu - self.gamma.wedge(&self.nu);
        [
            (self.gamma.dot(&self.gamma) + 1.0).abs(),
            (self.nu.dot(&self.nu) - 1.0).abs(),
            self.gamma.dot(&self.nu).abs(),
            w.max_abs(),
        ]
        .into_iter()
        .fold(0.0, par::nan_max)
    }

    /// Projects back onto Δ₁: normalize γ, Gram–Schmidt ν against γ, rebuild μ.
    pub fn renormalized(&self) -> Self {
        let g = self.gamma * (1.0 / (-self.gamma.dot(&self.gamma)).sqrt());
        let gg = g.dot(&g);
        let v = self.nu - g * (self.nu.dot(&g) / gg);
        let v = v * (1.0 / v.dot(&v).sqrt());
        Self::new(g, v)
    }

    pub fn flipped(&self) -> Self {
        Self { gamma: self.gamma, nu: -self.nu, mu: -self.mu }
    }

    pub fn to_array(&self) -> [f64; 9] {
        let [a, b, c] = self.gamma.to_array();
        let [d, e, f] = self.nu.to_array();
        let [g, h, i] = self.mu.to_array();
        [a, b, c, d, e, f, g, h, i]
    }
}

/// The frame with jets of each component.
#[derive(Clone, Copy, Debug)]
pub struct FrameJet {
    pub gamma: JV,
    pub nu: JV,
    pub mu: JV,
}

/// Absolute frame invariant violations at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FrameResiduals {
    pub gamma_norm: f64,
    pub nu_norm: f64,
    pub orth: f64,
    pub legendre: f64,
    pub frenet_gamma: f64,
    pub frenet_nu: f64,
}

impl FrameResiduals {
    pub fn max(&self) -> f64 {
        [self.gamma_norm, self.nu_norm, self.orth, self.legendre, self.frenet_gamma, self.frenet_nu]
            .into_iter()
            .fold(0.0, par::nan_max)
    }

    pub fn merge(&self, o: &Self) -> Self {
        Self {
            gamma_norm: par::nan_max(self.gamma_norm, o.gamma_norm),
            nu_norm: par::nan_max(self.nu_norm, o.nu_norm),
            orth: par::nan_max(self.orth, o.orth),
            legendre: par::nan_max(self.legendre, o.legendre),
            frenet_gamma: par::nan_max(self.frenet_gamma, o.frenet_gamma),
            frenet_nu: par::nan_max(self.frenet_nu, o.frenet_nu),
        }
    }
}

impl FrameJet {
    /// Completes γ, ν jets with μ = γ∧ν.
    pub fn from_gamma_nu(gamma: JV, nu: JV) -> Self {
        Self { gamma, nu, mu: gamma.wedge(&nu) }
    }

    pub fn constant(f: &Frame) -> Self {
        Self { gamma: JV::constant(f.gamma), nu: JV::constant(f.nu), mu: JV::constant(f.mu) }
    }

    pub fn value(&self) -> Frame {
        Frame { gamma: self.gamma.value(), nu: self.nu.value(), mu: self.mu.value() }
    }

    pub fn flipped(&self) -> Self {
        Self { gamma: self.gamma, nu: -self.nu, mu: -self.mu }
    }

    /// m = ⟨γ̇, μ⟩ and n = ⟨ν̇, μ⟩ with their jets.
    pub fn curvature(&self) -> (Jet5, Jet5) {
        (self.gamma.diff().dot(&self.mu), self.nu.diff().dot(&self.mu))
    }

    pub fn residuals(&self) -> FrameResiduals {
        let f = self.value();
        let gd = self.gamma.d(1);
        let nd = self.nu.d(1);
        let fg = gd - f.mu * gd.dot(&f.mu);
        let fnu = nd - f.mu * nd.dot(&f.mu);
        FrameResiduals {
            gamma_norm: (f.gamma.dot(&f.gamma) + 1.0).abs(),
            nu_norm: (f.nu.dot(&f.nu) - 1.0).abs(),
            orth: f.gamma.dot(&f.nu).abs(),
            legendre: gd.dot(&f.nu).abs(),
            frenet_gamma: fg.max_abs(),
            frenet_nu: fnu.max_abs(),
        }
    }

    /// Residuals divided by the size of the vectors involved, so that far-out
    /// offsets are judged by their relative rounding.
    pub fn scaled_residual(&self) -> f64 {
        let r = self.residuals();
        let f = self.value();
        let g = f.gamma.norm_e().max(1.0);
        let v = f.nu.norm_e().max(1.0);
        let mu = f.mu.norm_e().max(1.0);
        let gd = self.gamma.d(1).norm_e().max(1.0);
        let nd = self.nu.d(1).norm_e().max(1.0);
        [
            r.gamma_norm / (g * g),
            r.nu_norm / (v * v),
            r.orth / (g * v),
            r.legendre / (gd * v),
            r.frenet_gamma / (gd * mu * mu),
            r.frenet_nu / (nd * mu * mu),
        ]
        .into_iter()
        .fold(0.0, par::nan_max)
    }
}

/// Integrates the Frenet system in Taylor mode from a frame value and the curvature jets.
pub fn frenet_jets(f: &Frame, m: Jet5, n: Jet5) -> FrameJet {
    let y0 = f.to_array();
    let y = taylor_ode::<6, 9>(y0, |y| {
        let g = [y[0], y[1], y[2]];
        let v = [y[3], y[4], y[5]];
        let u = [y[6], y[7], y[8]];
        let mut r = [Jet5::default(); 9];
        for i in 0..3 {
            r[i] = m * u[i];
            r[3 + i] = n * u[i];
            r[6 + i] = m * g[i] - n * v[i];
        }
        r
    });
    FrameJet {
        gamma: Vec3L::new(y[0], y[1], y[2]),
        nu: Vec3L::new(y[3], y[4], y[5]),
        mu: Vec3L::new(y[6], y[7], y[8]),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Builtin(String),
    Parametric,
    Synthesized { step: f64 },
    Derived(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Builtin(n) => write!(f, "builtin {n}"),
            Provenance::Parametric => f.write_str("parametric"),
            Provenance::Synthesized { step } => write!(f, "synthesized (step {step})"),
            Provenance::Derived(s) => f.write_str(s),
        }
    }
}

type FrameFn = dyn Fn(f64) -> Result<FrameJet> + Send + Sync;

#[derive(Clone)]
pub struct LegendreCurve {
    name: String,
    provenance: Provenance,
    domain: Interval,
    eval: Arc<FrameFn>,
    frame_tol: f64,
}

impl fmt::Debug for LegendreCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LegendreCurve")
            .field("name", &self.name)
            .field("provenance", &self.provenance)
            .field("domain", &self.domain)
            .finish()
    }
}

impl LegendreCurve {
    pub fn new(
        name: impl Into<String>,
        provenance: Provenance,
        domain: Interval,
        eval: impl Fn(f64) -> Result<FrameJet> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            provenance,
            domain,
            eval: Arc::new(eval),
            frame_tol: Tolerances::default().frame,
        }
    }

    /// Curve from parametric expressions for γ and ν, checked on a 256-point grid.
    pub fn parametric(gamma: [Expr; 3], nu: [Expr; 3], domain: Interval, frame_tol: f64) -> Result<Self> {
        let eval = move |t: f64| -> Result<FrameJet> {
            let c = |e: &Expr| eval_jet_n::<6>(e, t);
            let g = Vec3L::new(c(&gamma[0])?, c(&gamma[1])?, c(&gamma[2])?);
            let v = Vec3L::new(c(&nu[0])?, c(&nu[1])?, c(&nu[2])?);
            Ok(FrameJet::from_gamma_nu(g, v))
        };
        let grid = domain.grid(256);
        let checked = par::try_map(&grid, |&t| -> Result<(f64, f64)> {
            let fj = eval(t)?;
            let sheet = if fj.gamma.value().x1 > 0.0 { 0.0 } else { 1.0 };
            Ok((t, fj.scaled_residual().max(sheet)))
        })?;
        let (t, worst) = checked
            .into_iter()
            .fold((domain.lo, 0.0), |acc, (t, r)| if !(r <= acc.1) { (t, r) } else { acc });
        if !(worst <= frame_tol) {
            return Err(Error::PreFlightFailed { t, residual: worst });
        }
        Ok(Self::new("parametric", Provenance::Parametric, domain, eval).with_frame_tolerance(frame_tol))
    }

    pub fn with_frame_tolerance(mut self, tol: f64) -> Self {
        self.frame_tol = tol;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn frame_tolerance(&self) -> f64 {
        self.frame_tol
    }

    /// Frame jets at `t`, checked against the frame invariants.
    pub fn evaluate_frame(&self, t: f64) -> Result<FrameJet> {
        self.domain.check(t)?;
        let fj = (self.eval)(t)?;
        let r = fj.scaled_residual();
        if !(r <= 100.0 * self.frame_tol) {
            return Err(Error::FrameDrift { t, residual: r });
        }
        Ok(fj)
    }

    pub fn point(&self, t: f64) -> Result<Vec3L> {
        Ok(self.evaluate_frame(t)?.gamma.value())
    }

    /// The Legendre curvature (m, n) read off the frame.
    pub fn curvature(&self) -> CurvaturePair {
        let c = self.clone();
        CurvaturePair::new(self.domain, move |t| Ok(c.evaluate_frame(t)?.curvature()))
    }

    /// (γ, −ν), with curvature (−m, n).
    pub fn flip_normal(&self) -> Self {
        let c = self.clone();
        Self {
            name: format!("{} (flipped)", self.name),
            provenance: Provenance::Derived(format!("flip of {}", self.name)),
            domain: self.domain,
            eval: Arc::new(move |t| Ok((c.eval)(t)?.flipped())),
            frame_tol: self.frame_tol,
        }
    }

    pub fn restrict(&self, iv: Interval) -> Result<Self> {
        if !self.domain.covers(&iv) {
            return Err(Error::DomainMismatch(self.domain, iv));
        }
        let mut c = self.clone();
        c.domain = iv;
        Ok(c)
    }

    /// Largest absolute frame residuals over a grid.
    pub fn max_residuals(&self, grid: &[f64]) -> Result<FrameResiduals> {
        let rs = par::try_map(grid, |&t| self.evaluate_frame(t).map(|f| f.residuals()))?;
        Ok(rs.iter().fold(FrameResiduals::default(), |a, r| a.merge(r)))
    }

    /// Largest [`FrameJet::scaled_residual`] over a grid.
    pub fn max_scaled_residual(&self, grid: &[f64]) -> Result<f64> {
        let rs = par::try_map(grid, |&t| self.evaluate_frame(t).map(|f| f.scaled_residual()))?;
        Ok(rs.into_iter().fold(0.0, par::nan_max))
    }

    pub fn geodesic_curvature(&self, t: f64, eps_reg: f64) -> Result<f64> {
        geodesic_curvature(&self.evaluate_frame(t)?.gamma, t, eps_reg)
    }
}

type MnFn = dyn Fn(f64) -> Result<(Jet5, Jet5)> + Send + Sync;

/// The curvature (m, n) as jet-valued functions of t.
#[derive(Clone)]
pub struct CurvaturePair {
    domain: Interval,
    eval: Arc<MnFn>,
}

impl fmt::Debug for CurvaturePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurvaturePair").field("domain", &self.domain).finish()
    }
}

impl CurvaturePair {
    pub fn new(domain: Interval, eval: impl Fn(f64) -> Result<(Jet5, Jet5)> + Send + Sync + 'static) -> Self {
        Self { domain, eval: Arc::new(eval) }
    }

    pub fn from_exprs(m: Expr, n: Expr, domain: Interval) -> Self {
        Self::new(domain, move |t| Ok((eval_jet_n(&m, t)?, eval_jet_n(&n, t)?)))
    }

    /// Jets of (m, n) at `t`.
    pub fn at(&self, t: f64) -> Result<(Jet5, Jet5)> {
        self.domain.check(t)?;
        (self.eval)(t)
    }

    pub fn values(&self, t: f64) -> Result<(f64, f64)> {
        let (m, n) = self.at(t)?;
        Ok((m.value(), n.value()))
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// (−m, n).
    pub fn flip(&self) -> Self {
        let e = self.eval.clone();
        Self::new(self.domain, move |t| e(t).map(|(m, n)| (-m, n)))
    }

    pub fn restrict(&self, iv: Interval) -> Result<Self> {
        if !self.domain.covers(&iv) {
            return Err(Error::DomainMismatch(self.domain, iv));
        }
        Ok(Self { domain: iv, eval: self.eval.clone() })
    }

    /// Applies `f` to the jets pointwise.
    pub fn map(&self, f: impl Fn(Jet5, Jet5) -> (Jet5, Jet5) + Send + Sync + 'static) -> Self {
        let e = self.eval.clone();
        Self::new(self.domain, move |t| e(t).map(|(m, n)| f(m, n)))
    }
}

/// Equal curvature on the grid, hence congruent curves.
pub fn congruent(a: &CurvaturePair, b: &CurvaturePair, grid: &[f64], tol: f64) -> Result<bool> {
    if !a.domain().approx_eq(&b.domain()) {
        return Err(Error::DomainMismatch(a.domain(), b.domain()));
    }
    let d = par::try_map(grid, |&t| -> Result<f64> {
        let (m1, n1) = a.values(t)?;
        let (m2, n2) = b.values(t)?;
        Ok((m1 - m2).abs().max((n1 - n2).abs()))
    })?;
    Ok(d.into_iter().fold(0.0, par::nan_max) <= tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HorocycleBranch {
    /// m + n ≡ 0.
    PlusBranch,
    /// m − n ≡ 0.
    MinusBranch,
    /// Both vanish: the curve is a point.
    Both,
    No,
}

/// Whether the curve lies on a horocycle, read off m ± n.
pub fn is_horocycle(mn: &CurvaturePair, grid: &[f64], tol: f64) -> Result<HorocycleBranch> {
    let v = par::try_map(grid, |&t| mn.values(t))?;
    let plus = v.iter().map(|(m, n)| (m + n).abs()).fold(0.0, par::nan_max) <= tol;
    let minus = v.iter().map(|(m, n)| (m - n).abs()).fold(0.0, par::nan_max) <= tol;
    Ok(match (plus, minus) {
        (true, true) => HorocycleBranch::Both,
        (true, false) => HorocycleBranch::PlusBranch,
        (false, true) => HorocycleBranch::MinusBranch,
        (false, false) => HorocycleBranch::No,
    })
}

/// κ_g = det(γ, γ̇, γ̈)/|γ̇|³.
pub fn geodesic_curvature<const N: usize>(gamma: &JetVec<N>, t: f64, eps_reg: f64) -> Result<f64> {
    let g = gamma.value();
    let gd = gamma.d(1);
    let gdd = gamma.d(2);
    let speed = gd.dot(&gd).abs().sqrt();
    if !(speed >= eps_reg) {
        return Err(Error::SingularPoint { t, speed });
    }
    Ok(crate::lorentz::det(&g, &gd, &gdd) / speed.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::jet::Jet;
    use std::f64::consts::PI;

    #[test]
    fn renormalization_restores_invariants() {
        let f = Frame::new(Vec3L::new(1.01, 0.02, 0.0), Vec3L::new(0.01, -0.99, 0.03));
        let r = f.renormalized();
        assert!(r.residual() < 1e-14);
    }

    #[test]
    fn geodesic_has_zero_curvature() {
        let t = Jet::<4>::variable(0.4);
        let g = Vec3L::new(t.cosh(), t.sinh(), Jet::constant(0.0));
        assert!(geodesic_curvature(&g, 0.4, 1e-10).unwrap().abs() < 1e-14);
    }

    #[test]
    fn horocycle_has_unit_curvature() {
        // x₀ + s x₁ + (s²/2)(x₀ + x₂) with the standard frame
        let s = Jet::<4>::variable(0.0);
        let h = s * s * 0.5;
        let g = Vec3L::new(h + 1.0, s, h);
        assert!((geodesic_curvature(&g, 0.0, 1e-10).unwrap().abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn horocycle_branches() {
        let d = Interval::closed(-PI, PI);
        let grid = d.grid(101);
        let cc = CurvaturePair::from_exprs(parse("cos(t)").unwrap(), parse("cos(t)").unwrap(), d);
        assert_eq!(is_horocycle(&cc, &grid, 1e-12).unwrap(), HorocycleBranch::MinusBranch);
        let cm = CurvaturePair::from_exprs(parse("cos(t)").unwrap(), parse("-cos(t)").unwrap(), d);
        assert_eq!(is_horocycle(&cm, &grid, 1e-12).unwrap(), HorocycleBranch::PlusBranch);
        let cs = CurvaturePair::from_exprs(parse("cos(t)").unwrap(), parse("sin(t)").unwrap(), d);
        assert_eq!(is_horocycle(&cs, &grid, 1e-12).unwrap(), HorocycleBranch::No);
        let z = CurvaturePair::from_exprs(parse("0").unwrap(), parse("0").unwrap(), d);
        assert_eq!(is_horocycle(&z, &grid, 1e-12).unwrap(), HorocycleBranch::Both);
    }

    #[test]
    fn congruence_by_curvature() {
        let d = Interval::closed(-1.0, 1.0);
        let grid = d.grid(51);
        let a = CurvaturePair::from_exprs(parse("cos(t)").unwrap(), parse("cos(t)").unwrap(), d);
        let b = CurvaturePair::from_exprs(parse("-cos(t)").unwrap(), parse("cos(t)").unwrap(), d);
        assert!(congruent(&a, &a, &grid, 1e-12).unwrap());
        assert!(!congruent(&a, &b, &grid, 1e-6).unwrap());
        let c = a.restrict(Interval::closed(0.0, 1.0)).unwrap();
        assert!(matches!(congruent(&a, &c, &grid, 1e-6), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn parametric_preflight_rejects_off_manifold_input() {
        let c = |s: &str| parse(s).unwrap();
        let r = LegendreCurve::parametric(
            [c("2"), c("1"), c("1")],
            [c("0"), c("1"), c("0")],
            Interval::closed(0.0, 1.0),
            1e-9,
        );
        assert!(matches!(r, Err(Error::PreFlightFailed { .. })));
    }

    #[test]
    fn parametric_geodesic_is_accepted() {
        let c = |s: &str| parse(s).unwrap();
        let curve = LegendreCurve::parametric(
            [c("cosh(t)"), c("sinh(t)"), c("0")],
            [c("0"), c("0"), c("1")],
            Interval::closed(-1.0, 1.0),
            1e-9,
        )
        .unwrap();
        let (m, n) = curve.curvature().values(0.3).unwrap();
        assert!((m.abs() - 1.0).abs() < 1e-14 && n.abs() < 1e-14);
    }
}
