//! The acceptance suite: twelve numbered checks with fixed limits, shared by
//! the integration tests and `horocurve verify`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::Interval;
use crate::error::Result;
use crate::expr::{eval, eval_jet, parse, random};
use crate::horocycle::{discriminant_he, discriminant_hi, graph_pre_curve, FamilyKind, HorocycleFamily};
use crate::legendre::{builtin, synthesize_from_curvature, CurvaturePair, Frame, LegendreCurve};
use crate::lorentz::Vec3L;
use crate::offsets::{
    constant_solution, evolute, evolute_involute_scale, evolute_ratio, evolute_ratio_explicit, involute,
    involute_integrate, known, parallel, parallel_integrate, OffsetSolution, ParallelFamily, SolutionKind,
    SolveOptions, TruncationReason,
};
use crate::par;
use crate::singularities::{classify_from_curvature, classify_geometric, find_zeros, singular_points, CuspClass};
use crate::tol::Tolerances;
use crate::Sign;

pub const FRAME_LIMIT: f64 = 1e-9;
pub const CURVATURE_LIMIT: f64 = 1e-8;
pub const SYNTH_LIMIT: f64 = 1e-6;
pub const EVOLUTE_LIMIT: f64 = 1e-8;
pub const ODE_LIMIT: f64 = 1e-6;
pub const BLOWUP_WINDOW: f64 = 0.01;
pub const DUALITY_LIMIT: f64 = 1e-6;
pub const COMMUTE_LIMIT: f64 = 1e-6;
/// Largest |λ| at which Ev(P) is compared; beyond it the composition cancels terms of size λ⁴.
pub const COMMUTE_LAMBDA_CAP: f64 = 10.0;
pub const ENVELOID_CLOSED: f64 = 1e-9;
pub const ENVELOID_INTEGRATED: f64 = 1e-6;
pub const DISCRIMINANT_LIMIT: f64 = 1e-8;
pub const HI_GATE: f64 = 1e-6;
pub const FLIP_LIMIT: f64 = 1e-8;
pub const FD_LIMIT: f64 = 1e-5;
pub const PYTHAGORAS_LIMIT: f64 = 1e-12;
pub const T0_EXAMPLE2: f64 = 0.7986;
pub const T0_LIMIT: f64 = 5e-4;
pub const RANDOM_EXPRESSIONS: usize = 1000;
pub const DEFAULT_SEED: u64 = 0x5eed_2026;

pub const TITLES: [&str; 12] = [
    "frame invariants",
    "curvature oracle",
    "existence round trip",
    "evolute oracle",
    "ODE vs closed form",
    "evolute/involute duality",
    "evolute of parallels",
    "cusp classification",
    "envelope structure",
    "orientation flips",
    "parser and jets",
    "example 2 inflections",
];

/// One measured quantity and the bound it must stay below.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    pub label: String,
    pub value: f64,
    pub limit: f64,
}

impl Measure {
    pub fn new(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { label: label.into(), value, limit }
    }

    pub fn ok(&self) -> bool {
        self.value < self.limit
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub measures: Vec<Measure>,
    pub error: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.measures.is_empty() && self.measures.iter().all(Measure::ok)
    }

    /// Largest value/limit ratio over the measures.
    pub fn worst_ratio(&self) -> f64 {
        self.measures.iter().map(|m| m.value / m.limit).fold(0.0, par::nan_max)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2}. {}", self.id, self.title)?;
        if let Some(e) = &self.error {
            write!(f, ": error: {e}")?;
        } else if let Some(w) = self.measures.iter().max_by(|a, b| (a.value / a.limit).total_cmp(&(b.value / b.limit))) {
            write!(f, ": worst {} = {:.3e} (limit {:.0e})", w.label, w.value, w.limit)?;
        }
        Ok(())
    }
}

pub fn run(id: usize) -> Outcome {
    let r = match id {
        1 => frame_invariants(),
        2 => curvature_oracle(),
        3 => existence_round_trip(),
        4 => evolute_oracle(),
        5 => ode_vs_closed_form(),
        6 => duality(),
        7 => commutation(),
        8 => cusp_classification(),
        9 => envelope_structure(),
        10 => orientation_flips(),
        11 => parser_and_jets(random::seed_from_env(DEFAULT_SEED)),
        12 => example2_inflections(),
        _ => return Outcome { id, title: "unknown", measures: Vec::new(), error: Some(format!("no criterion {id}")) },
    };
    let title = TITLES[id - 1];
    match r {
        Ok(measures) => Outcome { id, title, measures, error: None },
        Err(e) => Outcome { id, title, measures: Vec::new(), error: Some(e.to_string()) },
    }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=12).map(run).collect()
}

fn sup(grid: &[f64], f: impl Fn(f64) -> Result<f64> + Sync + Send) -> Result<f64> {
    Ok(par::try_map(grid, |&t| f(t))?.into_iter().fold(0.0, par::nan_max))
}

fn window() -> Interval {
    Interval::closed(-1.0, 1.0)
}

fn example1_evolute_display(sign: Sign, t: f64) -> Vec3L {
    let (s, e) = (t.sin(), sign.f());
    Vec3L::new(1.5 + e * s / 2.0 + s * s / 4.0, 1.0 + e * s / 2.0 + s * s / 4.0, -s / 2.0 - e / 2.0)
}

fn frame_invariants() -> Result<Vec<Measure>> {
    let mut out = Vec::new();
    for c in [builtin::example1(), builtin::example2()] {
        let r = c.max_residuals(&c.domain().grid(10_000))?;
        let v = [r.gamma_norm, r.nu_norm, r.orth, r.legendre].into_iter().fold(0.0, par::nan_max);
        out.push(Measure::new(format!("{} frame residual", c.name()), v, FRAME_LIMIT));
    }
    Ok(out)
}

fn curvature_oracle() -> Result<Vec<Measure>> {
    let mn = builtin::example1().curvature();
    let v = sup(&builtin::period().grid(1001), |t| {
        let (m, n) = mn.values(t)?;
        Ok((m - t.cos()).abs().max((n - t.cos()).abs()))
    })?;
    Ok(vec![Measure::new("|(m,n) - (cos t, cos t)|", v, CURVATURE_LIMIT)])
}

fn existence_round_trip() -> Result<Vec<Measure>> {
    let d = Interval::closed(0.0, PI);
    let mn = CurvaturePair::from_exprs(parse("cos(t)")?, parse("cos(t)")?, d);
    let f0 = builtin::example1_frame(0.0).value();
    let c = synthesize_from_curvature(&mn, &f0, d, 1e-3)?;
    let v = sup(&d.grid(1001), |t| Ok((c.point(t)? - builtin::example1_frame(t).gamma.value()).max_abs()))?;
    Ok(vec![Measure::new("|γ_synth - γ|", v, SYNTH_LIMIT)])
}

fn evolute_oracle() -> Result<Vec<Measure>> {
    let base = builtin::example1();
    let f = evolute_ratio(&base.curvature(), base.domain(), &SolveOptions::default())?;
    let grid = base.domain().grid(1001);
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let ev = evolute(&base, &f, sign)?;
        let v = sup(&grid, |t| Ok((ev.point(t)? - example1_evolute_display(sign, t)).max_abs()))?;
        out.push(Measure::new(format!("|Ev{sign:#} - display|"), v, EVOLUTE_LIMIT));
        out.push(Measure::new(format!("Ev{sign:#} curvature identity"), ev.curvature_mismatch(&grid)?, EVOLUTE_LIMIT));
    }
    Ok(out)
}

/// Largest relative gap between two solutions over the window and both validities.
fn solution_gap(a: &OffsetSolution, b: &OffsetSolution, w: Interval) -> Result<(f64, Interval)> {
    let iv = w
        .intersect(&a.validity())
        .and_then(|i| i.intersect(&b.validity()))
        .ok_or_else(|| crate::Error::Invalid("solutions have no common interval".into()))?;
    let v = sup(&iv.grid(1001), |t| {
        let (x, y) = (a.value(t)?, b.value(t)?);
        Ok((x - y).abs() / y.abs().max(1.0))
    })?;
    Ok((v, iv))
}

fn ode_vs_closed_form() -> Result<Vec<Measure>> {
    let mn = builtin::example1().curvature();
    let d = builtin::period();
    let opts = SolveOptions::default().anchored(0.0);
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let fam = ParallelFamily::build(&mn, sign, d, opts.step)?;
        let closed = fam.solution(fam.constant_for(0.0, 2.0)?, &opts)?;
        let num = parallel_integrate(&mn, sign, 2.0, 0.0, d, &opts)?;
        let (v, iv) = solution_gap(&num, &closed, window())?;
        out.push(Measure::new(format!("λ{sign:#}(0)=2 vs closed form on {iv}, relative"), v, ODE_LIMIT));
    }
    let s = involute_integrate(&mn, Sign::Plus, 0.0, 0.0, d, &opts)?;
    let v = sup(&window().grid(1001), |t| Ok((s.value(t)? + t.sin().tanh()).abs()))?;
    out.push(Measure::new("s+(0)=0 vs -tanh(sin t)", v, ODE_LIMIT));
    let d3 = Interval::closed(0.0, 3.0);
    let tan = CurvaturePair::from_exprs(parse("-1")?, parse("3")?, d3);
    let s = involute_integrate(&tan, Sign::Plus, 0.0, 0.0, d3, &opts)?;
    let escape = s
        .truncations()
        .iter()
        .find(|tr| tr.reason == TruncationReason::BlowUp)
        .map(|tr| (tr.t - FRAC_PI_2).abs())
        .unwrap_or(f64::INFINITY);
    out.push(Measure::new("|blow-up - π/2|", escape, BLOWUP_WINDOW));
    Ok(out)
}

fn duality() -> Result<Vec<Measure>> {
    let base = builtin::example1();
    let mn = base.curvature();
    let d = base.domain();
    let w = window();
    let opts = SolveOptions::default().anchored(0.0);
    let grid = w.grid(1001);
    let mut out = Vec::new();

    let s_plus = known::example1_s_plus(-1.0, &opts)?;
    let inv = involute(&base, &s_plus, Sign::Plus)?;
    let f_inv = evolute_ratio(&inv.closed_form_curvature().restrict(w)?, w, &opts)?;
    let back = evolute(&inv.curve.restrict(w)?, &f_inv, Sign::Plus)?;
    let v = sup(&grid, |t| Ok((back.point(t)? - base.point(t)?).max_abs()))?;
    out.push(Measure::new("|Ev+(Inv+) - γ|", v, DUALITY_LIMIT));

    // Inv⁻ of this curve is a point (n − m ≡ 0), so its evolute ratio is s₋ itself
    let s_minus = known::example1_s_minus(0.3, &opts)?;
    let inv = involute(&base, &s_minus, Sign::Minus)?;
    let sm = s_minus.clone();
    let f_inv = evolute_ratio_explicit(move |t| sm.values(t), w, &opts)?;
    let back = evolute(&inv.curve.restrict(w)?, &f_inv, Sign::Minus)?;
    let v = sup(&grid, |t| Ok((back.point(t)? - base.point(t)?).max_abs()))?;
    out.push(Measure::new("|Ev-(Inv-) - γ|", v, DUALITY_LIMIT));

    let f = evolute_ratio(&mn, d, &opts)?;
    for sign in [Sign::Plus, Sign::Minus] {
        let ev = evolute(&base, &f, sign)?;
        let fam = ParallelFamily::build(&mn, sign, d, opts.step)?;
        let c = fam.constant_for(0.0, 0.5)?;
        let scale = evolute_involute_scale(&mn, &f, sign, c, d, &opts)?;
        let inv = involute(&ev.curve, &scale, sign)?;
        let par = parallel(&base, &fam.solution(c, &opts)?, sign)?;
        let v = sup(&grid, |t| Ok((inv.point(t)? - par.point(t)?).max_abs()))?;
        out.push(Measure::new(format!("|Inv{sign:#}(Ev{sign:#}, S_E) - P{sign:#}(f - S_E)|"), v, DUALITY_LIMIT));
    }
    Ok(out)
}

fn commutation() -> Result<Vec<Measure>> {
    let base = builtin::example1();
    let mn = base.curvature();
    let d = base.domain();
    let opts = SolveOptions::default().anchored(0.0);
    let f = evolute_ratio(&mn, d, &opts)?;
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let ev = evolute(&base, &f, sign)?;
        let fam = ParallelFamily::build(&mn, sign, d, opts.step)?;
        let lams = [
            ("λ≡-2", constant_solution(&mn, SolutionKind::ParallelLambda, sign, -2.0, d, &opts)?),
            ("c=0.5", fam.solution(fam.constant_for(0.0, 2.0)?, &opts)?),
        ];
        for (label, lam) in lams {
            let lam = lam.restrict(bounded_part(&lam, COMMUTE_LAMBDA_CAP)?)?;
            let p = parallel(&base, &lam, sign)?;
            let fp = evolute_ratio(&p.closed_form_curvature(), p.domain(), &opts)?;
            let evp = evolute(&p.curve, &fp, sign)?;
            let v = sup(&evp.domain().grid(1001), |t| Ok((evp.point(t)? - ev.point(t)?).max_abs()))?;
            out.push(Measure::new(format!("|Ev{sign:#}(P{sign:#}) - Ev{sign:#}| ({label}, on {})", evp.domain()), v, COMMUTE_LIMIT));
        }
    }
    Ok(out)
}

/// The connected part of the validity around t = 0 on which |value| ≤ cap.
fn bounded_part(sol: &OffsetSolution, cap: f64) -> Result<Interval> {
    let iv = sol.validity();
    let grid = iv.grid(20_001);
    let ok = par::try_map(&grid, |&t| -> Result<bool> { Ok(sol.value(t)?.abs() <= cap) })?;
    let mid = grid.partition_point(|&t| t < 0.0).min(grid.len() - 1);
    let (mut i, mut j) = (mid, mid);
    while i > 0 && ok[i - 1] {
        i -= 1;
    }
    while j + 1 < grid.len() && ok[j + 1] {
        j += 1;
    }
    let lo_open = iv.lo_open && i == 0;
    Ok(Interval { lo: grid[i], hi: grid[j], lo_open })
}

fn cusp_classification() -> Result<Vec<Measure>> {
    let tol = Tolerances::default();
    let opts = SolveOptions::default();
    let mut out = Vec::new();
    let miss = |ok: bool| if ok { 0.0 } else { 1.0 };

    let s = known::example1_s_plus(-1.0, &opts)?;
    let inv = involute(&builtin::example1(), &s, Sign::Plus)?;
    let c = classify_from_curvature(&inv.closed_form_curvature(), 0.0, tol.zero, tol.nonzero)?;
    out.push(Measure::new(format!("example1 Inv+ at 0 is {c}"), miss(c == CuspClass::Cusp23), 0.5));

    let g = known::example2_s_plus(&opts)?;
    let inv = involute(&builtin::example2(), &g, Sign::Plus)?;
    let pts = singular_points(&inv.closed_form_curvature(), inv.domain(), 2001, &tol)?;
    let want = [-FRAC_PI_2, 0.0, FRAC_PI_2, PI];
    let loc = if pts.len() == want.len() {
        pts.iter().zip(want).map(|(p, w)| (p.t - w).abs()).fold(0.0, par::nan_max)
    } else {
        f64::INFINITY
    };
    out.push(Measure::new(format!("example2 Inv+ singular set ({} points) vs {{-π/2,0,π/2,π}}", pts.len()), loc, 1e-9));
    let bad = pts.iter().filter(|p| p.class != Ok(CuspClass::Cusp23)).count();
    out.push(Measure::new("example2 Inv+ points not (2,3)", bad as f64, 0.5));

    let d = window();
    let apex = Frame::new(Vec3L::E1, Vec3L::new(0.0, -1.0, 0.0));
    for (m, n, want) in [("t^2", "1", CuspClass::Cusp34), ("t", "t + t^2", CuspClass::Cusp25), ("t^2", "t", CuspClass::Cusp35)] {
        let curve = synthesize_from_curvature(&CurvaturePair::from_exprs(parse(m)?, parse(n)?, d), &apex, d, 1e-3)?;
        let c = classify_from_curvature(&curve.curvature(), 0.0, tol.zero, tol.nonzero)?;
        let geo = classify_geometric(&curve.evaluate_frame(0.0)?.gamma, &tol)?;
        out.push(Measure::new(format!("synthesized ({m}, {n}) at 0 is {c}, geometric {geo}"), miss(c == want && geo == want), 0.5));
    }
    Ok(out)
}

fn envelope_structure() -> Result<Vec<Measure>> {
    let opts = SolveOptions::default().anchored(0.0);
    let tol = Tolerances::default();
    let e1 = builtin::example1();
    let e2 = builtin::example2();
    let mn1 = e1.curvature();
    let d = e1.domain();
    let w = window();
    let mut out = Vec::new();

    let enveloid = |base: &LegendreCurve, kind: FamilyKind, sign: Sign, sol: &OffsetSolution, alpha: f64, iv: Interval| {
        let fam = HorocycleFamily::new(base, kind, sign);
        let r = fam.enveloid_residual(graph_pre_curve(sol), alpha);
        let iv = iv.intersect(&sol.validity()).unwrap_or(iv);
        sup(&iv.grid(1001), |t| Ok(r(t)?.abs()))
    };

    let f1 = evolute_ratio(&mn1, d, &opts)?;
    let s_plus = known::example1_s_plus(-1.0, &opts)?;
    let s_minus = known::example1_s_minus(0.3, &opts)?;
    for sign in [Sign::Plus, Sign::Minus] {
        out.push(Measure::new(
            format!("example1 (f,t) normal{sign:#} α=0"),
            enveloid(&e1, FamilyKind::Normal, sign, &f1, 0.0, d)?,
            ENVELOID_CLOSED,
        ));
        let fam = ParallelFamily::build(&mn1, sign, d, opts.step)?;
        let lam = fam.solution(fam.constant_for(0.0, 0.5)?, &opts)?;
        out.push(Measure::new(
            format!("example1 (λ{sign:#},t) closed form α=π/2"),
            enveloid(&e1, FamilyKind::Normal, sign, &lam, FRAC_PI_2, w)?,
            ENVELOID_CLOSED,
        ));
        let lam = parallel_integrate(&mn1, sign, 0.5, 0.0, d, &opts)?;
        out.push(Measure::new(
            format!("example1 (λ{sign:#},t) integrated α=π/2"),
            enveloid(&e1, FamilyKind::Normal, sign, &lam, FRAC_PI_2, w)?,
            ENVELOID_INTEGRATED,
        ));
        let closed = if sign == Sign::Plus { &s_plus } else { &s_minus };
        out.push(Measure::new(
            format!("example1 (s{sign:#},t) closed form α=π/2"),
            enveloid(&e1, FamilyKind::Tangent, sign, closed, FRAC_PI_2, w)?,
            ENVELOID_CLOSED,
        ));
        let s = involute_integrate(&mn1, sign, closed.value(0.0)?, 0.0, d, &opts)?;
        out.push(Measure::new(
            format!("example1 (s{sign:#},t) integrated α=π/2"),
            enveloid(&e1, FamilyKind::Tangent, sign, &s, FRAC_PI_2, w)?,
            ENVELOID_INTEGRATED,
        ));
    }
    let g = known::example2_s_plus(&opts)?;
    out.push(Measure::new(
        "example2 (g,t) tangent+ α=π/2",
        enveloid(&e2, FamilyKind::Tangent, Sign::Plus, &g, FRAC_PI_2, e2.domain())?,
        ENVELOID_CLOSED,
    ));

    for sign in [Sign::Plus, Sign::Minus] {
        let ev = evolute(&e1, &f1, sign)?;
        let v = sup(&d.grid(1001), |t| {
            let (h, dh) = discriminant_he(&e1, sign, t, &ev.point(t)?)?;
            Ok(h.abs().max(dh.abs()))
        })?;
        out.push(Measure::new(format!("example1 H_E{sign:#} along Ev{sign:#}"), v, DISCRIMINANT_LIMIT));
    }

    let hi = |base: &LegendreCurve, sign: Sign, s: &OffsetSolution, name: &str| -> Result<Measure> {
        let inv = involute(base, s, sign)?;
        let mn = base.curvature();
        let e = sign.f();
        let grid = inv.domain().grid(1001);
        let vals = par::try_map(&grid, |&t| -> Result<Option<f64>> {
            let (m, n) = mn.values(t)?;
            let sv = s.value(t)?;
            if !(((sv - e) * (n - e * m)).abs() > HI_GATE) {
                return Ok(None);
            }
            let (h, dh) = discriminant_hi(base, sign, s, t, &inv.point(t)?, &tol)?;
            Ok(Some(h.abs().max(dh.abs())))
        })?;
        let checked = vals.iter().flatten().count();
        let v = vals.into_iter().flatten().fold(0.0, par::nan_max);
        Ok(Measure::new(format!("{name} H_I{sign:#} along Inv{sign:#} ({checked} of {} points past the gate)", grid.len()), v, DISCRIMINANT_LIMIT))
    };
    out.push(hi(&e1, Sign::Plus, &s_plus, "example1")?);
    out.push(hi(&e1, Sign::Minus, &s_minus, "example1")?);
    out.push(hi(&e2, Sign::Plus, &g, "example2")?);
    Ok(out)
}

fn orientation_flips() -> Result<Vec<Measure>> {
    let base = builtin::example1();
    let flip = base.flip_normal();
    let opts = SolveOptions::default();
    let grid = base.domain().grid(1001);
    let f = evolute_ratio(&base.curvature(), base.domain(), &opts)?;
    let fbar = evolute_ratio(&flip.curvature(), flip.domain(), &opts)?;
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let a = evolute(&flip, &fbar, sign)?;
        let b = evolute(&base, &f, sign.flip())?;
        let v = sup(&grid, |t| Ok((a.point(t)? - b.point(t)?).max_abs()))?;
        out.push(Measure::new(format!("|Ev{sign:#}(flip) - Ev{:#}|", sign.flip()), v, FLIP_LIMIT));
    }
    let s_plus = known::example1_s_plus(-1.0, &opts)?;
    let s_minus = known::example1_s_minus(0.3, &opts)?;
    for (sign, s_other) in [(Sign::Plus, &s_minus), (Sign::Minus, &s_plus)] {
        let sbar = s_other.negated(SolutionKind::InvoluteS, Some(sign));
        let a = involute(&flip, &sbar, sign)?;
        let b = involute(&base, s_other, sign.flip())?;
        let v = sup(&grid, |t| Ok((a.point(t)? - b.point(t)?).max_abs()))?;
        out.push(Measure::new(format!("|Inv{sign:#}(flip, -s{:#}) - Inv{:#}|", sign.flip(), sign.flip()), v, FLIP_LIMIT));
    }
    Ok(out)
}

/// Derivatives 1 and 2 by five-point central differences.
fn finite_differences(e: &crate::expr::Expr, t: f64, h: f64) -> Option<(f64, f64)> {
    let v = |k: f64| eval(e, t + k * h).ok();
    let (m2, m1, z, p1, p2) = (v(-2.0)?, v(-1.0)?, v(0.0)?, v(1.0)?, v(2.0)?);
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
    Some((d1, d2))
}

fn parser_and_jets(seed: u64) -> Result<Vec<Measure>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(crate::expr::Expr, f64)> =
        (0..RANDOM_EXPRESSIONS).map(|_| (random::random_expr(&mut rng, 4), rng.random_range(-1.0..1.0))).collect();
    let errs = par::map(&cases, |(e, t)| -> Option<f64> {
        let j = eval_jet(e, *t).ok()?;
        let (d1, d2) = finite_differences(e, *t, 1e-3)?;
        let r1 = (d1 - j.d(1)).abs() / j.d(1).abs().max(1.0);
        let r2 = (d2 - j.d(2)).abs() / j.d(2).abs().max(1.0);
        Some(r1.max(r2))
    });
    let failed = errs.iter().filter(|e| e.is_none()).count();
    let worst = errs.into_iter().flatten().fold(0.0, par::nan_max);
    let pyth = parse("sin(t)^2 + cos(t)^2")?;
    let mut pv: f64 = 0.0;
    for t in [-2.0, -0.3, 0.0, 0.7, 1.9] {
        let j = eval_jet(&pyth, t)?;
        let want = [1.0, 0.0, 0.0, 0.0, 0.0];
        for (k, w) in want.iter().enumerate() {
            pv = par::nan_max(pv, (j.coeff(k) - w).abs());
        }
    }
    Ok(vec![
        Measure::new(format!("jet vs finite differences, {RANDOM_EXPRESSIONS} expressions (seed {seed}), relative"), worst, FD_LIMIT),
        Measure::new("expressions that failed to evaluate", failed as f64, 0.5),
        Measure::new("sin²+cos² jet vs (1,0,0,0,0)", pv, PYTHAGORAS_LIMIT),
    ])
}

fn example2_inflections() -> Result<Vec<Measure>> {
    let mn = builtin::example2().curvature();
    let zs = find_zeros(|t| Ok(mn.at(t)?.1), Interval::closed(-FRAC_PI_2, FRAC_PI_2), 2001, 0.0)?;
    let nearest = |target: f64| zs.iter().map(|z| (z - target).abs()).fold(f64::INFINITY, f64::min);
    Ok(vec![
        Measure::new("|t0 - 0.7986| for the zero of n near +t0", nearest(T0_EXAMPLE2), T0_LIMIT),
        Measure::new("|t0 - 0.7986| for the zero of n near -t0", nearest(-T0_EXAMPLE2), T0_LIMIT),
    ])
}
