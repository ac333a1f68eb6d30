//! Cusp classification, from curvature and from the curve itself.

use std::fmt;

use crate::domain::Interval;
use crate::error::{Error, Result};
use crate::jet::Jet5;
use crate::legendre::{CurvaturePair, JV};
use crate::lorentz::{det, Vec3L, H2_TOL};
use crate::offsets::OffsetSolution;
use crate::par;
use crate::tol::Tolerances;
use crate::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CuspClass {
    Regular,
    Cusp23,
    Cusp34,
    Cusp25,
    Cusp35,
    Degenerate,
}

impl CuspClass {
    pub fn name(self) -> &'static str {
        match self {
            CuspClass::Regular => "regular",
            CuspClass::Cusp23 => "(2,3)-cusp",
            CuspClass::Cusp34 => "(3,4)-cusp",
            CuspClass::Cusp25 => "(2,5)-cusp",
            CuspClass::Cusp35 => "(3,5)-cusp",
            CuspClass::Degenerate => "degenerate",
        }
    }

    pub fn is_cusp(self) -> bool {
        !matches!(self, CuspClass::Regular | CuspClass::Degenerate)
    }
}

impl fmt::Display for CuspClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Two-threshold test: |v| ≤ zero is zero, |v| ≥ nonzero is not, anything
/// between is reported instead of decided.
#[derive(Clone, Copy, Debug)]
struct Gate {
    zero: f64,
    nonzero: f64,
}

impl Gate {
    fn new(zero: f64, nonzero: f64) -> Self {
        Self { zero, nonzero }
    }

    fn is_zero(&self, quantity: &'static str, v: f64) -> Result<bool> {
        let a = v.abs();
        if a <= self.zero {
            Ok(true)
        } else if a >= self.nonzero {
            Ok(false)
        } else {
            Err(Error::GapZone { quantity, value: v })
        }
    }

    fn nonzero(&self, quantity: &'static str, v: f64) -> Result<bool> {
        self.is_zero(quantity, v).map(|z| !z)
    }
}

/// The five-case criterion on m, n and their derivatives at one point.
pub fn classify_jets(m: &Jet5, n: &Jet5, tol_zero: f64, tol_nonzero: f64) -> Result<CuspClass> {
    let g = Gate::new(tol_zero, tol_nonzero);
    let (m0, m1, m2) = (m.d(0), m.d(1), m.d(2));
    let (n0, n1, n2) = (n.d(0), n.d(1), n.d(2));
    if g.nonzero("m", m0)? {
        return Ok(CuspClass::Regular);
    }
    if g.nonzero("n", n0)? {
        if g.nonzero("m'", m1)? {
            return Ok(CuspClass::Cusp23);
        }
        if g.nonzero("m''", m2)? {
            return Ok(CuspClass::Cusp34);
        }
        return Ok(CuspClass::Degenerate);
    }
    if g.nonzero("m'", m1)? {
        if g.nonzero("m'n'' - m''n'", m1 * n2 - m2 * n1)? {
            return Ok(CuspClass::Cusp25);
        }
        return Ok(CuspClass::Degenerate);
    }
    if g.nonzero("m''", m2)? && g.nonzero("n'", n1)? {
        return Ok(CuspClass::Cusp35);
    }
    Ok(CuspClass::Degenerate)
}

pub fn classify_from_curvature(mn: &CurvaturePair, t0: f64, tol_zero: f64, tol_nonzero: f64) -> Result<CuspClass> {
    let (m, n) = mn.at(t0)?;
    classify_jets(&m, &n, tol_zero, tol_nonzero)
}

/// Determinant criteria on the derivatives of γ itself.
pub fn classify_geometric(gamma: &JV, tol: &Tolerances) -> Result<CuspClass> {
    let g = Gate::new(tol.zero, tol.nonzero);
    let p = gamma.value();
    let r = p.h2_residual();
    if !(r <= H2_TOL) {
        return Err(Error::NotOnH2 { residual: r });
    }
    let d: [Vec3L; 6] = std::array::from_fn(|k| gamma.d(k));
    if g.nonzero("|γ'|", d[1].norm_e())? {
        return Ok(CuspClass::Regular);
    }
    if g.nonzero("|γ''|", d[2].norm_e())? {
        if g.nonzero("det(γ,γ'',γ''')", det(&p, &d[2], &d[3]))? {
            return Ok(CuspClass::Cusp23);
        }
        let c = d[3].dot_e(&d[2]) / d[2].dot_e(&d[2]);
        let resid = (d[3] - d[2] * c).norm_e() / d[3].norm_e().max(d[2].norm_e());
        if !(resid < tol.collinear) {
            return Err(Error::GapZone { quantity: "γ''' ∥ γ''", value: resid });
        }
        let v = d[5] * 3.0 - d[4] * (10.0 * c);
        if g.nonzero("det(γ,γ'',3γ⁽⁵⁾-10cγ⁽⁴⁾)", det(&p, &d[2], &v))? {
            return Ok(CuspClass::Cusp25);
        }
        return Ok(CuspClass::Degenerate);
    }
    if g.nonzero("det(γ,γ''',γ⁽⁴⁾)", det(&p, &d[3], &d[4]))? {
        return Ok(CuspClass::Cusp34);
    }
    if g.nonzero("det(γ,γ''',γ⁽⁵⁾)", det(&p, &d[3], &d[5]))? {
        return Ok(CuspClass::Cusp35);
    }
    Ok(CuspClass::Degenerate)
}

/// Cusps of Ev± read off the base curvature and f.
///
/// Where n ≠ 0 the tests use m, n alone; where n = 0 they use f and n.
pub fn classify_evolute(mn: &CurvaturePair, f: &OffsetSolution, sign: Sign, t0: f64, tol: &Tolerances) -> Result<CuspClass> {
    let g = Gate::new(tol.zero, tol.nonzero);
    let e = sign.f();
    let (mj, nj) = mn.at(t0)?;
    let [m, m1, m2, m3, ..] = mj.derivs();
    let [n, n1, n2, n3, ..] = nj.derivs();
    if g.nonzero("n", n)? {
        let c2 = 2.0 * (m1 * n - m * n1) + e * m * m * n;
        if g.nonzero("2(m'n - mn') ± m²n", c2)? {
            return Ok(CuspClass::Regular);
        }
        let c3 = 2.0 * (m2 * n - m * n2) + e * 3.0 * m * m * n1 - m * m * m * n;
        if g.nonzero("evolute c3", c3)? {
            return Ok(CuspClass::Cusp23);
        }
        let c4 = 3.0 * m.powi(4) * n * n - e * 12.0 * m.powi(3) * n * n1
            + 8.0 * m * m * n * n2
            + 6.0 * m * m * n1 * n1
            - e * 4.0 * m * n * n3
            + e * 4.0 * m3 * n * n;
        if g.nonzero("evolute c4", c4)? {
            return Ok(CuspClass::Cusp34);
        }
        return Ok(CuspClass::Degenerate);
    }
    let [f0, f1, f2, f3, ..] = f.values(t0)?.derivs();
    if g.nonzero("f'", f1)? {
        return Ok(CuspClass::Regular);
    }
    let a = -2.0 * f2 + e * f0 * f0 * n1;
    if g.nonzero("-2f'' ± f²n'", a)? {
        if g.nonzero("-f''n'' + f'''n'", -f2 * n2 + f3 * n1)? {
            return Ok(CuspClass::Cusp25);
        }
        return Ok(CuspClass::Degenerate);
    }
    if g.nonzero("n'", n1)? && g.nonzero("-2f''' ± f²n''", -2.0 * f3 + e * f0 * f0 * n2)? {
        return Ok(CuspClass::Cusp35);
    }
    Ok(CuspClass::Degenerate)
}

/// Zeros of a function on a grid: bisected sign changes, nodes already
/// within `tol_zero`, and touching zeros found through the derivative.
pub fn find_zeros(
    h: impl Fn(f64) -> Result<Jet5> + Sync + Send,
    domain: Interval,
    samples: usize,
    tol_zero: f64,
) -> Result<Vec<f64>> {
    let grid = domain.grid(samples.max(3));
    let vals = par::try_map(&grid, |&t| h(t).map(|j| (j.value(), j.d(1))))?;
    let bisect = |mut a: f64, mut b: f64, fa: f64, k: usize| -> Result<f64> {
        let sa = fa.signum();
        while b - a > 1e-12 {
            let c = 0.5 * (a + b);
            let fc = if k == 0 { h(c)?.value() } else { h(c)?.d(1) };
            if fc == 0.0 {
                return Ok(c);
            }
            if fc.signum() == sa {
                a = c;
            } else {
                b = c;
            }
        }
        Ok(0.5 * (a + b))
    };
    let mut zs = Vec::new();
    for i in 0..grid.len() {
        let (v, d) = vals[i];
        if v.abs() <= tol_zero {
            zs.push(grid[i]);
        }
        if i + 1 == grid.len() {
            break;
        }
        let (w, dw) = vals[i + 1];
        if v * w < 0.0 {
            zs.push(bisect(grid[i], grid[i + 1], v, 0)?);
        } else if d * dw < 0.0 {
            let tc = bisect(grid[i], grid[i + 1], d, 1)?;
            if h(tc)?.value().abs() <= tol_zero {
                zs.push(tc);
            }
        }
    }
    zs.sort_by(f64::total_cmp);
    zs.dedup_by(|a, b| (*a - *b).abs() < 1e-8);
    Ok(zs.into_iter().filter(|&t| domain.contains_strict(t)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub t: f64,
    pub class: Result<CuspClass>,
}

/// Every zero of m on the domain, with its classification.
pub fn singular_points(mn: &CurvaturePair, domain: Interval, samples: usize, tol: &Tolerances) -> Result<Vec<SingularPoint>> {
    let zs = find_zeros(|t| Ok(mn.at(t)?.0), domain, samples, tol.zero)?;
    Ok(zs
        .into_iter()
        .map(|t| SingularPoint { t, class: classify_from_curvature(mn, t, tol.zero, tol.nonzero) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::legendre::{builtin, synthesize_from_curvature, Frame, LegendreCurve};
    use crate::offsets::{evolute, evolute_ratio, involute, known, SolveOptions};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn pair(m: &str, n: &str, d: Interval) -> CurvaturePair {
        CurvaturePair::from_exprs(parse(m).unwrap(), parse(n).unwrap(), d)
    }

    fn synth(m: &str, n: &str) -> LegendreCurve {
        let d = Interval::closed(-1.0, 1.0);
        let f0 = Frame::new(Vec3L::E1, Vec3L::new(0.0, -1.0, 0.0));
        synthesize_from_curvature(&pair(m, n, d), &f0, d, 1e-3).unwrap()
    }

    #[test]
    fn curvature_route_reads_the_table() {
        let d = Interval::closed(-1.0, 1.0);
        let c = |m, n| classify_from_curvature(&pair(m, n, d), 0.0, 1e-9, 1e-6).unwrap();
        assert_eq!(c("1 + t", "t"), CuspClass::Regular);
        assert_eq!(c("t", "1"), CuspClass::Cusp23);
        assert_eq!(c("t^2", "1"), CuspClass::Cusp34);
        assert_eq!(c("t", "t + t^2"), CuspClass::Cusp25);
        assert_eq!(c("t^2", "t"), CuspClass::Cusp35);
        assert_eq!(c("t^3", "1"), CuspClass::Degenerate);
        assert_eq!(c("t", "t"), CuspClass::Degenerate);
        let e = classify_from_curvature(&pair("1e-7", "1", d), 0.0, 1e-9, 1e-6);
        assert!(matches!(e, Err(Error::GapZone { quantity: "m", .. })));
    }

    #[test]
    fn geometric_route_agrees_on_planted_cusps() {
        let tol = Tolerances::default();
        for (m, n, want) in [
            ("t", "1", CuspClass::Cusp23),
            ("t^2", "1", CuspClass::Cusp34),
            ("t", "t + t^2", CuspClass::Cusp25),
            ("t^2", "t", CuspClass::Cusp35),
            ("2 + t", "t", CuspClass::Regular),
        ] {
            let c = synth(m, n);
            let g = c.evaluate_frame(0.0).unwrap().gamma;
            assert_eq!(classify_geometric(&g, &tol).unwrap(), want, "{m}, {n}");
        }
    }

    #[test]
    fn example1_involute_cusps() {
        let base = builtin::example1();
        let s = known::example1_s_plus(-1.0, &SolveOptions::default()).unwrap();
        let inv = involute(&base, &s, Sign::Plus).unwrap();
        let tol = Tolerances::default();
        let cf = inv.closed_form_curvature();
        assert_eq!(classify_from_curvature(&cf, 0.0, tol.zero, tol.nonzero).unwrap(), CuspClass::Cusp23);
        let pts = singular_points(&cf, inv.domain(), 2001, &tol).unwrap();
        let ts: Vec<f64> = pts.iter().map(|p| p.t).collect();
        assert_eq!(ts.len(), 4, "{ts:?}");
        for (t, want) in ts.iter().zip([-FRAC_PI_2, 0.0, FRAC_PI_2, PI]) {
            assert!((t - want).abs() < 1e-9);
        }
        assert_eq!(pts[0].class, Ok(CuspClass::Degenerate));
        assert_eq!(pts[3].class, Ok(CuspClass::Cusp23));
    }

    #[test]
    fn example2_involute_has_four_cusps() {
        let base = builtin::example2();
        let s = known::example2_s_plus(&SolveOptions::default()).unwrap();
        let inv = involute(&base, &s, Sign::Plus).unwrap();
        let tol = Tolerances::default();
        let pts = singular_points(&inv.closed_form_curvature(), inv.domain(), 2001, &tol).unwrap();
        assert_eq!(pts.len(), 4);
        for (p, want) in pts.iter().zip([-FRAC_PI_2, 0.0, FRAC_PI_2, PI]) {
            assert!((p.t - want).abs() < 1e-9);
            assert_eq!(p.class, Ok(CuspClass::Cusp23));
            let g = inv.curve.evaluate_frame(p.t).unwrap().gamma;
            assert_eq!(classify_geometric(&g, &tol).unwrap(), CuspClass::Cusp23);
        }
    }

    #[test]
    fn evolute_criteria_match_evolute_curvature() {
        let tol = Tolerances::default();
        let opts = SolveOptions::default();
        for (m, n, t0) in [("t^2", "1", 0.0), ("t^2", "1", 0.5), ("1 + t/2", "1 + t", 0.0), ("cos(t)", "cos(t)", FRAC_PI_2)] {
            let base = synth(m, n);
            let mn = base.curvature();
            let f = evolute_ratio(&mn, base.domain(), &opts).unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                let ev = evolute(&base, &f, sign).unwrap();
                let want = classify_from_curvature(&ev.closed_form_curvature(), t0, tol.zero, tol.nonzero);
                let got = classify_evolute(&mn, &f, sign, t0, &tol);
                assert_eq!(got, want, "{m} {n} {t0} {sign}");
            }
        }
        let base = synth("t^2", "1");
        let f = evolute_ratio(&base.curvature(), base.domain(), &opts).unwrap();
        assert_eq!(classify_evolute(&base.curvature(), &f, Sign::Plus, 0.0, &tol).unwrap(), CuspClass::Cusp23);
    }

    #[test]
    fn evolute_third_order_coefficient() {
        // with n ≡ 1, m = 1 − t/2 + t²/4 + k t³ puts c2 = c3 = 0 at t = 0 and c4 = 3 + 24k
        let d = Interval::closed(-1.0, 1.0);
        let tol = Tolerances::default();
        for (m, want) in [("1 - t/2 + t^2/4", CuspClass::Cusp34), ("1 - t/2 + t^2/4 - t^3/8", CuspClass::Degenerate)] {
            let mn = pair(m, "1", d);
            let f = evolute_ratio(&mn, d, &SolveOptions::default()).unwrap();
            let ev_mn = mn.map(|m, n| {
                let f = -(m / n);
                let fd = f.diff();
                let q = f * f * n * 0.5;
                (q - fd, fd - q + n)
            });
            let direct = classify_from_curvature(&ev_mn, 0.0, tol.zero, tol.nonzero).unwrap();
            assert_eq!(direct, want, "{m}");
            assert_eq!(classify_evolute(&mn, &f, Sign::Plus, 0.0, &tol).unwrap(), want, "{m}");
        }
    }

    #[test]
    fn touching_zeros_are_found() {
        let d = Interval::closed(-1.0, 1.0);
        let z = find_zeros(|t| Ok((Jet5::variable(t) - 0.3).sqr()), d, 101, 1e-9).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z[0] - 0.3).abs() < 1e-6);
        let z = find_zeros(|t| Ok(Jet5::variable(t).sin()), Interval::left_open(-PI, PI), 100, 1e-9).unwrap();
        assert_eq!(z.len(), 2);
    }
}
