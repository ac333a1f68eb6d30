use super::{closed_form_validity, scan_validity, OffsetSolution, SolutionKind, SolutionSource, SolveOptions, TruncationReason};
use crate::domain::Interval;
use crate::error::{Error, Result};
use crate::jet::Jet5;
use crate::legendre::CurvaturePair;
use crate::par;
use crate::tol::Tolerances;

/// Offset of the nearest zero of the Taylor polynomial of `n`.
fn nearby_zero(n: &Jet5) -> f64 {
    let dn = n.diff();
    let mut d = 0.0;
    for _ in 0..30 {
        let s = dn.taylor(d);
        if s == 0.0 {
            break;
        }
        let step = n.taylor(d) / s;
        d -= step;
        if !d.is_finite() {
            return 0.0;
        }
        if step.abs() <= 1e-16 * (1.0 + d.abs()) {
            break;
        }
    }
    d
}

/// −m/n at a simple zero of n, expanded about `t`.
fn lhopital(m: &Jet5, n: &Jet5, t: f64, tol: &Tolerances) -> Result<Jet5> {
    let d = nearby_zero(n);
    let (ms, ns) = (m.recenter(d), n.recenter(d));
    let (mq, nq) = (ms.shift(), ns.shift());
    if !(nq.value().abs() > tol.inflect) {
        return Err(Error::NoSmoothExtension { t });
    }
    Ok((-(mq / nq)).recenter(-d))
}

fn ratio_at(mn: &CurvaturePair, t: f64, tol: &Tolerances) -> Result<Jet5> {
    let (m, n) = mn.at(t)?;
    if n.value().abs() > tol.inflect {
        Ok(-(m / n))
    } else {
        lhopital(&m, &n, t, tol)
    }
}

/// Zeros of n on the grid, located by bisection between sign changes and at exact nodes.
fn zeros_of_n(mn: &CurvaturePair, grid: &[f64]) -> Result<Vec<f64>> {
    let nv = par::try_map(grid, |&t| mn.values(t).map(|v| v.1))?;
    let mut out: Vec<f64> = Vec::new();
    for i in 0..grid.len() {
        if nv[i] == 0.0 {
            out.push(grid[i]);
        }
        if i + 1 < grid.len() && nv[i] * nv[i + 1] < 0.0 {
            let (mut a, mut b, fa) = (grid[i], grid[i + 1], nv[i]);
            for _ in 0..80 {
                let c = 0.5 * (a + b);
                let fc = mn.values(c)?.1;
                if fc == 0.0 {
                    a = c;
                    b = c;
                    break;
                }
                if fc.signum() == fa.signum() {
                    a = c;
                } else {
                    b = c;
                }
            }
            out.push(0.5 * (a + b));
        }
    }
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-10);
    Ok(out)
}

/// Whether the L'Hôpital expansion at a zero of n continues the quotient on both sides.
fn stitches(mn: &CurvaturePair, tz: f64, domain: Interval, tol: &Tolerances) -> Result<std::result::Result<(), TruncationReason>> {
    let (m, n) = mn.at(tz)?;
    let lh = match lhopital(&m, &n, tz, tol) {
        Ok(j) => j,
        Err(Error::NoSmoothExtension { .. }) => return Ok(Err(TruncationReason::NoSmoothExtension)),
        Err(e) => return Err(e),
    };
    const DELTA: f64 = 1e-3;
    for k in [-2.0, -1.0, 1.0, 2.0] {
        let t = tz + k * DELTA;
        if !domain.contains(t) {
            continue;
        }
        let (m, n) = mn.values(t)?;
        if n.abs() <= tol.inflect {
            continue;
        }
        let q = -m / n;
        let p = lh.taylor(k * DELTA);
        if !((q - p).abs() <= tol.stitch * q.abs().max(1.0)) {
            return Ok(Err(TruncationReason::BranchMismatch));
        }
    }
    Ok(Ok(()))
}

/// f with m + f n = 0: the quotient −m/n away from zeros of n, and its
/// L'Hôpital continuation through simple zeros.
///
/// A zero of n where the two branches disagree is a pole of f and cuts the
/// validity interval, as does a zero where ṅ vanishes too.
pub fn evolute_ratio(mn: &CurvaturePair, domain: Interval, opts: &SolveOptions) -> Result<OffsetSolution> {
    if !mn.domain().covers(&domain) {
        return Err(Error::DomainMismatch(mn.domain(), domain));
    }
    let tol = opts.tol;
    let grid = domain.grid(opts.samples.max(3));
    let mut breaks = Vec::new();
    for tz in zeros_of_n(mn, &grid)? {
        if let Err(reason) = stitches(mn, tz, domain, &tol)? {
            breaks.push((tz, reason));
        }
    }
    let probe_mn = mn.clone();
    let (validity, truncations) = scan_validity(
        domain,
        opts.anchor_in(domain),
        opts.samples,
        &breaks,
        TruncationReason::BranchMismatch,
        move |t| match ratio_at(&probe_mn, t, &tol) {
            Ok(j) if j.value().abs() <= tol.blowup => Ok(None),
            Ok(_) => Err(TruncationReason::BlowUp),
            Err(Error::NoSmoothExtension { .. }) => Err(TruncationReason::NoSmoothExtension),
            Err(_) => Err(TruncationReason::EvaluationFailed),
        },
    )?;
    let mn = mn.clone();
    Ok(OffsetSolution::explicit(SolutionKind::EvoluteRatio, None, SolutionSource::ClosedForm { c: None }, domain, move |t| {
        ratio_at(&mn, t, &tol)
    })
    .with_validity(validity, truncations))
}

/// An evolute ratio known in closed form, for bases where n vanishes identically.
pub fn evolute_ratio_explicit(
    f: impl Fn(f64) -> Result<Jet5> + Send + Sync + 'static,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<OffsetSolution> {
    let sol = OffsetSolution::explicit(SolutionKind::EvoluteRatio, None, SolutionSource::ClosedForm { c: None }, domain, f);
    let (validity, truncations) = closed_form_validity(&*sol.eval, None, domain, opts)?;
    Ok(sol.with_validity(validity, truncations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::legendre::builtin;
    use std::f64::consts::PI;

    fn pair(m: &str, n: &str, d: Interval) -> CurvaturePair {
        CurvaturePair::from_exprs(parse(m).unwrap(), parse(n).unwrap(), d)
    }

    #[test]
    fn example1_ratio_is_minus_one_through_inflections() {
        let mn = builtin::example1().curvature();
        let f = evolute_ratio(&mn, builtin::period(), &SolveOptions::default()).unwrap();
        assert!(f.truncations().is_empty());
        for t in [-PI / 2.0, -1.0, 0.0, PI / 2.0, PI / 2.0 + 1e-10, 3.0] {
            let j = f.values(t).unwrap();
            assert!((j.value() + 1.0).abs() < 1e-12, "{t}");
            assert!(j.d(1).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_m_gives_zero_ratio() {
        let d = Interval::closed(-1.0, 1.0);
        let f = evolute_ratio(&pair("0", "1 + t^2", d), d, &SolveOptions::default()).unwrap();
        assert_eq!(f.value(0.4).unwrap(), 0.0);
    }

    #[test]
    fn lhopital_branch_matches_quotient() {
        let d = Interval::closed(-1.0, 1.0);
        let f = evolute_ratio(&pair("t^2", "t", d), d, &SolveOptions::default()).unwrap();
        assert_eq!(f.validity(), d);
        for t in [-0.5, -1e-9, 0.0, 3e-9, 0.7] {
            let j = f.values(t).unwrap();
            assert!((j.value() + t).abs() < 1e-12, "{t}");
            assert!((j.d(1) + 1.0).abs() < 1e-9, "{t}");
        }
    }

    #[test]
    fn poles_and_double_zeros_truncate() {
        let d = Interval::closed(-1.0, 1.0);
        let opts = SolveOptions::default().anchored(-0.5);
        let f = evolute_ratio(&pair("1", "t - 0.25", d), d, &opts).unwrap();
        assert!(f.validity().hi < 0.25 && f.validity().hi > 0.249);
        assert_eq!(f.truncations()[0].reason, TruncationReason::BranchMismatch);
        let f = evolute_ratio(&pair("t^2", "t^2", d), d, &opts).unwrap();
        assert!(f.validity().hi < 1e-3);
        assert!(matches!(f.values(0.5), Err(Error::OutsideValidity { .. })));
    }
}
