use std::sync::Arc;

use super::{closed_form_validity, equation_rhs, OffsetSolution, SolutionKind, SolutionSource, SolveOptions, Truncation, TruncationReason};
use crate::domain::Interval;
use crate::error::{Error, Result};
use crate::jet::Jet5;
use crate::legendre::CurvaturePair;
use crate::ode::{Antiderivative, RiccatiCoeffs, RiccatiTrack, Stop};
use crate::par;
use crate::Sign;

/// The closed-form family λ± = 2e^{∓∫m}/(±∫n e^{∓∫m} + c), with both
/// antiderivatives vanishing at the left end of the domain.
#[derive(Clone)]
pub struct ParallelFamily {
    sign: Sign,
    domain: Interval,
    mn: CurvaturePair,
    a: Arc<Antiderivative>,
    b: Arc<Antiderivative>,
}

impl std::fmt::Debug for ParallelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParallelFamily").field("sign", &self.sign).field("domain", &self.domain).finish()
    }
}

impl ParallelFamily {
    pub fn build(mn: &CurvaturePair, sign: Sign, domain: Interval, step: f64) -> Result<Self> {
        if !mn.domain().covers(&domain) {
            return Err(Error::DomainMismatch(mn.domain(), domain));
        }
        let e = sign.f();
        let m = mn.clone();
        let a = Arc::new(Antiderivative::build(domain, step, Arc::new(move |t| Ok(m.values(t)?.0)))?);
        let (n, ai) = (mn.clone(), a.clone());
        let b = Antiderivative::build(domain, step, Arc::new(move |t| Ok(n.values(t)?.1 * (-e * ai.at(t)?).exp())))?;
        Ok(Self { sign, domain, mn: mn.clone(), a, b: Arc::new(b) })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Jets of e^{∓∫m} and ∫n e^{∓∫m} at `t`.
    fn parts(&self, t: f64) -> Result<(Jet5, Jet5)> {
        let (m, n) = self.mn.at(t)?;
        let e = self.sign.f();
        let ej = (m.integral(self.a.at(t)?) * -e).exp();
        let bj = (n * ej).integral(self.b.at(t)?);
        Ok((ej, bj))
    }

    /// The family member through λ(t0) = λ0; ∞ when λ0 = 0.
    pub fn constant_for(&self, t0: f64, lambda0: f64) -> Result<f64> {
        if lambda0 == 0.0 {
            return Ok(f64::INFINITY);
        }
        let (ej, bj) = self.parts(t0)?;
        Ok(2.0 * ej.value() / lambda0 - self.sign.f() * bj.value())
    }

    pub fn lambda(&self, t: f64, c: f64) -> Result<Jet5> {
        if c.is_infinite() {
            return Ok(Jet5::constant(0.0));
        }
        let (ej, bj) = self.parts(t)?;
        Ok(ej * 2.0 / (bj * self.sign.f() + c))
    }

    /// The member with constant `c`, cut where its denominator vanishes.
    pub fn solution(&self, c: f64, opts: &SolveOptions) -> Result<OffsetSolution> {
        let fam = self.clone();
        let sol = OffsetSolution::explicit(
            SolutionKind::ParallelLambda,
            Some(self.sign),
            SolutionSource::ClosedForm { c: Some(c) },
            self.domain,
            move |t| fam.lambda(t, c),
        );
        if c.is_infinite() {
            return Ok(sol);
        }
        let fam = self.clone();
        let guard = move |t: f64| Ok(fam.b.at(t)? * fam.sign.f() + c);
        let (validity, truncations) = closed_form_validity(&*sol.eval, Some(&guard), self.domain, opts)?;
        Ok(sol.with_validity(validity, truncations))
    }
}

pub fn parallel_closed_form(
    mn: &CurvaturePair,
    sign: Sign,
    c: f64,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<OffsetSolution> {
    ParallelFamily::build(mn, sign, domain, opts.step)?.solution(c, opts)
}

fn integrated(
    kind: SolutionKind,
    sign: Sign,
    coeffs: RiccatiCoeffs,
    y0: f64,
    t0: f64,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<OffsetSolution> {
    let track = RiccatiTrack::integrate(coeffs, t0, y0, domain, opts.step, opts.tol.blowup)?;
    let (lo, hi) = track.span();
    let truncations = track
        .stops
        .iter()
        .map(|s| match s {
            Stop::BlowUp { t } => Truncation { t: *t, reason: TruncationReason::BlowUp },
            Stop::Failed { t, .. } => Truncation { t: *t, reason: TruncationReason::EvaluationFailed },
        })
        .collect();
    let validity = Interval { lo, hi, lo_open: domain.lo_open && lo == domain.lo };
    let source = SolutionSource::Integrated { t0, y0, step: opts.step };
    let track = Arc::new(track);
    Ok(OffsetSolution::explicit(kind, Some(sign), source, domain, move |t| track.jet_at(t)).with_validity(validity, truncations))
}

/// λ± from λ(t0) = λ0 by RK4 on dλ/dt = ∓(λ²n/2 + λm).
pub fn parallel_integrate(
    mn: &CurvaturePair,
    sign: Sign,
    lambda0: f64,
    t0: f64,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<OffsetSolution> {
    let e = sign.f();
    let mn2 = mn.clone();
    let coeffs: RiccatiCoeffs = Arc::new(move |t| {
        let (m, n) = mn2.at(t)?;
        Ok([Jet5::constant(0.0), m * -e, n * (-0.5 * e)])
    });
    integrated(SolutionKind::ParallelLambda, sign, coeffs, lambda0, t0, domain, opts)
}

/// s± from s(t0) = s0 by RK4 on ds/dt = ((m ± n)/2)s² − m.
pub fn involute_integrate(
    mn: &CurvaturePair,
    sign: Sign,
    s0: f64,
    t0: f64,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<OffsetSolution> {
    let e = sign.f();
    let mn2 = mn.clone();
    let coeffs: RiccatiCoeffs = Arc::new(move |t| {
        let (m, n) = mn2.at(t)?;
        Ok([-m, Jet5::constant(0.0), (m + n * e) * 0.5])
    });
    integrated(SolutionKind::InvoluteS, sign, coeffs, s0, t0, domain, opts)
}

/// S_E± = f − λ±(c), so that the evolute's involute is a parallel of the base.
pub fn evolute_involute_scale(
    mn: &CurvaturePair,
    f: &OffsetSolution,
    sign: Sign,
    c: f64,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<OffsetSolution> {
    let domain = f.validity().intersect(&domain).ok_or(Error::DomainMismatch(f.validity(), domain))?;
    let lam = parallel_closed_form(mn, sign, c, domain, opts)?;
    let (fv, lv) = (f.clone(), lam.clone());
    let sol = OffsetSolution::explicit(
        SolutionKind::EvoluteInvoluteScale,
        Some(sign),
        SolutionSource::ClosedForm { c: Some(c) },
        domain,
        move |t| Ok(fv.values(t)? - lv.values(t)?),
    );
    let mut truncations = f.truncations().to_vec();
    truncations.extend(lam.truncations().iter().cloned());
    Ok(sol.with_validity(lam.validity(), truncations))
}

/// The constant `value` as a solution, after checking it satisfies the equation.
pub fn constant_solution(
    mn: &CurvaturePair,
    kind: SolutionKind,
    sign: Sign,
    value: f64,
    domain: Interval,
    opts: &SolveOptions,
) -> Result<OffsetSolution> {
    if !mn.domain().covers(&domain) {
        return Err(Error::DomainMismatch(mn.domain(), domain));
    }
    let y = Jet5::constant(value);
    let grid = domain.grid(opts.samples.max(3));
    let res = par::try_map(&grid, |&t| -> Result<f64> {
        let (m, n) = mn.at(t)?;
        let rhs = equation_rhs(kind, sign, m, n, y)
            .ok_or_else(|| Error::Invalid(format!("{} has no differential equation", kind.symbol())))?;
        Ok(rhs.value().abs())
    })?;
    let residual = res.into_iter().fold(0.0, par::nan_max);
    if !(residual <= 1e-9 * value.abs().max(1.0)) {
        return Err(Error::NotASolution { value, residual });
    }
    Ok(OffsetSolution::explicit(kind, Some(sign), SolutionSource::Constant { value }, domain, move |_| Ok(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::legendre::builtin;
    use crate::offsets::known;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_constant_round_trips() {
        let mn = builtin::example1().curvature();
        let d = Interval::closed(-1.0, 1.0);
        for sign in [Sign::Plus, Sign::Minus] {
            let fam = ParallelFamily::build(&mn, sign, d, 1e-3).unwrap();
            let c = fam.constant_for(0.0, 0.5).unwrap();
            let sol = fam.solution(c, &SolveOptions::default()).unwrap();
            assert!((sol.value(0.0).unwrap() - 0.5).abs() < 1e-12);
            let paper = known::example1_lambda(sign, 0.2, &SolveOptions::default()).unwrap();
            for t in d.grid(41) {
                assert!((sol.value(t).unwrap() - paper.value(t).unwrap()).abs() < 1e-10, "{t}");
            }
        }
    }

    #[test]
    fn sentinel_gives_zero() {
        let mn = builtin::example1().curvature();
        let sol = parallel_closed_form(&mn, Sign::Plus, f64::INFINITY, builtin::period(), &SolveOptions::default()).unwrap();
        assert_eq!(sol.value(1.0).unwrap(), 0.0);
        assert_eq!(sol.validity(), builtin::period());
    }

    #[test]
    fn integrated_tangent_blows_up() {
        let d = Interval::closed(0.0, 3.0);
        let mn = CurvaturePair::from_exprs(parse("-1").unwrap(), parse("3").unwrap(), d);
        let s = involute_integrate(&mn, Sign::Plus, 0.0, 0.0, d, &SolveOptions::default()).unwrap();
        let tr = s.truncations()[0].clone();
        assert_eq!(tr.reason, TruncationReason::BlowUp);
        assert!((tr.t - PI / 2.0).abs() < 0.01);
        assert!((s.value(1.0).unwrap() - 1f64.tan()).abs() < 1e-10);
    }

    #[test]
    fn example1_riccati_solutions() {
        let mn = builtin::example1().curvature();
        let d = builtin::period();
        let opts = SolveOptions::default();
        let s = involute_integrate(&mn, Sign::Plus, 0.0, 0.0, d, &opts).unwrap();
        assert!((s.value(PI / 2.0).unwrap() + 0.7615941559557649).abs() < 1e-10);
        let s = involute_integrate(&mn, Sign::Minus, 0.3, 0.0, d, &opts).unwrap();
        assert!((s.value(2.0).unwrap() - (0.3 - 2f64.sin())).abs() < 1e-12);
    }

    #[test]
    fn constants_are_checked() {
        let mn = builtin::example1().curvature();
        let d = builtin::period();
        let opts = SolveOptions::default();
        assert!(constant_solution(&mn, SolutionKind::ParallelLambda, Sign::Plus, -2.0, d, &opts).is_ok());
        assert!(matches!(
            constant_solution(&mn, SolutionKind::ParallelLambda, Sign::Plus, 1.0, d, &opts),
            Err(Error::NotASolution { .. })
        ));
        assert!(constant_solution(&mn, SolutionKind::InvoluteS, Sign::Plus, -1.0, d, &opts).is_ok());
    }
}
