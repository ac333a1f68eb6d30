//! Closed-form solutions for the built-in examples, with their own constants.

use super::{closed_form_validity, OffsetSolution, SolutionKind, SolutionSource, SolveOptions};
use crate::error::Result;
use crate::jet::Jet5;
use crate::legendre::builtin;
use crate::Sign;

fn closed(
    kind: SolutionKind,
    sign: Sign,
    c: Option<f64>,
    opts: &SolveOptions,
    eval: impl Fn(f64) -> Result<Jet5> + Send + Sync + 'static,
    guard: Option<Box<dyn Fn(f64) -> Result<f64> + Send + Sync>>,
) -> Result<OffsetSolution> {
    let d = builtin::period();
    let sol = OffsetSolution::explicit(kind, Some(sign), SolutionSource::ClosedForm { c }, d, eval);
    let (validity, truncations) = closed_form_validity(&*sol.eval, guard.as_deref(), d, opts)?;
    Ok(sol.with_validity(validity, truncations))
}

fn e_sin(t: f64, k: f64) -> Jet5 {
    (Jet5::variable(t).sin() * k).exp()
}

/// λ± = 2c/(e^{±sin t} − c) on the first example; c = ∞ is the constant −2.
pub fn example1_lambda(sign: Sign, c: f64, opts: &SolveOptions) -> Result<OffsetSolution> {
    let e = sign.f();
    if c.is_infinite() {
        return closed(SolutionKind::ParallelLambda, sign, Some(c), opts, |_| Ok(Jet5::constant(-2.0)), None);
    }
    closed(
        SolutionKind::ParallelLambda,
        sign,
        Some(c),
        opts,
        move |t| Ok(2.0 * c / (e_sin(t, e) - c)),
        Some(Box::new(move |t: f64| Ok((e * t.sin()).exp() - c))),
    )
}

/// s₊ = (1 + c e^{2 sin t})/(1 − c e^{2 sin t}); c = ∞ is the constant −1.
pub fn example1_s_plus(c: f64, opts: &SolveOptions) -> Result<OffsetSolution> {
    if c.is_infinite() {
        return closed(SolutionKind::InvoluteS, Sign::Plus, Some(c), opts, |_| Ok(Jet5::constant(-1.0)), None);
    }
    closed(
        SolutionKind::InvoluteS,
        Sign::Plus,
        Some(c),
        opts,
        move |t| {
            let u = e_sin(t, 2.0) * c;
            Ok((1.0 + u) / (1.0 - u))
        },
        Some(Box::new(move |t: f64| Ok(1.0 - c * (2.0 * t.sin()).exp()))),
    )
}

/// s₋ = c − sin t.
pub fn example1_s_minus(c: f64, opts: &SolveOptions) -> Result<OffsetSolution> {
    closed(SolutionKind::InvoluteS, Sign::Minus, Some(c), opts, move |t| Ok(c - Jet5::variable(t).sin()), None)
}

/// The solution s₊ of the second example whose involute is the astroid lift.
pub fn example2_s_plus(opts: &SolveOptions) -> Result<OffsetSolution> {
    closed(SolutionKind::InvoluteS, Sign::Plus, None, opts, |t| Ok(builtin::example2_parts(t).g), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offsets::ode_residual;

    #[test]
    fn closed_forms_solve_their_equations() {
        let mn = builtin::example1().curvature();
        let opts = SolveOptions::default();
        let sols = [
            example1_lambda(Sign::Plus, 0.2, &opts).unwrap(),
            example1_lambda(Sign::Minus, 0.2, &opts).unwrap(),
            example1_lambda(Sign::Minus, f64::INFINITY, &opts).unwrap(),
            example1_s_plus(-1.0, &opts).unwrap(),
            example1_s_plus(0.1, &opts).unwrap(),
            example1_s_minus(0.3, &opts).unwrap(),
        ];
        for s in &sols {
            for t in s.validity().grid(33) {
                assert!(ode_residual(&mn, s, t).unwrap() < 1e-12 * s.value(t).unwrap().abs().max(1.0).powi(2));
            }
        }
        let mn2 = builtin::example2().curvature();
        let g = example2_s_plus(&opts).unwrap();
        for t in g.validity().grid(33) {
            assert!(ode_residual(&mn2, &g, t).unwrap() < 1e-10, "{t}");
        }
    }

    #[test]
    fn pole_cuts_validity() {
        let opts = SolveOptions::default().anchored(0.0);
        let lam = example1_lambda(Sign::Plus, 0.5, &opts).unwrap();
        let pole = 0.5f64.ln().asin();
        assert!(lam.validity().lo > pole && lam.validity().lo - pole < 1e-5);
        assert!(lam.validity().hi > 3.1);
    }
}
