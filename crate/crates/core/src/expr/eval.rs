use super::{BinOp, Expr, ExprError, Func};
use crate::domain::Interval;
use crate::jet::{Jet, Jet4};
use crate::par;

fn domain(e: &Expr, t: f64) -> ExprError {
    ExprError::Domain { subexpr: e.to_string(), t }
}

/// Evaluates the value and derivatives of `e` at `t` in Taylor mode.
pub fn eval_jet_n<const N: usize>(e: &Expr, t: f64) -> Result<Jet<N>, ExprError> {
    let r = match e {
        Expr::Num(v) => Jet::constant(*v),
        Expr::Var => Jet::variable(t),
        Expr::Pi => Jet::constant(std::f64::consts::PI),
        Expr::Neg(a) => -eval_jet_n(a, t)?,
        Expr::Bin(op, a, b) => {
            let x = eval_jet_n::<N>(a, t)?;
            let y = eval_jet_n::<N>(b, t)?;
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y.value() == 0.0 {
                        return Err(domain(e, t));
                    }
                    x / y
                }
            }
        }
        Expr::Pow(a, p) => {
            let x = eval_jet_n::<N>(a, t)?;
            let integral = p.fract() == 0.0;
            if (!integral && x.value() <= 0.0) || (integral && *p < 0.0 && x.value() == 0.0) {
                return Err(domain(e, t));
            }
            x.powf(*p)
        }
        Expr::Func(f, a) => {
            let x = eval_jet_n::<N>(a, t)?;
            match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => {
                    if x.value().cos() == 0.0 {
                        return Err(domain(e, t));
                    }
                    x.tan()
                }
                Func::Exp => x.exp(),
                Func::Log => {
                    if x.value() <= 0.0 {
                        return Err(domain(e, t));
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if x.value() <= 0.0 {
                        return Err(domain(e, t));
                    }
                    x.sqrt()
                }
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Tanh => x.tanh(),
                Func::Atan => x.atan(),
            }
        }
    };
    if r.coeffs().iter().all(|v| v.is_finite()) {
        Ok(r)
    } else {
        Err(domain(e, t))
    }
}

/// Value and derivatives to order 4.
pub fn eval_jet(e: &Expr, t: f64) -> Result<Jet4, ExprError> {
    eval_jet_n(e, t)
}

/// Plain value.
pub fn eval(e: &Expr, t: f64) -> Result<f64, ExprError> {
    eval_jet_n::<1>(e, t).map(|j| j.value())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Validation {
    pub samples: usize,
    /// Sample points where evaluation failed, with the error.
    pub errors: Vec<(f64, ExprError)>,
    /// Largest |v0|..|v4| over the successful samples.
    pub max_abs: [f64; 5],
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Samples jets over `[a, b]` and collects failures instead of stopping at one.
pub fn validate(e: &Expr, iv: Interval, samples: usize) -> Validation {
    let grid = iv.grid(samples.max(2));
    let results = par::map(&grid, |&t| (t, eval_jet(e, t)));
    let mut max_abs = [0.0f64; 5];
    let mut errors = Vec::new();
    for (t, r) in results {
        match r {
            Ok(j) => {
                for (m, d) in max_abs.iter_mut().zip(j.derivs()) {
                    *m = m.max(d.abs());
                }
            }
            Err(err) => errors.push((t, err)),
        }
    }
    Validation { samples: grid.len(), errors, max_abs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::PI;

    #[test]
    fn square() {
        let j = eval_jet(&parse("t^2").unwrap(), 3.0).unwrap();
        assert_eq!(j.derivs(), [9.0, 6.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn pythagorean_identity() {
        let j = eval_jet(&parse("sin(t)*sin(t)+cos(t)*cos(t)").unwrap(), 0.7).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0, 0.0];
        for (a, b) in j.derivs().iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let e = parse("1 + log(t)").unwrap();
        assert_eq!(eval_jet(&e, -1.0), Err(ExprError::Domain { subexpr: "log(t)".into(), t: -1.0 }));
        assert!(eval_jet(&parse("1/t").unwrap(), 0.0).is_err());
        assert!(eval_jet(&parse("sqrt(t)").unwrap(), 0.0).is_err());
        assert!(eval_jet(&parse("t^-1").unwrap(), 0.0).is_err());
        assert!(eval_jet(&parse("t^3").unwrap(), 0.0).is_ok());
    }

    #[test]
    fn validate_examples() {
        let v = validate(&parse("cos(t)").unwrap(), Interval::closed(-PI, PI), 100);
        assert!(v.ok());
        assert!((v.max_abs[0] - 1.0).abs() < 1e-15);

        let v = validate(&parse("1/t").unwrap(), Interval::closed(-1.0, 1.0), 101);
        assert_eq!(v.errors.len(), 1);
        assert_eq!(v.errors[0].0, 0.0);

        let v = validate(&parse("tan(t)").unwrap(), Interval::closed(0.0, 1.5), 100);
        assert!(v.ok());
        assert!((v.max_abs[0] - 14.101419947171719).abs() < 1e-9);
    }
}
