//! Curve specifications: builtin names, inline JSON or a JSON file.

use std::path::Path;

use anyhow::{Context, Result};
use horocurve::expr::parse;
use horocurve::legendre::{builtin, synthesize_from_curvature, CurvaturePair, Frame, LegendreCurve};
use horocurve::{Interval, Vec3L};
use serde::Deserialize;

use crate::UsageError;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveSpec {
    Builtin {
        name: String,
    },
    Parametric {
        gamma: [String; 3],
        nu: [String; 3],
        domain: DomainSpec,
    },
    Curvature {
        m: String,
        n: String,
        frame: FrameSpec,
        domain: DomainSpec,
        #[serde(default = "default_step")]
        step: f64,
    },
}

fn default_step() -> f64 {
    1e-3
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum DomainSpec {
    Pair([f64; 2]),
    Full { lo: f64, hi: f64, #[serde(default)] lo_open: bool },
}

impl DomainSpec {
    pub fn interval(self) -> Result<Interval> {
        let iv = match self {
            DomainSpec::Pair([lo, hi]) => Interval::closed(lo, hi),
            DomainSpec::Full { lo, hi, lo_open } => Interval { lo, hi, lo_open },
        };
        if !(iv.lo < iv.hi) || !iv.lo.is_finite() || !iv.hi.is_finite() {
            return Err(UsageError(format!("domain must satisfy lo < hi, got {iv}")).into());
        }
        Ok(iv)
    }
}

/// The initial frame (γ, ν, μ), nested or as nine numbers.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FrameSpec {
    Nested([[f64; 3]; 3]),
    Flat([f64; 9]),
}

impl FrameSpec {
    pub fn frame(self) -> Frame {
        let a = match self {
            FrameSpec::Nested(r) => [r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]],
            FrameSpec::Flat(a) => a,
        };
        Frame { gamma: Vec3L::new(a[0], a[1], a[2]), nu: Vec3L::new(a[3], a[4], a[5]), mu: Vec3L::new(a[6], a[7], a[8]) }
    }
}

/// Reads `src` as a builtin name, inline JSON, or a path to a JSON file.
pub fn read_curve_spec(src: &str) -> Result<CurveSpec> {
    let src = src.trim();
    if builtin::by_name(src).is_some() {
        return Ok(CurveSpec::Builtin { name: src.to_string() });
    }
    let text = if src.starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(Path::new(src))
            .map_err(|e| UsageError(format!("cannot read curve spec {src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| UsageError(format!("curve spec does not match the schema: {e}")).into())
}

pub fn build_curve(spec: &CurveSpec, frame_tol: f64) -> Result<LegendreCurve> {
    let expr = |s: &str| parse(s).map_err(|e| UsageError(format!("bad expression {s:?}: {e}")));
    match spec {
        CurveSpec::Builtin { name } => builtin::by_name(name)
            .map(|c| c.with_frame_tolerance(frame_tol))
            .ok_or_else(|| UsageError(format!("unknown builtin {name:?}; known: {}", builtin::names().join(", "))).into()),
        CurveSpec::Parametric { gamma, nu, domain } => {
            let g = [expr(&gamma[0])?, expr(&gamma[1])?, expr(&gamma[2])?];
            let v = [expr(&nu[0])?, expr(&nu[1])?, expr(&nu[2])?];
            LegendreCurve::parametric(g, v, domain.interval()?, frame_tol).context("parametric curve")
        }
        CurveSpec::Curvature { m, n, frame, domain, step } => {
            let d = domain.interval()?;
            let mn = CurvaturePair::from_exprs(expr(m)?, expr(n)?, d);
            let c = synthesize_from_curvature(&mn, &frame.frame(), d, *step).context("curvature curve")?;
            Ok(c.with_frame_tolerance(frame_tol))
        }
    }
}

pub fn load_curve_spec(src: &str, frame_tol: f64) -> Result<LegendreCurve> {
    build_curve(&read_curve_spec(src)?, frame_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use horocurve::Error;

    #[test]
    fn builtin_names_and_inline_json() {
        let c = load_curve_spec("example1", 1e-9).unwrap();
        assert_eq!(c.domain(), builtin::period());
        let c = load_curve_spec(r#"{"kind":"builtin","name":"example2"}"#, 1e-9).unwrap();
        assert_eq!(c.name(), builtin::example2().name());
    }

    #[test]
    fn curvature_spec_reproduces_example1() {
        let src = r#"{"kind":"curvature","m":"cos(t)","n":"cos(t)",
            "frame":[[1,0,0],[0,-1,0],[0,0,-1]],"domain":[0,3.141592653589793],"step":1e-3}"#;
        let c = load_curve_spec(src, 1e-9).unwrap();
        let e1 = builtin::example1();
        for t in c.domain().grid(64) {
            assert!((c.point(t).unwrap() - e1.point(t).unwrap()).max_abs() < 1e-6);
        }
    }

    #[test]
    fn off_manifold_parametric_fails_preflight() {
        let src = r#"{"kind":"parametric","gamma":["2","1","1"],"nu":["0","1","0"],"domain":[0,1]}"#;
        let e = load_curve_spec(src, 1e-9).unwrap_err();
        assert!(matches!(e.downcast_ref::<Error>(), Some(Error::PreFlightFailed { .. })), "{e:#}");
    }

    #[test]
    fn schema_errors_are_usage_errors() {
        for src in [r#"{"kind":"spline"}"#, r#"{"kind":"builtin"}"#, "/no/such/file.json"] {
            assert!(load_curve_spec(src, 1e-9).unwrap_err().downcast_ref::<UsageError>().is_some(), "{src}");
        }
    }
}
