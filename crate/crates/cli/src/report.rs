use horocurve::acceptance::Outcome;
use horocurve::legendre::{FrameResiduals, LegendreCurve};
use horocurve::offsets::{OffsetSolution, SolutionSource};
use horocurve::singularities::SingularPoint;
use horocurve::{Interval, Tolerances};
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct IntervalJson {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
}

impl From<Interval> for IntervalJson {
    fn from(i: Interval) -> Self {
        Self { lo: i.lo, hi: i.hi, lo_open: i.lo_open }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CurveInfo {
    pub name: String,
    pub provenance: String,
    pub domain: IntervalJson,
}

impl From<&LegendreCurve> for CurveInfo {
    fn from(c: &LegendreCurve) -> Self {
        Self { name: c.name().to_string(), provenance: c.provenance().to_string(), domain: c.domain().into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TolerancesJson {
    pub causal: f64,
    pub frame: f64,
    pub regular: f64,
    pub inflect: f64,
    pub zero: f64,
    pub nonzero: f64,
    pub collinear: f64,
    pub blowup: f64,
    pub denominator: f64,
    pub stitch: f64,
    pub degenerate: f64,
}

impl From<&Tolerances> for TolerancesJson {
    fn from(t: &Tolerances) -> Self {
        Self {
            causal: t.causal,
            frame: t.frame,
            regular: t.regular,
            inflect: t.inflect,
            zero: t.zero,
            nonzero: t.nonzero,
            collinear: t.collinear,
            blowup: t.blowup,
            denominator: t.denominator,
            stitch: t.stitch,
            degenerate: t.degenerate,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Sampling {
    pub steps: usize,
    pub step: f64,
    pub anchor: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationJson {
    pub t: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionInfo {
    pub kind: &'static str,
    pub sign: Option<&'static str>,
    pub source: String,
    pub validity: IntervalJson,
    pub truncations: Vec<TruncationJson>,
}

impl From<&OffsetSolution> for SolutionInfo {
    fn from(s: &OffsetSolution) -> Self {
        let source = match s.source() {
            SolutionSource::ClosedForm { c: Some(c) } => format!("closed form, c = {c}"),
            SolutionSource::ClosedForm { c: None } => "closed form".to_string(),
            SolutionSource::Integrated { t0, y0, step } => format!("RK4 from y({t0}) = {y0}, step {step}"),
            SolutionSource::Constant { value } => format!("constant {value}"),
        };
        Self {
            kind: s.kind().symbol(),
            sign: s.sign().map(|x| x.name()),
            source,
            validity: s.validity().into(),
            truncations: s.truncations().iter().map(|t| TruncationJson { t: t.t, reason: t.reason.to_string() }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointJson {
    pub t: f64,
    pub class: Option<&'static str>,
    pub error: Option<String>,
}

impl From<&SingularPoint> for PointJson {
    fn from(p: &SingularPoint) -> Self {
        match &p.class {
            Ok(c) => Self { t: p.t, class: Some(c.name()), error: None },
            Err(e) => Self { t: p.t, class: None, error: Some(e.to_string()) },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ResidualsJson {
    pub gamma_norm: f64,
    pub nu_norm: f64,
    pub orth: f64,
    pub legendre: f64,
    pub frenet_gamma: f64,
    pub frenet_nu: f64,
    /// Residuals relative to the size of the frame vectors.
    pub scaled: Option<f64>,
    /// Largest gap between extracted and closed-form offset curvature.
    pub curvature_mismatch: Option<f64>,
    pub relative_curvature_mismatch: Option<f64>,
}

impl From<&FrameResiduals> for ResidualsJson {
    fn from(r: &FrameResiduals) -> Self {
        Self {
            gamma_norm: r.gamma_norm,
            nu_norm: r.nu_norm,
            orth: r.orth,
            legendre: r.legendre,
            frenet_gamma: r.frenet_gamma,
            frenet_nu: r.frenet_nu,
            scaled: None,
            curvature_mismatch: None,
            relative_curvature_mismatch: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureJson {
    pub label: String,
    pub value: f64,
    pub limit: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeJson {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub error: Option<String>,
    pub measures: Vec<MeasureJson>,
}

impl From<&Outcome> for OutcomeJson {
    fn from(o: &Outcome) -> Self {
        Self {
            id: o.id,
            title: o.title,
            passed: o.passed(),
            error: o.error.clone(),
            measures: o
                .measures
                .iter()
                .map(|m| MeasureJson { label: m.label.clone(), value: m.value, limit: m.limit, ok: m.ok() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub curve: Option<CurveInfo>,
    pub tolerances: Option<TolerancesJson>,
    pub sampling: Option<Sampling>,
    pub object: Option<String>,
    pub solution: Option<SolutionInfo>,
    pub validity: Option<IntervalJson>,
    pub singular_points: Vec<PointJson>,
    pub residuals: Option<ResidualsJson>,
    pub outputs: Vec<String>,
    pub acceptance: Vec<OutcomeJson>,
}

impl RunReport {
    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut lines = Vec::new();
        if let (Some(c), Some(o)) = (&self.curve, &self.object) {
            lines.push(format!("{o} of {} ({})", c.name, c.provenance));
        }
        if let Some(s) = &self.solution {
            let v = s.validity;
            lines.push(format!("{} ({}) valid on {}{}, {}]", s.kind, s.source, if v.lo_open { '(' } else { '[' }, v.lo, v.hi));
            for t in &s.truncations {
                lines.push(format!("  truncated at t = {}: {}", t.t, t.reason));
            }
        }
        if let Some(r) = &self.residuals {
            let worst = [r.gamma_norm, r.nu_norm, r.orth, r.legendre].into_iter().fold(0.0, f64::max);
            match r.scaled {
                Some(s) => lines.push(format!("max frame residual {worst:.3e} (relative {s:.3e})")),
                None => lines.push(format!("max frame residual {worst:.3e}")),
            }
            if let Some(m) = r.curvature_mismatch {
                match r.relative_curvature_mismatch {
                    Some(q) => lines.push(format!("max curvature mismatch {m:.3e} (relative {q:.3e})")),
                    None => lines.push(format!("max curvature mismatch {m:.3e}")),
                }
            }
        }
        for o in &self.outputs {
            lines.push(format!("wrote {o}"));
        }
        lines.join("\n")
    }
}
