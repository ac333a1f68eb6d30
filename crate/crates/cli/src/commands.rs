use anyhow::{Context, Result};
use horocurve::acceptance;
use horocurve::legendre::{builtin, Frame, LegendreCurve, Provenance};
use horocurve::offsets::{
    constant_solution, evolute, evolute_ratio, involute, involute_integrate, known, parallel, parallel_closed_form,
    parallel_integrate, OffsetCurve, OffsetSolution, SolutionKind, SolveOptions,
};
use horocurve::singularities::{classify_evolute, singular_points, SingularPoint};
use horocurve::{par, Sign, Tolerances};

use crate::emit::{self, Format, Marker, Row, Track, TrackKind};
use crate::report::{CurveInfo, PointJson, ResidualsJson, RunReport, Sampling, SolutionInfo};
use crate::{spec, Cli, Command, Common, Object, SignArg, SolutionArgs, UsageError};

type PointAt = Box<dyn Fn(f64) -> Result<[f64; 3]>>;

/// What a command produced: the report, text for stdout and the exit status.
#[derive(Debug)]
pub struct Run {
    pub report: RunReport,
    pub stdout: String,
    pub exit: u8,
}

struct Ctx {
    curve: LegendreCurve,
    tol: Tolerances,
    opts: SolveOptions,
    grid_size: usize,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn context(c: &Common) -> Result<Ctx> {
    let tol = c.tol.resolve()?;
    if c.steps < 2 {
        return Err(usage(format!("--steps must be at least 2, got {}", c.steps)));
    }
    if !(c.step > 0.0) {
        return Err(usage(format!("--step must be positive, got {}", c.step)));
    }
    let mut curve = spec::load_curve_spec(&c.curve, tol.frame)?;
    if let Some(d) = c.domain {
        let iv = curve
            .domain()
            .intersect(&d)
            .ok_or_else(|| usage(format!("--domain {d} misses the curve's domain {}", curve.domain())))?;
        curve = curve.restrict(iv)?;
    }
    let opts = SolveOptions { step: c.step, samples: c.steps, anchor: c.anchor, tol };
    Ok(Ctx { curve, tol, opts, grid_size: c.steps })
}

fn base_report(argv: &[String], ctx: &Ctx) -> RunReport {
    RunReport {
        command: argv.to_vec(),
        curve: Some(CurveInfo::from(&ctx.curve)),
        tolerances: Some((&ctx.tol).into()),
        sampling: Some(Sampling { steps: ctx.grid_size, step: ctx.opts.step, anchor: ctx.opts.anchor }),
        ..RunReport::default()
    }
}

fn is_builtin(c: &LegendreCurve, name: &str) -> bool {
    matches!(c.provenance(), Provenance::Builtin(n) if n == name)
}

fn frames(c: &LegendreCurve, grid: &[f64]) -> Result<Vec<Frame>> {
    Ok(par::try_map(grid, |&t| c.evaluate_frame(t).map(|f| f.value()))?)
}

fn curvature_track(label: String, c: &horocurve::legendre::CurvaturePair, grid: &[f64]) -> Result<Track> {
    let rows = par::try_map(grid, |&t| c.values(t).map(|(m, n)| Row { t, x: [m, n, 0.0] }))?;
    Ok(Track::new(label, TrackKind::Curvature, rows))
}

fn evolute_of(ctx: &Ctx, sign: Sign) -> Result<(OffsetCurve, OffsetSolution)> {
    let f = evolute_ratio(&ctx.curve.curvature(), ctx.curve.domain(), &ctx.opts).context("evolute ratio f")?;
    Ok((evolute(&ctx.curve, &f, sign)?, f))
}

fn parallel_solution(ctx: &Ctx, sign: Sign, s: &SolutionArgs) -> Result<OffsetSolution> {
    if s.s0.is_some() {
        return Err(usage("--s0 belongs to involutes; parallels take --lambda0"));
    }
    let (mn, d) = (ctx.curve.curvature(), ctx.curve.domain());
    match (s.lambda0, s.const_c, s.constant) {
        (Some(l), None, None) => {
            let t0 = s.t0.ok_or_else(|| usage("--lambda0 needs --t0"))?;
            Ok(parallel_integrate(&mn, sign, l, t0, d, &ctx.opts.anchored(t0))?)
        }
        (None, Some(c), None) if is_builtin(&ctx.curve, builtin::EXAMPLE1) => {
            let sol = known::example1_lambda(sign, c, &ctx.opts)?;
            Ok(sol.restrict(sol.validity().intersect(&d).ok_or_else(|| usage("solution is not valid on --domain"))?)?)
        }
        (None, Some(c), None) => Ok(parallel_closed_form(&mn, sign, c, d, &ctx.opts)?),
        (None, None, Some(v)) => Ok(constant_solution(&mn, SolutionKind::ParallelLambda, sign, v, d, &ctx.opts)?),
        _ => Err(usage("a parallel needs exactly one of --lambda0 with --t0, --const-c, or --constant")),
    }
}

fn involute_solution(ctx: &Ctx, sign: Sign, s: &SolutionArgs) -> Result<OffsetSolution> {
    if s.lambda0.is_some() {
        return Err(usage("--lambda0 belongs to parallels; involutes take --s0"));
    }
    let (mn, d) = (ctx.curve.curvature(), ctx.curve.domain());
    let sol = match (s.s0, s.const_c, s.constant) {
        (Some(v), None, None) => {
            let t0 = s.t0.ok_or_else(|| usage("--s0 needs --t0"))?;
            return Ok(involute_integrate(&mn, sign, v, t0, d, &ctx.opts.anchored(t0))?);
        }
        (None, None, Some(v)) => return Ok(constant_solution(&mn, SolutionKind::InvoluteS, sign, v, d, &ctx.opts)?),
        (None, Some(c), None) if is_builtin(&ctx.curve, builtin::EXAMPLE1) => match sign {
            Sign::Plus => known::example1_s_plus(c, &ctx.opts)?,
            Sign::Minus => known::example1_s_minus(c, &ctx.opts)?,
        },
        (None, None, None) if is_builtin(&ctx.curve, builtin::EXAMPLE2) && sign == Sign::Plus => {
            known::example2_s_plus(&ctx.opts)?
        }
        (None, Some(_), None) => {
            return Err(usage("closed-form involutes (--const-c) exist only for the example1 builtin"));
        }
        _ => {
            return Err(usage(
                "an involute needs exactly one of --s0 with --t0, --const-c (example1), or --constant; \
                 example2 with --sign plus needs none",
            ))
        }
    };
    Ok(sol.restrict(sol.validity().intersect(&d).ok_or_else(|| usage("solution is not valid on --domain"))?)?)
}

/// The offset named by `object`, with the evolute ratio when there is one.
fn offset(ctx: &Ctx, object: Object, sign: Sign, s: &SolutionArgs) -> Result<(OffsetCurve, Option<OffsetSolution>)> {
    match object {
        Object::Evolute => {
            let (ev, f) = evolute_of(ctx, sign)?;
            Ok((ev, Some(f)))
        }
        Object::Parallel => Ok((parallel(&ctx.curve, &parallel_solution(ctx, sign, s)?, sign)?, None)),
        Object::Involute => Ok((involute(&ctx.curve, &involute_solution(ctx, sign, s)?, sign)?, None)),
        Object::Curve => unreachable!("the base curve is not an offset"),
    }
}

fn offset_label(o: &OffsetCurve, sign: Sign) -> String {
    format!("{}{sign:#}", o.kind.name())
}

/// Base curve, offset and offset curvature sampled on the offset's domain.
fn offset_tracks(ctx: &Ctx, o: &OffsetCurve, sign: Sign) -> Result<(Vec<Track>, RunReport)> {
    let grid = o.domain().grid(ctx.grid_size);
    let label = offset_label(o, sign);
    let base = frames(&ctx.curve, &grid)?;
    let off = frames(&o.curve, &grid)?;
    let tracks = vec![
        Track::points("curve", grid.iter().zip(&base).map(|(&t, f)| (t, f.gamma))),
        Track::points(label.clone(), grid.iter().zip(&off).map(|(&t, f)| (t, f.gamma))),
        curvature_track(format!("{label} curvature"), &o.closed_form_curvature(), &grid)?,
    ];
    let mut res = ResidualsJson::from(&o.curve.max_residuals(&grid)?);
    res.scaled = Some(o.curve.max_scaled_residual(&grid)?);
    res.curvature_mismatch = Some(o.curvature_mismatch(&grid)?);
    res.relative_curvature_mismatch = Some(o.relative_curvature_mismatch(&grid)?);
    let report = RunReport {
        object: Some(label),
        solution: Some(SolutionInfo::from(&o.solution)),
        validity: Some(o.domain().into()),
        residuals: Some(res),
        ..RunReport::default()
    };
    Ok((tracks, report))
}

fn merge(mut into: RunReport, from: RunReport) -> RunReport {
    into.object = from.object.or(into.object);
    into.solution = from.solution.or(into.solution);
    into.validity = from.validity.or(into.validity);
    into.residuals = from.residuals.or(into.residuals);
    into
}

fn finish(common: &Common, tracks: Vec<Track>, markers: Vec<Marker>, mut report: RunReport, to_stdout: bool) -> Result<Run> {
    let format = common.format.or_else(|| common.out.as_deref().and_then(Format::from_path)).unwrap_or(Format::Csv);
    report.outputs.extend(common.out.iter().chain(&common.report).map(|p| p.display().to_string()));
    let mut stdout = String::new();
    match &common.out {
        Some(p) => emit::emit(&tracks, &markers, &report, format, p)?,
        None if to_stdout => stdout = String::from_utf8(emit::render(&tracks, &markers, &report, format)?)?,
        None => {}
    }
    write_report(&report, common.report.as_deref())?;
    Ok(Run { report, stdout, exit: 0 })
}

fn write_report(report: &RunReport, path: Option<&std::path::Path>) -> Result<()> {
    if let Some(p) = path {
        let mut v = serde_json::to_vec_pretty(report)?;
        v.push(b'\n');
        std::fs::write(p, v).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn sample(argv: &[String], common: &Common) -> Result<Run> {
    let ctx = context(common)?;
    let grid = ctx.curve.domain().grid(ctx.grid_size);
    let fs = frames(&ctx.curve, &grid)?;
    let pick = |g: fn(&Frame) -> horocurve::Vec3L| grid.iter().zip(&fs).map(move |(&t, f)| (t, g(f)));
    let mut nu = Track::points("nu", pick(|f| f.nu));
    nu.kind = TrackKind::Direction;
    let mut mu = Track::points("mu", pick(|f| f.mu));
    mu.kind = TrackKind::Direction;
    let tracks = vec![
        Track::points("gamma", pick(|f| f.gamma)),
        nu,
        mu,
        curvature_track("curvature".into(), &ctx.curve.curvature(), &grid)?,
    ];
    let mut report = base_report(argv, &ctx);
    report.object = Some("curve".into());
    report.validity = Some(ctx.curve.domain().into());
    let mut res = ResidualsJson::from(&ctx.curve.max_residuals(&grid)?);
    res.scaled = Some(ctx.curve.max_scaled_residual(&grid)?);
    report.residuals = Some(res);
    finish(common, tracks, Vec::new(), report, true)
}

fn offset_command(argv: &[String], common: &Common, object: Object, sign: SignArg, s: &SolutionArgs) -> Result<Run> {
    let ctx = context(common)?;
    let sign = Sign::from(sign);
    let (o, _) = offset(&ctx, object, sign, s)?;
    let (tracks, part) = offset_tracks(&ctx, &o, sign)?;
    let report = merge(base_report(argv, &ctx), part);
    finish(common, tracks, Vec::new(), report, true)
}

fn classify(argv: &[String], common: &Common, object: Object, sign: Option<SignArg>, s: &SolutionArgs) -> Result<Run> {
    let ctx = context(common)?;
    let mut report = base_report(argv, &ctx);
    let (points, tracks, label, point_at): (Vec<SingularPoint>, Vec<Track>, String, PointAt) =
        if object == Object::Curve {
            let d = ctx.curve.domain();
            let pts = singular_points(&ctx.curve.curvature(), d, ctx.grid_size, &ctx.tol)?;
            let grid = d.grid(ctx.grid_size);
            let fs = frames(&ctx.curve, &grid)?;
            let track = Track::points("curve", grid.iter().zip(&fs).map(|(&t, f)| (t, f.gamma)));
            report.object = Some("curve".into());
            report.validity = Some(d.into());
            let c = ctx.curve.clone();
            (pts, vec![track], "curve".into(), Box::new(move |t| Ok(c.point(t)?.to_array())))
        } else {
            let sign = Sign::from(sign.ok_or_else(|| usage(format!("--sign is required for --object {object:?}").to_lowercase()))?);
            let (o, f) = offset(&ctx, object, sign, s)?;
            let mut pts = singular_points(&o.closed_form_curvature(), o.domain(), ctx.grid_size, &ctx.tol)?;
            if let Some(f) = &f {
                let mn = ctx.curve.curvature();
                for p in &mut pts {
                    p.class = classify_evolute(&mn, f, sign, p.t, &ctx.tol);
                }
            }
            let (tracks, part) = offset_tracks(&ctx, &o, sign)?;
            report = merge(report, part);
            let label = offset_label(&o, sign);
            (pts, tracks, label, Box::new(move |t| Ok(o.point(t)?.to_array())))
        };
    let mut markers = Vec::new();
    let mut text = format!("{} singular point(s) of {label} on {}\n", points.len(), ctx.curve.domain());
    for p in &points {
        match &p.class {
            Ok(c) => text.push_str(&format!("t = {:>+.12}  {c}\n", p.t)),
            Err(e) => text.push_str(&format!("t = {:>+.12}  unresolved: {e}\n", p.t)),
        }
        markers.push(Marker { t: p.t, point: point_at(p.t)?, label: label.clone() });
    }
    report.singular_points = points.iter().map(PointJson::from).collect();
    let mut run = finish(common, tracks, markers, report, false)?;
    run.stdout = text;
    Ok(run)
}

fn verify(argv: &[String], suite: &str, report_path: Option<&std::path::Path>) -> Result<Run> {
    let ids: Vec<usize> = if suite.trim() == "all" {
        (1..=acceptance::TITLES.len()).collect()
    } else {
        suite
            .split(',')
            .map(|s| match s.trim().parse::<usize>() {
                Ok(i) if (1..=acceptance::TITLES.len()).contains(&i) => Ok(i),
                _ => Err(usage(format!("--suite takes `all` or numbers 1 to {}, got {s:?}", acceptance::TITLES.len()))),
            })
            .collect::<Result<_>>()?
    };
    let outcomes: Vec<_> = ids.iter().map(|&i| acceptance::run(i)).collect();
    let stdout: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let mut report = RunReport { command: argv.to_vec(), ..RunReport::default() };
    report.tolerances = Some((&Tolerances::default()).into());
    report.acceptance = outcomes.iter().map(Into::into).collect();
    report.outputs.extend(report_path.map(|p| p.display().to_string()));
    write_report(&report, report_path)?;
    let stdout = format!("{stdout}{} of {} criteria passed\n", outcomes.len() - failed, outcomes.len());
    Ok(Run { report, stdout, exit: u8::from(failed > 0) })
}

pub fn run(cli: Cli, argv: &[String]) -> Result<Run> {
    match &cli.command {
        Command::Sample { common } => sample(argv, common),
        Command::Evolute { common, sign } => offset_command(argv, common, Object::Evolute, *sign, &SolutionArgs::default()),
        Command::Parallel { common, sign, solution } => offset_command(argv, common, Object::Parallel, *sign, solution),
        Command::Involute { common, sign, solution } => offset_command(argv, common, Object::Involute, *sign, solution),
        Command::Classify { common, object, sign, solution } => classify(argv, common, *object, *sign, solution),
        Command::Verify { suite, report } => verify(argv, suite, report.as_deref()),
    }
}
