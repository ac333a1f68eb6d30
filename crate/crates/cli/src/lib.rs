//! The `horocurve` command line.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horocurve::{Interval, Sign, Tolerances};

pub mod commands;
pub mod emit;
pub mod report;
pub mod spec;

pub use commands::{run, Run};

/// Bad input from the user; exits with status 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser, Debug)]
#[command(name = "horocurve", version, about = "Horocyclic evolutes, parallels and involutes of Legendre curves in the hyperbolic plane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample γ, ν, μ and the curvature (m, n)
    Sample {
        #[command(flatten)]
        common: Common,
    },
    /// The horocyclic evolute Ev± and its curvature
    Evolute {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// A horocyclic parallel P± and its curvature
    Parallel {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[command(flatten)]
        solution: SolutionArgs,
    },
    /// A horocyclic involute Inv± and its curvature
    Involute {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[command(flatten)]
        solution: SolutionArgs,
    },
    /// Locate and classify the singular points of a curve or one of its offsets
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "curve")]
        object: Object,
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        #[command(flatten)]
        solution: SolutionArgs,
    },
    /// Run the numbered acceptance checks
    Verify {
        /// `all`, or a comma-separated list of criterion numbers
        #[arg(long, default_value = "all")]
        suite: String,
        /// Write the JSON run report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(alias = "+")]
    Plus,
    #[value(alias = "-")]
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    Curve,
    Evolute,
    Parallel,
    Involute,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Builtin name, inline JSON, or a path to a JSON curve spec
    #[arg(long)]
    pub curve: String,
    /// Restrict the curve to lo,hi
    #[arg(long, value_parser = parse_domain, allow_hyphen_values = true)]
    pub domain: Option<Interval>,
    /// Samples per track
    #[arg(long, default_value_t = 2001, value_parser = clap::value_parser!(usize))]
    pub steps: usize,
    /// Integration and quadrature step
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Point the validity interval of a closed form must contain
    #[arg(long, allow_hyphen_values = true)]
    pub anchor: Option<f64>,
    /// Output file; CSV goes to stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; taken from the extension of --out by default
    #[arg(long, value_enum)]
    pub format: Option<emit::Format>,
    /// Write the JSON run report here
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub tol: TolArgs,
}

/// How to pick an offset solution. Which combinations are allowed depends on the object.
#[derive(Args, Debug, Clone, Default)]
pub struct SolutionArgs {
    /// Initial value λ(t0) of an integrated parallel
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: Option<f64>,
    /// Initial value s(t0) of an integrated involute
    #[arg(long, allow_hyphen_values = true)]
    pub s0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Constant of the closed-form family (∞ or inf allowed)
    #[arg(long, allow_hyphen_values = true)]
    pub const_c: Option<f64>,
    /// A constant solution, checked against its equation
    #[arg(long, allow_hyphen_values = true)]
    pub constant: Option<f64>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct TolArgs {
    #[arg(long)]
    pub tol_causal: Option<f64>,
    #[arg(long)]
    pub tol_frame: Option<f64>,
    #[arg(long)]
    pub tol_regular: Option<f64>,
    #[arg(long)]
    pub tol_inflect: Option<f64>,
    #[arg(long)]
    pub tol_zero: Option<f64>,
    #[arg(long)]
    pub tol_nonzero: Option<f64>,
    #[arg(long)]
    pub tol_collinear: Option<f64>,
    #[arg(long)]
    pub blowup: Option<f64>,
    #[arg(long)]
    pub tol_denominator: Option<f64>,
    #[arg(long)]
    pub tol_stitch: Option<f64>,
    #[arg(long)]
    pub tol_degenerate: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<Tolerances, UsageError> {
        let d = Tolerances::default();
        let pick = |name: &str, v: Option<f64>, default: f64| match v {
            Some(x) if !(x > 0.0) => Err(UsageError(format!("--{name} must be positive, got {x}"))),
            Some(x) => Ok(x),
            None => Ok(default),
        };
        let t = Tolerances {
            causal: pick("tol-causal", self.tol_causal, d.causal)?,
            frame: pick("tol-frame", self.tol_frame, d.frame)?,
            regular: pick("tol-regular", self.tol_regular, d.regular)?,
            inflect: pick("tol-inflect", self.tol_inflect, d.inflect)?,
            zero: pick("tol-zero", self.tol_zero, d.zero)?,
            nonzero: pick("tol-nonzero", self.tol_nonzero, d.nonzero)?,
            collinear: pick("tol-collinear", self.tol_collinear, d.collinear)?,
            blowup: pick("blowup", self.blowup, d.blowup)?,
            denominator: pick("tol-denominator", self.tol_denominator, d.denominator)?,
            stitch: pick("tol-stitch", self.tol_stitch, d.stitch)?,
            degenerate: pick("tol-degenerate", self.tol_degenerate, d.degenerate)?,
        };
        if t.zero >= t.nonzero {
            return Err(UsageError(format!("--tol-zero ({}) must be below --tol-nonzero ({})", t.zero, t.nonzero)));
        }
        Ok(t)
    }
}

fn parse_domain(s: &str) -> Result<Interval, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    // constant expressions, so that pi/2 and -3*pi/4 work
    let num = |x: &str| -> Result<f64, String> {
        let e = horocurve::expr::parse(x).map_err(|e| format!("{x:?}: {e}"))?;
        if e.depends_on_t() {
            return Err(format!("{x:?} depends on t"));
        }
        horocurve::expr::eval(&e, 0.0).map_err(|e| format!("{x:?}: {e}"))
    };
    let (lo, hi) = (num(a)?, num(b)?);
    if !(lo < hi) {
        return Err(format!("need lo < hi, got {lo}, {hi}"));
    }
    Ok(Interval::closed(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::parse_domain;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn domains() {
        let d = parse_domain("-pi/2, pi/2").unwrap();
        assert_eq!((d.lo, d.hi), (-FRAC_PI_2, FRAC_PI_2));
        let d = parse_domain("-1,pi").unwrap();
        assert_eq!((d.lo, d.hi), (-1.0, PI));
        assert!(parse_domain("1,0").is_err());
        assert!(parse_domain("0,t").is_err());
        assert!(parse_domain("0").is_err());
    }
}
