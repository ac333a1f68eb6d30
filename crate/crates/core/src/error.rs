use thiserror::Error as ThisError;

use crate::domain::Interval;
use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum Error {
    #[error("zero vector has no causal character")]
    ZeroVector,
    #[error("point is not on the hyperbolic plane (residual {residual:.3e})")]
    NotOnH2 { residual: f64 },
    #[error("t = {t} lies outside the domain {domain}")]
    OutOfDomain { t: f64, domain: Interval },
    #[error("frame invariants drift by {residual:.3e} at t = {t}")]
    FrameDrift { t: f64, residual: f64 },
    #[error("initial frame is not pseudo-orthonormal (residual {residual:.3e})")]
    InvalidInitialFrame { residual: f64 },
    #[error("frame drift {drift:.3e} within one step at t = {t}; use a smaller step")]
    StepTooLarge { t: f64, drift: f64 },
    #[error("singular point at t = {t} (speed {speed:.3e})")]
    SingularPoint { t: f64, speed: f64 },
    #[error("domains differ: {0} vs {1}")]
    DomainMismatch(Interval, Interval),
    #[error("horocycle frame is not pseudo-orthonormal (residual {residual:.3e})")]
    BadFrame { residual: f64 },
    #[error("tangent horocycle family degenerates at t = {t} (|(s∓1)(n∓m)| = {value:.3e})")]
    DegenerateFamily { t: f64, value: f64 },
    #[error("n and its derivative both vanish near t = {t}")]
    NoSmoothExtension { t: f64 },
    #[error("t = {t} lies outside the validity interval {validity}")]
    OutsideValidity { t: f64, validity: Interval },
    #[error("{quantity} = {value:.3e} lies between the zero and non-zero tolerances")]
    GapZone { quantity: &'static str, value: f64 },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("curve fails the frame check at t = {t} (residual {residual:.3e})")]
    PreFlightFailed { t: f64, residual: f64 },
    #[error("{value} is not a constant solution (residual {residual:.3e})")]
    NotASolution { value: f64, residual: f64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
