//! Horocyclic evolutes, parallels and involutes of spacelike Legendre
//! curves in the hyperbolic plane, with cusp classification.

pub mod acceptance;
pub mod domain;
pub mod error;
pub mod expr;
pub mod jet;
pub mod horocycle;
pub mod legendre;
pub mod offsets;
pub mod ode;
pub mod lorentz;
pub mod par;
pub mod singularities;
pub mod tol;

pub use domain::Interval;
pub use error::{Error, Result};
pub use jet::{Jet, Jet4, Jet5};
pub use lorentz::{pseudo_dot, pseudo_wedge, Vec3L};
pub use offsets::{OffsetCurve, OffsetKind, OffsetSolution, SolutionKind, SolveOptions};
pub use tol::Tolerances;

/// Orientation choice shared by all ± formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline(always)]
    pub fn f(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (f.alternate(), self) {
            (true, Sign::Plus) => f.write_str("+"),
            (true, Sign::Minus) => f.write_str("-"),
            _ => f.write_str(self.name()),
        }
    }
}
