//! The two worked examples, with analytic jets.

use std::f64::consts::PI;

use super::{FrameJet, LegendreCurve, Provenance, JV};
use crate::domain::Interval;
use crate::jet::Jet5;
use crate::lorentz::Vec3L;

pub const EXAMPLE1: &str = "example1";
pub const EXAMPLE2: &str = "example2";

pub fn names() -> [&'static str; 2] {
    [EXAMPLE1, EXAMPLE2]
}

pub fn by_name(name: &str) -> Option<LegendreCurve> {
    match name {
        EXAMPLE1 => Some(example1()),
        EXAMPLE2 => Some(example2()),
        _ => None,
    }
}

/// Both examples are parametrized over one period.
pub fn period() -> Interval {
    Interval::left_open(-PI, PI)
}

/// γ = (1 + s²/2, s²/2, −s), ν = (s²/2, s²/2 − 1, −s) with s = sin t.
pub fn example1_frame(t: f64) -> FrameJet {
    let s = Jet5::variable(t).sin();
    let h = s * s * 0.5;
    let gamma = Vec3L::new(h + 1.0, h, -s);
    let nu = Vec3L::new(h, h - 1.0, -s);
    FrameJet::from_gamma_nu(gamma, nu)
}

/// A horocycle traversed back and forth; curvature (cos t, cos t).
pub fn example1() -> LegendreCurve {
    LegendreCurve::new(EXAMPLE1, Provenance::Builtin(EXAMPLE1.into()), period(), |t| Ok(example1_frame(t)))
}

/// Pieces of the second example, all as jets at one parameter value.
#[derive(Clone, Copy, Debug)]
pub struct Example2Parts {
    pub x0: JV,
    pub x1: JV,
    pub x2: JV,
    /// The Riccati solution whose involute is x0.
    pub g: Jet5,
    /// m + n.
    pub e: Jet5,
}

pub fn example2_parts(t: f64) -> Example2Parts {
    let (s, c) = Jet5::variable(t).sin_cos();
    let s2 = s * s;
    let c2 = c * c;
    let sc2 = s2 * c2;
    let one = Jet5::constant(1.0);
    let r = (one + c2 * c2 * c2 + s2 * s2 * s2).sqrt();
    let q = (one + sc2).sqrt();
    let qi = q.recip();
    let d = sc2 * sc2 * 3.0 + sc2 * 3.0 - 1.0 - s2 * s2 * s2 - c2 * c2 * c2;
    let x0 = Vec3L::new(r, c2 * c, s2 * s);
    let x1 = Vec3L::new(s * c * r, s * (one + c2 * c2), c * (one + s2 * s2)).scale(qi);
    let x2 = Vec3L::new(s2 - c2, -(c * r), s * r).scale(qi);
    let g = -(s * c * 3.0) * (one + sc2).powf(1.5) / d;
    let e = d / ((one + sc2) * r);
    Example2Parts { x0, x1, x2, g, e }
}

pub fn example2_frame(t: f64) -> FrameJet {
    let p = example2_parts(t);
    let g = p.g;
    let h = g * g * 0.5;
    let gamma = p.x0.scale(h + 1.0) + p.x1.scale(g) + p.x2.scale(h);
    let nu = p.x2.scale(1.0 - h) - p.x1.scale(g) - p.x0.scale(h);
    FrameJet::from_gamma_nu(gamma, nu)
}

/// The curve whose plus involute is the astroid-like x0.
pub fn example2() -> LegendreCurve {
    LegendreCurve::new(EXAMPLE2, Provenance::Builtin(EXAMPLE2.into()), period(), |t| Ok(example2_frame(t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(a: Vec3L, b: Vec3L, tol: f64) -> bool {
        (a - b).max_abs() < tol
    }

    #[test]
    fn example1_frames() {
        let f = example1().evaluate_frame(0.0).unwrap().value();
        assert!(near(f.gamma, Vec3L::E1, 1e-15));
        assert!(near(f.nu, Vec3L::new(0.0, -1.0, 0.0), 1e-15));
        assert!(near(f.mu, Vec3L::new(0.0, 0.0, -1.0), 1e-15));
        let f = example1().evaluate_frame(PI / 2.0).unwrap().value();
        assert!(near(f.gamma, Vec3L::new(1.5, 0.5, -1.0), 1e-15));
        assert!(near(f.nu, Vec3L::new(0.5, -0.5, -1.0), 1e-15));
        assert!(near(f.mu, Vec3L::new(1.0, 1.0, -1.0), 1e-15));
    }

    #[test]
    fn example1_curvature_is_cosine() {
        let mn = example1().curvature();
        for t in [-3.0f64, -1.0, 0.0, 0.5, 2.0] {
            let (m, n) = mn.at(t).unwrap();
            for k in 0..4 {
                let want = [t.cos(), -t.sin(), -t.cos(), t.sin()][k];
                assert!((m.d(k) - want).abs() < 1e-13 && (n.d(k) - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn example2_at_zero() {
        let f = example2().evaluate_frame(0.0).unwrap().value();
        assert!(near(f.gamma, Vec3L::new(2f64.sqrt(), 1.0, 0.0), 1e-15));
        let (m, n) = example2().curvature().values(0.0).unwrap();
        assert!((m + 1.5).abs() < 1e-13);
        assert!((m + n + 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn example2_basis_is_orthonormal() {
        for t in [-2.5, -0.3, 0.0, 0.9, 3.0] {
            let p = example2_parts(t);
            let (a, b, c) = (p.x0.value(), p.x1.value(), p.x2.value());
            assert!((a.dot(&a) + 1.0).abs() < 1e-14);
            assert!((b.dot(&b) - 1.0).abs() < 1e-14);
            assert!(a.dot(&b).abs() < 1e-14);
            assert!(near(a.wedge(&b), c, 1e-14));
        }
    }
}
