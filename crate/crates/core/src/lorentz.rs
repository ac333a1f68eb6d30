//! Lorentz–Minkowski 3-space with signature (−,+,+).

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::jet::Jet;

/// Scalars the vector algebra can run over: plain reals and jets.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + Mul<f64, Output = Self>
{
    fn from_f64(v: f64) -> Self;
}

impl Scalar for f64 {
    #[inline(always)]
    fn from_f64(v: f64) -> Self {
        v
    }
}

impl<const N: usize> Scalar for Jet<N> {
    #[inline(always)]
    fn from_f64(v: f64) -> Self {
        Jet::constant(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec3L<T = f64> {
    pub x1: T,
    pub x2: T,
    pub x3: T,
}

/// A vector whose components carry Taylor jets.
pub type JetVec<const N: usize> = Vec3L<Jet<N>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl<T: Scalar> Vec3L<T> {
    #[inline(always)]
    pub fn new(x1: T, x2: T, x3: T) -> Self {
        Self { x1, x2, x3 }
    }

    #[inline(always)]
    pub fn dot(&self, o: &Self) -> T {
        -(self.x1 * o.x1) + self.x2 * o.x2 + self.x3 * o.x3
    }

    #[inline(always)]
    pub fn wedge(&self, o: &Self) -> Self {
        Self {
            x1: -(self.x2 * o.x3 - self.x3 * o.x2),
            x2: -(self.x1 * o.x3 - self.x3 * o.x1),
            x3: self.x1 * o.x2 - self.x2 * o.x1,
        }
    }

    #[inline(always)]
    pub fn scale(&self, s: T) -> Self {
        Self::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }

    #[inline(always)]
    pub fn scale_f(&self, s: f64) -> Self {
        Self::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> Vec3L<U> {
        Vec3L { x1: f(self.x1), x2: f(self.x2), x3: f(self.x3) }
    }
}

impl<T: Scalar> Add for Vec3L<T> {
    type Output = Self;
    #[inline(always)]
    fn add(self, o: Self) -> Self {
        Self::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl<T: Scalar> Sub for Vec3L<T> {
    type Output = Self;
    #[inline(always)]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl<T: Scalar> Neg for Vec3L<T> {
    type Output = Self;
    #[inline(always)]
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2, -self.x3)
    }
}

impl<T: Scalar> Mul<f64> for Vec3L<T> {
    type Output = Self;
    #[inline(always)]
    fn mul(self, s: f64) -> Self {
        self.scale_f(s)
    }
}

/// ⟨a,b⟩ = −a₁b₁ + a₂b₂ + a₃b₃.
pub fn pseudo_dot<T: Scalar>(a: &Vec3L<T>, b: &Vec3L<T>) -> T {
    a.dot(b)
}

/// Pseudo vector product; ⟨x, a∧b⟩ = det(x, a, b).
pub fn pseudo_wedge<T: Scalar>(a: &Vec3L<T>, b: &Vec3L<T>) -> Vec3L<T> {
    a.wedge(b)
}

impl Vec3L<f64> {
    pub const E1: Self = Self { x1: 1.0, x2: 0.0, x3: 0.0 };
    pub const E2: Self = Self { x1: 0.0, x2: 1.0, x3: 0.0 };
    pub const E3: Self = Self { x1: 0.0, x2: 0.0, x3: 1.0 };

    pub fn to_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Euclidean norm of the components.
    pub fn norm_e(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn dot_e(&self, o: &Self) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    pub fn max_abs(&self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    /// |⟨x,x⟩ + 1| relative to the size of the coordinates.
    pub fn h2_residual(&self) -> f64 {
        (self.dot(self) + 1.0).abs() / self.norm_e().powi(2).max(1.0)
    }

    pub fn on_h2(&self, tol: f64) -> bool {
        self.x1 > 0.0 && self.h2_residual() <= tol
    }

    pub fn on_s12(&self, tol: f64) -> bool {
        (self.dot(self) - 1.0).abs() <= tol * self.norm_e().powi(2).max(1.0)
    }

    pub fn causal_character(&self, eps: f64) -> Result<CausalCharacter> {
        causal_character(self, eps)
    }

    pub fn poincare(&self) -> Result<(f64, f64)> {
        poincare_project(self)
    }
}

/// Euclidean determinant of the matrix with rows `a`, `b`, `c`.
pub fn det(a: &Vec3L, b: &Vec3L, c: &Vec3L) -> f64 {
    a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1)
        + a.x3 * (b.x1 * c.x2 - b.x2 * c.x1)
}

pub fn causal_character(a: &Vec3L, eps: f64) -> Result<CausalCharacter> {
    if a.x1 == 0.0 && a.x2 == 0.0 && a.x3 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let q = a.dot(a);
    Ok(if q.abs() <= eps {
        CausalCharacter::Lightlike
    } else if q > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    })
}

/// Membership tolerance for points handed to the projection.
pub const H2_TOL: f64 = 1e-9;

/// Poincaré disk coordinates (y/(x+1), z/(x+1)) of a point on the upper sheet.
pub fn poincare_project(x: &Vec3L) -> Result<(f64, f64)> {
    if !x.on_h2(H2_TOL) {
        return Err(Error::NotOnH2 { residual: x.h2_residual() });
    }
    let d = x.x1 + 1.0;
    Ok((x.x2 / d, x.x3 / d))
}

impl<const N: usize> JetVec<N> {
    pub fn constant(v: Vec3L) -> Self {
        v.map(Jet::constant)
    }

    pub fn value(&self) -> Vec3L {
        self.map(|j| j.value())
    }

    /// The `k`-th derivative vector.
    pub fn d(&self, k: usize) -> Vec3L {
        self.map(|j| j.d(k))
    }

    pub fn diff(&self) -> Self {
        self.map(|j| j.diff())
    }

    pub fn resize<const M: usize>(&self) -> JetVec<M> {
        self.map(|j| j.resize::<M>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature() {
        assert_eq!(Vec3L::E1.dot(&Vec3L::E1), -1.0);
        assert_eq!(Vec3L::E2.dot(&Vec3L::E2), 1.0);
        let d = Vec3L::new(1.0, 1.0, 0.0);
        assert_eq!(d.dot(&d), 0.0);
    }

    #[test]
    fn wedge_basis() {
        assert_eq!(Vec3L::E1.wedge(&Vec3L::E2), Vec3L::E3);
        assert_eq!(Vec3L::E2.wedge(&Vec3L::E3), Vec3L::new(-1.0, 0.0, 0.0));
        assert_eq!(Vec3L::E1.wedge(&Vec3L::new(0.0, -1.0, 0.0)), Vec3L::new(0.0, 0.0, -1.0));
    }

    #[test]
    fn causal() {
        let eps = 1e-10;
        assert_eq!(causal_character(&Vec3L::E1, eps).unwrap(), CausalCharacter::Timelike);
        assert_eq!(causal_character(&Vec3L::E3, eps).unwrap(), CausalCharacter::Spacelike);
        let l = Vec3L::new(1.0, 1.0, 0.0);
        assert_eq!(causal_character(&l, eps).unwrap(), CausalCharacter::Lightlike);
        assert_eq!(causal_character(&Vec3L::default(), eps), Err(Error::ZeroVector));
    }

    #[test]
    fn projection() {
        assert_eq!(poincare_project(&Vec3L::E1).unwrap(), (0.0, 0.0));
        let (a, b) = poincare_project(&Vec3L::new(2f64.sqrt(), 1.0, 0.0)).unwrap();
        assert!((a - 1.0 / (1.0 + 2f64.sqrt())).abs() < 1e-15 && b == 0.0);
        let (a, b) = poincare_project(&Vec3L::new(1.5, 0.5, -1.0)).unwrap();
        assert!((a - 0.2).abs() < 1e-15 && (b + 0.4).abs() < 1e-15);
        assert!(matches!(poincare_project(&Vec3L::new(2.0, 1.0, 1.0)), Err(Error::NotOnH2 { .. })));
        assert!(poincare_project(&Vec3L::new(-1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn jet_vectors_follow_product_rule() {
        let t = Jet::<4>::variable(0.3);
        let a = Vec3L::new(t.cosh(), t.sinh(), Jet::constant(0.0));
        let q = a.dot(&a);
        assert!((q.value() + 1.0).abs() < 1e-15);
        assert!(q.d(1).abs() < 1e-14 && q.d(2).abs() < 1e-14);
    }
}
