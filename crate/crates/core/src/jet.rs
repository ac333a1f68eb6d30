//! Truncated Taylor arithmetic.
//!
//! A `Jet<N>` stores the first `N` Taylor coefficients `f^(k)(t)/k!` of a
//! function at a point. Coefficients beyond the order an operation can
//! deliver are NaN, so lost orders stay visible instead of turning into
//! plausible-looking zeros.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

const FACT: [f64; 9] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    c: [f64; N],
}

/// Value plus derivatives up to order 4.
pub type Jet4 = Jet<5>;
/// Value plus derivatives up to order 5; the working precision for frames.
pub type Jet5 = Jet<6>;

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Self { c }
    }

    /// The identity function sampled at `t`.
    pub fn variable(t: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = t;
        if N > 1 {
            c[1] = 1.0;
        }
        Self { c }
    }

    pub fn from_coeffs(c: [f64; N]) -> Self {
        Self { c }
    }

    /// Builds a jet from derivatives `[f, f', f'', ...]`.
    pub fn from_derivs(d: [f64; N]) -> Self {
        let mut c = d;
        for (k, v) in c.iter_mut().enumerate() {
            *v /= FACT[k];
        }
        Self { c }
    }

    pub fn coeffs(&self) -> &[f64; N] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.c[k]
    }

    #[inline(always)]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// The `k`-th derivative.
    #[inline(always)]
    pub fn d(&self, k: usize) -> f64 {
        self.c[k] * FACT[k]
    }

    pub fn derivs(&self) -> [f64; N] {
        let mut d = self.c;
        for (k, v) in d.iter_mut().enumerate() {
            *v *= FACT[k];
        }
        d
    }

    /// Number of leading finite coefficients.
    pub fn valid_len(&self) -> usize {
        self.c.iter().take_while(|v| v.is_finite()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.c[0].is_finite()
    }

    /// Derivative of the underlying function; the top coefficient becomes NaN.
    pub fn diff(&self) -> Self {
        let mut c = [f64::NAN; N];
        for k in 0..N - 1 {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self { c }
    }

    /// Antiderivative with value `c0`; the top input coefficient is dropped.
    pub fn integral(&self, c0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = c0;
        for k in 1..N {
            c[k] = self.c[k - 1] / k as f64;
        }
        Self { c }
    }

    /// `(f(t+h) - f(t)) / h` as a jet in `h`; used to divide out a simple zero.
    pub fn shift(&self) -> Self {
        let mut c = [f64::NAN; N];
        c[..N - 1].copy_from_slice(&self.c[1..]);
        Self { c }
    }

    /// Evaluates the Taylor polynomial at offset `h`, using the finite coefficients.
    pub fn taylor(&self, h: f64) -> f64 {
        let n = self.valid_len();
        self.c[..n].iter().rev().fold(0.0, |acc, &v| acc * h + v)
    }

    /// Re-expands the Taylor polynomial about `t + h`.
    pub fn recenter(&self, h: f64) -> Self {
        let n = self.valid_len();
        let mut c = [f64::NAN; N];
        for (k, out) in c.iter_mut().enumerate().take(n) {
            let mut acc = 0.0;
            let mut binom = 1.0;
            let mut hp = 1.0;
            for j in k..n {
                acc += binom * self.c[j] * hp;
                binom = binom * (j + 1) as f64 / (j + 1 - k) as f64;
                hp *= h;
            }
            *out = acc;
        }
        Self { c }
    }

    /// Copies into a jet of another length, padding with NaN.
    pub fn resize<const M: usize>(&self) -> Jet<M> {
        let mut c = [f64::NAN; M];
        for (k, v) in c.iter_mut().enumerate().take(N.min(M)) {
            *v = self.c[k];
        }
        Jet { c }
    }

    pub fn recip(&self) -> Self {
        Self::constant(1.0) / *self
    }

    pub fn sqr(&self) -> Self {
        *self * *self
    }

    pub fn exp(&self) -> Self {
        let a = &self.c;
        let mut e = [0.0; N];
        e[0] = a[0].exp();
        for k in 1..N {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * a[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Self { c: e }
    }

    /// Natural logarithm; the caller checks positivity.
    pub fn ln(&self) -> Self {
        let a = &self.c;
        let mut l = [0.0; N];
        l[0] = a[0].ln();
        for k in 1..N {
            let mut s = 0.0;
            for j in 1..k {
                s += j as f64 * l[j] * a[k - j];
            }
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Self { c: l }
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.c;
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        (s[0], c[0]) = a[0].sin_cos();
        for k in 1..N {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                let w = j as f64 * a[j];
                ss += w * c[k - j];
                cc += w * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = -cc / k as f64;
        }
        (Self { c: s }, Self { c })
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn tan(&self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }

    pub fn sinh_cosh(&self) -> (Self, Self) {
        let a = &self.c;
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        s[0] = a[0].sinh();
        c[0] = a[0].cosh();
        for k in 1..N {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                let w = j as f64 * a[j];
                ss += w * c[k - j];
                cc += w * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (Self { c: s }, Self { c })
    }

    pub fn sinh(&self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    pub fn tanh(&self) -> Self {
        let (s, c) = self.sinh_cosh();
        s / c
    }

    pub fn atan(&self) -> Self {
        let q = self.diff() / (Self::constant(1.0) + self.sqr());
        q.integral(self.c[0].atan())
    }

    /// Real power with constant exponent; needs a positive base unless `r` is integral.
    pub fn powf(&self, r: f64) -> Self {
        if r.fract() == 0.0 && r.abs() <= 64.0 {
            return self.powi(r as i32);
        }
        let a = &self.c;
        let mut y = [0.0; N];
        y[0] = a[0].powf(r);
        for k in 1..N {
            let mut s = 0.0;
            for j in 1..=k {
                s += (r * j as f64 - (k - j) as f64) * a[j] * y[k - j];
            }
            y[k] = s / (k as f64 * a[0]);
        }
        Self { c: y }
    }

    pub fn powi(&self, n: i32) -> Self {
        let mut base = *self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::constant(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }
}

/// Solves `y' = rhs(y)` in Taylor mode from `y(t) = y0`.
///
/// Each pass fixes one more coefficient; `rhs` sees NaN in the orders not
/// yet known, and causality of the jet operations keeps them out of the
/// coefficient being read.
pub fn taylor_ode<const N: usize, const D: usize>(
    y0: [f64; D],
    rhs: impl Fn(&[Jet<N>; D]) -> [Jet<N>; D],
) -> [Jet<N>; D] {
    let mut c = [[f64::NAN; N]; D];
    for d in 0..D {
        c[d][0] = y0[d];
    }
    for k in 0..N - 1 {
        let y = c.map(Jet::from_coeffs);
        let r = rhs(&y);
        for d in 0..D {
            c[d][k + 1] = r[d].c[k] / (k + 1) as f64;
        }
    }
    c.map(Jet::from_coeffs)
}

impl<const N: usize> Default for Jet<N> {
    fn default() -> Self {
        Self::constant(0.0)
    }
}

impl<const N: usize> From<f64> for Jet<N> {
    fn from(v: f64) -> Self {
        Self::constant(v)
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    #[inline(always)]
    fn add(mut self, o: Self) -> Self {
        for k in 0..N {
            self.c[k] += o.c[k];
        }
        self
    }
}

impl<const N: usize> AddAssign for Jet<N> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    #[inline(always)]
    fn sub(mut self, o: Self) -> Self {
        for k in 0..N {
            self.c[k] -= o.c[k];
        }
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    #[inline(always)]
    fn neg(mut self) -> Self {
        for v in &mut self.c {
            *v = -*v;
        }
        self
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    #[inline(always)]
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for k in 0..N {
            let mut s = 0.0;
            for j in 0..=k {
                s += self.c[j] * o.c[k - j];
            }
            c[k] = s;
        }
        Self { c }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let mut q = [0.0; N];
        for k in 0..N {
            let mut s = self.c[k];
            for j in 1..=k {
                s -= o.c[j] * q[k - j];
            }
            q[k] = s / o.c[0];
        }
        Self { c: q }
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, v: f64) -> Self {
        self.c[0] += v;
        self
    }
}

impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    fn sub(mut self, v: f64) -> Self {
        self.c[0] -= v;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    #[inline(always)]
    fn mul(mut self, v: f64) -> Self {
        for x in &mut self.c {
            *x *= v;
        }
        self
    }
}

impl<const N: usize> Div<f64> for Jet<N> {
    type Output = Self;
    fn div(self, v: f64) -> Self {
        self * (1.0 / v)
    }
}

impl<const N: usize> Add<Jet<N>> for f64 {
    type Output = Jet<N>;
    fn add(self, j: Jet<N>) -> Jet<N> {
        j + self
    }
}

impl<const N: usize> Sub<Jet<N>> for f64 {
    type Output = Jet<N>;
    fn sub(self, j: Jet<N>) -> Jet<N> {
        -j + self
    }
}

impl<const N: usize> Mul<Jet<N>> for f64 {
    type Output = Jet<N>;
    fn mul(self, j: Jet<N>) -> Jet<N> {
        j * self
    }
}

impl<const N: usize> Div<Jet<N>> for f64 {
    type Output = Jet<N>;
    fn div(self, j: Jet<N>) -> Jet<N> {
        Jet::constant(self) / j
    }
}
