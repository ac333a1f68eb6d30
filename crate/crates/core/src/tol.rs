/// Numerical policies shared across the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// |⟨a,a⟩| at or below this is lightlike.
    pub causal: f64,
    /// Frame invariant tolerance; evaluation fails at 100 times this.
    pub frame: f64,
    /// Speed below which a point counts as singular.
    pub regular: f64,
    /// |n| at or below this switches f to the L'Hôpital branch.
    pub inflect: f64,
    /// "= 0" in the cusp criteria.
    pub zero: f64,
    /// "≠ 0" in the cusp criteria.
    pub nonzero: f64,
    /// Relative residual accepted for the collinearity fit in the (2,5) test.
    pub collinear: f64,
    /// Magnitude at which an offset solution counts as blown up.
    pub blowup: f64,
    /// Closed-form denominators below this truncate validity.
    pub denominator: f64,
    /// Agreement required between the two branches of f.
    pub stitch: f64,
    /// |(s∓1)(n∓m)| below this makes the tangent family degenerate.
    pub degenerate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            causal: 1e-10,
            frame: 1e-9,
            regular: 1e-10,
            inflect: 1e-8,
            zero: 1e-9,
            nonzero: 1e-6,
            collinear: 1e-7,
            blowup: 1e6,
            denominator: 1e-8,
            stitch: 1e-6,
            degenerate: 1e-10,
        }
    }
}
