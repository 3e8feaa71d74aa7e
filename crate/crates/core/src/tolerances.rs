/// Numerical thresholds shared by every module.
///
/// Residuals that vanish in exact arithmetic are compared against these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Antisymmetry and Jacobi residuals of structure constants.
    pub alg: f64,
    /// Smallest admissible eigenvalue of a metric.
    pub pd: f64,
    /// Singular-value threshold for ranks and null spaces.
    pub rank: f64,
    /// Gram determinant / orthonormality threshold for planes.
    pub plane: f64,
    /// Residual threshold for Berwald and Douglas criteria.
    pub class: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        alg: 1e-10,
        pd: 1e-10,
        rank: 1e-8,
        plane: 1e-10,
        class: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
