//! Left-invariant (α,β)-metrics `F = α φ(β/α)` and their lifts `F^c`, `F^v`.
//!
//! β is carried by its metric dual, the drift `X`, so `β(y) = g(X, y)`. On
//! the tangent algebra the drifts are `X^c` and `X^v` and α is the block
//! metric `g̃ = diag(g, g)`.

mod classify;
mod phi;

use alloc::format;

pub use classify::{classify_base, classify_fc, classify_fv, Classification, DouglasReason, Witness};
pub use phi::{validity_for_norm, PhiFamily, PhiKind, ScalarFn, ValidityReport};

use crate::connection::{MetricGeometry, MetricLieAlgebra};
use crate::lie::{AlgVector, MetricTensor};
use crate::lift::{tangent_algebra, Lift, LiftedVector, TangentMetricLieAlgebra};
use crate::{Error, Result, Tolerances};

/// Relative step of the fundamental-tensor stencil.
pub const FD_STEP: f64 = 1e-3;

/// Left-invariant (α,β)-metric on a Lie group, with its tangent lift.
#[derive(Debug, Clone)]
pub struct AlphaBetaStructure {
    lifted: TangentMetricLieAlgebra,
    drift: AlgVector,
    phi: PhiFamily,
    tol: Tolerances,
}

impl AlphaBetaStructure {
    /// Fails with [`Error::NormBound`] when `‖X‖_g ≥ b₀`.
    pub fn new(space: MetricLieAlgebra, drift: AlgVector, phi: PhiFamily, tol: Tolerances) -> Result<Self> {
        drift.check_dim(space.dim())?;
        if drift.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(Error::UndefinedMetric("drift must be finite".into()));
        }
        let norm = space.metric().norm(&drift);
        if let Some(b0) = phi.bound() {
            if !(norm < b0) {
                return Err(Error::NormBound { norm, bound: b0 });
            }
        }
        if phi.positive_only() && drift.is_zero() {
            return Err(Error::UndefinedMetric(format!(
                "{} metric needs a nonzero drift",
                phi::describe(&phi)
            )));
        }
        Ok(AlphaBetaStructure {
            lifted: tangent_algebra(&space),
            drift,
            phi,
            tol,
        })
    }

    pub fn geometry(&self) -> &MetricGeometry {
        self.lifted.base()
    }

    pub fn lifted(&self) -> &TangentMetricLieAlgebra {
        &self.lifted
    }

    pub fn drift(&self) -> &AlgVector {
        &self.drift
    }

    pub fn phi(&self) -> &PhiFamily {
        &self.phi
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.drift.dim()
    }

    /// `‖X‖_g`, which equals `‖X^c‖` and `‖X^v‖` in the lifted metric.
    pub fn drift_norm(&self) -> f64 {
        self.geometry().metric().norm(&self.drift)
    }

    pub fn lifted_drift(&self, which: Lift) -> LiftedVector {
        LiftedVector::lift(&self.drift, which)
    }

    /// `F(y) = α(y) φ(g(X, y)/α(y))`.
    pub fn eval_f(&self, y: &AlgVector) -> Result<f64> {
        y.check_dim(self.dim())?;
        alpha_beta_norm(self.geometry().metric(), &self.drift, &self.phi, y)
    }

    /// `F^c(z)` or `F^v(z)`.
    pub fn eval_lifted_f(&self, which: Lift, z: &LiftedVector) -> Result<f64> {
        z.complete.check_dim(self.dim())?;
        z.vertical.check_dim(self.dim())?;
        alpha_beta_norm(
            self.lifted.tangent().metric(),
            &self.lifted_drift(which).flatten(),
            &self.phi,
            &z.flatten(),
        )
    }

    /// `g_y(u, v)` of `F`.
    pub fn fundamental_tensor(&self, y: &AlgVector, u: &AlgVector, v: &AlgVector) -> Result<f64> {
        u.check_dim(self.dim())?;
        v.check_dim(self.dim())?;
        fundamental_tensor(|w| self.eval_f(w), y, u, v, FD_STEP)
    }

    /// `g_z(u, v)` of `F^c` or `F^v`.
    pub fn lifted_fundamental_tensor(
        &self,
        which: Lift,
        z: &LiftedVector,
        u: &LiftedVector,
        v: &LiftedVector,
    ) -> Result<f64> {
        let metric = self.lifted.tangent().metric();
        let drift = self.lifted_drift(which).flatten();
        let (zf, uf, vf) = (z.flatten(), u.flatten(), v.flatten());
        uf.check_dim(zf.dim())?;
        vf.check_dim(zf.dim())?;
        fundamental_tensor(|w| alpha_beta_norm(metric, &drift, &self.phi, w), &zf, &uf, &vf, FD_STEP)
    }

    /// Samples the validity inequality for `b = ‖X‖_g`.
    pub fn validity_check(&self, samples: usize) -> ValidityReport {
        validity_for_norm(&self.phi, self.drift_norm(), samples)
    }
}

/// `α(y) φ(g(X, y)/α(y))` for an arbitrary metric and drift.
pub fn alpha_beta_norm(metric: &MetricTensor, drift: &AlgVector, phi: &PhiFamily, y: &AlgVector) -> Result<f64> {
    let alpha = metric.norm(y);
    if !(alpha > 0.0) {
        return Err(Error::ZeroVector);
    }
    let s = metric.inner(drift, y) / alpha;
    if !phi.is_defined_at(s) {
        return Err(Error::UndefinedMetric(format!(
            "{} profile is not defined at s = {s}",
            phi::describe(phi)
        )));
    }
    Ok(alpha * phi.phi(s))
}

/// `½ ∂²/∂s∂t F²(y + su + tv)` at `s = t = 0`.
///
/// Centred mixed difference with step `h = step · max(1, |y|)` and one
/// Richardson refinement `(4 D(h/2) − D(h))/3`.
pub fn fundamental_tensor<F>(norm: F, y: &AlgVector, u: &AlgVector, v: &AlgVector, step: f64) -> Result<f64>
where
    F: Fn(&AlgVector) -> Result<f64>,
{
    let h = step * libm::sqrt(y.dot(y)).max(1.0);
    let f2 = |a: f64, b: f64| -> Result<f64> {
        let w = &(y + &u.scaled(a)) + &v.scaled(b);
        let f = norm(&w)?;
        Ok(f * f)
    };
    let mixed = |h: f64| -> Result<f64> {
        Ok((f2(h, h)? - f2(h, -h)? - f2(-h, h)? + f2(-h, -h)?) / (4.0 * h * h))
    };
    let d = mixed(h)?;
    let d_half = mixed(0.5 * h)?;
    Ok(0.5 * (4.0 * d_half - d) / 3.0)
}
