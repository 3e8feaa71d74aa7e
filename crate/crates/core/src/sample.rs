//! Seeded random metrics, vectors and flag planes.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::flag::{CaseTag, FlagPlane};
use crate::lie::{AlgVector, MetricTensor};
use crate::Result;

pub fn normal_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> AlgVector {
    AlgVector::new((0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
}

/// `A Aᵀ/n + ½ I` with standard-normal `A`; eigenvalues stay away from zero.
pub fn spd_metric<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> MetricTensor {
    let a: Vec<f64> = (0..dim * dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let mut rows = alloc::vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let dot: f64 = (0..dim).map(|k| a[i * dim + k] * a[j * dim + k]).sum();
            rows[i * dim + j] = dot / dim as f64 + if i == j { 0.5 } else { 0.0 };
        }
    }
    MetricTensor::new(dim, &rows, 1e-10).expect("shifted Gram matrix is positive definite")
}

/// Random direction scaled to `g`-norm `norm`.
pub fn vector_with_norm<R: Rng + ?Sized>(rng: &mut R, metric: &MetricTensor, norm: f64) -> AlgVector {
    loop {
        let v = normal_vector(rng, metric.dim());
        let n = metric.norm(&v);
        if n > 1e-6 {
            return v.scaled(norm / n);
        }
    }
}

/// Two standard-normal vectors orthonormalised under `g`.
pub fn plane<R: Rng + ?Sized>(rng: &mut R, metric: &MetricTensor, tag: CaseTag) -> FlagPlane {
    loop {
        let y = normal_vector(rng, metric.dim());
        let v = normal_vector(rng, metric.dim());
        if let Ok(p) = FlagPlane::orthonormalized(metric, tag, &y, &v, 1e-6) {
            return p;
        }
    }
}

/// As [`plane`], but with `g(X, Y) ≥ margin · ‖X‖` for the pole `Y`.
///
/// The pole is flipped when it points away from `X`; planes too close to
/// `ker β` are resampled.
pub fn plane_with_positive_pole<R: Rng + ?Sized>(
    rng: &mut R,
    metric: &MetricTensor,
    tag: CaseTag,
    drift: &AlgVector,
    margin: f64,
) -> Result<FlagPlane> {
    let bound = margin * metric.norm(drift);
    for _ in 0..10_000 {
        let p = plane(rng, metric, tag);
        let s = metric.inner(drift, p.base_pole());
        if s.abs() >= bound && s != 0.0 {
            let sign = if s > 0.0 { 1.0 } else { -1.0 };
            return FlagPlane::new(
                metric,
                tag,
                p.base_pole().scaled(sign),
                p.base_second().clone(),
                1e-9,
            );
        }
    }
    Err(crate::Error::Precondition("no pole found on the positive side of the drift".into()))
}
