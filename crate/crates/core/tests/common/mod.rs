#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tangent_finsler::algebras;
use tangent_finsler::finsler::{AlphaBetaStructure, PhiFamily};
use tangent_finsler::lie::{AlgVector, LieAlgebra, MetricTensor};
use tangent_finsler::{MetricLieAlgebra, Tolerances};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(c: &[f64]) -> AlgVector {
    AlgVector::new(c.to_vec())
}

pub fn space(alg: LieAlgebra, metric: MetricTensor) -> MetricLieAlgebra {
    MetricLieAlgebra::new(alg, metric, &Tolerances::DEFAULT).unwrap()
}

pub fn structure(alg: LieAlgebra, metric: MetricTensor, drift: AlgVector, phi: PhiFamily) -> AlphaBetaStructure {
    AlphaBetaStructure::new(space(alg, metric), drift, phi, Tolerances::DEFAULT).unwrap()
}

pub fn identity_structure(alg: LieAlgebra, drift: &[f64], phi: PhiFamily) -> AlphaBetaStructure {
    let n = alg.dim();
    structure(alg, MetricTensor::identity(n), v(drift), phi)
}

/// `h3 ⊕ R` with `g = diag(g₃, c)` and drift along the central `e4`.
pub fn h3r_berwald(metric3: Option<&MetricTensor>, c: f64, x4: f64, phi: PhiFamily) -> AlphaBetaStructure {
    let mut rows = vec![0.0; 16];
    for i in 0..3 {
        for j in 0..3 {
            rows[i * 4 + j] = metric3.map_or(if i == j { 1.0 } else { 0.0 }, |m| m.entry(i, j));
        }
    }
    rows[15] = c;
    let g = MetricTensor::new(4, &rows, 1e-10).unwrap();
    structure(algebras::heisenberg3_plus_r(), g, v(&[0.0, 0.0, 0.0, x4]), phi)
}

/// Base algebras used by the sweeps.
pub fn sweep_algebras() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("abelian3", LieAlgebra::abelian(3)),
        ("heisenberg3", algebras::heisenberg3()),
        ("so3", algebras::so3()),
        ("sl2", algebras::sl2()),
        ("solvable3", algebras::semidirect(2, &[1.0, 0.7, 0.0, 2.0])),
        ("heisenberg3+r", algebras::heisenberg3_plus_r()),
    ]
}
