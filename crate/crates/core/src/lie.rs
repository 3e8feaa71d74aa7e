//! Finite-dimensional real Lie algebras given by structure constants.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::linalg;
use crate::{Error, Result};

/// Coordinates of a Lie-algebra element in the fixed basis `e_1, …, e_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgVector(Vec<f64>);

impl AlgVector {
    pub fn new(coeffs: Vec<f64>) -> Self {
        AlgVector(coeffs)
    }

    pub fn zeros(dim: usize) -> Self {
        AlgVector(vec![0.0; dim])
    }

    /// The basis vector `e_{index+1}` (zero-based index).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[index] = 1.0;
        AlgVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.0
    }

    pub fn scaled(&self, factor: f64) -> AlgVector {
        AlgVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean coefficient dot product (not the metric).
    pub fn dot(&self, other: &AlgVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0.0)
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl From<Vec<f64>> for AlgVector {
    fn from(v: Vec<f64>) -> Self {
        AlgVector(v)
    }
}

impl Index<usize> for AlgVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &AlgVector {
    type Output = AlgVector;
    fn add(self, rhs: &AlgVector) -> AlgVector {
        AlgVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AlgVector {
    type Output = AlgVector;
    fn sub(self, rhs: &AlgVector) -> AlgVector {
        AlgVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for AlgVector {
    type Output = AlgVector;
    fn add(self, rhs: AlgVector) -> AlgVector {
        &self + &rhs
    }
}

impl Sub for AlgVector {
    type Output = AlgVector;
    fn sub(self, rhs: AlgVector) -> AlgVector {
        &self - &rhs
    }
}

impl Neg for &AlgVector {
    type Output = AlgVector;
    fn neg(self) -> AlgVector {
        self.scaled(-1.0)
    }
}

impl Mul<&AlgVector> for f64 {
    type Output = AlgVector;
    fn mul(self, rhs: &AlgVector) -> AlgVector {
        rhs.scaled(self)
    }
}

/// Outcome of [`LieAlgebra::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub antisymmetry_residual: f64,
    pub jacobi_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// A real Lie algebra stored as dense structure constants
/// `[e_i, e_j] = Σ_k C[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    structure: Vec<f64>,
}

impl LieAlgebra {
    /// Wraps a dense `dim³` array laid out as `C[(i*dim + j)*dim + k]`.
    ///
    /// Antisymmetry and Jacobi are not enforced here; see [`validate`](Self::validate).
    pub fn new(dim: usize, structure: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Algebra("dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim * dim,
                found: structure.len(),
            });
        }
        Ok(LieAlgebra { dim, structure })
    }

    /// Builds an algebra from nonzero brackets `(i, j, k, c)` meaning the
    /// `e_k` component of `[e_i, e_j]` is `c` (zero-based indices). The
    /// antisymmetric counterpart is filled in.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let mut alg = LieAlgebra::new(dim, vec![0.0; dim * dim * dim])?;
        for &(i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Algebra(format!(
                    "bracket index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if i == j {
                if c != 0.0 {
                    return Err(Error::Algebra(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let a = alg.idx(i, j, k);
            let b = alg.idx(j, i, k);
            alg.structure[a] = c;
            alg.structure[b] = -c;
        }
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            structure: vec![0.0; dim * dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// Structure constant `C[i][j][k]`.
    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.structure[self.idx(i, j, k)]
    }

    pub fn structure(&self) -> &[f64] {
        &self.structure
    }

    /// Nonzero constants with `i < j`, in index order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, usize, f64)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if c != 0.0 {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &AlgVector, y: &AlgVector) -> Result<AlgVector> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        Ok(self.br(x, y))
    }

    pub(crate) fn br(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let xi = x.0[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = xi * y.0[j];
                if w == 0.0 {
                    continue;
                }
                let base = self.idx(i, j, 0);
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.structure[base + k];
                }
            }
        }
        AlgVector(out)
    }

    /// Matrix of `ad_x` acting on coordinates: column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &AlgVector) -> DMatrix<f64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |k, j| {
            (0..n).map(|i| x.0[i] * self.constant(i, j, k)).sum()
        })
    }

    /// Max antisymmetry and Jacobi residuals; passes iff both are `<= tol`.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let n = self.dim;
        let mut anti: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    anti = anti.max((self.constant(i, j, k) + self.constant(j, i, k)).abs());
                }
            }
        }
        // Σ_m C[i][j][m] C[m][l][k] + C[j][l][m] C[m][i][k] + C[l][i][m] C[m][j][k]
        let mut jac: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += self.constant(i, j, m) * self.constant(m, l, k)
                                + self.constant(j, l, m) * self.constant(m, i, k)
                                + self.constant(l, i, m) * self.constant(m, j, k);
                        }
                        jac = jac.max(s.abs());
                    }
                }
            }
        }
        ValidationReport {
            antisymmetry_residual: anti,
            jacobi_residual: jac,
            tolerance: tol,
            passed: anti <= tol && jac <= tol,
        }
    }

    /// Metric adjoint `ad*_x y`, characterised by `g(ad*_x y, z) = g(y, [x, z])`.
    pub fn ad_star(&self, metric: &MetricTensor, x: &AlgVector, y: &AlgVector) -> Result<AlgVector> {
        metric.check_dim(self.dim)?;
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        Ok(self.ad_star_unchecked(metric, x, y))
    }

    pub(crate) fn ad_star_unchecked(&self, metric: &MetricTensor, x: &AlgVector, y: &AlgVector) -> AlgVector {
        let n = self.dim;
        let gy = metric.lower(y);
        // rhs_z = g(y, [x, e_z]) = Σ_k (g y)_k (ad_x)_{k z}
        let rhs: Vec<f64> = (0..n)
            .map(|z| {
                (0..n)
                    .map(|k| {
                        let adk: f64 = (0..n).map(|i| x.0[i] * self.constant(i, z, k)).sum();
                        gy.0[k] * adk
                    })
                    .sum()
            })
            .collect();
        metric.raise(&AlgVector(rhs))
    }

    /// Bases of the derived algebra `[g, g]` and of the center `z(g)`.
    ///
    /// Both bases are Euclidean-orthonormal in coefficient space; ranks use
    /// the singular-value threshold `tol_rank`.
    pub fn derived_and_center(&self, tol_rank: f64) -> DerivedAndCenter {
        let n = self.dim;
        let pairs = n * (n.saturating_sub(1)) / 2;
        let mut brackets = DMatrix::zeros(n, pairs.max(1));
        let mut col = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    brackets[(k, col)] = self.constant(i, j, k);
                }
                col += 1;
            }
        }
        let derived = linalg::column_space(&brackets, tol_rank)
            .into_iter()
            .map(AlgVector)
            .collect();

        // x ↦ ([x, e_1], …, [x, e_n]) stacked into an n² × n matrix
        let stacked = DMatrix::from_fn(n * n, n, |row, i| {
            let (j, k) = (row / n, row % n);
            self.constant(i, j, k)
        });
        let center = linalg::null_space(&stacked, tol_rank)
            .into_iter()
            .map(AlgVector)
            .collect();
        DerivedAndCenter { derived, center }
    }
}

/// Output of [`LieAlgebra::derived_and_center`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedAndCenter {
    pub derived: Vec<AlgVector>,
    pub center: Vec<AlgVector>,
}

/// Symmetric positive-definite inner product on the algebra.
#[derive(Debug, Clone)]
pub struct MetricTensor {
    g: DMatrix<f64>,
    chol: Cholesky<f64, Dyn>,
    min_eigenvalue: f64,
}

impl PartialEq for MetricTensor {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g
    }
}

impl MetricTensor {
    /// Builds a metric from a row-major `dim × dim` array.
    ///
    /// Asymmetry above `1e-12` relative to the largest entry is rejected;
    /// smaller noise is symmetrised away so that `g = gᵀ` holds exactly.
    pub fn new(dim: usize, rows: &[f64], tol_pd: f64) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                found: rows.len(),
            });
        }
        let raw = DMatrix::from_row_slice(dim, dim, rows);
        let scale = raw.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let asym = (&raw - raw.transpose()).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if asym > 1e-12 * scale || rows.iter().any(|v| !v.is_finite()) {
            return Err(Error::MetricNotSymmetric { asymmetry: asym });
        }
        let g = (&raw + raw.transpose()) * 0.5;
        Self::from_symmetric(g, tol_pd)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_symmetric(DMatrix::identity(dim, dim), 0.0).expect("identity is SPD")
    }

    fn from_symmetric(g: DMatrix<f64>, tol_pd: f64) -> Result<Self> {
        let min_eigenvalue = linalg::symmetric_eigenvalues(&g)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if !(min_eigenvalue > tol_pd) {
            return Err(Error::MetricNotPositiveDefinite {
                min_eigenvalue,
                threshold: tol_pd,
            });
        }
        let chol = g.clone().cholesky().ok_or(Error::MetricNotPositiveDefinite {
            min_eigenvalue,
            threshold: tol_pd,
        })?;
        Ok(MetricTensor {
            g,
            chol,
            min_eigenvalue,
        })
    }

    /// Block-diagonal metric `diag(self, other)`.
    pub(crate) fn block_diagonal(&self, other: &MetricTensor) -> MetricTensor {
        let (n, m) = (self.dim(), other.dim());
        let mut g = DMatrix::zeros(n + m, n + m);
        g.view_mut((0, 0), (n, n)).copy_from(&self.g);
        g.view_mut((n, n), (m, m)).copy_from(&other.g);
        Self::from_symmetric(g, 0.0).expect("block sum of SPD metrics is SPD")
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.g[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// Row-major entries.
    pub fn to_rows(&self) -> Vec<f64> {
        let n = self.dim();
        (0..n * n).map(|r| self.g[(r / n, r % n)]).collect()
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// `g(x, y)`. Panics if the lengths differ from the metric dimension.
    pub fn inner(&self, x: &AlgVector, y: &AlgVector) -> f64 {
        let n = self.dim();
        assert!(x.dim() == n && y.dim() == n, "vector length does not match metric");
        let mut s = 0.0;
        for i in 0..n {
            let xi = x.0[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..n {
                s += xi * self.g[(i, j)] * y.0[j];
            }
        }
        s
    }

    pub fn norm(&self, x: &AlgVector) -> f64 {
        let q = self.inner(x, x);
        // clamp rounding below zero without swallowing NaN
        libm::sqrt(if q < 0.0 { 0.0 } else { q })
    }

    /// `g x` (index lowering).
    pub fn lower(&self, x: &AlgVector) -> AlgVector {
        let v = &self.g * DVector::from_column_slice(&x.0);
        AlgVector(v.iter().copied().collect())
    }

    /// `g⁻¹ x` via the Cholesky factor.
    pub fn raise(&self, x: &AlgVector) -> AlgVector {
        let v = self.chol.solve(&DVector::from_column_slice(&x.0));
        AlgVector(v.iter().copied().collect())
    }

    /// `x` with its component along the unit-normalised `y` removed.
    pub(crate) fn reject(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        let c = self.inner(x, y) / self.inner(y, y);
        x - &y.scaled(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;

    fn e(n: usize, i: usize) -> AlgVector {
        AlgVector::basis(n, i)
    }

    #[test]
    fn heisenberg_bracket_reads_off_constants() {
        let h3 = algebras::heisenberg3();
        assert_eq!(h3.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert_eq!(h3.bracket(&e(3, 1), &e(3, 0)).unwrap(), e(3, 2).scaled(-1.0));
    }

    #[test]
    fn self_bracket_vanishes() {
        let so3 = algebras::so3();
        let x = AlgVector::new(vec![0.3, -1.2, 2.0]);
        assert!(so3.bracket(&x, &x).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn abelian_brackets_vanish() {
        let a = LieAlgebra::abelian(3);
        assert!(a.bracket(&e(3, 0), &e(3, 1)).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let h3 = algebras::heisenberg3();
        let err = h3.bracket(&e(2, 0), &e(3, 1)).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 3, found: 2 });
    }

    #[test]
    fn validate_presets() {
        for alg in [algebras::heisenberg3(), algebras::so3(), LieAlgebra::abelian(3)] {
            let r = alg.validate(1e-10);
            assert!(r.passed);
            assert_eq!(r.jacobi_residual, 0.0);
            assert_eq!(r.antisymmetry_residual, 0.0);
        }
    }

    #[test]
    fn validate_reports_broken_antisymmetry() {
        let mut c = vec![0.0; 27];
        c[5] = 1.0; // [e1, e2] on e3
        c[11] = -0.5; // [e2, e1] on e3
        let alg = LieAlgebra::new(3, c).unwrap();
        let r = alg.validate(1e-10);
        assert!(!r.passed);
        assert!((r.antisymmetry_residual - 0.5).abs() < 1e-15);
    }

    #[test]
    fn validate_reports_jacobi_failure() {
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 is antisymmetric but not Lie
        let alg = LieAlgebra::from_brackets(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 0, 1.0)]).unwrap();
        let r = alg.validate(1e-10);
        assert_eq!(r.antisymmetry_residual, 0.0);
        assert!(r.jacobi_residual > 0.5);
        assert!(!r.passed);
    }

    #[test]
    fn ad_star_heisenberg_identity_metric() {
        let h3 = algebras::heisenberg3();
        let g = MetricTensor::identity(3);
        assert_eq!(h3.ad_star(&g, &e(3, 0), &e(3, 2)).unwrap(), e(3, 1));
        // [e3, z] = 0 for all z
        assert!(h3.ad_star(&g, &e(3, 2), &e(3, 0)).unwrap().is_zero());
    }

    #[test]
    fn ad_star_vanishes_on_abelian() {
        let a = LieAlgebra::abelian(3);
        let g = MetricTensor::new(3, &[2.0, 0.1, 0.0, 0.1, 1.0, 0.3, 0.0, 0.3, 1.5], 1e-10).unwrap();
        let x = AlgVector::new(vec![1.0, 2.0, 3.0]);
        let y = AlgVector::new(vec![-1.0, 0.5, 0.0]);
        assert!(a.ad_star(&g, &x, &y).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn derived_and_center_examples() {
        let dc = algebras::heisenberg3().derived_and_center(1e-8);
        assert_eq!(dc.derived.len(), 1);
        assert_eq!(dc.center.len(), 1);
        assert!((dc.derived[0][2].abs() - 1.0).abs() < 1e-12);
        assert!((dc.center[0][2].abs() - 1.0).abs() < 1e-12);

        let dc = LieAlgebra::abelian(3).derived_and_center(1e-8);
        assert!(dc.derived.is_empty());
        assert_eq!(dc.center.len(), 3);

        let dc = algebras::so3().derived_and_center(1e-8);
        assert_eq!(dc.derived.len(), 3);
        assert!(dc.center.is_empty());
    }

    #[test]
    fn metric_rejects_indefinite_and_asymmetric() {
        let err = MetricTensor::new(2, &[1.0, 0.0, 0.0, -0.1], 1e-10).unwrap_err();
        assert!(matches!(err, Error::MetricNotPositiveDefinite { .. }));
        let err = MetricTensor::new(2, &[1.0, 0.2, 0.1, 1.0], 1e-10).unwrap_err();
        assert!(matches!(err, Error::MetricNotSymmetric { .. }));
    }

    #[test]
    fn raise_inverts_lower() {
        let g = MetricTensor::new(3, &[2.0, 0.1, 0.0, 0.1, 1.0, 0.3, 0.0, 0.3, 1.5], 1e-10).unwrap();
        let x = AlgVector::new(vec![0.7, -0.2, 1.1]);
        let back = g.raise(&g.lower(&x));
        assert!((&back - &x).max_abs() < 1e-14);
    }
}
