//! Left-invariant Riemannian geometry of a metric Lie algebra.
//!
//! Every vector field here is left-invariant, so covariant derivatives reduce
//! to a bilinear table on the algebra and curvature to compositions of it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::lie::{AlgVector, LieAlgebra, MetricTensor};
use crate::{Error, Result, Tolerances};

/// A Lie algebra together with a left-invariant metric.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra {
    algebra: LieAlgebra,
    metric: MetricTensor,
}

impl MetricLieAlgebra {
    /// Pairs an algebra with a metric, rejecting mismatched dimensions and
    /// structure constants that fail antisymmetry or Jacobi at `tol.alg`.
    pub fn new(algebra: LieAlgebra, metric: MetricTensor, tol: &Tolerances) -> Result<Self> {
        metric.check_dim(algebra.dim())?;
        let report = algebra.validate(tol.alg);
        if !report.passed {
            return Err(Error::Algebra(format!(
                "antisymmetry residual {:e}, Jacobi residual {:e} exceed {:e}",
                report.antisymmetry_residual, report.jacobi_residual, tol.alg
            )));
        }
        Ok(MetricLieAlgebra { algebra, metric })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &MetricTensor {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Christoffel-type table `∇_{e_i} e_j = Σ_k N[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTable {
    dim: usize,
    table: Vec<f64>,
}

impl ConnectionTable {
    pub(crate) fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> AlgVector) -> Self {
        let mut table = vec![0.0; dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                table[(i * dim + j) * dim..(i * dim + j + 1) * dim].copy_from_slice(v.coeffs());
            }
        }
        ConnectionTable { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    /// `∇_x y` for left-invariant `x`, `y`.
    pub fn apply(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = xi * y[j];
                if w == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.table[base + k];
                }
            }
        }
        AlgVector::new(out)
    }

    /// Max over basis pairs of `|∇_i e_j − ∇_j e_i − [e_i, e_j]|`.
    pub fn torsion_residual(&self, algebra: &LieAlgebra) -> f64 {
        let n = self.dim;
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = self.get(i, j, k) - self.get(j, i, k) - algebra.constant(i, j, k);
                    r = r.max(t.abs());
                }
            }
        }
        r
    }

    /// Max over basis triples of `|g(∇_i e_j, e_k) + g(e_j, ∇_i e_k)|`.
    pub fn compatibility_residual(&self, metric: &MetricTensor) -> f64 {
        let n = self.dim;
        let mut r: f64 = 0.0;
        for i in 0..n {
            let ei = AlgVector::basis(n, i);
            for j in 0..n {
                let ej = AlgVector::basis(n, j);
                let nij = self.apply(&ei, &ej);
                for k in 0..n {
                    let ek = AlgVector::basis(n, k);
                    let nik = self.apply(&ei, &ek);
                    r = r.max((metric.inner(&nij, &ek) + metric.inner(&ej, &nik)).abs());
                }
            }
        }
        r
    }

    /// Max absolute entrywise difference.
    pub fn max_difference(&self, other: &ConnectionTable) -> f64 {
        self.table
            .iter()
            .zip(&other.table)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Levi-Civita connection from the Koszul formula
/// `2g(∇_x y, z) = g([x,y],z) − g([y,z],x) + g([z,x],y)`.
pub fn levi_civita(m: &MetricLieAlgebra) -> ConnectionTable {
    let n = m.dim();
    let alg = &m.algebra;
    let g = &m.metric;
    // b[i][j][k] = g([e_i, e_j], e_k)
    let mut b = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                b[(i * n + j) * n + k] = (0..n).map(|l| alg.constant(i, j, l) * g.entry(l, k)).sum();
            }
        }
    }
    let at = |i: usize, j: usize, k: usize| b[(i * n + j) * n + k];
    ConnectionTable::from_fn(n, |i, j| {
        let rhs: Vec<f64> = (0..n)
            .map(|k| 0.5 * (at(i, j, k) - at(j, k, i) + at(k, i, j)))
            .collect();
        g.raise(&AlgVector::new(rhs))
    })
}

/// `R(u, y)y = ∇_u ∇_y y − ∇_y ∇_u y − ∇_{[u,y]} y` for left-invariant fields.
pub fn curvature(m: &MetricLieAlgebra, t: &ConnectionTable, u: &AlgVector, y: &AlgVector) -> Result<AlgVector> {
    u.check_dim(m.dim())?;
    y.check_dim(m.dim())?;
    if t.dim() != m.dim() {
        return Err(Error::Dimension {
            expected: m.dim(),
            found: t.dim(),
        });
    }
    Ok(curvature_unchecked(&m.algebra, t, u, y))
}

fn curvature_unchecked(alg: &LieAlgebra, t: &ConnectionTable, u: &AlgVector, y: &AlgVector) -> AlgVector {
    let nyy = t.apply(y, y);
    let nuy = t.apply(u, y);
    let a = t.apply(u, &nyy);
    let b = t.apply(y, &nuy);
    let c = t.apply(&alg.br(u, y), y);
    &(&a - &b) - &c
}

/// Sectional curvature `K(v, y) = g(R(v,y)y, v) / (|y|²|v|² − g(v,y)²)`.
pub fn sectional(m: &MetricLieAlgebra, t: &ConnectionTable, v: &AlgVector, y: &AlgVector, tol_plane: f64) -> Result<f64> {
    let r = curvature(m, t, v, y)?;
    let g = &m.metric;
    let gram = g.inner(y, y) * g.inner(v, v) - g.inner(v, y) * g.inner(v, y);
    if !(gram > tol_plane) {
        return Err(Error::DegeneratePlane { gram });
    }
    Ok(g.inner(&r, v) / gram)
}

/// Symmetric map defined by `2g(U(v1,v2), v3) = g([v3,v1],v2) + g([v3,v2],v1)`.
pub fn u_map(m: &MetricLieAlgebra, v1: &AlgVector, v2: &AlgVector) -> Result<AlgVector> {
    v1.check_dim(m.dim())?;
    v2.check_dim(m.dim())?;
    Ok(u_map_unchecked(m, v1, v2))
}

fn u_map_unchecked(m: &MetricLieAlgebra, v1: &AlgVector, v2: &AlgVector) -> AlgVector {
    let n = m.dim();
    let g = &m.metric;
    let (gv1, gv2) = (g.lower(v1), g.lower(v2));
    let rhs: Vec<f64> = (0..n)
        .map(|k| {
            let ek = AlgVector::basis(n, k);
            0.5 * (m.algebra.br(&ek, v1).dot(&gv2) + m.algebra.br(&ek, v2).dot(&gv1))
        })
        .collect();
    g.raise(&AlgVector::new(rhs))
}

/// A metric Lie algebra with its Levi-Civita table computed once.
///
/// The convenience methods assume vectors of the right length and panic
/// otherwise; the free functions of this module return `Result` instead.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGeometry {
    space: MetricLieAlgebra,
    nabla: ConnectionTable,
}

impl MetricGeometry {
    pub fn new(space: MetricLieAlgebra) -> Self {
        let nabla = levi_civita(&space);
        MetricGeometry { space, nabla }
    }

    pub fn space(&self) -> &MetricLieAlgebra {
        &self.space
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.space.algebra
    }

    pub fn metric(&self) -> &MetricTensor {
        &self.space.metric
    }

    pub fn connection(&self) -> &ConnectionTable {
        &self.nabla
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn inner(&self, x: &AlgVector, y: &AlgVector) -> f64 {
        self.space.metric.inner(x, y)
    }

    pub fn bracket(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        self.check(x);
        self.check(y);
        self.space.algebra.br(x, y)
    }

    pub fn nabla(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        self.check(x);
        self.check(y);
        self.nabla.apply(x, y)
    }

    pub fn ad_star(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        self.check(x);
        self.check(y);
        self.space.algebra.ad_star_unchecked(&self.space.metric, x, y)
    }

    pub fn curvature(&self, u: &AlgVector, y: &AlgVector) -> AlgVector {
        self.check(u);
        self.check(y);
        curvature_unchecked(&self.space.algebra, &self.nabla, u, y)
    }

    pub fn sectional(&self, v: &AlgVector, y: &AlgVector, tol_plane: f64) -> Result<f64> {
        sectional(&self.space, &self.nabla, v, y, tol_plane)
    }

    pub fn u_map(&self, v1: &AlgVector, v2: &AlgVector) -> AlgVector {
        self.check(v1);
        self.check(v2);
        u_map_unchecked(&self.space, v1, v2)
    }

    fn check(&self, v: &AlgVector) {
        assert_eq!(v.dim(), self.dim(), "vector length does not match the algebra");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras;

    fn geom(alg: LieAlgebra) -> MetricGeometry {
        let n = alg.dim();
        MetricGeometry::new(MetricLieAlgebra::new(alg, MetricTensor::identity(n), &Tolerances::DEFAULT).unwrap())
    }

    fn e(n: usize, i: usize) -> AlgVector {
        AlgVector::basis(n, i)
    }

    #[test]
    fn heisenberg_connection_table() {
        let g = geom(algebras::heisenberg3());
        assert_eq!(g.nabla(&e(3, 0), &e(3, 1)), e(3, 2).scaled(0.5));
        assert_eq!(g.nabla(&e(3, 0), &e(3, 2)), e(3, 1).scaled(-0.5));
        assert!(g.nabla(&e(3, 2), &e(3, 2)).is_zero());
    }

    #[test]
    fn abelian_connection_vanishes() {
        let g = geom(LieAlgebra::abelian(3));
        for i in 0..3 {
            for j in 0..3 {
                assert!(g.nabla(&e(3, i), &e(3, j)).is_zero());
            }
        }
    }

    #[test]
    fn so3_connection_is_half_bracket() {
        let g = geom(algebras::so3());
        assert_eq!(g.nabla(&e(3, 0), &e(3, 1)), e(3, 2).scaled(0.5));
        let x = AlgVector::new(vec![0.3, -1.0, 0.25]);
        let y = AlgVector::new(vec![1.5, 0.5, -2.0]);
        let d = &g.nabla(&x, &y) - &g.bracket(&x, &y).scaled(0.5);
        assert!(d.max_abs() < 1e-15);
    }

    #[test]
    fn heisenberg_curvature_values() {
        let g = geom(algebras::heisenberg3());
        let r12 = g.curvature(&e(3, 0), &e(3, 1));
        assert!((g.inner(&r12, &e(3, 0)) + 0.75).abs() < 1e-15);
        let r13 = g.curvature(&e(3, 0), &e(3, 2));
        assert!((g.inner(&r13, &e(3, 0)) - 0.25).abs() < 1e-15);
        assert!((g.sectional(&e(3, 0), &e(3, 1), 1e-10).unwrap() + 0.75).abs() < 1e-15);
        assert!((g.sectional(&e(3, 0), &e(3, 2), 1e-10).unwrap() - 0.25).abs() < 1e-15);
        assert!((g.sectional(&e(3, 1), &e(3, 2), 1e-10).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn abelian_curvature_vanishes() {
        let g = geom(LieAlgebra::abelian(3));
        assert!(g.curvature(&e(3, 0), &e(3, 1)).is_zero());
        assert_eq!(g.sectional(&e(3, 0), &e(3, 1), 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn sectional_rejects_collinear_vectors() {
        let g = geom(algebras::heisenberg3());
        let err = g.sectional(&e(3, 0), &e(3, 0).scaled(2.0), 1e-10).unwrap_err();
        assert!(matches!(err, Error::DegeneratePlane { .. }));
    }

    #[test]
    fn u_map_heisenberg() {
        let g = geom(algebras::heisenberg3());
        assert_eq!(g.u_map(&e(3, 0), &e(3, 2)), e(3, 1).scaled(-0.5));
        assert_eq!(g.u_map(&e(3, 2), &e(3, 0)), e(3, 1).scaled(-0.5));
        let a = geom(LieAlgebra::abelian(3));
        assert!(a.u_map(&e(3, 0), &e(3, 1)).is_zero());
    }

    #[test]
    fn metric_lie_algebra_rejects_bad_inputs() {
        let err = MetricLieAlgebra::new(algebras::heisenberg3(), MetricTensor::identity(2), &Tolerances::DEFAULT).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
        let broken = LieAlgebra::from_brackets(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 0, 1.0)]).unwrap();
        let err = MetricLieAlgebra::new(broken, MetricTensor::identity(3), &Tolerances::DEFAULT).unwrap_err();
        assert!(matches!(err, Error::Algebra(_)));
    }

    #[test]
    fn curvature_rejects_wrong_length() {
        let g = geom(algebras::heisenberg3());
        let err = curvature(g.space(), g.connection(), &e(2, 0), &e(3, 1)).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }
}
