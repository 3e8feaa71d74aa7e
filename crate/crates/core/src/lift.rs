//! Complete and vertical lifts to the tangent Lie algebra.
//!
//! The tangent algebra of `TG` has basis `(e_1^c, …, e_n^c, e_1^v, …, e_n^v)`
//! with brackets
//!
//! ```text
//! [X^c, Y^c] = [X, Y]^c    [X^v, Y^c] = [X, Y]^v    [X^v, Y^v] = 0
//! ```
//!
//! and the lifted metric is `diag(g, g)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::connection::{levi_civita, ConnectionTable, MetricGeometry, MetricLieAlgebra};
use crate::lie::{AlgVector, LieAlgebra};
use crate::{Error, Result, Tolerances};

/// Which canonical lift of a left-invariant field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lift {
    Complete,
    Vertical,
}

impl Lift {
    pub fn as_str(self) -> &'static str {
        match self {
            Lift::Complete => "complete",
            Lift::Vertical => "vertical",
        }
    }

    /// One-letter tag, `c` or `v`.
    pub fn letter(self) -> char {
        match self {
            Lift::Complete => 'c',
            Lift::Vertical => 'v',
        }
    }
}

/// Element of the tangent algebra split into its complete and vertical blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedVector {
    pub complete: AlgVector,
    pub vertical: AlgVector,
}

impl LiftedVector {
    pub fn new(complete: AlgVector, vertical: AlgVector) -> Result<Self> {
        vertical.check_dim(complete.dim())?;
        Ok(LiftedVector { complete, vertical })
    }

    pub fn lift(x: &AlgVector, which: Lift) -> Self {
        match which {
            Lift::Complete => lift_complete(x),
            Lift::Vertical => lift_vertical(x),
        }
    }

    /// Dimension of the base algebra.
    pub fn base_dim(&self) -> usize {
        self.complete.dim()
    }

    /// Coordinates in the `2n`-dimensional tangent basis.
    pub fn flatten(&self) -> AlgVector {
        let mut v: Vec<f64> = self.complete.coeffs().to_vec();
        v.extend_from_slice(self.vertical.coeffs());
        AlgVector::new(v)
    }

    pub fn from_flat(v: &AlgVector) -> Result<Self> {
        if !v.dim().is_multiple_of(2) {
            return Err(Error::Dimension {
                expected: v.dim() + 1,
                found: v.dim(),
            });
        }
        let n = v.dim() / 2;
        Ok(LiftedVector {
            complete: AlgVector::new(v.coeffs()[..n].to_vec()),
            vertical: AlgVector::new(v.coeffs()[n..].to_vec()),
        })
    }

    pub fn scaled(&self, factor: f64) -> Self {
        LiftedVector {
            complete: self.complete.scaled(factor),
            vertical: self.vertical.scaled(factor),
        }
    }
}

pub fn lift_complete(x: &AlgVector) -> LiftedVector {
    LiftedVector {
        complete: x.clone(),
        vertical: AlgVector::zeros(x.dim()),
    }
}

pub fn lift_vertical(x: &AlgVector) -> LiftedVector {
    LiftedVector {
        complete: AlgVector::zeros(x.dim()),
        vertical: x.clone(),
    }
}

/// Structure constants of the `2n`-dimensional tangent algebra.
pub fn tangent_lie_algebra(base: &LieAlgebra) -> LieAlgebra {
    let n = base.dim();
    let d = 2 * n;
    let mut c = vec![0.0; d * d * d];
    let at = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = base.constant(i, j, k);
                if v == 0.0 {
                    continue;
                }
                c[at(i, j, k)] = v; // [e_i^c, e_j^c] = [e_i, e_j]^c
                c[at(n + i, j, n + k)] = v; // [e_i^v, e_j^c] = [e_i, e_j]^v
                c[at(i, n + j, n + k)] = v; // [e_i^c, e_j^v] = [e_i, e_j]^v
            }
        }
    }
    LieAlgebra::new(d, c).expect("consistent dimensions")
}

/// Base metric Lie algebra together with its lift to `TG`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentMetricLieAlgebra {
    base: MetricGeometry,
    tangent: MetricGeometry,
}

impl TangentMetricLieAlgebra {
    pub fn base(&self) -> &MetricGeometry {
        &self.base
    }

    pub fn tangent(&self) -> &MetricGeometry {
        &self.tangent
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// Max deviation of the tangent brackets and metric from the lift block
    /// structure; exactly zero for anything built by [`tangent_algebra`].
    pub fn block_structure_residual(&self) -> f64 {
        let n = self.base_dim();
        let (ba, ta) = (self.base.algebra(), self.tangent.algebra());
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = ba.constant(i, j, k);
                    r = r.max((ta.constant(i, j, k) - c).abs());
                    r = r.max(ta.constant(i, j, n + k).abs());
                    r = r.max((ta.constant(n + i, j, n + k) - c).abs());
                    r = r.max(ta.constant(n + i, j, k).abs());
                    r = r.max(ta.constant(n + i, n + j, k).abs());
                    r = r.max(ta.constant(n + i, n + j, n + k).abs());
                }
                let g = self.base.metric().entry(i, j);
                let tg = self.tangent.metric();
                r = r.max((tg.entry(i, j) - g).abs());
                r = r.max((tg.entry(n + i, n + j) - g).abs());
                r = r.max(tg.entry(i, n + j).abs());
            }
        }
        r
    }

    /// `g̃(a, b)` for lifted vectors.
    pub fn inner(&self, a: &LiftedVector, b: &LiftedVector) -> f64 {
        let g = self.base.metric();
        g.inner(&a.complete, &b.complete) + g.inner(&a.vertical, &b.vertical)
    }
}

/// Builds the tangent metric Lie algebra `(Lie(TG), g̃)` of `m`.
pub fn tangent_algebra(m: &MetricLieAlgebra) -> TangentMetricLieAlgebra {
    let tangent_alg = tangent_lie_algebra(m.algebra());
    let tangent_metric = m.metric().block_diagonal(m.metric());
    // Jacobi on the tangent algebra follows from Jacobi on the base
    let tol = Tolerances {
        alg: f64::INFINITY,
        ..Tolerances::DEFAULT
    };
    let tangent = MetricLieAlgebra::new(tangent_alg, tangent_metric, &tol).expect("dimensions agree");
    TangentMetricLieAlgebra {
        base: MetricGeometry::new(m.clone()),
        tangent: MetricGeometry::new(tangent),
    }
}

/// Closed-form lifted Levi-Civita connection, extended bilinearly:
///
/// ```text
/// ∇̃_{X^c} Y^c = (∇_X Y)^c
/// ∇̃_{X^v} Y^v = (∇_X Y − ½[X, Y])^c
/// ∇̃_{X^c} Y^v = (∇_X Y + ½ ad*_Y X)^v
/// ∇̃_{X^v} Y^c = (∇_Y X + ½ ad*_X Y + [X, Y])^v
/// ```
///
/// The last line follows from torsion-freeness and `[X^v, Y^c] = [X, Y]^v`.
pub fn lifted_nabla_closed_form(base: &MetricGeometry, a: &LiftedVector, b: &LiftedVector) -> LiftedVector {
    let (xc, xv) = (&a.complete, &a.vertical);
    let (yc, yv) = (&b.complete, &b.vertical);

    let cc = base.nabla(xc, yc);
    let vv = &base.nabla(xv, yv) - &base.bracket(xv, yv).scaled(0.5);
    let cv = &base.nabla(xc, yv) + &base.ad_star(yv, xc).scaled(0.5);
    let vc = &(&base.nabla(yc, xv) + &base.ad_star(xv, yc).scaled(0.5)) + &base.bracket(xv, yc);

    LiftedVector {
        complete: &cc + &vv,
        vertical: &cv + &vc,
    }
}

/// [`lifted_nabla_closed_form`] tabulated on the tangent basis.
pub fn lifted_nabla_closed_form_table(base: &MetricGeometry) -> ConnectionTable {
    let n = base.dim();
    let basis = |i: usize| LiftedVector::from_flat(&AlgVector::basis(2 * n, i)).expect("even dimension");
    ConnectionTable::from_fn(2 * n, |i, j| lifted_nabla_closed_form(base, &basis(i), &basis(j)).flatten())
}

/// Koszul connection of the tangent metric Lie algebra.
pub fn lifted_nabla_oracle(m: &MetricLieAlgebra) -> ConnectionTable {
    levi_civita(tangent_algebra(m).tangent().space())
}
