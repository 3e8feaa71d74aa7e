//! Named Lie algebras used by presets, tests and random sweeps.

use alloc::vec;
use alloc::vec::Vec;

use crate::LieAlgebra;

/// Heisenberg algebra `h3`: `[e1, e2] = e3`.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, 2, 1.0)]).expect("valid indices")
}

/// `so(3)`: `[e1, e2] = e3`, `[e2, e3] = e1`, `[e3, e1] = e2`.
pub fn so3() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)]).expect("valid indices")
}

/// `sl(2, R)` in the basis `(h, e, f)`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]).expect("valid indices")
}

/// Semidirect product `R ⋉_M R^k` where `e_1` acts on `span{e_2, …, e_{k+1}}`
/// by the row-major `k × k` matrix `m`. Jacobi holds for every `m`.
pub fn semidirect(k: usize, m: &[f64]) -> LieAlgebra {
    assert_eq!(m.len(), k * k, "action matrix must be k × k");
    let mut entries = Vec::new();
    for j in 0..k {
        for i in 0..k {
            // [e_1, e_{j+2}] = Σ_i m[i][j] e_{i+2}
            let c = m[i * k + j];
            if c != 0.0 {
                entries.push((0, j + 1, i + 1, c));
            }
        }
    }
    LieAlgebra::from_brackets(k + 1, &entries).expect("valid indices")
}

/// Direct sum `a ⊕ b`, basis of `a` first.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (n, m) = (a.dim(), b.dim());
    let d = n + m;
    let mut c = vec![0.0; d * d * d];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[(i * d + j) * d + k] = a.constant(i, j, k);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                c[((i + n) * d + j + n) * d + k + n] = b.constant(i, j, k);
            }
        }
    }
    LieAlgebra::new(d, c).expect("consistent dimensions")
}

/// `h3 ⊕ R`; `e4` is central and orthogonal to the derived algebra.
pub fn heisenberg3_plus_r() -> LieAlgebra {
    direct_sum(&heisenberg3(), &LieAlgebra::abelian(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_satisfy_jacobi_exactly() {
        let algs = [
            heisenberg3(),
            so3(),
            sl2(),
            semidirect(2, &[1.0, 0.7, 0.0, 2.0]),
            heisenberg3_plus_r(),
            direct_sum(&so3(), &heisenberg3()),
        ];
        for a in &algs {
            let r = a.validate(0.0);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn semidirect_action() {
        let a = semidirect(2, &[1.0, 0.7, 0.0, 2.0]);
        // [e1, e3] = 0.7 e2 + 2 e3
        assert_eq!(a.constant(0, 2, 1), 0.7);
        assert_eq!(a.constant(0, 2, 2), 2.0);
        assert_eq!(a.constant(2, 0, 2), -2.0);
    }
}
