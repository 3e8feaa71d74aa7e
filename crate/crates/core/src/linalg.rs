//! Thin helpers over nalgebra for the handful of dense decompositions used.

use alloc::vec::Vec;
use nalgebra::{DMatrix, SymmetricEigen};

pub(crate) fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect()
}

/// Orthonormal basis (Euclidean) of the column space, singular values above `tol`.
pub(crate) fn column_space(m: &DMatrix<f64>, tol: f64) -> Vec<Vec<f64>> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > tol)
        .map(|(i, _)| u.column(i).iter().copied().collect())
        .collect()
}

/// Orthonormal basis (Euclidean) of the null space of `m`.
pub(crate) fn null_space(m: &DMatrix<f64>, tol: f64) -> Vec<Vec<f64>> {
    let n = m.ncols();
    // pad to at least square so the thin SVD exposes all right singular vectors
    let rows = m.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= tol)
        .map(|(i, _)| vt.row(i).iter().copied().collect())
        .collect()
}
