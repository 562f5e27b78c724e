//! Dense decompositions, delegated to faer.

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::opspace::ComplexMatrix;

fn to_faer(a: &ComplexMatrix) -> Mat<Complex64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Left singular vectors and singular values (non-increasing) of `a`.
pub(crate) fn thin_svd_left(a: &ComplexMatrix) -> (ComplexMatrix, Vec<f64>) {
    let k = a.nrows().min(a.ncols());
    if k == 0 {
        return (ComplexMatrix::zeros(a.nrows(), 0), Vec::new());
    }
    let svd = to_faer(a)
        .thin_svd()
        .expect("SVD of a finite matrix converges");
    let u = svd.U();
    let s = svd.S().column_vector();
    let sigma = (0..k).map(|i| s[i].re).collect();
    (
        ComplexMatrix::from_fn(a.nrows(), k, |i, j| u[(i, j)]),
        sigma,
    )
}

/// Eigenvalues (non-decreasing) of the Hermitian part of `a`.
pub(crate) fn hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let h = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    to_faer(&h)
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("eigendecomposition of a finite Hermitian matrix converges")
}
