//! Hermitian eigenvalues, backed by nalgebra.

use nalgebra::DMatrix;

use crate::Complex;

/// Smallest eigenvalue of the Hermitian part of the `n × n` matrix with the
/// given entries. Returns `+∞` for `n = 0`.
pub(crate) fn hermitian_min_eigenvalue(n: usize, entry: impl Fn(usize, usize) -> Complex) -> f64 {
    if n == 0 {
        return f64::INFINITY;
    }
    let raw = DMatrix::from_fn(n, n, entry);
    let herm = DMatrix::from_fn(n, n, |i, j| (raw[(i, j)] + raw[(j, i)].conj()) * 0.5);
    herm.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
