//! Superoperator conventions.
//!
//! Density matrices are vectorized by stacking rows:
//! `vec(ρ)[i·n + j] = ρ_ij`. Under this convention
//!
//! ```text
//! vec(A ρ B) = (A ⊗ Bᵀ) vec(ρ)
//! ```
//!
//! and the trace functional is the row vector with ones at the diagonal
//! positions `i·n + i`. Every module that builds or applies a Liouvillian
//! goes through the helpers below; nothing else should index a vectorized
//! density matrix by hand.

use num_complex::Complex64 as C64;

use crate::linalg::{CMatrix, CVector};

/// Row-major stacking of a square matrix.
pub fn vectorize(rho: &CMatrix) -> CVector {
    let n = rho.nrows();
    CVector::from_fn(n * rho.ncols(), |k, _| rho[(k / n, k % n)])
}

/// Inverse of [`vectorize`] for an `n × n` matrix.
pub fn unvectorize(v: &CVector, n: usize) -> CMatrix {
    assert_eq!(v.len(), n * n, "vector length does not match {n}x{n}");
    CMatrix::from_fn(n, n, |i, j| v[i * n + j])
}

/// Index of `ρ_ij` inside `vec(ρ)`.
pub fn vec_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Superoperator of `ρ ↦ A ρ B`.
pub fn sandwich(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(&b.transpose())
}

/// Superoperator of `ρ ↦ A ρ`.
pub fn left(a: &CMatrix) -> CMatrix {
    let n = a.ncols();
    a.kronecker(&CMatrix::identity(n, n))
}

/// Superoperator of `ρ ↦ ρ B`.
pub fn right(b: &CMatrix) -> CMatrix {
    let n = b.nrows();
    CMatrix::identity(n, n).kronecker(&b.transpose())
}

/// `ρ ↦ −i[H, ρ]`.
pub fn hamiltonian_generator(h: &CMatrix) -> CMatrix {
    (left(h) - right(h)) * C64::new(0.0, -1.0)
}

/// `ρ ↦ (rate/2)(2 J ρ J† − J†J ρ − ρ J†J)`.
pub fn dissipator(jump: &CMatrix, rate: f64) -> CMatrix {
    let jd = jump.adjoint();
    let jdj = &jd * jump;
    (sandwich(jump, &jd) * C64::from(2.0) - left(&jdj) - right(&jdj)) * C64::from(0.5 * rate)
}

/// Row vector `t` with `t · vec(ρ) = tr ρ`.
pub fn trace_functional(n: usize) -> CVector {
    let mut t = CVector::zeros(n * n);
    for i in 0..n {
        t[vec_index(n, i, i)] = C64::from(1.0);
    }
    t
}

/// Largest magnitude of `t · L` (zero for a trace-preserving generator).
pub fn trace_defect(l: &CMatrix) -> f64 {
    let n2 = l.nrows();
    let n = (n2 as f64).sqrt().round() as usize;
    (0..n2)
        .map(|col| {
            (0..n)
                .map(|i| l[(vec_index(n, i, i), col)])
                .sum::<C64>()
                .norm()
        })
        .fold(0.0, f64::max)
}

/// Applies a superoperator to a density matrix.
pub fn apply(l: &CMatrix, rho: &CMatrix) -> CMatrix {
    unvectorize(&(l * vectorize(rho)), rho.nrows())
}
