//! Stationary states of the reduced and full master equations, and detuning
//! sweeps of the bare-state populations.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::model::{self, FullLiouvillian, ReducedLiouvillian, SOperatorSource, SystemParams};
use crate::superop;

/// Eigenvalues of the stationary state below this are reported as
/// [`Error::NonPositive`].
pub const POSITIVITY_TOL: f64 = 1e-8;

/// Stationary atomic density matrix.
#[derive(Debug, Clone)]
pub struct SteadyState {
    pub rho: CMatrix,
    /// max |L vec(ρ)|.
    pub residual: f64,
    pub params: SystemParams,
}

impl SteadyState {
    /// Bare populations (ρ00, ρ11, ρ22).
    pub fn populations(&self) -> [f64; 3] {
        [
            self.rho[(0, 0)].re,
            self.rho[(1, 1)].re,
            self.rho[(2, 2)].re,
        ]
    }

    /// Population inversion ρ22 − ρ00.
    pub fn inversion(&self) -> f64 {
        self.rho[(2, 2)].re - self.rho[(0, 0)].re
    }
}

/// Turns a kernel vector into a trace-one Hermitian density matrix.
fn normalize(v: &CVector, n: usize) -> Result<CMatrix> {
    let rho = superop::unvectorize(v, n);
    let trace = rho.trace();
    if trace.norm() < 1e-300 {
        return Err(Error::NoKernel {
            smallest: 0.0,
            threshold: 0.0,
        });
    }
    let rho = rho / trace;
    let rho = (&rho + rho.adjoint()) * C64::from(0.5);
    let report = linalg::hermitian_report(&rho)?;
    if report.min_eigenvalue < -POSITIVITY_TOL {
        return Err(Error::NonPositive {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    Ok(rho)
}

fn residual(matrix: &CMatrix, rho: &CMatrix) -> f64 {
    (matrix * superop::vectorize(rho))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Stationary state from the one-dimensional kernel of a generator acting
/// on n×n matrices.
pub fn stationary_from_kernel(matrix: &CMatrix, n: usize) -> Result<CMatrix> {
    let v = linalg::null_space_1d(matrix)?;
    normalize(&v, n)
}

/// Stationary state from `L vec(ρ) = 0` with the first row replaced by the
/// trace condition, solved by LU.
pub fn stationary_by_trace_row(matrix: &CMatrix, n: usize) -> Result<CMatrix> {
    let mut a = matrix.clone();
    let t = superop::trace_functional(n);
    for col in 0..a.ncols() {
        a[(0, col)] = t[col];
    }
    let mut b = CVector::zeros(n * n);
    b[0] = C64::from(1.0);
    let solution = linalg::solve_linear(&a, &b)?;
    normalize(&solution.x, n)
}

pub fn steady_state(l: &ReducedLiouvillian) -> Result<SteadyState> {
    let rho = stationary_from_kernel(&l.matrix, 3)?;
    Ok(SteadyState {
        residual: residual(&l.matrix, &rho),
        rho,
        params: l.params,
    })
}

/// Builds the reduced Liouvillian with the default S and solves for ρ_ss.
pub fn steady_state_for(p: &SystemParams) -> Result<SteadyState> {
    steady_state(&model::build_reduced_liouvillian(p)?)
}

/// Bare populations along a detuning sweep. Points that fail are recorded
/// in `failures` and their populations are NaN.
#[derive(Debug, Clone)]
pub struct PopulationSweep {
    pub deltas: Vec<f64>,
    pub populations: Vec<[f64; 3]>,
    pub failures: Vec<(usize, Error)>,
    pub params: SystemParams,
}

impl PopulationSweep {
    /// Index and value of the largest ρ22 − ρ00 among successful points.
    pub fn max_inversion(&self) -> Option<(usize, f64)> {
        self.populations
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p[2] - p[0]))
            .filter(|(_, x)| x.is_finite())
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Sweeps δ over `deltas` (other parameters from `p`), in parallel and in
/// input order.
pub fn sweep_populations(
    p: &SystemParams,
    deltas: &[f64],
    source: SOperatorSource,
) -> Result<PopulationSweep> {
    p.validate()?;
    crate::grid::ensure_sorted(deltas)?;
    let results: Vec<Result<[f64; 3]>> = deltas
        .par_iter()
        .map(|&delta| {
            let l = model::build_reduced_liouvillian_with(&p.with_delta(delta), source)?;
            Ok(steady_state(&l)?.populations())
        })
        .collect();
    let mut populations = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(pops) => populations.push(pops),
            Err(e) => {
                log::warn!("population sweep: delta = {} failed: {e}", deltas[i]);
                populations.push([f64::NAN; 3]);
                failures.push((i, e));
            }
        }
    }
    Ok(PopulationSweep {
        deltas: deltas.to_vec(),
        populations,
        failures,
        params: *p,
    })
}

/// Stationary state of the atom + cavity model.
#[derive(Debug, Clone)]
pub struct FullSteadyState {
    pub rho: CMatrix,
    /// Atomic marginal (cavity traced out).
    pub atomic: CMatrix,
    /// ⟨a†a⟩.
    pub mean_photons: f64,
    pub residual: f64,
}

/// Traces out the cavity of a state on `atom(3) ⊗ Fock(dim_c)`.
pub fn partial_trace_cavity(rho: &CMatrix, dim_c: usize) -> CMatrix {
    CMatrix::from_fn(3, 3, |i, j| {
        (0..dim_c)
            .map(|k| rho[(i * dim_c + k, j * dim_c + k)])
            .sum()
    })
}

pub fn full_steady_state(l: &FullLiouvillian) -> Result<FullSteadyState> {
    let dim = l.hilbert_dim();
    let dim_c = l.n_max + 1;
    let rho = stationary_by_trace_row(&l.matrix, dim)?;
    let mean_photons = (0..dim).map(|k| (k % dim_c) as f64 * rho[(k, k)].re).sum();
    Ok(FullSteadyState {
        atomic: partial_trace_cavity(&rho, dim_c),
        residual: residual(&l.matrix, &rho),
        mean_photons,
        rho,
    })
}
