//! Dense complex linear algebra and quadrature.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`; the factorizations (LU, SVD,
//! Hermitian eigensolver, Schur form) come from nalgebra. Condition
//! estimation, kernel extraction with a fixed phase convention, the matrix
//! exponential and the oscillatory kernel quadrature live here.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen, SVD};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Default relative residual target for [`solve_linear`].
pub const SOLVE_RTOL: f64 = 1e-10;
/// Condition estimate above which a solution is flagged ill-conditioned.
pub const CONDITION_WARN: f64 = 1e12;
/// Condition estimate above which a matrix is treated as singular.
pub const CONDITION_SINGULAR: f64 = 1e15;
/// Relative singular-value threshold for the numerical kernel.
pub const KERNEL_RTOL: f64 = 1e-8;
/// Default absolute tolerance per entry for [`integrate_exp_kernel`].
pub const QUADRATURE_TOL: f64 = 1e-10;
/// Hard limit on the number of quadrature panels.
pub const MAX_PANELS: usize = 1 << 20;

const POWER_ITERATIONS: usize = 50;
const GAUSS_POINTS: usize = 10;

/// Builds a matrix from row-major entries, rejecting mismatched sizes and
/// non-finite values.
pub fn matrix_from_row_major(rows: usize, cols: usize, entries: &[C64]) -> Result<CMatrix> {
    if rows * cols != entries.len() {
        return Err(Error::InvalidMatrix(format!(
            "{rows}x{cols} matrix needs {} entries, got {}",
            rows * cols,
            entries.len()
        )));
    }
    ensure_finite(entries.iter())?;
    Ok(CMatrix::from_row_slice(rows, cols, entries))
}

fn ensure_finite<'a>(mut entries: impl Iterator<Item = &'a C64>) -> Result<()> {
    if entries.any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    Ok(())
}

fn ensure_square(a: &CMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidMatrix(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

/// Result of [`solve_linear`]. The solution is returned even when the
/// system is ill-conditioned; `ill_conditioned` carries the warning.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub x: CVector,
    pub condition_estimate: f64,
    pub ill_conditioned: bool,
    /// ‖Ax − b‖ / ‖b‖ (zero when b = 0).
    pub relative_residual: f64,
}

/// Solves `A x = b` by LU with partial pivoting and one step of iterative
/// refinement.
pub fn solve_linear(a: &CMatrix, b: &CVector) -> Result<LinearSolution> {
    ensure_square(a)?;
    if b.len() != a.nrows() {
        return Err(Error::InvalidMatrix(format!(
            "right-hand side has length {}, matrix is {}x{}",
            b.len(),
            a.nrows(),
            a.ncols()
        )));
    }
    ensure_finite(a.iter())?;
    ensure_finite(b.iter())?;

    let lu = a.clone().lu();
    let condition = condition_estimate(a)?;
    if condition > CONDITION_SINGULAR {
        return Err(Error::SingularMatrix { condition });
    }
    let mut x = lu.solve(b).ok_or(Error::SingularMatrix {
        condition: f64::INFINITY,
    })?;
    let r = b - a * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }

    let b_norm = b.norm();
    let relative_residual = if b_norm > 0.0 {
        (a * &x - b).norm() / b_norm
    } else {
        0.0
    };
    let ill_conditioned = condition > CONDITION_WARN;
    if ill_conditioned {
        log::warn!("solve_linear: condition estimate {condition:.3e} exceeds {CONDITION_WARN:.0e}");
    }
    Ok(LinearSolution {
        x,
        condition_estimate: condition,
        ill_conditioned,
        relative_residual,
    })
}

fn power_start(n: usize) -> CVector {
    let v = CVector::from_fn(n, |i, _| C64::new(1.0, 0.1 * (i as f64 + 1.0).sqrt()));
    let norm = v.norm();
    v / C64::from(norm)
}

/// 2-norm condition number estimate: power iteration on AᴴA for the largest
/// singular value and on (AᴴA)⁻¹ for the smallest.
pub fn condition_estimate(a: &CMatrix) -> Result<f64> {
    ensure_square(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(1.0);
    }
    let ah = a.adjoint();

    let mut v = power_start(n);
    let mut sigma_max_sq = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let w = &ah * (a * &v);
        sigma_max_sq = w.norm();
        if sigma_max_sq == 0.0 {
            return Ok(f64::INFINITY);
        }
        v = w / C64::from(sigma_max_sq);
    }

    let lu = a.clone().lu();
    let lu_h = ah.lu();
    let mut v = power_start(n);
    let mut inv_sigma_min_sq = 0.0;
    for _ in 0..POWER_ITERATIONS {
        let Some(y) = lu_h.solve(&v) else {
            return Ok(f64::INFINITY);
        };
        let Some(w) = lu.solve(&y) else {
            return Ok(f64::INFINITY);
        };
        inv_sigma_min_sq = w.norm();
        if !inv_sigma_min_sq.is_finite() {
            return Ok(f64::INFINITY);
        }
        v = w / C64::from(inv_sigma_min_sq);
    }
    Ok((sigma_max_sq * inv_sigma_min_sq).sqrt())
}

/// Singular values in descending order.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    let svd = SVD::try_new(a.clone(), false, false, f64::EPSILON, 0)
        .ok_or_else(|| Error::InvalidMatrix("SVD did not converge".into()))?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Multiplies `v` by a unit phase so that its first entry of largest modulus
/// is real and positive.
pub fn fix_phase(v: &mut CVector) {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_abs {
            best_abs = m;
            best = i;
        }
    }
    if best_abs > 0.0 {
        let phase = v[best] / C64::from(best_abs);
        *v *= phase.conj();
        v[best] = C64::new(v[best].re, 0.0);
    }
}

/// Unit-norm vector spanning the one-dimensional numerical kernel of `a`.
///
/// The kernel is accepted when the smallest singular value is below
/// `KERNEL_RTOL · σ_max` and the second-smallest is above it.
pub fn null_space_1d(a: &CMatrix) -> Result<CVector> {
    ensure_square(a)?;
    ensure_finite(a.iter())?;
    let n = a.nrows();
    if n == 0 {
        return Err(Error::InvalidMatrix("empty matrix".into()));
    }
    let svd = SVD::try_new(a.clone(), false, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::InvalidMatrix("SVD did not converge".into()))?;
    let s = &svd.singular_values;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));

    let largest = s[order[n - 1]];
    let threshold = KERNEL_RTOL * largest;
    let smallest = s[order[0]];
    if largest == 0.0 {
        return Err(Error::DegenerateKernel { dimension: n });
    }
    if smallest >= threshold {
        return Err(Error::NoKernel {
            smallest,
            threshold,
        });
    }
    let dimension = order.iter().take_while(|&&i| s[i] < threshold).count();
    if dimension > 1 {
        return Err(Error::DegenerateKernel { dimension });
    }

    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut v: CVector = v_t.row(order[0]).adjoint();
    let norm = v.norm();
    v /= C64::from(norm);
    fix_phase(&mut v);
    Ok(v)
}

/// Diagnostics for a candidate density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianCheckReport {
    /// max |M − M†| over entries.
    pub max_asymmetry: f64,
    /// Smallest eigenvalue of (M + M†)/2.
    pub min_eigenvalue: f64,
    /// |tr M − 1|.
    pub trace_deviation: f64,
}

pub fn hermitian_report(m: &CMatrix) -> Result<HermitianCheckReport> {
    ensure_square(m)?;
    let mh = m.adjoint();
    let max_asymmetry = (m - &mh).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let herm = (m + &mh) * C64::from(0.5);
    let min_eigenvalue = if m.nrows() == 0 {
        0.0
    } else {
        SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    };
    let trace_deviation = (m.trace() - C64::from(1.0)).norm();
    Ok(HermitianCheckReport {
        max_asymmetry,
        min_eigenvalue,
        trace_deviation,
    })
}

/// Eigenvalues and eigenvectors (columns) of a Hermitian matrix, ascending.
pub fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    ensure_square(m)?;
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Eigenvalues of a general complex matrix via the complex Schur form,
/// sorted by decreasing real part.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    ensure_square(a)?;
    let schur = Schur::try_new(a.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::InvalidMatrix("Schur iteration did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::InvalidMatrix("Schur form is not triangular".into()))?;
    let mut ev: Vec<C64> = ev.iter().copied().collect();
    ev.sort_by(|x, y| y.re.total_cmp(&x.re));
    Ok(ev)
}

fn one_norm(a: &CMatrix) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    ensure_square(a)?;
    ensure_finite(a.iter())?;
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    const THETA_13: f64 = 5.371920351148152;

    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * C64::from(2f64.powi(-squarings));

    let id = CMatrix::identity(n, n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let c = |k: usize| C64::from(B[k]);

    let u_inner = &a6 * (&a6 * c(13) + &a4 * c(11) + &a2 * c(9))
        + &a6 * c(7)
        + &a4 * c(5)
        + &a2 * c(3)
        + &id * c(1);
    let u = &scaled * u_inner;
    let v = &a6 * (&a6 * c(12) + &a4 * c(10) + &a2 * c(8))
        + &a6 * c(6)
        + &a4 * c(4)
        + &a2 * c(2)
        + &id * c(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).ok_or(Error::SingularMatrix {
        condition: f64::INFINITY,
    })?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pn_1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn_1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Value of an exponential-kernel integral together with quadrature
/// bookkeeping.
#[derive(Debug, Clone)]
pub struct KernelIntegral {
    pub value: CMatrix,
    /// Truncation point τ_max = 40 / Re(decay).
    pub tau_max: f64,
    /// Upper bound on the neglected tail, sup‖f‖·e^{−40}/Re(decay).
    pub tail_bound: f64,
    pub panels: usize,
}

/// ∫₀^∞ e^{−decay·τ} f(τ) dτ with the default tolerance.
pub fn integrate_exp_kernel<F>(f: F, decay: C64) -> Result<KernelIntegral>
where
    F: Fn(f64) -> CMatrix,
{
    integrate_exp_kernel_with_tol(f, decay, QUADRATURE_TOL)
}

/// Adaptive composite Gauss–Legendre quadrature with dyadic panel
/// refinement, truncated at τ_max = 40 / Re(decay). A panel is accepted when
/// its one-panel and two-half-panel estimates agree to within its share of
/// `abs_tol` (per entry).
pub fn integrate_exp_kernel_with_tol<F>(f: F, decay: C64, abs_tol: f64) -> Result<KernelIntegral>
where
    F: Fn(f64) -> CMatrix,
{
    if !(decay.re > 0.0) || !decay.im.is_finite() {
        return Err(Error::InvalidParams(format!(
            "decay must have positive real part, got {decay}"
        )));
    }
    let tau_max = 40.0 / decay.re;
    let (nodes, weights) = gauss_legendre(GAUSS_POINTS);
    let f0 = f(0.0);
    let (rows, cols) = f0.shape();

    let panel = |a: f64, b: f64| -> CMatrix {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = CMatrix::zeros(rows, cols);
        for (x, w) in nodes.iter().zip(&weights) {
            let t = mid + half * x;
            let k = (-decay * t).exp() * (w * half);
            acc += f(t) * k;
        }
        acc
    };

    let max_entry = |m: &CMatrix| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut sup_f = max_entry(&f0);
    let mut total = CMatrix::zeros(rows, cols);
    let mut accepted = 0usize;
    // (start, end, estimate)
    let mut stack = vec![(0.0, tau_max, panel(0.0, tau_max))];
    while let Some((a, b, whole)) = stack.pop() {
        let m = 0.5 * (a + b);
        let left = panel(a, m);
        let right = panel(m, b);
        let refined = &left + &right;
        let diff = max_entry(&(&refined - &whole));
        let share = abs_tol * (b - a) / tau_max;
        let floor = 8.0 * f64::EPSILON * max_entry(&refined);
        if diff <= share.max(floor) {
            total += refined;
            accepted += 2;
            sup_f = sup_f.max(max_entry(&f(m)));
        } else {
            if accepted + stack.len() + 2 > MAX_PANELS {
                return Err(Error::ToleranceNotMet {
                    tolerance: abs_tol,
                    panels: accepted + stack.len() + 2,
                });
            }
            stack.push((m, b, right));
            stack.push((a, m, left));
        }
    }

    Ok(KernelIntegral {
        value: total,
        tau_max,
        tail_bound: sup_f * (-40.0f64).exp() / decay.re,
        panels: accepted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let id = CMatrix::identity(3, 3);
        let b = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)]);
        let sol = solve_linear(&id, &b).unwrap();
        assert!((sol.x - &b).norm() < 1e-15);

        let d = matrix_from_row_major(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        let sol = solve_linear(&d, &CVector::from_vec(vec![c(2.0, 0.0), c(2.0, 0.0)])).unwrap();
        assert!((sol.x[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((sol.x[1] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((sol.condition_estimate - 2.0).abs() < 1e-9);
        assert!(!sol.ill_conditioned);
    }

    #[test]
    fn solve_rejects_singular() {
        let a = matrix_from_row_major(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        let b = CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            solve_linear(&a, &b),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn solve_flags_ill_conditioning() {
        let a = matrix_from_row_major(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1e-13, 0.0)],
        )
        .unwrap();
        let b = CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let sol = solve_linear(&a, &b).unwrap();
        assert!(sol.ill_conditioned);
        assert!((sol.x[1] - c(1e13, 0.0)).norm() / 1e13 < 1e-12);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matrix_from_row_major(2, 2, &[c(1.0, 0.0); 3]).is_err());
        assert!(matrix_from_row_major(1, 1, &[c(f64::NAN, 0.0)]).is_err());
        assert!(matrix_from_row_major(1, 1, &[c(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn kernel_of_diagonal() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(2.0, 0.0),
        ]));
        let v = null_space_1d(&a).unwrap();
        assert!((v[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(v[1].norm() < 1e-15 && v[2].norm() < 1e-15);
    }

    #[test]
    fn kernel_errors() {
        let full = CMatrix::identity(3, 3);
        assert!(matches!(null_space_1d(&full), Err(Error::NoKernel { .. })));
        let two = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(2.0, 0.0),
        ]));
        assert!(matches!(
            null_space_1d(&two),
            Err(Error::DegenerateKernel { dimension: 2 })
        ));
    }

    #[test]
    fn phase_convention() {
        let mut v = CVector::from_vec(vec![c(0.0, 0.5), c(0.0, -1.0), c(0.3, 0.0)]);
        fix_phase(&mut v);
        assert!((v[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((v[0] - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hermitian_report_examples() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.5, 0.0), c(0.5, 0.0)]));
        let r = hermitian_report(&m).unwrap();
        assert_eq!(r.max_asymmetry, 0.0);
        assert!((r.min_eigenvalue - 0.5).abs() < 1e-15);
        assert!(r.trace_deviation < 1e-15);

        let m = matrix_from_row_major(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), c(0.1, 0.0), c(0.5, 0.0)])
            .unwrap();
        assert_eq!(hermitian_report(&m).unwrap().max_asymmetry, 0.0);

        let m = matrix_from_row_major(2, 2, &[c(0.5, 0.0), c(0.1, 0.2), c(0.1, 0.2), c(0.5, 0.0)])
            .unwrap();
        assert!((hermitian_report(&m).unwrap().max_asymmetry - 0.4).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(GAUSS_POINTS);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // Exact for degree 2n − 1 = 19.
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((integral - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn expm_of_diagonal_and_rotation() {
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(-2.0, 3.0)]));
        let e = expm(&d).unwrap();
        assert!((e[(0, 0)] - c(1.0, 0.0).exp()).norm() < 1e-14);
        assert!((e[(1, 1)] - c(-2.0, 3.0).exp()).norm() < 1e-14);

        // exp(θ J) with J the 2x2 rotation generator, large θ forces squaring.
        let theta = 40.0;
        let j = matrix_from_row_major(
            2,
            2,
            &[c(0.0, 0.0), c(-theta, 0.0), c(theta, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let r = expm(&j).unwrap();
        assert!((r[(0, 0)].re - theta.cos()).abs() < 1e-12);
        assert!((r[(1, 0)].re - theta.sin()).abs() < 1e-12);
    }

    #[test]
    fn exp_kernel_constant_integrand() {
        let kappa = 7.0;
        let res = integrate_exp_kernel(|_| CMatrix::identity(2, 2), c(kappa, 0.0)).unwrap();
        let expected = CMatrix::identity(2, 2) / c(kappa, 0.0);
        assert!((res.value - expected).iter().all(|z| z.norm() < 1e-10));
        assert!(res.tail_bound < 1e-17);
    }

    #[test]
    fn exp_kernel_lorentzian_factors() {
        for kappa in [10.0, 100.0, 1000.0] {
            for omega in [0.0, 122.5, -122.5, 245.0, -245.0] {
                let delta = 3.0;
                let res = integrate_exp_kernel(
                    |t| CMatrix::identity(1, 1) * c(0.0, omega * t).exp(),
                    c(kappa, delta),
                )
                .unwrap();
                let expected = c(1.0, 0.0) / c(kappa, delta - omega);
                assert!(
                    (res.value[(0, 0)] - expected).norm() < 1e-9,
                    "kappa={kappa} omega={omega}"
                );
            }
        }
    }

    #[test]
    fn exp_kernel_rejects_nonpositive_decay() {
        assert!(integrate_exp_kernel(|_| CMatrix::identity(1, 1), c(0.0, 1.0)).is_err());
    }

    #[test]
    fn exp_kernel_panel_limit() {
        // Far too oscillatory to resolve within the panel budget.
        let err = integrate_exp_kernel(
            |t| CMatrix::identity(1, 1) * c(0.0, 1e9 * t).exp(),
            c(1.0, 0.0),
        );
        assert!(matches!(err, Err(Error::ToleranceNotMet { .. })));
    }
}
