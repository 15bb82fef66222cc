//! Resonance fluorescence and probe absorption spectra.
//!
//! The exact spectra use the quantum regression theorem in the Laplace
//! domain. For an operator-valued initial condition X₀ with stationary part
//! X∞ = tr(X₀)·ρ_ss, the transform x(z) = (z − L)⁻¹ vec(X₀ − X∞) is
//! obtained from the regularized system
//!
//! ```text
//! (iω − L + vec(ρ_ss)·tᵀ) x = vec(X₀ − X∞)
//! ```
//!
//! where t is the trace functional. The right-hand side is traceless, which
//! forces tᵀx = 0, so the extra term vanishes on the solution while making
//! the matrix invertible at ω = 0.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::dressed::{self, Gamma5Variant, SecularRates};
use crate::error::{Error, Result};
use crate::grid;
use crate::linalg::{self, CMatrix, CVector};
use crate::model::{self, dyad, SOperatorSource, SystemParams};
use crate::steady::{self, SteadyState};
use crate::superop;

/// Upper end of the correlation-time window, in units of 1/γ.
pub const TAU_MAX: f64 = 40.0;
/// Frequency nudge applied when a resolvent solve is singular.
pub const RESOLVENT_NUDGE: f64 = 1e-9;
/// Largest stationary residual tolerated by the absorption commutator.
pub const STATIONARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    FluorescenceQrt,
    /// Fourier transform of the time-domain correlation function.
    FluorescenceFft,
    FluorescenceSecular,
    Absorption,
}

#[derive(Debug, Clone)]
pub struct SpectrumSeries {
    /// Frequency relative to the laser, units of γ.
    pub freqs: Vec<f64>,
    pub values: Vec<f64>,
    pub kind: SpectrumKind,
    pub params: SystemParams,
}

impl SpectrumSeries {
    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }

    /// Largest value (and its frequency) with |ω − center| ≤ half_width.
    pub fn peak_in_window(&self, center: f64, half_width: f64) -> Option<(f64, f64)> {
        self.freqs
            .iter()
            .zip(&self.values)
            .filter(|(w, _)| (**w - center).abs() <= half_width)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(w, v)| (*w, *v))
    }

    /// Trapezoid integral over grid points inside [lo, hi].
    pub fn window_integral(&self, lo: f64, hi: f64) -> f64 {
        let pts: Vec<(f64, f64)> = self
            .freqs
            .iter()
            .zip(&self.values)
            .filter(|(w, _)| **w >= lo && **w <= hi)
            .map(|(w, v)| (*w, *v))
            .collect();
        pts.windows(2)
            .map(|s| 0.5 * (s[1].0 - s[0].0) * (s[0].1 + s[1].1))
            .sum()
    }

    /// max |S(ω) − S(−ω)| / max |S| on a grid symmetric about zero.
    pub fn asymmetry(&self) -> Result<f64> {
        let n = self.freqs.len();
        let symmetric = (0..n).all(|i| {
            (self.freqs[i] + self.freqs[n - 1 - i]).abs() <= 1e-9 * self.freqs[i].abs().max(1.0)
        });
        if !symmetric {
            return Err(Error::InvalidGrid(
                "grid is not symmetric about zero".into(),
            ));
        }
        let scale = self.max_abs();
        Ok((0..n)
            .map(|i| (self.values[i] - self.values[n - 1 - i]).abs())
            .fold(0.0, f64::max)
            / scale)
    }
}

/// Reduced Liouvillian and stationary state, shared by all resolvent solves.
#[derive(Debug, Clone)]
pub struct QrtSystem {
    pub liouvillian: CMatrix,
    pub steady: SteadyState,
    regularizer: CMatrix,
}

impl QrtSystem {
    pub fn new(p: &SystemParams, source: SOperatorSource) -> Result<Self> {
        let l = model::build_reduced_liouvillian_with(p, source)?;
        let steady = steady::steady_state(&l)?;
        let t = superop::trace_functional(3);
        let regularizer = superop::vectorize(&steady.rho) * t.transpose();
        Ok(Self {
            liouvillian: l.matrix,
            steady,
            regularizer,
        })
    }

    pub fn rho(&self) -> &CMatrix {
        &self.steady.rho
    }

    /// X₀ − tr(X₀)·ρ_ss.
    pub fn subtract_stationary(&self, x0: &CMatrix) -> CMatrix {
        x0 - self.rho() * x0.trace()
    }

    /// Solves (iω − L + vec(ρ)tᵀ) x = rhs for each rhs; every rhs must be
    /// traceless.
    pub fn resolve(&self, omega: f64, rhs: &[CVector]) -> Result<Vec<CVector>> {
        match self.resolve_at(omega, rhs) {
            Err(Error::SingularMatrix { .. }) => self
                .resolve_at(omega + RESOLVENT_NUDGE, rhs)
                .map_err(|_| Error::ResolventSingular { omega }),
            other => other,
        }
    }

    fn resolve_at(&self, omega: f64, rhs: &[CVector]) -> Result<Vec<CVector>> {
        let n = self.liouvillian.nrows();
        let m =
            CMatrix::identity(n, n) * C64::new(0.0, omega) - &self.liouvillian + &self.regularizer;
        rhs.iter()
            .map(|b| linalg::solve_linear(&m, b).map(|s| s.x))
            .collect()
    }

    /// Subtracted fluorescence initial conditions F₀ − F∞ and G₀ − G∞, with
    /// F₀ = |0⟩⟨1|ρ and G₀ = |0⟩⟨2|ρ.
    pub fn fluorescence_initial(&self) -> [CMatrix; 2] {
        [
            self.subtract_stationary(&(dyad(0, 1) * self.rho())),
            self.subtract_stationary(&(dyad(0, 2) * self.rho())),
        ]
    }

    /// τ = 0 value of the subtracted correlation,
    /// ρ11 + ρ22 − |ρ01|² − |ρ02|².
    pub fn incoherent_intensity(&self) -> f64 {
        let r = self.rho();
        r[(1, 1)].re + r[(2, 2)].re - r[(0, 1)].norm_sqr() - r[(0, 2)].norm_sqr()
    }
}

/// π(ρ11 + ρ22 − |ρ01|² − |ρ02|²), the total inelastic fluorescence.
pub fn sum_rule_target(sys: &QrtSystem) -> f64 {
    std::f64::consts::PI * sys.incoherent_intensity()
}

pub fn fluorescence_qrt(p: &SystemParams, freqs: &[f64]) -> Result<SpectrumSeries> {
    fluorescence_qrt_with(p, freqs, SOperatorSource::default())
}

pub fn fluorescence_qrt_with(
    p: &SystemParams,
    freqs: &[f64],
    source: SOperatorSource,
) -> Result<SpectrumSeries> {
    grid::ensure_sorted(freqs)?;
    let sys = QrtSystem::new(p, source)?;
    fluorescence_from_system(&sys, p, freqs)
}

pub fn fluorescence_from_system(
    sys: &QrtSystem,
    p: &SystemParams,
    freqs: &[f64],
) -> Result<SpectrumSeries> {
    let [f, g] = sys.fluorescence_initial();
    let rhs = [superop::vectorize(&f), superop::vectorize(&g)];
    let (i01, i02) = (superop::vec_index(3, 0, 1), superop::vec_index(3, 0, 2));
    let values = freqs
        .par_iter()
        .map(|&w| {
            let x = sys.resolve(w, &rhs)?;
            Ok((x[0][i01] + x[1][i02]).re)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SpectrumSeries {
        freqs: freqs.to_vec(),
        values,
        kind: SpectrumKind::FluorescenceQrt,
        params: *p,
    })
}

/// Spectrum of the cross terms ⟨A₁₀(τ)A₀₂⟩ + ⟨A₂₀(τ)A₀₁⟩, which the detection
/// model excludes (orthogonal dipoles). Diagnostic only.
pub fn fluorescence_cross_terms(p: &SystemParams, freqs: &[f64]) -> Result<SpectrumSeries> {
    grid::ensure_sorted(freqs)?;
    let sys = QrtSystem::new(p, SOperatorSource::default())?;
    let [f, g] = sys.fluorescence_initial();
    let rhs = [superop::vectorize(&f), superop::vectorize(&g)];
    let (i01, i02) = (superop::vec_index(3, 0, 1), superop::vec_index(3, 0, 2));
    let values = freqs
        .par_iter()
        .map(|&w| {
            let x = sys.resolve(w, &rhs)?;
            Ok((x[0][i02] + x[1][i01]).re)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SpectrumSeries {
        freqs: freqs.to_vec(),
        values,
        kind: SpectrumKind::FluorescenceQrt,
        params: *p,
    })
}

fn correlation_readout(l_tau: &CMatrix, v: &[CVector; 2]) -> C64 {
    let (i01, i02) = (superop::vec_index(3, 0, 1), superop::vec_index(3, 0, 2));
    let f = l_tau * &v[0];
    let g = l_tau * &v[1];
    f[i01] + g[i02]
}

/// Subtracted correlation ⟨A₁₀(τ)A₀₁⟩ + ⟨A₂₀(τ)A₀₂⟩ − stationary part, by
/// exponentiating the Liouvillian at every τ.
pub fn correlation_oracle(p: &SystemParams, taus: &[f64]) -> Result<Vec<C64>> {
    if taus.iter().any(|&t| !(0.0..=TAU_MAX).contains(&t)) {
        return Err(Error::InvalidGrid(format!(
            "tau values must lie in [0, {TAU_MAX}]"
        )));
    }
    let sys = QrtSystem::new(p, SOperatorSource::default())?;
    let [f, g] = sys.fluorescence_initial();
    let v = [superop::vectorize(&f), superop::vectorize(&g)];
    taus.par_iter()
        .map(|&t| {
            let prop = linalg::expm(&(&sys.liouvillian * C64::from(t)))?;
            Ok(correlation_readout(&prop, &v))
        })
        .collect()
}

/// Subtracted correlation at τ = k·dt for k < count, stepping with a single
/// propagator e^{L·dt}.
pub fn correlation_uniform(sys: &QrtSystem, dt: f64, count: usize) -> Result<Vec<C64>> {
    let step = linalg::expm(&(&sys.liouvillian * C64::from(dt)))?;
    let [f, g] = sys.fluorescence_initial();
    let mut v = [superop::vectorize(&f), superop::vectorize(&g)];
    let identity = CMatrix::identity(9, 9);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(correlation_readout(&identity, &v));
        v = [&step * &v[0], &step * &v[1]];
    }
    Ok(out)
}

/// Fluorescence spectrum from the time-domain correlation function by FFT.
///
/// The grid must be uniform. The correlation is sampled on [0, 40/γ] (zero
/// beyond) with a step fine enough that the Nyquist band spans ten times the
/// spectral extent, and the transform uses the trapezoid rule so that the
/// τ = 0 sample carries half weight.
pub fn fluorescence_fft(p: &SystemParams, freqs: &[f64]) -> Result<SpectrumSeries> {
    grid::ensure_sorted(freqs)?;
    let h = grid::uniform_step(freqs)
        .ok_or_else(|| Error::InvalidGrid("FFT path needs a uniform grid".into()))?;
    let omega_r = model::dressed_scalars(p)?.omega_r;
    let sys = QrtSystem::new(p, SOperatorSource::default())?;

    let two_pi = 2.0 * std::f64::consts::PI;
    let m = (TAU_MAX * h / two_pi).ceil().max(1.0) as usize;
    let band = freqs[0]
        .abs()
        .max(freqs[freqs.len() - 1].abs())
        .max(2.5 * omega_r);
    let n = (m as f64 * 20.0 * band / h).ceil() as usize;
    let dt = m as f64 * two_pi / (h * n as f64);
    let samples = ((TAU_MAX / dt).floor() as usize + 1).min(n);

    let corr = correlation_uniform(&sys, dt, samples)?;
    let w0 = freqs[0];
    let mut buffer: Vec<C64> = (0..n)
        .map(|k| {
            if k < samples {
                corr[k] * C64::new(0.0, -w0 * k as f64 * dt).exp()
            } else {
                C64::from(0.0)
            }
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);

    let half_first = 0.5 * corr[0];
    let values = (0..freqs.len())
        .map(|j| ((buffer[(j * m) % n] - half_first) * dt).re)
        .collect();
    Ok(SpectrumSeries {
        freqs: freqs.to_vec(),
        values,
        kind: SpectrumKind::FluorescenceFft,
        params: *p,
    })
}

/// Linewidths (full widths) of the secular components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularLinewidths {
    /// 2γ₀⁺ and 2γ₀⁻ of the central component.
    pub central: [f64; 2],
    /// 2γ₁⁺ and 2γ₁⁻ of the inner sidebands.
    pub inner: [f64; 2],
    /// 2Γ5 of the outer sidebands.
    pub outer: f64,
}

/// (a + b) ± √((a − b)² + 4c). A negative discriminant means the two
/// Lorentzians merge into a complex pair sharing the width a + b.
fn paired_widths(a: f64, b: f64, c: f64) -> [f64; 2] {
    let disc = (a - b) * (a - b) + 4.0 * c;
    let root = disc.max(0.0).sqrt();
    [a + b + root, a + b - root]
}

pub fn secular_linewidths(s: &SecularRates) -> SecularLinewidths {
    SecularLinewidths {
        central: paired_widths(s.gamma_1a, s.gamma_1b, s.gamma_2a * s.gamma_2b),
        inner: paired_widths(s.gamma_3a, s.gamma_3b, s.gamma_4 * s.gamma_4),
        outer: 2.0 * s.gamma_5,
    }
}

#[derive(Debug, Clone)]
pub struct SecularComponents {
    pub central: SpectrumSeries,
    pub inner_low: SpectrumSeries,
    pub inner_high: SpectrumSeries,
    pub outer_low: SpectrumSeries,
    pub outer_high: SpectrumSeries,
    pub total: SpectrumSeries,
    pub rates: SecularRates,
    pub linewidths: SecularLinewidths,
    /// Set when Ω_R < 10·max(γ, γ_c).
    pub secular_advisory: bool,
}

pub fn fluorescence_secular(p: &SystemParams, freqs: &[f64]) -> Result<SecularComponents> {
    fluorescence_secular_with(p, freqs, Gamma5Variant::default())
}

/// Five-component secular spectrum with rate-equation dressed populations.
pub fn fluorescence_secular_with(
    p: &SystemParams,
    freqs: &[f64],
    variant: Gamma5Variant,
) -> Result<SecularComponents> {
    grid::ensure_sorted(freqs)?;
    let d = model::dressed_scalars(p)?;
    let rates = dressed::transition_rates(p)?;
    let pops = dressed::dressed_populations_rate_eq(&rates)?;
    let s = dressed::secular_rates(p, variant)?;
    let (pa, pb, pc) = (pops.p_aa, pops.p_bb, pops.p_cc);
    let e2 = d.epsilon * d.epsilon;
    let n2 = d.eta * d.eta;
    let c = C64::from;
    let i = C64::i();

    let mut parts = [(); 5].map(|_| Vec::with_capacity(freqs.len()));
    for &w in freqs {
        let z = C64::new(0.0, w);
        let n0 =
            c(4.0 * n2) * (2.0 * z + s.gamma_1a + s.gamma_1b - s.gamma_2a - s.gamma_2b) * pa * pc
                - c(2.0 * n2 * (1.0 - 9.0 * e2) * (s.gamma_2a * pc + s.gamma_2b * pa) * pb)
                + c(2.0 * n2 * (1.0 + 9.0 * e2) * pb)
                    * ((z + s.gamma_1a) * pc + (z + s.gamma_1b) * pa);
        let central = n0 / ((z + s.gamma_1a) * (z + s.gamma_1b) - s.gamma_2a * s.gamma_2b);

        let za = z + s.gamma_3a + i * s.omega_3;
        let zb = z + s.gamma_3b + i * s.omega_4;
        let low = (c(4.0 * n2) * (c(8.0 * n2) * za - e2 * s.gamma_4) * pb
            + c(0.5 * e2) * (c(1.0 + e2) * zb - 8.0 * n2 * s.gamma_4) * pa)
            / (za * zb - s.gamma_4 * s.gamma_4);

        let za = z + s.gamma_3a - i * s.omega_3;
        let zb = z + s.gamma_3b - i * s.omega_4;
        let high = (c(4.0 * n2) * (c(8.0 * n2) * zb - e2 * s.gamma_4) * pb
            + c(0.5 * e2) * (c(1.0 + e2) * za - 8.0 * n2 * s.gamma_4) * pc)
            / (za * zb - s.gamma_4 * s.gamma_4);

        let weight = 2.0 * n2 * (1.0 + e2);
        let outer_low = c(weight * pa) / (z + s.gamma_5 + i * s.omega_5);
        let outer_high = c(weight * pc) / (z + s.gamma_5 - i * s.omega_5);

        for (buf, v) in parts
            .iter_mut()
            .zip([central, low, high, outer_low, outer_high])
        {
            buf.push(v.re);
        }
    }
    let total: Vec<f64> = (0..freqs.len())
        .map(|k| parts.iter().map(|v| v[k]).sum())
        .collect();
    let series = |values: Vec<f64>| SpectrumSeries {
        freqs: freqs.to_vec(),
        values,
        kind: SpectrumKind::FluorescenceSecular,
        params: *p,
    };
    let [central, inner_low, inner_high, outer_low, outer_high] = parts;
    Ok(SecularComponents {
        central: series(central),
        inner_low: series(inner_low),
        inner_high: series(inner_high),
        outer_low: series(outer_low),
        outer_high: series(outer_high),
        total: series(total),
        linewidths: secular_linewidths(&s),
        rates: s,
        secular_advisory: rates.secular_advisory,
    })
}

/// Probe absorption A(ν) = Re[F̃₀₁ + G̃₀₂ − F̃′₁₀ − G̃′₂₀] at z = iν with
/// F₀ = |0⟩⟨1|ρ, G₀ = |0⟩⟨2|ρ, F′₀ = ρ|1⟩⟨0|, G′₀ = ρ|2⟩⟨0|. Positive
/// values are absorption, negative values gain.
pub fn absorption_spectrum(p: &SystemParams, freqs: &[f64]) -> Result<SpectrumSeries> {
    absorption_spectrum_with(p, freqs, SOperatorSource::default())
}

pub fn absorption_spectrum_with(
    p: &SystemParams,
    freqs: &[f64],
    source: SOperatorSource,
) -> Result<SpectrumSeries> {
    grid::ensure_sorted(freqs)?;
    let sys = QrtSystem::new(p, source)?;
    let rho = sys.rho().clone();
    let initial = [
        dyad(0, 1) * &rho,
        dyad(0, 2) * &rho,
        &rho * dyad(1, 0),
        &rho * dyad(2, 0),
    ];
    let readout = [(0, 1), (0, 2), (1, 0), (2, 0)];
    let signs = [1.0, 1.0, -1.0, -1.0];

    // The elastic parts tr(X₀)·ρ_ij cancel between the primed and unprimed
    // terms; check before dropping them.
    let stationary: C64 = (0..4)
        .map(|k| initial[k].trace() * rho[readout[k]] * signs[k])
        .sum();
    if stationary.norm() > STATIONARY_TOL {
        return Err(Error::StationaryMismatch {
            residual: stationary.norm(),
        });
    }

    let rhs: Vec<CVector> = initial
        .iter()
        .map(|x| superop::vectorize(&sys.subtract_stationary(x)))
        .collect();
    let values = freqs
        .par_iter()
        .map(|&nu| {
            let x = sys.resolve(nu, &rhs)?;
            Ok((0..4)
                .map(|k| x[k][superop::vec_index(3, readout[k].0, readout[k].1)] * signs[k])
                .sum::<C64>()
                .re)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(SpectrumSeries {
        freqs: freqs.to_vec(),
        values,
        kind: SpectrumKind::Absorption,
        params: *p,
    })
}

/// Rate-equation estimates of the absorption line weights; positive is
/// absorption.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineWeights {
    pub w_minus2: f64,
    pub w_minus1: f64,
    pub w_plus1: f64,
    pub w_plus2: f64,
}

pub fn line_weights(p: &SystemParams) -> Result<LineWeights> {
    let r = dressed::transition_rates(p)?;
    let pops = dressed::dressed_populations_rate_eq(&r)?;
    let (pa, pc) = (pops.p_aa, pops.p_cc);
    let w_minus2 = pa * r.r_ac - pc * r.r_ca;
    let w_minus1 = pc * r.r_cb - pa * r.r_ab;
    Ok(LineWeights {
        w_minus2,
        w_minus1,
        w_plus1: -w_minus1,
        w_plus2: -w_minus2,
    })
}

/// Trapezoid integral of a spectrum plus a Lorentzian tail estimate
/// y(W)·|W| beyond each end of the grid.
pub fn spectral_integral(s: &SpectrumSeries) -> f64 {
    let n = s.freqs.len();
    if n < 2 {
        return 0.0;
    }
    let body = s.window_integral(s.freqs[0], s.freqs[n - 1]);
    let left = s.values[0] * s.freqs[0].abs();
    let right = s.values[n - 1] * s.freqs[n - 1].abs();
    body + left + right
}
