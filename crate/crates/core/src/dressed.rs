//! Dressed-state picture: eigenbasis of H_A, secular transition rates,
//! rate-equation populations and the secular decay constants used by the
//! analytic spectra.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::model::{self, DressedScalars, SystemParams};
use crate::steady::SteadyState;

/// Tolerance of the closed-form basis against H_A·|α⟩ = λ_α|α⟩, relative to Ω_R.
pub const DRESSING_TOL: f64 = 1e-8;

/// |a⟩, |b⟩, |c⟩ as columns in the bare basis (|0⟩, |1⟩, |2⟩).
#[derive(Debug, Clone)]
pub struct DressedBasis {
    pub vectors: CMatrix,
    /// (−Ω_R, 0, +Ω_R).
    pub eigenvalues: [f64; 3],
    pub scalars: DressedScalars,
}

impl DressedBasis {
    /// Column `alpha` (0 = a, 1 = b, 2 = c).
    pub fn state(&self, alpha: usize) -> CMatrix {
        self.vectors.columns(alpha, 1).into_owned()
    }

    /// Matrix elements ⟨α|X|β⟩.
    pub fn transform(&self, x: &CMatrix) -> CMatrix {
        self.vectors.adjoint() * x * &self.vectors
    }
}

/// Closed-form coefficients with real, fixed signs:
/// |a⟩ = ½[4η|0⟩ − (1+ε)|1⟩ − (1−ε)|2⟩],
/// |b⟩ = ε|0⟩ + 2η|1⟩ − 2η|2⟩,
/// |c⟩ = ½[4η|0⟩ + (1−ε)|1⟩ + (1+ε)|2⟩].
pub fn dressed_basis(p: &SystemParams) -> Result<DressedBasis> {
    let d = model::dressed_scalars(p)?;
    let (n, e) = (d.eta, d.epsilon);
    let cols = [
        [2.0 * n, -(1.0 + e) / 2.0, -(1.0 - e) / 2.0],
        [e, 2.0 * n, -2.0 * n],
        [2.0 * n, (1.0 - e) / 2.0, (1.0 + e) / 2.0],
    ];
    let vectors = CMatrix::from_fn(3, 3, |i, alpha| C64::from(cols[alpha][i]));
    let eigenvalues = [-d.omega_r, 0.0, d.omega_r];

    let h = model::atom_hamiltonian(p);
    let mut deviation: f64 = 0.0;
    for (alpha, &lambda) in eigenvalues.iter().enumerate() {
        let v = vectors.column(alpha);
        let r = &h * v - v * C64::from(lambda);
        deviation = deviation.max(r.iter().map(|z| z.norm()).fold(0.0, f64::max) / d.omega_r);
    }
    let unitarity = vectors.adjoint() * &vectors - CMatrix::identity(3, 3);
    deviation = deviation.max(unitarity.iter().map(|z| z.norm()).fold(0.0, f64::max));
    if deviation > DRESSING_TOL {
        return Err(Error::DressingMismatch { deviation });
    }
    Ok(DressedBasis {
        vectors,
        eigenvalues,
        scalars: d,
    })
}

/// Cavity absorption profile R(x) = κ²/[κ² + (δ+x)²].
pub fn lorentz_r(p: &SystemParams, x: f64) -> f64 {
    let u = p.delta + x;
    p.kappa * p.kappa / (p.kappa * p.kappa + u * u)
}

/// Cavity dispersion profile I(x) = κ(δ+x)/[κ² + (δ+x)²].
pub fn lorentz_i(p: &SystemParams, x: f64) -> f64 {
    let u = p.delta + x;
    p.kappa * u / (p.kappa * p.kappa + u * u)
}

/// Secular transition rates between dressed states; `r_ab` is |a⟩ → |b⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRates {
    pub r_ab: f64,
    pub r_ba: f64,
    pub r_ac: f64,
    pub r_ca: f64,
    pub r_bc: f64,
    pub r_cb: f64,
    /// Set when Ω_R < 10·max(γ, γ_c).
    pub secular_advisory: bool,
}

pub fn secular_advisory(p: &SystemParams, omega_r: f64) -> bool {
    omega_r < 10.0 * p.gamma.max(p.gamma_c())
}

pub fn transition_rates(p: &SystemParams) -> Result<TransitionRates> {
    let d = model::dressed_scalars(p)?;
    let (g, gc, w) = (p.gamma, p.gamma_c(), d.omega_r);
    let e2 = d.epsilon * d.epsilon;
    let n2 = d.eta * d.eta;
    let r = |x| lorentz_r(p, x);
    let side = 0.5 * g * (1.0 - e2) * (1.0 - e2);
    let inner = 0.5 * g * (1.0 + e2) * e2;
    let outer = 0.25 * g * (1.0 - e2 * e2);
    Ok(TransitionRates {
        r_ab: inner + gc * e2 * r(w),
        r_cb: inner + gc * e2 * r(-w),
        r_ac: outer + gc * 4.0 * n2 * r(2.0 * w),
        r_ca: outer + gc * 4.0 * n2 * r(-2.0 * w),
        r_ba: side,
        r_bc: side,
        secular_advisory: secular_advisory(p, w),
    })
}

/// Generator of d(ρaa, ρbb, ρcc)/dt; columns sum to zero.
pub fn rate_matrix(r: &TransitionRates) -> [[f64; 3]; 3] {
    [
        [-(r.r_ab + r.r_ac), r.r_ba, r.r_ca],
        [r.r_ab, -(r.r_ba + r.r_bc), r.r_cb],
        [r.r_ac, r.r_bc, -(r.r_ca + r.r_cb)],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PopulationSource {
    RateEquation,
    ExactTransform,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedPopulations {
    pub p_aa: f64,
    pub p_bb: f64,
    pub p_cc: f64,
    pub source: PopulationSource,
}

impl DressedPopulations {
    pub fn as_array(&self) -> [f64; 3] {
        [self.p_aa, self.p_bb, self.p_cc]
    }
}

/// Closed-form stationary solution of the dressed rate equations.
pub fn dressed_populations_rate_eq(r: &TransitionRates) -> Result<DressedPopulations> {
    let den = (r.r_ab + r.r_ac + r.r_ba) * (r.r_ca + r.r_cb + r.r_bc)
        - (r.r_ca - r.r_ba) * (r.r_ac - r.r_bc);
    if den.abs() < 1e-14 {
        return Err(Error::SingularRateMatrix { denominator: den });
    }
    let p_aa = (r.r_ba * (r.r_ca + r.r_cb + r.r_bc) + r.r_bc * (r.r_ca - r.r_ba)) / den;
    let p_cc = (r.r_ba * (r.r_ac - r.r_bc) + r.r_bc * (r.r_ab + r.r_ac + r.r_ba)) / den;
    Ok(DressedPopulations {
        p_aa,
        p_bb: 1.0 - p_aa - p_cc,
        p_cc,
        source: PopulationSource::RateEquation,
    })
}

/// ⟨α|ρ_ss|α⟩ for the exact steady state.
pub fn dressed_populations_exact(
    ss: &SteadyState,
    basis: &DressedBasis,
) -> Result<DressedPopulations> {
    let expected = model::dressed_scalars(&ss.params)?;
    if expected != basis.scalars {
        return Err(Error::InvalidParams(
            "steady state and dressed basis belong to different parameters".into(),
        ));
    }
    let rho = basis.transform(&ss.rho);
    Ok(DressedPopulations {
        p_aa: rho[(0, 0)].re,
        p_bb: rho[(1, 1)].re,
        p_cc: rho[(2, 2)].re,
        source: PopulationSource::ExactTransform,
    })
}

/// Which transcription of Γ5 to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gamma5Variant {
    /// Last bracket 4η²[R(2Ω_R) + R(−2Ω_R)], symmetric under δ → −δ.
    #[default]
    Corrected,
    /// Last bracket 4η²[R(2Ω_R) + 4η²R(−2Ω_R)] as printed.
    PaperExact,
}

/// Decay constants and shifted frequencies of the secular equations for the
/// dressed density-matrix elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularRates {
    pub gamma_1a: f64,
    pub gamma_1b: f64,
    pub gamma_2a: f64,
    pub gamma_2b: f64,
    pub gamma_3a: f64,
    pub gamma_3b: f64,
    pub gamma_4: f64,
    pub gamma_5: f64,
    pub omega_3: f64,
    pub omega_4: f64,
    pub omega_5: f64,
}

pub fn secular_rates(p: &SystemParams, variant: Gamma5Variant) -> Result<SecularRates> {
    let d = model::dressed_scalars(p)?;
    let (g, gc, w) = (p.gamma, p.gamma_c(), d.omega_r);
    let e2 = d.epsilon * d.epsilon;
    let e4 = e2 * e2;
    let n2 = d.eta * d.eta;
    let r = |x| lorentz_r(p, x);
    let i = |x| lorentz_i(p, x);

    let pop = 0.25 * g * (3.0 - 2.0 * e2 + 3.0 * e4);
    let transfer = 0.5 * g * (1.0 - e2) * (3.0 * e2 - 1.0);
    let coherence = 0.25 * g * (3.0 + e2 - 2.0 * e4);
    let last = match variant {
        Gamma5Variant::Corrected => r(2.0 * w) + r(-2.0 * w),
        Gamma5Variant::PaperExact => r(2.0 * w) + 4.0 * n2 * r(-2.0 * w),
    };
    Ok(SecularRates {
        gamma_1a: pop + gc * (e2 * r(w) + 4.0 * n2 * r(2.0 * w)),
        gamma_1b: pop + gc * (e2 * r(-w) + 4.0 * n2 * r(-2.0 * w)),
        gamma_2a: transfer + gc * 4.0 * n2 * r(-2.0 * w),
        gamma_2b: transfer + gc * 4.0 * n2 * r(2.0 * w),
        gamma_3a: coherence + 0.5 * gc * (4.0 * n2 * r(0.0) + e2 * r(w) + 4.0 * n2 * r(2.0 * w)),
        gamma_3b: coherence + 0.5 * gc * (4.0 * n2 * r(0.0) + e2 * r(-w) + 4.0 * n2 * r(-2.0 * w)),
        gamma_4: -0.5 * g * e2 * (1.0 - e2),
        gamma_5: 0.25 * g * (3.0 + e4)
            + 0.5 * gc * (16.0 * n2 * r(0.0) + e2 * (r(w) + r(-w)) + 4.0 * n2 * last),
        omega_3: w + 0.5 * gc * (4.0 * n2 * i(0.0) + e2 * i(w) + 4.0 * n2 * i(2.0 * w)),
        omega_4: w + 0.5 * gc * (4.0 * n2 * i(0.0) + e2 * i(-w) + 4.0 * n2 * i(-2.0 * w)),
        omega_5: 2.0 * w + 0.5 * gc * (e2 * (i(w) - i(-w)) + 4.0 * n2 * (i(2.0 * w) - i(-2.0 * w))),
    })
}

/// Populations from the numerical kernel of the rate matrix, normalized to
/// unit sum. Independent of the closed-form quotients.
pub fn rate_matrix_kernel(r: &TransitionRates) -> Result<[f64; 3]> {
    let m = rate_matrix(r);
    let a = CMatrix::from_fn(3, 3, |i, j| C64::from(m[i][j]));
    let v = linalg::null_space_1d(&a)?;
    let s: C64 = v.iter().sum();
    Ok([(v[0] / s).re, (v[1] / s).re, (v[2] / s).re])
}
