//! Physical model: parameters, dressed scalars, the cavity-filtered lowering
//! operator S, and the reduced and full Liouvillians.
//!
//! The symmetric configuration is hard-wired: both transitions share the
//! Rabi frequency Ω, the cavity coupling g and the decay rate γ, and the
//! laser is tuned to the mean Bohr frequency of the excited doublet
//! (Δ = ω21/2). The dipoles are orthogonal, so there is no cross damping
//! between the two transitions.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::superop;

/// Physical configuration, all in units of γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Spontaneous decay rate of each excited level.
    pub gamma: f64,
    /// Atom–cavity coupling.
    pub g: f64,
    /// Cavity field half-width.
    pub kappa: f64,
    /// Excited-state splitting ω2 − ω1.
    pub omega21: f64,
    /// Rabi frequency Ω on both transitions.
    pub rabi: f64,
    /// Cavity–laser detuning ω_C − ω_L.
    pub delta: f64,
}

impl Default for SystemParams {
    /// γ = 1, g = 20, κ = 100 as used for every figure; ω21 = 10, Ω = 100,
    /// δ = 0.
    fn default() -> Self {
        Self {
            gamma: 1.0,
            g: 20.0,
            kappa: 100.0,
            omega21: 10.0,
            rabi: 100.0,
            delta: 0.0,
        }
    }
}

impl SystemParams {
    /// Figure defaults (γ = 1, g = 20, κ = 100) with the given drive and detuning.
    pub fn figure(omega21: f64, rabi: f64, delta: f64) -> Self {
        Self {
            omega21,
            rabi,
            delta,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [
            self.gamma,
            self.g,
            self.kappa,
            self.omega21,
            self.rabi,
            self.delta,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.gamma <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "gamma must be > 0, got {}",
                self.gamma
            )));
        }
        if self.g < 0.0 {
            return Err(Error::InvalidParams(format!(
                "g must be >= 0, got {}",
                self.g
            )));
        }
        if self.kappa <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "kappa must be > 0, got {}",
                self.kappa
            )));
        }
        if self.rabi < 0.0 {
            return Err(Error::InvalidParams(format!(
                "rabi must be >= 0, got {}",
                self.rabi
            )));
        }
        Ok(())
    }

    /// Cavity-enhanced emission rate γ_c = 2g²/κ.
    pub fn gamma_c(&self) -> f64 {
        2.0 * self.g * self.g / self.kappa
    }

    /// Laser detuning from the upper excited level, Δ = ω21/2.
    pub fn laser_detuning(&self) -> f64 {
        0.5 * self.omega21
    }

    /// True when the parameters are outside κ ≥ 3g ≥ 9γ, i.e. the adiabatic
    /// elimination of the cavity is not clearly justified.
    pub fn bad_cavity_advisory(&self) -> bool {
        !(self.kappa >= 3.0 * self.g && self.g >= 3.0 * self.gamma)
    }

    pub fn with_delta(self, delta: f64) -> Self {
        Self { delta, ..self }
    }

    pub fn with_g(self, g: f64) -> Self {
        Self { g, ..self }
    }
}

/// Generalized Rabi frequency and the two mixing parameters of the dressed
/// states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedScalars {
    /// Ω_R = ½√(ω21² + 8Ω²).
    pub omega_r: f64,
    /// η = Ω / (2Ω_R).
    pub eta: f64,
    /// ε = ω21 / (2Ω_R).
    pub epsilon: f64,
}

pub fn dressed_scalars(p: &SystemParams) -> Result<DressedScalars> {
    p.validate()?;
    let omega_r = 0.5 * (p.omega21 * p.omega21 + 8.0 * p.rabi * p.rabi).sqrt();
    if omega_r == 0.0 {
        return Err(Error::DegenerateDressing);
    }
    Ok(DressedScalars {
        omega_r,
        eta: p.rabi / (2.0 * omega_r),
        epsilon: p.omega21 / (2.0 * omega_r),
    })
}

/// Dyad `|row⟩⟨col|` on the three-level atom.
pub fn dyad(row: usize, col: usize) -> CMatrix {
    let mut m = CMatrix::zeros(3, 3);
    m[(row, col)] = C64::from(1.0);
    m
}

/// Atomic Hamiltonian in the laser frame,
/// H_A = (Δ − ω21)A₁₁ + ΔA₂₂ + Ω(A₀₂ + A₂₀) + Ω(A₀₁ + A₁₀).
pub fn atom_hamiltonian(p: &SystemParams) -> CMatrix {
    let big_delta = p.laser_detuning();
    let mut h = CMatrix::zeros(3, 3);
    h[(1, 1)] = C64::from(big_delta - p.omega21);
    h[(2, 2)] = C64::from(big_delta);
    for j in 1..3 {
        h[(0, j)] = C64::from(p.rabi);
        h[(j, 0)] = C64::from(p.rabi);
    }
    h
}

/// Total lowering operator D = A₀₁ + A₀₂.
pub fn lowering_operator() -> CMatrix {
    dyad(0, 1) + dyad(0, 2)
}

/// Which transcription of the β table to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaVariant {
    /// β₆ row carries ε²(1±ε)/2, the mirror image of the β₄ row; reproduces
    /// the S integral exactly.
    #[default]
    Corrected,
    /// The table exactly as printed (β₆ row with ε(1±ε)/2).
    PaperExact,
}

/// Origin of a [`BetaSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaSource {
    ClosedFormCorrected,
    ClosedFormPaperExact,
    Oracle,
}

/// Coefficients of S on the dyads listed in [`BETA_DYADS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaSet {
    pub beta: [C64; 9],
    pub source: BetaSource,
}

/// Dyad `(row, col)` multiplied by β_i.
pub const BETA_DYADS: [(usize, usize); 9] = [
    (0, 0),
    (1, 1),
    (2, 2),
    (1, 0),
    (0, 1),
    (2, 0),
    (0, 2),
    (2, 1),
    (1, 2),
];

/// The five cavity response factors
/// κ/(κ+iδ), κ/(κ+i(δ∓Ω_R)), κ/(κ+i(δ∓2Ω_R)) in that order.
pub fn cavity_factors(p: &SystemParams, omega_r: f64) -> [C64; 5] {
    let k = C64::from(p.kappa);
    let f = |shift: f64| k / C64::new(p.kappa, p.delta + shift);
    [
        f(0.0),
        f(-omega_r),
        f(omega_r),
        f(-2.0 * omega_r),
        f(2.0 * omega_r),
    ]
}

/// The 9×5 coefficient matrix mapping the cavity factors onto β₀…β₈.
pub fn beta_table(d: &DressedScalars, variant: BetaVariant) -> [[f64; 5]; 9] {
    let (n, e) = (d.eta, d.epsilon);
    let n2 = n * n;
    let (beta6_1, beta6_2) = match variant {
        BetaVariant::Corrected => (e * e * (1.0 + e) / 2.0, e * e * (1.0 - e) / 2.0),
        BetaVariant::PaperExact => (e * (1.0 + e) / 2.0, e * (1.0 - e) / 2.0),
    };
    [
        [
            0.0,
            2.0 * n * e * e,
            -2.0 * n * e * e,
            8.0 * n2 * n,
            -8.0 * n2 * n,
        ],
        [
            -2.0 * n * e,
            n * e * (1.0 - e),
            n * e * (1.0 + e),
            -n * (1.0 - e * e) / 2.0,
            n * (1.0 - e * e) / 2.0,
        ],
        [
            2.0 * n * e,
            -n * e * (1.0 + e),
            -n * e * (1.0 - e),
            -n * (1.0 - e * e) / 2.0,
            n * (1.0 - e * e) / 2.0,
        ],
        [
            4.0 * n2,
            4.0 * n2 * e,
            -4.0 * n2 * e,
            -2.0 * n2 * (1.0 + e),
            -2.0 * n2 * (1.0 - e),
        ],
        [
            4.0 * n2,
            e * e * (1.0 - e) / 2.0,
            e * e * (1.0 + e) / 2.0,
            2.0 * n2 * (1.0 - e),
            2.0 * n2 * (1.0 + e),
        ],
        [
            4.0 * n2,
            -4.0 * n2 * e,
            4.0 * n2 * e,
            -2.0 * n2 * (1.0 - e),
            -2.0 * n2 * (1.0 + e),
        ],
        [
            4.0 * n2,
            beta6_1,
            beta6_2,
            2.0 * n2 * (1.0 + e),
            2.0 * n2 * (1.0 - e),
        ],
        [
            0.0,
            -n * e * (1.0 - e),
            -n * e * (1.0 + e),
            -n * (1.0 - e) * (1.0 - e) / 2.0,
            n * (1.0 + e) * (1.0 + e) / 2.0,
        ],
        [
            0.0,
            n * e * (1.0 + e),
            n * e * (1.0 - e),
            -n * (1.0 + e) * (1.0 + e) / 2.0,
            n * (1.0 - e) * (1.0 - e) / 2.0,
        ],
    ]
}

pub fn beta_closed_form(p: &SystemParams, variant: BetaVariant) -> Result<BetaSet> {
    let d = dressed_scalars(p)?;
    let table = beta_table(&d, variant);
    let factors = cavity_factors(p, d.omega_r);
    let mut beta = [C64::from(0.0); 9];
    for (b, row) in beta.iter_mut().zip(&table) {
        *b = row.iter().zip(&factors).map(|(c, f)| f * c).sum();
    }
    let source = match variant {
        BetaVariant::Corrected => BetaSource::ClosedFormCorrected,
        BetaVariant::PaperExact => BetaSource::ClosedFormPaperExact,
    };
    Ok(BetaSet { beta, source })
}

/// Assembles S = Σᵢ βᵢ A_(dyad i).
pub fn build_s_closed(beta: &BetaSet) -> CMatrix {
    let mut s = CMatrix::zeros(3, 3);
    for (b, &(r, c)) in beta.beta.iter().zip(&BETA_DYADS) {
        s[(r, c)] += b;
    }
    s
}

/// Reads the β coefficients back off a 3×3 operator.
pub fn beta_from_operator(s: &CMatrix) -> BetaSet {
    let mut beta = [C64::from(0.0); 9];
    for (b, &(r, c)) in beta.iter_mut().zip(&BETA_DYADS) {
        *b = s[(r, c)];
    }
    BetaSet {
        beta,
        source: BetaSource::Oracle,
    }
}

/// S = κ ∫₀^∞ e^{−(κ+iδ)τ} e^{−iH_Aτ} D e^{iH_Aτ} dτ evaluated by adaptive
/// quadrature; the propagators come from an eigendecomposition of H_A.
pub fn build_s_oracle(p: &SystemParams) -> Result<CMatrix> {
    p.validate()?;
    let (energies, vectors) = linalg::hermitian_eigen(&atom_hamiltonian(p))?;
    let d_dressed = vectors.adjoint() * lowering_operator() * &vectors;
    let vectors_h = vectors.adjoint();
    let integrand = |tau: f64| {
        let rotated = CMatrix::from_fn(3, 3, |a, b| {
            d_dressed[(a, b)] * C64::new(0.0, -(energies[a] - energies[b]) * tau).exp()
        });
        &vectors * rotated * &vectors_h
    };
    let tol = linalg::QUADRATURE_TOL / p.kappa;
    let integral =
        linalg::integrate_exp_kernel_with_tol(integrand, C64::new(p.kappa, p.delta), tol)?;
    Ok(integral.value * C64::from(p.kappa))
}

/// How the S operator entering the reduced master equation is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SOperatorSource {
    ClosedForm(BetaVariant),
    Oracle,
}

impl Default for SOperatorSource {
    fn default() -> Self {
        Self::ClosedForm(BetaVariant::Corrected)
    }
}

pub fn s_operator(p: &SystemParams, source: SOperatorSource) -> Result<CMatrix> {
    match source {
        SOperatorSource::ClosedForm(variant) => Ok(build_s_closed(&beta_closed_form(p, variant)?)),
        SOperatorSource::Oracle => build_s_oracle(p),
    }
}

/// Generator of the reduced (cavity-eliminated) atomic master equation on
/// row-major vectorized 3×3 density matrices.
#[derive(Debug, Clone)]
pub struct ReducedLiouvillian {
    pub matrix: CMatrix,
    pub params: SystemParams,
    pub s_operator: CMatrix,
}

impl ReducedLiouvillian {
    /// dρ/dt for the given ρ.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        superop::apply(&self.matrix, rho)
    }
}

pub fn build_reduced_liouvillian(p: &SystemParams) -> Result<ReducedLiouvillian> {
    build_reduced_liouvillian_with(p, SOperatorSource::default())
}

pub fn build_reduced_liouvillian_with(
    p: &SystemParams,
    source: SOperatorSource,
) -> Result<ReducedLiouvillian> {
    p.validate()?;
    // With γ_c = 0 the cavity term vanishes and S is never needed.
    let s = if p.gamma_c() > 0.0 {
        s_operator(p, source)?
    } else {
        CMatrix::zeros(3, 3)
    };
    reduced_liouvillian_from_s(p, s)
}

/// ρ̇ = −i[H_A, ρ] + (γ_c/2)(DρS† + SρD† − D†Sρ − ρS†D)
///      + Σⱼ (γ/2)(2A₀ⱼρAⱼ₀ − Aⱼⱼρ − ρAⱼⱼ).
pub fn reduced_liouvillian_from_s(p: &SystemParams, s: CMatrix) -> Result<ReducedLiouvillian> {
    p.validate()?;
    let d = lowering_operator();
    let dh = d.adjoint();
    let sh = s.adjoint();
    let cavity = superop::sandwich(&d, &sh) + superop::sandwich(&s, &dh)
        - superop::left(&(&dh * &s))
        - superop::right(&(&sh * &d));
    let matrix = superop::hamiltonian_generator(&atom_hamiltonian(p))
        + cavity * C64::from(0.5 * p.gamma_c())
        + superop::dissipator(&dyad(0, 1), p.gamma)
        + superop::dissipator(&dyad(0, 2), p.gamma);
    Ok(ReducedLiouvillian {
        matrix,
        params: *p,
        s_operator: s,
    })
}

/// Largest photon cutoff accepted by [`build_full_liouvillian`].
pub const MAX_PHOTONS: usize = 20;

/// Generator of the combined atom + cavity master equation on the truncated
/// space `atom ⊗ Fock(0..=n_max)`, atom index major.
#[derive(Debug, Clone)]
pub struct FullLiouvillian {
    pub matrix: CMatrix,
    pub n_max: usize,
    pub params: SystemParams,
}

impl FullLiouvillian {
    /// Hilbert-space dimension 3(n_max + 1).
    pub fn hilbert_dim(&self) -> usize {
        3 * (self.n_max + 1)
    }
}

/// Cavity annihilation operator truncated at `n_max` photons.
pub fn annihilation(n_max: usize) -> CMatrix {
    let dim = n_max + 1;
    let mut a = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::from((n as f64).sqrt());
    }
    a
}

pub fn build_full_liouvillian(p: &SystemParams, n_max: usize) -> Result<FullLiouvillian> {
    p.validate()?;
    if n_max > MAX_PHOTONS {
        return Err(Error::DimensionTooLarge {
            n_max,
            max: MAX_PHOTONS,
        });
    }
    let dim_c = n_max + 1;
    let id_a = CMatrix::identity(3, 3);
    let id_c = CMatrix::identity(dim_c, dim_c);
    let a = annihilation(n_max);
    let ad = a.adjoint();
    let atom = |op: &CMatrix| op.kronecker(&id_c);
    let field = |op: &CMatrix| id_a.kronecker(op);

    let mut h = atom(&atom_hamiltonian(p)) + field(&(&ad * &a)) * C64::from(p.delta);
    for j in 1..3 {
        h += (dyad(0, j).kronecker(&ad) + dyad(j, 0).kronecker(&a)) * C64::from(p.g);
    }
    // κ(2aρa† − a†aρ − ρa†a) is a standard dissipator with rate 2κ.
    let matrix = superop::hamiltonian_generator(&h)
        + superop::dissipator(&field(&a), 2.0 * p.kappa)
        + superop::dissipator(&atom(&dyad(0, 1)), p.gamma)
        + superop::dissipator(&atom(&dyad(0, 2)), p.gamma);
    Ok(FullLiouvillian {
        matrix,
        n_max,
        params: *p,
    })
}
