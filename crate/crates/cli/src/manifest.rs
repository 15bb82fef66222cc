//! Figure-reproduction manifests: a bound configuration, the table it
//! produces and the qualitative statements the published figure supports.
//!
//! Parameters are taken from the figure captions, with two exceptions:
//! frames d–f of the bare and dressed population figures, and the second
//! fluorescence figure, use ω21 = 200 as the text and every anchor value
//! require. The literal caption bindings are kept as `-caption` manifests
//! whose assertions are marked as known discrepancies.

use vatom_core::linalg::{self, CMatrix};
use vatom_core::model::SystemParams;
use vatom_core::spectra::{self, SpectrumKind as CoreKind, SpectrumSeries};
use vatom_core::{dressed, C64};

use crate::commands::{self, SpectrumKind};
use crate::config::{Entries, RunConfig};
use crate::error::{CliError, Result};
use crate::output::Table;
use crate::report::CheckOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Populations,
    Dressed,
    Spectrum(SpectrumKind),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Check {
    /// Unit trace, positivity and a small Liouvillian residual at every row.
    PhysicalStates,
    /// ρ00 → 0.5 far outside the cavity linewidth (δ = ±50κ).
    GroundTendsToHalf,
    /// All three populations near 1/3 at δ = ±50κ.
    PopulationsEqualize,
    GroundPeakAtResonance,
    Inversion,
    NoInversion,
    /// ρ11(δ) has local extrema within κ/4 of δ = ±2Ω_R; a cavity-mediated
    /// resonance cannot be located more finely than its linewidth.
    ResonancesAtTwoOmegaR,
    RateMirrorSymmetry,
    AccumulatesOnDetunedSide,
    DressedBNegligible,
    RateAgreesWithExact,
    Finite,
    Symmetric,
    Asymmetric,
    InnerHardlyVisible,
    FaintOuter,
    LowerOuterEnhanced,
    HigherInnerEnhanced,
    LowerInnerEnhanced,
    Gamma3a(f64),
    Gamma3b(f64),
    Antisymmetric,
    VanishesAtResonance,
    OuterLinesDominate,
    InnerLinesDominate,
    WindowSignsMatchWeights,
    /// max |A| exceeds that of the referenced manifest.
    Exceeds(&'static str),
    /// Some line flips between absorption and gain relative to the
    /// referenced manifest.
    SignSwitch(&'static str),
}

impl Check {
    pub fn name(&self) -> String {
        match self {
            Check::PhysicalStates => "physical_states".into(),
            Check::GroundTendsToHalf => "ground_tends_to_half".into(),
            Check::PopulationsEqualize => "populations_equalize".into(),
            Check::GroundPeakAtResonance => "ground_peak_at_resonance".into(),
            Check::Inversion => "inversion".into(),
            Check::NoInversion => "no_inversion".into(),
            Check::ResonancesAtTwoOmegaR => "resonances_at_2omega_r".into(),
            Check::RateMirrorSymmetry => "rate_mirror_symmetry".into(),
            Check::AccumulatesOnDetunedSide => "accumulates_on_detuned_side".into(),
            Check::DressedBNegligible => "dressed_b_negligible".into(),
            Check::RateAgreesWithExact => "rate_agrees_with_exact".into(),
            Check::Finite => "finite".into(),
            Check::Symmetric => "symmetric".into(),
            Check::Asymmetric => "asymmetric".into(),
            Check::InnerHardlyVisible => "inner_hardly_visible".into(),
            Check::FaintOuter => "faint_outer".into(),
            Check::LowerOuterEnhanced => "lower_outer_enhanced".into(),
            Check::HigherInnerEnhanced => "higher_inner_enhanced".into(),
            Check::LowerInnerEnhanced => "lower_inner_enhanced".into(),
            Check::Gamma3a(x) => format!("gamma_3a_anchor_{x}"),
            Check::Gamma3b(x) => format!("gamma_3b_anchor_{x}"),
            Check::Antisymmetric => "antisymmetric".into(),
            Check::VanishesAtResonance => "vanishes_at_resonance".into(),
            Check::OuterLinesDominate => "outer_lines_dominate".into(),
            Check::InnerLinesDominate => "inner_lines_dominate".into(),
            Check::WindowSignsMatchWeights => "window_signs_match_weights".into(),
            Check::Exceeds(id) => format!("exceeds_{id}"),
            Check::SignSwitch(id) => format!("sign_switch_vs_{id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assertion {
    pub check: Check,
    pub known_discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureManifest {
    pub id: String,
    pub output: Output,
    pub config: RunConfig,
    pub assertions: Vec<Assertion>,
}

const FRAMES: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];
const POPULATION_SETS: [(f64, f64); 6] = [
    (10.0, 4.0),
    (10.0, 10.0),
    (10.0, 100.0),
    (200.0, 100.0),
    (200.0, 200.0),
    (200.0, 300.0),
];
const FLUORESCENCE_SETS: [(u32, f64, f64); 4] = [
    (5, 10.0, 100.0),
    (6, 200.0, 50.0),
    (7, 200.0, 100.0),
    (8, 200.0, 200.0),
];
const FLUORESCENCE_DETUNINGS: [f64; 4] = [0.0, 1.0, 2.0, 10.0];
const ABSORPTION_SETS: [(u32, [(f64, f64); 2]); 2] = [
    (9, [(10.0, 100.0), (200.0, 50.0)]),
    (10, [(200.0, 100.0), (200.0, 200.0)]),
];
const ABSORPTION_DETUNINGS: [f64; 3] = [0.0, 1.0, 2.0];

fn bind(omega21: f64, rabi: f64, delta_in_omega_r: f64) -> RunConfig {
    let text = format!("omega21 = {omega21}\nrabi = {rabi}\ndelta = {delta_in_omega_r}*omega_r\n");
    RunConfig::from_entries(&Entries::parse_text(&text).expect("manifest entries are valid"))
        .expect("manifest parameters are valid")
}

fn checks(list: &[Check]) -> Vec<Assertion> {
    list.iter()
        .map(|&check| Assertion {
            check,
            known_discrepancy: false,
        })
        .collect()
}

fn known(list: &[Check]) -> Vec<Assertion> {
    list.iter()
        .map(|&check| Assertion {
            check,
            known_discrepancy: true,
        })
        .collect()
}

fn population_checks(frame: usize) -> (Vec<Check>, Vec<Check>) {
    use Check::*;
    let (ok, known): (&[Check], &[Check]) = match frame {
        0 => (&[PopulationsEqualize, GroundPeakAtResonance], &[]),
        // Ω_R = 15 is far below κ, so the ±2Ω_R resonances merge.
        1 => (&[], &[ResonancesAtTwoOmegaR]),
        2 => (&[GroundTendsToHalf, ResonancesAtTwoOmegaR], &[]),
        3 => (
            &[PopulationsEqualize, Inversion, ResonancesAtTwoOmegaR],
            &[],
        ),
        4 => (&[Inversion, ResonancesAtTwoOmegaR], &[]),
        _ => (&[NoInversion, ResonancesAtTwoOmegaR], &[]),
    };
    let mut ok = ok.to_vec();
    ok.insert(0, PhysicalStates);
    (ok, known.to_vec())
}

fn dressed_checks(frame: usize) -> Vec<Check> {
    use Check::*;
    let mut c = vec![Finite, RateMirrorSymmetry];
    if frame == 2 {
        c.extend([AccumulatesOnDetunedSide, DressedBNegligible]);
    }
    if frame >= 2 {
        c.push(RateAgreesWithExact);
    }
    c
}

fn fluorescence_checks(figure: u32, frame: usize) -> (Vec<Check>, Vec<Check>) {
    use Check::*;
    let (ok, known): (&[Check], &[Check]) = match (figure, frame) {
        (5, 0) => (&[Symmetric, InnerHardlyVisible], &[]),
        (5, 1) | (5, 2) => (&[LowerOuterEnhanced], &[]),
        (5, 3) => (&[Symmetric], &[]),
        (6, 0) => (&[Symmetric, FaintOuter, Gamma3a(2.51)], &[]),
        // The quoted Γ3a values at δ = Ω_R, 2Ω_R and Γ3b at δ = Ω_R do not
        // follow from the printed rates, which do reproduce the other two.
        (6, 1) => (&[HigherInnerEnhanced], &[Gamma3a(1.33), Gamma3b(4.40)]),
        (6, 2) => (&[HigherInnerEnhanced, Gamma3b(2.50)], &[Gamma3a(0.93)]),
        (7, 0) => (&[Symmetric, FaintOuter], &[]),
        (7, 1) => (&[HigherInnerEnhanced], &[]),
        (7, 2) => (&[LowerInnerEnhanced, LowerOuterEnhanced], &[]),
        (8, 0) => (&[Symmetric], &[]),
        (8, 1) => (&[Asymmetric], &[]),
        (8, 2) => (&[LowerInnerEnhanced, LowerOuterEnhanced], &[]),
        _ => (&[], &[]),
    };
    let mut ok = ok.to_vec();
    ok.insert(0, Finite);
    (ok, known.to_vec())
}

fn absorption_checks(figure: u32, frame: usize) -> (Vec<Check>, Vec<Check>) {
    use Check::*;
    let (ok, known): (&[Check], &[Check]) = match (figure, frame) {
        // The printed absorption expression is odd in ν and vanishes at
        // δ = 0, so the outer-line structure described for frame (a) cannot
        // appear.
        (9, 0) => (
            &[VanishesAtResonance, WindowSignsMatchWeights],
            &[OuterLinesDominate],
        ),
        (9, 1) => (
            &[
                OuterLinesDominate,
                WindowSignsMatchWeights,
                Exceeds("fig9a"),
            ],
            &[],
        ),
        // At δ = 2Ω_R the rate-equation weights flip sign while the
        // computed lines do not.
        (9, 2) => (
            &[OuterLinesDominate, Exceeds("fig9a"), Exceeds("fig9b")],
            &[WindowSignsMatchWeights],
        ),
        (9, 3) => (&[VanishesAtResonance, WindowSignsMatchWeights], &[]),
        (9, 4) => (
            &[
                InnerLinesDominate,
                WindowSignsMatchWeights,
                Exceeds("fig9d"),
            ],
            &[],
        ),
        (9, 5) => (
            &[InnerLinesDominate, Exceeds("fig9d")],
            &[WindowSignsMatchWeights],
        ),
        (10, 0) | (10, 3) => (&[VanishesAtResonance, WindowSignsMatchWeights], &[]),
        (10, 1) => (&[WindowSignsMatchWeights, Exceeds("fig10a")], &[]),
        (10, 2) => (&[Exceeds("fig10a")], &[WindowSignsMatchWeights]),
        (10, 4) => (&[WindowSignsMatchWeights, Exceeds("fig10d")], &[]),
        // Same origin: the switch is present in the weights, not in A(ν).
        (10, 5) => (
            &[Exceeds("fig10d")],
            &[SignSwitch("fig10e"), WindowSignsMatchWeights],
        ),
        _ => (&[], &[]),
    };
    let mut ok = ok.to_vec();
    ok.insert(0, Antisymmetric);
    (ok, known.to_vec())
}

pub fn all_manifests() -> Vec<FigureManifest> {
    let mut out = Vec::new();
    for (figure, output) in [(2, Output::Populations), (4, Output::Dressed)] {
        for (k, &(omega21, rabi)) in POPULATION_SETS.iter().enumerate() {
            let (ok, bad) = if figure == 2 {
                population_checks(k)
            } else {
                (dressed_checks(k), Vec::new())
            };
            let mut assertions = checks(&ok);
            assertions.extend(known(&bad));
            out.push(FigureManifest {
                id: format!("fig{figure}{}", FRAMES[k]),
                output,
                config: bind(omega21, rabi, 0.0),
                assertions,
            });
            if omega21 == 200.0 {
                let mut list = ok;
                list.extend(bad);
                out.push(FigureManifest {
                    id: format!("fig{figure}{}-caption", FRAMES[k]),
                    output,
                    config: bind(100.0, rabi, 0.0),
                    assertions: known(&list),
                });
            }
        }
    }
    for (figure, omega21, rabi) in FLUORESCENCE_SETS {
        for (k, &f) in FLUORESCENCE_DETUNINGS.iter().enumerate() {
            let (ok, bad) = fluorescence_checks(figure, k);
            let mut assertions = checks(&ok);
            assertions.extend(known(&bad));
            out.push(FigureManifest {
                id: format!("fig{figure}{}", FRAMES[k]),
                output: Output::Spectrum(SpectrumKind::Fluorescence),
                config: bind(omega21, rabi, f),
                assertions,
            });
        }
    }
    for (k, &f) in FLUORESCENCE_DETUNINGS.iter().enumerate().take(3) {
        let (_, bad) = fluorescence_checks(6, k);
        let mut list: Vec<Check> = fluorescence_checks(6, k).0;
        list.extend(bad);
        out.push(FigureManifest {
            id: format!("fig6{}-caption", FRAMES[k]),
            output: Output::Spectrum(SpectrumKind::Fluorescence),
            config: bind(20.0, 50.0, f),
            assertions: known(&list),
        });
    }
    for (figure, sets) in ABSORPTION_SETS {
        for (half, &(omega21, rabi)) in sets.iter().enumerate() {
            for (j, &f) in ABSORPTION_DETUNINGS.iter().enumerate() {
                let k = 3 * half + j;
                let (ok, bad) = absorption_checks(figure, k);
                let mut assertions = checks(&ok);
                assertions.extend(known(&bad));
                out.push(FigureManifest {
                    id: format!("fig{figure}{}", FRAMES[k]),
                    output: Output::Spectrum(SpectrumKind::Absorption),
                    config: bind(omega21, rabi, f),
                    assertions,
                });
            }
        }
    }
    out
}

pub fn manifest(id: &str) -> Option<FigureManifest> {
    all_manifests().into_iter().find(|m| m.id == id)
}

impl FigureManifest {
    /// Same manifest with the variant flags and output directory of `base`.
    pub fn with_run_options(mut self, base: &RunConfig) -> Self {
        self.config.beta_variant = base.beta_variant;
        self.config.gamma5_variant = base.gamma5_variant;
        self.config.out = base.out.clone();
        self
    }

    pub fn table(&self) -> Result<Table> {
        match self.output {
            Output::Populations => commands::populations(&self.config),
            Output::Dressed => commands::dressed(&self.config),
            Output::Spectrum(kind) => commands::spectrum(&self.config, kind),
        }
    }

    pub fn evaluate(&self, table: &Table) -> Result<Vec<CheckOutcome>> {
        self.assertions
            .iter()
            .map(|a| {
                let mut outcome = evaluate(a.check, self, table)?;
                outcome.known_discrepancy = a.known_discrepancy;
                Ok(outcome)
            })
            .collect()
    }
}

fn column(table: &Table, name: &str) -> Result<Vec<f64>> {
    table
        .column(name)
        .ok_or_else(|| CliError::Config(format!("table has no column '{name}'")))
}

fn nearest(xs: &[f64], target: f64) -> usize {
    (0..xs.len())
        .min_by(|&a, &b| (xs[a] - target).abs().total_cmp(&(xs[b] - target).abs()))
        .unwrap_or(0)
}

fn series(m: &FigureManifest, table: &Table) -> Result<SpectrumSeries> {
    Ok(SpectrumSeries {
        freqs: column(table, "freq")?,
        values: column(table, "value")?,
        kind: match m.output {
            Output::Spectrum(SpectrumKind::Absorption) => CoreKind::Absorption,
            Output::Spectrum(SpectrumKind::FluorescenceSecular) => CoreKind::FluorescenceSecular,
            _ => CoreKind::FluorescenceQrt,
        },
        params: m.config.params,
    })
}

/// Peak of the spectrum within ±0.1Ω_R of `center`.
fn peak(s: &SpectrumSeries, center: f64, omega_r: f64) -> f64 {
    s.peak_in_window(center, 0.1 * omega_r)
        .map_or(f64::NAN, |(_, v)| v)
}

fn peak_abs(s: &SpectrumSeries, centers: &[f64], omega_r: f64) -> f64 {
    s.freqs
        .iter()
        .zip(&s.values)
        .filter(|(w, _)| centers.iter().any(|c| (**w - c).abs() <= 0.1 * omega_r))
        .fold(0.0, |m, (_, v)| f64::max(m, v.abs()))
}

/// ±5γ window integrals around −2Ω_R, −Ω_R, +Ω_R, +2Ω_R.
fn line_windows(s: &SpectrumSeries, omega_r: f64, gamma: f64) -> [f64; 4] {
    [-2.0, -1.0, 1.0, 2.0]
        .map(|c| s.window_integral(c * omega_r - 5.0 * gamma, c * omega_r + 5.0 * gamma))
}

fn ratio_check(name: String, ratio: f64, threshold: f64) -> CheckOutcome {
    CheckOutcome::new(name, ratio, format!("> {threshold}"), ratio > threshold)
}

fn evaluate(check: Check, m: &FigureManifest, table: &Table) -> Result<CheckOutcome> {
    let name = check.name();
    let p: SystemParams = m.config.params;
    let omega_r = m.config.omega_r()?;
    let outcome = match check {
        Check::PhysicalStates => physical_states(name, table)?,
        Check::GroundTendsToHalf => {
            let dev = far_detuned(&m.config)?
                .iter()
                .fold(0.0, |d: f64, x| d.max((x[0] - 0.5).abs()));
            CheckOutcome::new(name, dev, "|rho00(+-50 kappa) - 0.5| <= 0.05", dev <= 0.05)
        }
        Check::PopulationsEqualize => {
            let dev = far_detuned(&m.config)?
                .iter()
                .flatten()
                .fold(0.0, |d: f64, x| d.max((x - 1.0 / 3.0).abs()));
            CheckOutcome::new(name, dev, "|rho_ii(+-50 kappa) - 1/3| <= 0.05", dev <= 0.05)
        }
        Check::GroundPeakAtResonance => {
            let d = column(table, m.config.sweep_var.name())?;
            let rho00 = column(table, "rho00")?;
            let at = |x: f64| rho00[nearest(&d, x)];
            let margin = at(0.0) - at(-0.25 * omega_r).max(at(0.25 * omega_r));
            ratio_check(name, margin, 0.0)
        }
        Check::Inversion | Check::NoInversion => {
            let rho00 = column(table, "rho00")?;
            let rho11 = column(table, "rho11")?;
            let rho22 = column(table, "rho22")?;
            let margin = (0..rho00.len())
                .map(|k| rho11[k].max(rho22[k]) - rho00[k])
                .fold(f64::NEG_INFINITY, f64::max);
            if check == Check::Inversion {
                CheckOutcome::new(name, margin, "max(rho_excited - rho00) > 0", margin > 0.0)
            } else {
                CheckOutcome::new(name, margin, "max(rho_excited - rho00) <= 0", margin <= 0.0)
            }
        }
        Check::ResonancesAtTwoOmegaR => {
            let d = column(table, m.config.sweep_var.name())?;
            let y = column(table, "rho11")?;
            let extrema: Vec<f64> = (1..y.len() - 1)
                .filter(|&k| (y[k] - y[k - 1]) * (y[k + 1] - y[k]) <= 0.0)
                .map(|k| d[k])
                .collect();
            let distance = [-2.0 * omega_r, 2.0 * omega_r]
                .iter()
                .map(|t| {
                    extrema
                        .iter()
                        .fold(f64::INFINITY, |m, e| m.min((e - t).abs()))
                })
                .fold(0.0, f64::max);
            let bound = 0.25 * p.kappa;
            CheckOutcome::new(name, distance, format!("<= {bound}"), distance <= bound)
        }
        Check::RateMirrorSymmetry => {
            let a = column(table, "p_aa_rate")?;
            let c = column(table, "p_cc_rate")?;
            let n = a.len();
            let dev = (0..n).fold(0.0, |m: f64, k| m.max((a[k] - c[n - 1 - k]).abs()));
            CheckOutcome::new(name, dev, "<= 1e-9", dev <= 1e-9)
        }
        Check::AccumulatesOnDetunedSide => {
            let d = column(table, m.config.sweep_var.name())?;
            let a = column(table, "p_aa")?;
            let c = column(table, "p_cc")?;
            let below = nearest(&d, -2.0 * omega_r);
            let above = nearest(&d, 2.0 * omega_r);
            let margin = (c[below] - a[below]).min(a[above] - c[above]);
            CheckOutcome::new(
                name,
                margin,
                "p_cc > p_aa at -2Omega_R and p_aa > p_cc at +2Omega_R",
                margin > 0.0,
            )
        }
        Check::DressedBNegligible => {
            let b = column(table, "p_bb")?.into_iter().fold(0.0, f64::max);
            CheckOutcome::new(name, b, "max p_bb < 0.05", b < 0.05)
        }
        Check::RateAgreesWithExact => {
            let mut dev: f64 = 0.0;
            for s in ["aa", "bb", "cc"] {
                let exact = column(table, &format!("p_{s}"))?;
                let rate = column(table, &format!("p_{s}_rate"))?;
                dev = exact
                    .iter()
                    .zip(&rate)
                    .fold(dev, |m, (x, y)| m.max((x - y).abs()));
            }
            CheckOutcome::new(name, dev, "<= 0.05", dev <= 0.05)
        }
        Check::Finite => {
            let bad = table
                .rows
                .iter()
                .flatten()
                .filter(|v| !v.is_finite())
                .count();
            CheckOutcome::new(name, bad as f64, "== 0", bad == 0)
        }
        Check::Symmetric | Check::Asymmetric => {
            let a = series(m, table)?.asymmetry()?;
            if check == Check::Symmetric {
                CheckOutcome::new(name, a, "<= 0.05", a <= 0.05)
            } else {
                ratio_check(name, a, 0.05)
            }
        }
        Check::InnerHardlyVisible => {
            let s = series(m, table)?;
            let ratio = peak(&s, -omega_r, omega_r).max(peak(&s, omega_r, omega_r))
                / peak(&s, 0.0, omega_r);
            CheckOutcome::new(name, ratio, "inner/central < 0.05", ratio < 0.05)
        }
        Check::FaintOuter => {
            let s = series(m, table)?;
            let inner = peak(&s, -omega_r, omega_r).min(peak(&s, omega_r, omega_r));
            let outer = peak(&s, -2.0 * omega_r, omega_r).max(peak(&s, 2.0 * omega_r, omega_r));
            ratio_check(name, inner / outer, 10.0)
        }
        Check::LowerOuterEnhanced => {
            let s = series(m, table)?;
            ratio_check(
                name,
                peak(&s, -2.0 * omega_r, omega_r) / peak(&s, 2.0 * omega_r, omega_r),
                1.0,
            )
        }
        Check::HigherInnerEnhanced => {
            let s = series(m, table)?;
            ratio_check(
                name,
                peak(&s, omega_r, omega_r) / peak(&s, -omega_r, omega_r),
                1.0,
            )
        }
        Check::LowerInnerEnhanced => {
            let s = series(m, table)?;
            ratio_check(
                name,
                peak(&s, -omega_r, omega_r) / peak(&s, omega_r, omega_r),
                1.0,
            )
        }
        Check::Gamma3a(target) | Check::Gamma3b(target) => {
            let s = dressed::secular_rates(&p, m.config.gamma5_variant)?;
            let value = if matches!(check, Check::Gamma3a(_)) {
                s.gamma_3a
            } else {
                s.gamma_3b
            };
            let rel = (value - target).abs() / target;
            CheckOutcome::new(name, value, format!("within 2% of {target}"), rel <= 0.02)
        }
        Check::Antisymmetric => {
            let s = series(m, table)?;
            let n = s.values.len();
            let symmetric_grid = (0..n).all(|k| s.freqs[k] == -s.freqs[n - 1 - k]);
            let dev = (0..n).fold(0.0, |d: f64, k| {
                d.max((s.values[k] + s.values[n - 1 - k]).abs())
            });
            CheckOutcome::new(
                name,
                dev,
                "max |A(nu) + A(-nu)| <= 1e-10",
                symmetric_grid && dev <= 1e-10,
            )
        }
        Check::VanishesAtResonance => {
            let a = series(m, table)?.max_abs();
            CheckOutcome::new(name, a, "max |A| <= 1e-10", a <= 1e-10)
        }
        Check::OuterLinesDominate | Check::InnerLinesDominate => {
            let s = series(m, table)?;
            let outer = peak_abs(&s, &[-2.0 * omega_r, 2.0 * omega_r], omega_r);
            let inner = peak_abs(&s, &[-omega_r, omega_r], omega_r);
            let (strong, weak) = if check == Check::OuterLinesDominate {
                (outer, inner)
            } else {
                (inner, outer)
            };
            // A ratio of rounding noise says nothing about line strengths.
            CheckOutcome::new(
                name,
                strong / weak,
                "> 1 with max |A| > 1e-10",
                strong > weak && strong > 1e-10,
            )
        }
        Check::WindowSignsMatchWeights => {
            let s = series(m, table)?;
            let w = spectra::line_weights(&p)?;
            let weights = [w.w_minus2, w.w_minus1, w.w_plus1, w.w_plus2];
            let windows = line_windows(&s, omega_r, p.gamma);
            let mismatches = weights
                .iter()
                .zip(windows)
                .filter(|(wt, win)| {
                    if **wt == 0.0 {
                        win.abs() > 1e-10
                    } else {
                        wt.signum() != win.signum()
                    }
                })
                .count();
            CheckOutcome::new(name, mismatches as f64, "== 0", mismatches == 0)
        }
        Check::Exceeds(id) => {
            let own = series(m, table)?.max_abs();
            let reference = reference_series(id, m)?.max_abs();
            ratio_check(name, own / reference, 1.0)
        }
        Check::SignSwitch(id) => {
            let own = line_windows(&series(m, table)?, omega_r, p.gamma);
            let r = reference_series(id, m)?;
            let r_omega = model_omega_r(&r.params)?;
            let theirs = line_windows(&r, r_omega, r.params.gamma);
            let scale = |w: &[f64; 4]| w.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
            let (so, st) = (scale(&own), scale(&theirs));
            // Lines that are strong (≥ 10% of the frame maximum) in both
            // frames and change sign.
            let switches = (0..4)
                .filter(|&k| {
                    own[k].abs() >= 0.1 * so
                        && theirs[k].abs() >= 0.1 * st
                        && own[k].signum() != theirs[k].signum()
                })
                .count();
            CheckOutcome::new(name, switches as f64, ">= 1", switches >= 1)
        }
    };
    Ok(outcome)
}

/// Bare populations at δ = ±50κ, where the cavity no longer acts.
fn far_detuned(cfg: &RunConfig) -> Result<[[f64; 3]; 2]> {
    let pops = |delta: f64| -> Result<[f64; 3]> {
        let p = cfg.params.with_delta(delta);
        let l = vatom_core::model::build_reduced_liouvillian_with(&p, cfg.s_source())?;
        Ok(vatom_core::steady::steady_state(&l)?.populations())
    };
    let far = 50.0 * cfg.params.kappa;
    Ok([pops(-far)?, pops(far)?])
}

fn model_omega_r(p: &SystemParams) -> Result<f64> {
    Ok(vatom_core::model::dressed_scalars(p)?.omega_r)
}

fn reference_series(id: &str, m: &FigureManifest) -> Result<SpectrumSeries> {
    let r = manifest(id)
        .ok_or_else(|| CliError::Config(format!("unknown reference manifest '{id}'")))?
        .with_run_options(&m.config);
    let table = r.table()?;
    series(&r, &table)
}

fn physical_states(name: String, table: &Table) -> Result<CheckOutcome> {
    let cols: Vec<Vec<f64>> = [
        "rho00", "rho11", "rho22", "re_rho10", "im_rho10", "re_rho20", "im_rho20", "re_rho21",
        "im_rho21", "residual",
    ]
    .iter()
    .map(|c| column(table, c))
    .collect::<Result<_>>()?;
    let mut trace: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut residual: f64 = 0.0;
    for k in 0..table.rows.len() {
        let v = |j: usize| cols[j][k];
        let (r10, r20, r21) = (
            C64::new(v(3), v(4)),
            C64::new(v(5), v(6)),
            C64::new(v(7), v(8)),
        );
        let rho = CMatrix::from_row_slice(
            3,
            3,
            &[
                C64::from(v(0)),
                r10.conj(),
                r20.conj(),
                r10,
                C64::from(v(1)),
                r21.conj(),
                r20,
                r21,
                C64::from(v(2)),
            ],
        );
        let report = linalg::hermitian_report(&rho)?;
        trace = trace.max(report.trace_deviation);
        min_eig = min_eig.min(report.min_eigenvalue);
        residual = residual.max(v(9));
    }
    let pass = trace <= 1e-12 && min_eig >= -1e-10 && residual <= 1e-10 && table.failures == 0;
    Ok(CheckOutcome::new(
        name,
        min_eig,
        format!("min eigenvalue >= -1e-10 (trace dev {trace:.1e} <= 1e-12, residual {residual:.1e} <= 1e-10)"),
        pass,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_complete() {
        let all = all_manifests();
        let mut ids: Vec<&str> = all.iter().map(|m| m.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
        for f in [
            "fig2a",
            "fig2f",
            "fig4f",
            "fig5d",
            "fig6a",
            "fig8d",
            "fig9f",
            "fig10f",
            "fig2d-caption",
        ] {
            assert!(ids.contains(&f), "{f}");
        }
        assert!(all.iter().all(|m| !m.assertions.is_empty()));
    }

    #[test]
    fn bindings_follow_captions_and_text() {
        let m = manifest("fig8c").unwrap();
        assert_eq!(
            (m.config.params.omega21, m.config.params.rabi),
            (200.0, 200.0)
        );
        assert!((m.config.params.delta - 600.0).abs() < 1e-12);
        assert_eq!(manifest("fig2d").unwrap().config.params.omega21, 200.0);
        assert_eq!(
            manifest("fig2d-caption").unwrap().config.params.omega21,
            100.0
        );
        assert_eq!(manifest("fig9e").unwrap().config.params.rabi, 50.0);
    }

    #[test]
    fn exceeds_references_exist() {
        for m in all_manifests() {
            for a in &m.assertions {
                if let Check::Exceeds(id) | Check::SignSwitch(id) = a.check {
                    assert!(manifest(id).is_some(), "{id}");
                }
            }
        }
    }
}
