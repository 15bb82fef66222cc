//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria whose bound contradicts an exact identity of the model are
//! listed in `KNOWN_FAILURES`; they still print FAIL, but only unexpected
//! failures (or a known failure that starts passing) set a non-zero exit
//! status.

use std::process::ExitCode;
use std::time::Instant;

use vatom_core::linalg::{self, CMatrix};
use vatom_core::model::{self, BetaVariant, SOperatorSource, SystemParams};
use vatom_core::spectra::{self, SpectrumSeries};
use vatom_core::{dressed, grid, steady, superop};

/// Line-weight ratio: w(−Ω_R) = −2·w(+2Ω_R) holds exactly whenever
/// R_ba = R_bc, so the ratio is 2, not ω21²/4Ω_R².
const KNOWN_FAILURES: &[&str] = &["12b"];

struct Outcome {
    id: &'static str,
    pass: bool,
}

struct Suite {
    outcomes: Vec<Outcome>,
}

impl Suite {
    fn record(
        &mut self,
        id: &'static str,
        name: &str,
        pass: bool,
        detail: String,
        started: Instant,
    ) {
        let tag = if pass { "PASS" } else { "FAIL" };
        let known = if !pass && KNOWN_FAILURES.contains(&id) {
            " (known, see notes)"
        } else {
            ""
        };
        println!(
            "{tag} [{id}] {name}: {detail} ({:.2}s){known}",
            started.elapsed().as_secs_f64()
        );
        self.outcomes.push(Outcome { id, pass });
    }
}

fn omega_r(omega21: f64, rabi: f64) -> f64 {
    model::dressed_scalars(&SystemParams::figure(omega21, rabi, 0.0))
        .unwrap()
        .omega_r
}

fn at(omega21: f64, rabi: f64, delta_in_omega_r: f64) -> SystemParams {
    SystemParams::figure(omega21, rabi, delta_in_omega_r * omega_r(omega21, rabi))
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn criterion_1(suite: &mut Suite) {
    let t = Instant::now();
    let s =
        dressed::secular_rates(&at(200.0, 50.0, 0.0), dressed::Gamma5Variant::Corrected).unwrap();
    let rel = (s.gamma_3a - 2.51).abs() / 2.51;
    suite.record(
        "1",
        "secular decay rate anchor",
        rel <= 0.02,
        format!(
            "Gamma_3a={:.4} target=2.51 rel={rel:.2e} bound=2e-2",
            s.gamma_3a
        ),
        t,
    );
}

fn criterion_2(suite: &mut Suite) {
    let t = Instant::now();
    let anchors = [
        (10.0, 100.0, 141.5),
        (200.0, 50.0, 122.5),
        (200.0, 100.0, 173.2),
        (200.0, 200.0, 300.0),
    ];
    let worst = anchors
        .iter()
        .map(|&(w, o, want)| (omega_r(w, o) - want).abs())
        .fold(0.0, f64::max);
    let values: Vec<String> = anchors
        .iter()
        .map(|&(w, o, _)| format!("{:.3}", omega_r(w, o)))
        .collect();
    suite.record(
        "2",
        "generalized Rabi frequency anchors",
        worst <= 0.1,
        format!(
            "Omega_R=[{}] max_dev={worst:.3} bound=0.1",
            values.join(", ")
        ),
        t,
    );
}

fn criterion_3(suite: &mut Suite) {
    let t = Instant::now();
    let deltas = [-300.0, -90.0, 0.0, 45.0, 250.0];
    let rabis = [1.0, 20.0, 50.0, 100.0, 200.0];
    let splittings = [0.0, 10.0, 40.0, 100.0, 200.0];
    let mut worst: f64 = 0.0;
    for &delta in &deltas {
        for &rabi in &rabis {
            for &omega21 in &splittings {
                let p = SystemParams::figure(omega21, rabi, delta);
                let closed =
                    model::s_operator(&p, SOperatorSource::ClosedForm(BetaVariant::Corrected))
                        .unwrap();
                let oracle = model::build_s_oracle(&p).unwrap();
                worst = worst.max(max_abs(&(closed - oracle)));
            }
        }
    }
    let flat = SystemParams {
        kappa: 1e9,
        ..at(200.0, 50.0, 0.0)
    };
    let d = model::dressed_scalars(&flat).unwrap();
    let beta6 = model::beta_closed_form(&flat, BetaVariant::PaperExact)
        .unwrap()
        .beta[6]
        .re;
    let predicted = 8.0 * d.eta * d.eta + d.epsilon;
    let paper_exact_fails = (beta6 - 1.0).abs() > 1e-3 && (beta6 - predicted).abs() < 1e-6;
    suite.record(
        "3",
        "beta table vs S-integral quadrature",
        worst <= 1e-8 && paper_exact_fails,
        format!(
            "125-point max_dev={worst:.2e} bound=1e-8; paper-exact flat beta_6={beta6:.6} (8eta^2+eps={predicted:.6}, expected 1)"
        ),
        t,
    );
}

fn criterion_4(suite: &mut Suite) {
    let t = Instant::now();
    let p = SystemParams {
        g: 5.0,
        ..SystemParams::figure(10.0, 10.0, 0.0)
    };
    let reduced = steady::steady_state_for(&p).unwrap().populations();
    let coarse = steady::full_steady_state(&model::build_full_liouvillian(&p, 4).unwrap()).unwrap();
    let fine = steady::full_steady_state(&model::build_full_liouvillian(&p, 6).unwrap()).unwrap();
    let mut convergence: f64 = 0.0;
    let mut deviation: f64 = 0.0;
    for k in 0..3 {
        let a = coarse.atomic[(k, k)].re;
        convergence = convergence.max((a - fine.atomic[(k, k)].re).abs());
        deviation = deviation.max((a - reduced[k]).abs());
    }
    suite.record(
        "4",
        "adiabatic elimination vs atom+cavity model",
        convergence <= 1e-4 && deviation <= 0.02,
        format!(
            "max |reduced-full|={deviation:.2e} bound=2e-2; n_max 4 vs 6 = {convergence:.2e} bound=1e-4; <n>={:.3e}",
            coarse.mean_photons
        ),
        t,
    );
}

fn criterion_5(suite: &mut Suite) {
    let t = Instant::now();
    let sets = [
        (10.0, 4.0),
        (10.0, 10.0),
        (10.0, 100.0),
        (200.0, 100.0),
        (200.0, 200.0),
        (200.0, 300.0),
    ];
    let mut trace: f64 = 0.0;
    let mut asym: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    let mut residual: f64 = 0.0;
    let mut points = 0;
    for (omega21, rabi) in sets {
        let w = omega_r(omega21, rabi);
        for delta in grid::default_population_grid(w).unwrap() {
            let p = SystemParams::figure(omega21, rabi, delta);
            let l = model::build_reduced_liouvillian(&p).unwrap();
            let ss = steady::steady_state(&l).unwrap();
            let report = linalg::hermitian_report(&ss.rho).unwrap();
            // Hermiticity of the raw kernel, before the solver symmetrizes it.
            let raw = superop::unvectorize(&linalg::null_space_1d(&l.matrix).unwrap(), 3);
            let raw = &raw / raw.trace();
            trace = trace.max(report.trace_deviation);
            asym = asym.max(max_abs(&(&raw - raw.adjoint())));
            min_eig = min_eig.min(report.min_eigenvalue);
            residual = residual.max(ss.residual);
            points += 1;
        }
    }
    suite.record(
        "5",
        "steady-state sanity over Fig. 2 sweeps",
        trace <= 1e-12 && asym <= 1e-12 && min_eig >= -1e-10 && residual <= 1e-10,
        format!(
            "{points} points: trace_dev={trace:.1e} hermiticity={asym:.1e} min_eig={min_eig:.2e} residual={residual:.1e}"
        ),
        t,
    );
}

fn criterion_6(suite: &mut Suite) {
    let t = Instant::now();
    let w = omega_r(200.0, 100.0);
    let p = SystemParams::figure(200.0, 100.0, 0.0);
    let deltas = grid::default_population_grid(w).unwrap();
    let sweep = steady::sweep_populations(&p, &deltas, SOperatorSource::default()).unwrap();
    let (k, margin) = sweep.max_inversion().unwrap();
    suite.record(
        "6",
        "bare-state population inversion",
        margin > 0.0 && sweep.failures.is_empty(),
        format!(
            "max rho22-rho00={margin:.4} at delta={:.2} ({:.3} Omega_R)",
            deltas[k],
            deltas[k] / w
        ),
        t,
    );
}

fn rate_pops(p: &SystemParams) -> dressed::DressedPopulations {
    dressed::dressed_populations_rate_eq(&dressed::transition_rates(p).unwrap()).unwrap()
}

fn criterion_7(suite: &mut Suite) {
    let t = Instant::now();
    let zero = rate_pops(&at(10.0, 100.0, 0.0));
    let below = rate_pops(&at(10.0, 100.0, -2.0));
    let above = rate_pops(&at(10.0, 100.0, 2.0));
    let sym = (zero.p_aa - zero.p_cc).abs();
    suite.record(
        "7",
        "dressed symmetry and accumulation",
        sym <= 1e-12 && below.p_cc > below.p_aa && above.p_aa > above.p_cc,
        format!(
            "|p_aa-p_cc|(0)={sym:.1e}; delta=-2Omega_R p_cc={:.4} p_aa={:.4}; delta=+2Omega_R p_aa={:.4} p_cc={:.4}",
            below.p_cc, below.p_aa, above.p_aa, above.p_cc
        ),
        t,
    );
}

fn criterion_8(suite: &mut Suite) {
    let t = Instant::now();
    let p = at(200.0, 200.0, 2.0);
    let ss = steady::steady_state_for(&p).unwrap();
    let exact = dressed::dressed_populations_exact(&ss, &dressed::dressed_basis(&p).unwrap())
        .unwrap()
        .as_array();
    let rate = rate_pops(&p).as_array();
    let dev = (0..3)
        .map(|k| (exact[k] - rate[k]).abs())
        .fold(0.0, f64::max);
    suite.record(
        "8",
        "rate-equation vs exact dressed populations",
        dev <= 0.05,
        format!(
            "exact=[{:.4}, {:.4}, {:.4}] rate=[{:.4}, {:.4}, {:.4}] max_dev={dev:.2e} bound=5e-2",
            exact[0], exact[1], exact[2], rate[0], rate[1], rate[2]
        ),
        t,
    );
}

fn criterion_9(suite: &mut Suite) {
    let t = Instant::now();
    let w = omega_r(10.0, 100.0);
    let g = grid::default_spectrum_grid(w).unwrap();
    let mut worst: f64 = 0.0;
    for f in [0.0, 1.0, 2.0, 10.0] {
        let p = at(10.0, 100.0, f);
        let qrt = spectra::fluorescence_qrt(&p, &g).unwrap();
        let fft = spectra::fluorescence_fft(&p, &g).unwrap();
        for (a, b) in qrt.values.iter().zip(&fft.values) {
            worst = worst.max((a - b).abs() / a.abs());
        }
    }
    suite.record(
        "9",
        "QRT resolvent vs FFT of correlation oracle (Fig. 5 a-d)",
        worst <= 0.02,
        format!("max pointwise relative difference={worst:.2e} bound=2e-2 over 4x2001 points"),
        t,
    );
}

fn sum_rule_error(p: &SystemParams, omega_r: f64) -> (f64, f64) {
    let g = grid::symmetric(omega_r, 6.0, 24001).unwrap();
    let s = spectra::fluorescence_qrt(p, &g).unwrap();
    let sys = spectra::QrtSystem::new(p, SOperatorSource::default()).unwrap();
    let target = spectra::sum_rule_target(&sys);
    let integral = spectra::spectral_integral(&s);
    (integral, (integral - target).abs() / target)
}

fn criterion_10(suite: &mut Suite) {
    let t = Instant::now();
    let (i5, e5) = sum_rule_error(&at(10.0, 100.0, 0.0), omega_r(10.0, 100.0));
    let (i8, e8) = sum_rule_error(&at(200.0, 200.0, 0.0), omega_r(200.0, 200.0));
    suite.record(
        "10",
        "spectral sum rule",
        e5 <= 0.01 && e8 <= 0.01,
        format!(
            "Fig5a integral={i5:.5} rel={e5:.2e}; Fig8a integral={i8:.5} rel={e8:.2e}; bound=1e-2"
        ),
        t,
    );
}

fn qrt(omega21: f64, rabi: f64, f: f64) -> (SpectrumSeries, f64) {
    let w = omega_r(omega21, rabi);
    let g = grid::default_spectrum_grid(w).unwrap();
    (
        spectra::fluorescence_qrt(&at(omega21, rabi, f), &g).unwrap(),
        w,
    )
}

fn criterion_11(suite: &mut Suite) {
    let t = Instant::now();
    let (s5a, _) = qrt(10.0, 100.0, 0.0);
    let (s8a, _) = qrt(200.0, 200.0, 0.0);
    let asym = s5a.asymmetry().unwrap().max(s8a.asymmetry().unwrap());

    let mut outer_ratios = Vec::new();
    for (omega21, rabi) in [(10.0, 100.0), (200.0, 200.0)] {
        let (s, w) = qrt(omega21, rabi, 2.0);
        let low = s.peak_in_window(-2.0 * w, 0.1 * w).unwrap().1;
        let high = s.peak_in_window(2.0 * w, 0.1 * w).unwrap().1;
        outer_ratios.push(low / high);
    }

    let (s6a, w) = qrt(200.0, 50.0, 0.0);
    let inner = s6a.peak_in_window(-w, 0.1 * w).unwrap().1;
    let outer = s6a.peak_in_window(-2.0 * w, 0.1 * w).unwrap().1;
    let inner_outer = inner / outer;

    suite.record(
        "11",
        "qualitative spectral features",
        asym <= 0.05 && outer_ratios.iter().all(|&r| r > 1.0) && inner_outer > 10.0,
        format!(
            "delta=0 asymmetry={asym:.1e} (bound 5e-2); low/high outer at 2Omega_R: Fig5c={:.2} Fig8c={:.2} (>1); Fig6a inner/outer={inner_outer:.1} (>10)",
            outer_ratios[0], outer_ratios[1]
        ),
        t,
    );
}

fn criterion_12(suite: &mut Suite) {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for (omega21, rabi) in [(10.0, 100.0), (200.0, 50.0), (200.0, 100.0), (200.0, 200.0)] {
        for f in [-2.0, -1.0, -0.3, 0.0, 0.7, 1.0, 2.0] {
            let lw = spectra::line_weights(&at(omega21, rabi, f)).unwrap();
            worst = worst.max((lw.w_plus2 + lw.w_minus2).abs());
        }
    }
    suite.record(
        "12a",
        "line weights w(+2Omega_R) = -w(-2Omega_R)",
        worst <= 1e-15,
        format!("max |w(+2)+w(-2)|={worst:.1e} bound=1e-15"),
        t,
    );

    let t = Instant::now();
    let w = omega_r(10.0, 100.0);
    let expected = 100.0 / (4.0 * w * w);
    let at_zero = spectra::line_weights(&at(10.0, 100.0, 0.0)).unwrap();
    let ratio_at_zero = (at_zero.w_minus1 / at_zero.w_plus2).abs();
    // Both weights vanish at δ = 0; approach along δ → 0.
    let limit: Vec<f64> = [1e-2, 1e-4, 1e-6]
        .iter()
        .map(|&f| {
            let lw = spectra::line_weights(&at(10.0, 100.0, f)).unwrap();
            (lw.w_minus1 / lw.w_plus2).abs()
        })
        .collect();
    let measured = limit[2];
    let within = measured >= 0.5 * expected && measured <= 2.0 * expected;
    suite.record(
        "12b",
        "line-weight ratio |w(-Omega_R)/w(+2Omega_R)| at delta=0",
        within,
        format!(
            "at delta=0: {}/{} -> {ratio_at_zero}; delta->0 limit: {:.4} {:.4} {:.4}; expected {expected:.3e} within x2",
            at_zero.w_minus1, at_zero.w_plus2, limit[0], limit[1], limit[2]
        ),
        t,
    );

    let t = Instant::now();
    let mut mismatches = Vec::new();
    let mut zero_window: f64 = 0.0;
    let mut checked = 0;
    for (omega21, rabi) in [(10.0, 100.0), (200.0, 50.0), (200.0, 100.0), (200.0, 200.0)] {
        let w = omega_r(omega21, rabi);
        let g = grid::default_spectrum_grid(w).unwrap();
        let scale = spectra::absorption_spectrum(&at(omega21, rabi, 1.0), &g)
            .unwrap()
            .max_abs();
        for f in [0.0, -1.0, 1.0] {
            let p = at(omega21, rabi, f);
            let a = spectra::absorption_spectrum(&p, &g).unwrap();
            let lw = spectra::line_weights(&p).unwrap();
            let weights = [lw.w_minus2, lw.w_minus1, lw.w_plus1, lw.w_plus2];
            for (c, wt) in [-2.0, -1.0, 1.0, 2.0].iter().zip(weights) {
                let window = a.window_integral(c * w - 5.0, c * w + 5.0);
                checked += 1;
                if f == 0.0 {
                    // Weights are exactly zero here; the spectrum must be too.
                    zero_window = zero_window.max(window.abs() / scale);
                    if wt != 0.0 || window.abs() > 1e-10 * scale {
                        mismatches.push(format!("({omega21},{rabi},0) line {c}"));
                    }
                } else if window.signum() != wt.signum() {
                    mismatches.push(format!("({omega21},{rabi},{f}Omega_R) line {c}"));
                }
            }
        }
    }
    suite.record(
        "12c",
        "absorption window signs vs line weights (delta=0, +-Omega_R)",
        mismatches.is_empty(),
        format!(
            "{checked} windows, mismatches={:?}; delta=0 max |window|/scale={zero_window:.1e}",
            mismatches
        ),
        t,
    );
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut suite = Suite {
        outcomes: Vec::new(),
    };
    criterion_1(&mut suite);
    criterion_2(&mut suite);
    criterion_3(&mut suite);
    criterion_4(&mut suite);
    criterion_5(&mut suite);
    criterion_6(&mut suite);
    criterion_7(&mut suite);
    criterion_8(&mut suite);
    criterion_9(&mut suite);
    criterion_10(&mut suite);
    criterion_11(&mut suite);
    criterion_12(&mut suite);

    let passed = suite.outcomes.iter().filter(|o| o.pass).count();
    let unexpected: Vec<&str> = suite
        .outcomes
        .iter()
        .filter(|o| o.pass == KNOWN_FAILURES.contains(&o.id))
        .map(|o| o.id)
        .collect();
    println!(
        "acceptance: {passed}/{} PASS, known failures {:?}, unexpected {:?} ({:.1}s)",
        suite.outcomes.len(),
        KNOWN_FAILURES,
        unexpected,
        started.elapsed().as_secs_f64()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
