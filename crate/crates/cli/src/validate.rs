//! Oracle suite: every closed form against an independent numerical route.

use std::time::Instant;

use vatom_core::linalg::CMatrix;
use vatom_core::model::{self, BetaVariant, SOperatorSource, SystemParams};
use vatom_core::{dressed, grid, spectra, steady};

use crate::error::Result;
use crate::report::CheckOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Skips the atom + cavity model and uses coarser spectral grids.
    Fast,
    Full,
}

fn at(omega21: f64, rabi: f64, delta_in_omega_r: f64) -> Result<SystemParams> {
    let w = model::dressed_scalars(&SystemParams::figure(omega21, rabi, 0.0))?.omega_r;
    Ok(SystemParams::figure(omega21, rabi, delta_in_omega_r * w))
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn beta_quadrature(variant: BetaVariant) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for delta in [-300.0, -90.0, 0.0, 45.0, 250.0] {
        for rabi in [1.0, 20.0, 50.0, 100.0, 200.0] {
            for omega21 in [0.0, 10.0, 40.0, 100.0, 200.0] {
                let p = SystemParams::figure(omega21, rabi, delta);
                let closed = model::s_operator(&p, SOperatorSource::ClosedForm(variant))?;
                worst = worst.max(max_abs(&(closed - model::build_s_oracle(&p)?)));
            }
        }
    }
    Ok(CheckOutcome::new(
        "beta_vs_s_integral",
        worst,
        "<= 1e-8",
        worst <= 1e-8,
    ))
}

/// With κ → ∞ the cavity responds instantly and S must reduce to the
/// lowering operator, so β₆ (the |0⟩⟨2| coefficient) tends to 1.
fn beta_flat_limit(variant: BetaVariant) -> Result<CheckOutcome> {
    let p = SystemParams {
        kappa: 1e9,
        ..at(200.0, 50.0, 0.0)?
    };
    let beta6 = model::beta_closed_form(&p, variant)?.beta[6].re;
    let dev = (beta6 - 1.0).abs();
    Ok(CheckOutcome::new(
        "beta_flat_cavity_limit",
        beta6,
        "|beta_6 - 1| <= 1e-6",
        dev <= 1e-6,
    ))
}

fn steady_sanity(level: Level, variant: BetaVariant) -> Result<CheckOutcome> {
    let sets: &[(f64, f64)] = match level {
        Level::Fast => &[(10.0, 100.0), (200.0, 100.0)],
        Level::Full => &[
            (10.0, 4.0),
            (10.0, 10.0),
            (10.0, 100.0),
            (200.0, 100.0),
            (200.0, 200.0),
            (200.0, 300.0),
        ],
    };
    let mut min_eig = f64::INFINITY;
    let mut trace: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for &(omega21, rabi) in sets {
        let p = SystemParams::figure(omega21, rabi, 0.0);
        let w = model::dressed_scalars(&p)?.omega_r;
        for delta in grid::default_population_grid(w)? {
            let l = model::build_reduced_liouvillian_with(
                &p.with_delta(delta),
                SOperatorSource::ClosedForm(variant),
            )?;
            let ss = steady::steady_state(&l)?;
            let report = vatom_core::linalg::hermitian_report(&ss.rho)?;
            min_eig = min_eig.min(report.min_eigenvalue);
            trace = trace.max(report.trace_deviation);
            residual = residual.max(ss.residual);
        }
    }
    let pass = min_eig >= -1e-10 && trace <= 1e-12 && residual <= 1e-10;
    Ok(CheckOutcome::new(
        "steady_state_sanity",
        min_eig,
        format!("min eigenvalue >= -1e-10 (trace dev {trace:.1e} <= 1e-12, residual {residual:.1e} <= 1e-10)"),
        pass,
    ))
}

fn rate_kernel() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for (omega21, rabi) in [(10.0, 100.0), (200.0, 50.0), (200.0, 100.0), (200.0, 200.0)] {
        for f in [-2.0, -1.0, 0.0, 0.5, 2.0] {
            let r = dressed::transition_rates(&at(omega21, rabi, f)?)?;
            let closed = dressed::dressed_populations_rate_eq(&r)?.as_array();
            let kernel = dressed::rate_matrix_kernel(&r)?;
            worst = (0..3).fold(worst, |m, k| m.max((closed[k] - kernel[k]).abs()));
        }
    }
    Ok(CheckOutcome::new(
        "rate_populations_vs_kernel",
        worst,
        "<= 1e-10",
        worst <= 1e-10,
    ))
}

fn rate_vs_exact() -> Result<CheckOutcome> {
    let p = at(200.0, 200.0, 2.0)?;
    let ss = steady::steady_state_for(&p)?;
    let exact = dressed::dressed_populations_exact(&ss, &dressed::dressed_basis(&p)?)?.as_array();
    let rate = dressed::dressed_populations_rate_eq(&dressed::transition_rates(&p)?)?.as_array();
    let dev = (0..3).fold(0.0, |m: f64, k| m.max((exact[k] - rate[k]).abs()));
    Ok(CheckOutcome::new(
        "rate_vs_exact_dressed_populations",
        dev,
        "<= 0.05",
        dev <= 0.05,
    ))
}

fn qrt_vs_fft(level: Level) -> Result<CheckOutcome> {
    let (detunings, count): (&[f64], usize) = match level {
        Level::Fast => (&[0.0, 1.0], 401),
        Level::Full => (&[0.0, 1.0, 2.0, 10.0], 2001),
    };
    let mut worst: f64 = 0.0;
    for &f in detunings {
        let p = at(10.0, 100.0, f)?;
        let g = grid::symmetric(model::dressed_scalars(&p)?.omega_r, 2.5, count)?;
        let qrt = spectra::fluorescence_qrt(&p, &g)?;
        let fft = spectra::fluorescence_fft(&p, &g)?;
        worst = qrt
            .values
            .iter()
            .zip(&fft.values)
            .fold(worst, |m, (a, b)| m.max((a - b).abs() / a.abs()));
    }
    Ok(CheckOutcome::new(
        "qrt_vs_correlation_fft",
        worst,
        "pointwise relative <= 0.02",
        worst <= 0.02,
    ))
}

fn sum_rule(level: Level) -> Result<CheckOutcome> {
    let (sets, count): (&[(f64, f64)], usize) = match level {
        Level::Fast => (&[(10.0, 100.0)], 12001),
        Level::Full => (&[(10.0, 100.0), (200.0, 200.0)], 24001),
    };
    let mut worst: f64 = 0.0;
    for &(omega21, rabi) in sets {
        let p = at(omega21, rabi, 0.0)?;
        let g = grid::symmetric(model::dressed_scalars(&p)?.omega_r, 6.0, count)?;
        let s = spectra::fluorescence_qrt(&p, &g)?;
        let sys = spectra::QrtSystem::new(&p, SOperatorSource::default())?;
        let target = spectra::sum_rule_target(&sys);
        worst = worst.max((spectra::spectral_integral(&s) - target).abs() / target);
    }
    Ok(CheckOutcome::new(
        "fluorescence_sum_rule",
        worst,
        "relative <= 0.01",
        worst <= 0.01,
    ))
}

fn reduced_vs_full() -> Result<CheckOutcome> {
    let p = SystemParams {
        g: 5.0,
        ..SystemParams::figure(10.0, 10.0, 0.0)
    };
    let reduced = steady::steady_state_for(&p)?.populations();
    let coarse = steady::full_steady_state(&model::build_full_liouvillian(&p, 4)?)?;
    let fine = steady::full_steady_state(&model::build_full_liouvillian(&p, 6)?)?;
    let mut dev: f64 = 0.0;
    let mut convergence: f64 = 0.0;
    for k in 0..3 {
        dev = dev.max((coarse.atomic[(k, k)].re - reduced[k]).abs());
        convergence = convergence.max((coarse.atomic[(k, k)].re - fine.atomic[(k, k)].re).abs());
    }
    Ok(CheckOutcome::new(
        "reduced_vs_full_model",
        dev,
        format!("<= 0.02 (photon cutoff 4 vs 6: {convergence:.1e} <= 1e-4)"),
        dev <= 0.02 && convergence <= 1e-4,
    ))
}

/// Runs the suite. `variant` selects the β table under test, so the printed
/// transcription can be checked deliberately.
pub fn run(level: Level, variant: BetaVariant) -> Result<Vec<CheckOutcome>> {
    type Step<'a> = Box<dyn Fn() -> Result<CheckOutcome> + 'a>;
    let mut steps: Vec<Step> = vec![
        Box::new(|| beta_quadrature(variant)),
        Box::new(|| beta_flat_limit(variant)),
        Box::new(|| steady_sanity(level, variant)),
        Box::new(rate_kernel),
        Box::new(rate_vs_exact),
        Box::new(|| qrt_vs_fft(level)),
        Box::new(|| sum_rule(level)),
    ];
    if level == Level::Full {
        steps.push(Box::new(reduced_vs_full));
    }
    steps
        .iter()
        .map(|step| {
            let t = Instant::now();
            let outcome = step()?;
            log::info!("{} took {:.2}s", outcome.name, t.elapsed().as_secs_f64());
            Ok(outcome)
        })
        .collect()
}
