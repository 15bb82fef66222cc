//! Table builders behind the subcommands.

use rayon::prelude::*;
use vatom_core::model::{self, SystemParams};
use vatom_core::{dressed, spectra, steady};

use crate::config::RunConfig;
use crate::error::Result;
use crate::output::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Fluorescence,
    FluorescenceSecular,
    Absorption,
}

impl SpectrumKind {
    pub fn name(self) -> &'static str {
        match self {
            SpectrumKind::Fluorescence => "fluorescence",
            SpectrumKind::FluorescenceSecular => "fluorescence-secular",
            SpectrumKind::Absorption => "absorption",
        }
    }
}

/// Evaluates `row` at every sweep point in parallel. Failed points become
/// NaN rows and are counted, not dropped.
fn sweep_table<F>(cfg: &RunConfig, columns: &[&str], row: F) -> Result<Table>
where
    F: Fn(&SystemParams) -> vatom_core::Result<Vec<f64>> + Sync,
{
    let points = cfg.sweep_points()?;
    let mut header = vec![cfg.sweep_var.name()];
    header.extend_from_slice(columns);
    let mut table = Table::new(&header);
    let results: Vec<_> = points
        .par_iter()
        .map(|&x| row(&cfg.sweep_var.apply(cfg.params, x)))
        .collect();
    for (x, r) in points.iter().zip(results) {
        let mut values = vec![*x];
        match r {
            Ok(v) => values.extend(v),
            Err(e) => {
                log::warn!("{} = {x}: {e}", cfg.sweep_var.name());
                values.extend(std::iter::repeat(f64::NAN).take(columns.len()));
                table.failures += 1;
            }
        }
        table.rows.push(values);
    }
    Ok(table)
}

pub fn populations(cfg: &RunConfig) -> Result<Table> {
    const COLUMNS: [&str; 10] = [
        "rho00", "rho11", "rho22", "re_rho10", "im_rho10", "re_rho20", "im_rho20", "re_rho21",
        "im_rho21", "residual",
    ];
    sweep_table(cfg, &COLUMNS, |p| {
        let l = model::build_reduced_liouvillian_with(p, cfg.s_source())?;
        let ss = steady::steady_state(&l)?;
        let r = &ss.rho;
        Ok(vec![
            r[(0, 0)].re,
            r[(1, 1)].re,
            r[(2, 2)].re,
            r[(1, 0)].re,
            r[(1, 0)].im,
            r[(2, 0)].re,
            r[(2, 0)].im,
            r[(2, 1)].re,
            r[(2, 1)].im,
            ss.residual,
        ])
    })
}

pub fn dressed(cfg: &RunConfig) -> Result<Table> {
    const COLUMNS: [&str; 12] = [
        "p_aa",
        "p_bb",
        "p_cc",
        "p_aa_rate",
        "p_bb_rate",
        "p_cc_rate",
        "r_ab",
        "r_ba",
        "r_ac",
        "r_ca",
        "r_bc",
        "r_cb",
    ];
    sweep_table(cfg, &COLUMNS, |p| {
        let l = model::build_reduced_liouvillian_with(p, cfg.s_source())?;
        let ss = steady::steady_state(&l)?;
        let exact = dressed::dressed_populations_exact(&ss, &dressed::dressed_basis(p)?)?;
        let r = dressed::transition_rates(p)?;
        let rate = dressed::dressed_populations_rate_eq(&r)?;
        let mut row = exact.as_array().to_vec();
        row.extend(rate.as_array());
        row.extend([r.r_ab, r.r_ba, r.r_ac, r.r_ca, r.r_bc, r.r_cb]);
        Ok(row)
    })
}

pub fn rates(cfg: &RunConfig) -> Result<Table> {
    const COLUMNS: [&str; 20] = [
        "omega_r",
        "gamma_c",
        "r_ab",
        "r_ba",
        "r_ac",
        "r_ca",
        "r_bc",
        "r_cb",
        "gamma_1a",
        "gamma_1b",
        "gamma_2a",
        "gamma_2b",
        "gamma_3a",
        "gamma_3b",
        "gamma_4",
        "gamma_5",
        "omega_3",
        "omega_4",
        "omega_5",
        "secular_advisory",
    ];
    sweep_table(cfg, &COLUMNS, |p| {
        let d = model::dressed_scalars(p)?;
        let r = dressed::transition_rates(p)?;
        let s = dressed::secular_rates(p, cfg.gamma5_variant)?;
        Ok(vec![
            d.omega_r,
            p.gamma_c(),
            r.r_ab,
            r.r_ba,
            r.r_ac,
            r.r_ca,
            r.r_bc,
            r.r_cb,
            s.gamma_1a,
            s.gamma_1b,
            s.gamma_2a,
            s.gamma_2b,
            s.gamma_3a,
            s.gamma_3b,
            s.gamma_4,
            s.gamma_5,
            s.omega_3,
            s.omega_4,
            s.omega_5,
            if r.secular_advisory { 1.0 } else { 0.0 },
        ])
    })
}

/// Any failing frequency aborts the spectrum; a partial line shape is not
/// useful.
pub fn spectrum(cfg: &RunConfig, kind: SpectrumKind) -> Result<Table> {
    let freqs = cfg.spectrum_points()?;
    let p = &cfg.params;
    let table = match kind {
        SpectrumKind::Fluorescence => {
            let s = spectra::fluorescence_qrt_with(p, &freqs, cfg.s_source())?;
            two_columns(&freqs, &s.values)
        }
        SpectrumKind::Absorption => {
            let s = spectra::absorption_spectrum_with(p, &freqs, cfg.s_source())?;
            two_columns(&freqs, &s.values)
        }
        SpectrumKind::FluorescenceSecular => {
            let c = spectra::fluorescence_secular_with(p, &freqs, cfg.gamma5_variant)?;
            if c.secular_advisory {
                log::warn!(
                    "Omega_R is below 10 max(gamma, gamma_c); the secular spectrum is unreliable"
                );
            }
            let mut t = Table::new(&[
                "freq",
                "value",
                "central",
                "inner_low",
                "inner_high",
                "outer_low",
                "outer_high",
            ]);
            t.rows = (0..freqs.len())
                .map(|k| {
                    vec![
                        freqs[k],
                        c.total.values[k],
                        c.central.values[k],
                        c.inner_low.values[k],
                        c.inner_high.values[k],
                        c.outer_low.values[k],
                        c.outer_high.values[k],
                    ]
                })
                .collect();
            t
        }
    };
    Ok(table)
}

fn two_columns(freqs: &[f64], values: &[f64]) -> Table {
    let mut t = Table::new(&["freq", "value"]);
    t.rows = freqs
        .iter()
        .zip(values)
        .map(|(f, v)| vec![*f, *v])
        .collect();
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Entries;

    fn cfg(text: &str) -> RunConfig {
        RunConfig::from_entries(&Entries::parse_text(text).unwrap()).unwrap()
    }

    #[test]
    fn population_rows_are_normalized() {
        let t = populations(&cfg("sweep_start=-300\nsweep_stop=300\nsweep_count=7")).unwrap();
        assert_eq!(t.rows.len(), 7);
        for row in &t.rows {
            assert!((row[1] + row[2] + row[3] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rabi_sweep_writes_rabi_column() {
        let t = rates(&cfg(
            "sweep_var=rabi\nsweep_start=10\nsweep_stop=30\nsweep_count=3",
        ))
        .unwrap();
        assert_eq!(t.header[0], "rabi");
        assert_eq!(t.column("rabi").unwrap(), vec![10.0, 20.0, 30.0]);
    }

    #[test]
    fn failed_points_become_nan_rows() {
        // Ω_R = 0 at ω21 = Ω = 0 makes the dressed basis undefined.
        let t = dressed(&cfg(
            "omega21=0\nrabi=1\nsweep_var=rabi\nsweep_start=0\nsweep_stop=1\nsweep_count=2",
        ))
        .unwrap();
        assert_eq!(t.failures, 1);
        assert!(t.rows[0][1].is_nan());
        assert!(t.rows[1][1].is_finite());
    }

    #[test]
    fn secular_total_is_sum_of_components() {
        let t = spectrum(
            &cfg("freq_start=-400\nfreq_stop=400\nfreq_count=9"),
            SpectrumKind::FluorescenceSecular,
        )
        .unwrap();
        for r in &t.rows {
            let sum: f64 = r[2..].iter().sum();
            assert!((sum - r[1]).abs() <= 1e-12 * r[1].abs().max(1e-3));
        }
    }
}
