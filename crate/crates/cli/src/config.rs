//! Flat `key = value` run configuration.
//!
//! Values are arithmetic expressions. Everything except the drive
//! (`omega21`, `rabi`) and the fixed rates may refer to `omega_r` and
//! `gamma_c`, which are derived from the evaluated parameters, so
//! `delta = 2*omega_r` and `sweep_stop = 4*omega_r` both work. Integer
//! division truncates (`1/2` is 0); write `0.5`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use evalexpr::{eval_number_with_context, ContextWithMutableVariables, HashMapContext, Value};
use vatom_core::dressed::Gamma5Variant;
use vatom_core::grid;
use vatom_core::model::{self, BetaVariant, SOperatorSource, SystemParams};

use crate::error::{CliError, Result};

pub const KEYS: &[&str] = &[
    "gamma",
    "g",
    "kappa",
    "omega21",
    "rabi",
    "delta",
    "sweep_var",
    "sweep_start",
    "sweep_stop",
    "sweep_count",
    "freq_start",
    "freq_stop",
    "freq_count",
    "beta_variant",
    "gamma5_variant",
    "out",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    Delta,
    Rabi,
    Omega21,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::Delta => "delta",
            SweepVar::Rabi => "rabi",
            SweepVar::Omega21 => "omega21",
        }
    }

    pub fn apply(self, p: SystemParams, value: f64) -> SystemParams {
        match self {
            SweepVar::Delta => SystemParams { delta: value, ..p },
            SweepVar::Rabi => SystemParams { rabi: value, ..p },
            SweepVar::Omega21 => SystemParams {
                omega21: value,
                ..p
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        grid::uniform(self.start, self.stop, self.count)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub sweep_var: SweepVar,
    /// `None` means the default 801-point δ sweep over ±4Ω_R.
    pub sweep: Option<GridSpec>,
    /// `None` means the default 2001-point grid over ±2.5Ω_R.
    pub spectrum: Option<GridSpec>,
    pub beta_variant: BetaVariant,
    pub gamma5_variant: Gamma5Variant,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SystemParams::default(),
            sweep_var: SweepVar::Delta,
            sweep: None,
            spectrum: None,
            beta_variant: BetaVariant::Corrected,
            gamma5_variant: Gamma5Variant::Corrected,
            out: PathBuf::from("."),
        }
    }
}

/// Raw entries in insertion-independent order; later sources override
/// earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Entries(BTreeMap<String, String>);

impl Entries {
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut entries = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            entries
                .set_pair(line)
                .map_err(|e| CliError::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(entries)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse_text(&text)
    }

    /// Accepts `key=value`.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("expected key=value, got '{pair}'")))?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(CliError::Config(format!("unknown key '{key}'")));
        }
        self.0.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn merge(&mut self, other: &Entries) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

fn eval(key: &str, expr: &str, ctx: &HashMapContext) -> Result<f64> {
    let x = eval_number_with_context(expr, ctx)
        .map_err(|e| CliError::Config(format!("{key} = {expr}: {e}")))?;
    if !x.is_finite() {
        return Err(CliError::Config(format!("{key} = {expr} is not finite")));
    }
    Ok(x)
}

fn eval_count(key: &str, expr: &str, ctx: &HashMapContext) -> Result<usize> {
    let x = eval(key, expr, ctx)?;
    if x < 1.0 || x.fract() != 0.0 {
        return Err(CliError::Config(format!(
            "{key} must be a positive integer, got {x}"
        )));
    }
    Ok(x as usize)
}

fn parse_beta(s: &str) -> Result<BetaVariant> {
    match s {
        "corrected" => Ok(BetaVariant::Corrected),
        "paper-exact" => Ok(BetaVariant::PaperExact),
        _ => Err(CliError::Config(format!(
            "beta_variant must be corrected|paper-exact, got '{s}'"
        ))),
    }
}

fn parse_gamma5(s: &str) -> Result<Gamma5Variant> {
    match s {
        "corrected" => Ok(Gamma5Variant::Corrected),
        "paper-exact" => Ok(Gamma5Variant::PaperExact),
        _ => Err(CliError::Config(format!(
            "gamma5_variant must be corrected|paper-exact, got '{s}'"
        ))),
    }
}

fn set_var(ctx: &mut HashMapContext, name: &str, x: f64) {
    ctx.set_value(name.into(), Value::from_float(x))
        .expect("plain float variables are always accepted");
}

impl RunConfig {
    pub fn from_entries(entries: &Entries) -> Result<Self> {
        let defaults = SystemParams::default();
        let mut ctx = HashMapContext::new();
        let number = |key: &str, default: f64, ctx: &HashMapContext| -> Result<f64> {
            entries.get(key).map_or(Ok(default), |e| eval(key, e, ctx))
        };
        let mut params = SystemParams {
            gamma: number("gamma", defaults.gamma, &ctx)?,
            g: number("g", defaults.g, &ctx)?,
            kappa: number("kappa", defaults.kappa, &ctx)?,
            omega21: number("omega21", defaults.omega21, &ctx)?,
            rabi: number("rabi", defaults.rabi, &ctx)?,
            delta: 0.0,
        };
        // Parameters with Ω_R = 0 simply leave `omega_r` undefined.
        if let Ok(d) = model::dressed_scalars(&params) {
            set_var(&mut ctx, "omega_r", d.omega_r);
        }
        if params.kappa > 0.0 {
            set_var(&mut ctx, "gamma_c", params.gamma_c());
        }
        params.delta = number("delta", defaults.delta, &ctx)?;
        params
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;

        let sweep_var = match entries.get("sweep_var").unwrap_or("delta") {
            "delta" => SweepVar::Delta,
            "rabi" => SweepVar::Rabi,
            "omega21" => SweepVar::Omega21,
            other => {
                return Err(CliError::Config(format!(
                    "sweep_var must be delta|rabi|omega21, got '{other}'"
                )))
            }
        };
        let sweep = grid_spec(entries, "sweep", &ctx)?;
        if sweep.is_none() && sweep_var != SweepVar::Delta {
            return Err(CliError::Config(format!(
                "sweeping {} needs sweep_start, sweep_stop and sweep_count",
                sweep_var.name()
            )));
        }
        let spectrum = grid_spec(entries, "freq", &ctx)?;

        let config = Self {
            params,
            sweep_var,
            sweep,
            spectrum,
            beta_variant: entries
                .get("beta_variant")
                .map_or(Ok(BetaVariant::Corrected), parse_beta)?,
            gamma5_variant: entries
                .get("gamma5_variant")
                .map_or(Ok(Gamma5Variant::Corrected), parse_gamma5)?,
            out: entries
                .get("out")
                .map_or_else(|| PathBuf::from("."), PathBuf::from),
        };
        config.sweep_points()?;
        config.spectrum_points()?;
        Ok(config)
    }

    pub fn s_source(&self) -> SOperatorSource {
        SOperatorSource::ClosedForm(self.beta_variant)
    }

    pub fn omega_r(&self) -> Result<f64> {
        model::dressed_scalars(&self.params)
            .map(|d| d.omega_r)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn sweep_points(&self) -> Result<Vec<f64>> {
        match &self.sweep {
            Some(g) => g.points(),
            None => grid::default_population_grid(self.omega_r()?)
                .map_err(|e| CliError::Config(e.to_string())),
        }
    }

    pub fn spectrum_points(&self) -> Result<Vec<f64>> {
        match &self.spectrum {
            Some(g) => g.points(),
            None => grid::default_spectrum_grid(self.omega_r()?)
                .map_err(|e| CliError::Config(e.to_string())),
        }
    }
}

fn grid_spec(entries: &Entries, prefix: &str, ctx: &HashMapContext) -> Result<Option<GridSpec>> {
    let keys = [
        format!("{prefix}_start"),
        format!("{prefix}_stop"),
        format!("{prefix}_count"),
    ];
    let values: Vec<Option<&str>> = keys.iter().map(|k| entries.get(k)).collect();
    match values.as_slice() {
        [None, None, None] => Ok(None),
        [Some(a), Some(b), Some(c)] => Ok(Some(GridSpec {
            start: eval(&keys[0], a, ctx)?,
            stop: eval(&keys[1], b, ctx)?,
            count: eval_count(&keys[2], c, ctx)?,
        })),
        _ => Err(CliError::Config(format!(
            "{} must be given together",
            keys.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> Result<RunConfig> {
        RunConfig::from_entries(&Entries::parse_text(text)?)
    }

    #[test]
    fn defaults_are_figure_values() {
        let c = config("").unwrap();
        assert_eq!(c.params, SystemParams::default());
        assert_eq!(c.sweep_points().unwrap().len(), 801);
        assert_eq!(c.spectrum_points().unwrap().len(), 2001);
    }

    #[test]
    fn expressions_see_generalized_rabi_frequency() {
        let c = config("omega21 = 200\nrabi = 200\ndelta = 2*omega_r # fig 8c\n").unwrap();
        assert_eq!(c.params.delta, 600.0);
        let c = config("sweep_start = -omega_r\nsweep_stop = omega_r\nsweep_count = 3").unwrap();
        let w = vatom_core::model::dressed_scalars(&c.params)
            .unwrap()
            .omega_r;
        assert_eq!(c.sweep_points().unwrap(), vec![-w, 0.0, w]);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "bogus = 1",
            "rabi 100",
            "rabi = -1",
            "delta = omega_q",
            "sweep_start = 0\nsweep_stop = 1",
            "sweep_start = 1\nsweep_stop = 0\nsweep_count = 5",
            "sweep_start = 0\nsweep_stop = 1\nsweep_count = 2.5",
            "beta_variant = typo",
            "sweep_var = rabi",
            "omega21 = 0\nrabi = 0\ndelta = omega_r",
        ] {
            assert!(matches!(config(text), Err(CliError::Config(_))), "{text}");
        }
    }

    #[test]
    fn later_entries_override() {
        let mut base = Entries::parse_text("rabi = 10\ng = 5").unwrap();
        let mut over = Entries::default();
        over.set_pair("rabi=50").unwrap();
        base.merge(&over);
        let c = RunConfig::from_entries(&base).unwrap();
        assert_eq!((c.params.rabi, c.params.g), (50.0, 5.0));
    }

    #[test]
    fn single_point_sweep() {
        let c = config("sweep_start = 3\nsweep_stop = 3\nsweep_count = 1").unwrap();
        assert_eq!(c.sweep_points().unwrap(), vec![3.0]);
    }
}
