use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, SpectrumKind};
use crate::config::{Entries, RunConfig};
use crate::error::{CliError, Result};
use crate::manifest::{self, FigureManifest};
use crate::output::{write_atomic, Table};
use crate::report::{any_failure, CheckOutcome};
use crate::validate::{self, Level};

#[derive(Debug, Parser)]
#[command(
    name = "vatom",
    version,
    about = "Driven V-type atom in a bad cavity: populations, spectra, validation"
)]
pub struct Cli {
    /// Flat key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one configuration key (repeatable), e.g. --set delta=2*omega_r.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    beta_variant: Option<Variant>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write an SVG quick-look next to each CSV.
    #[arg(long, global = true)]
    svg: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    Corrected,
    PaperExact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Fluorescence,
    FluorescenceSecular,
    Absorption,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bare-state density matrix along a sweep.
    Populations,
    /// Exact and rate-equation dressed populations and transition rates.
    Dressed,
    /// Transition rates, secular decay constants and shifted frequencies.
    Rates,
    /// Fluorescence (exact or secular) or absorption spectrum.
    Spectrum {
        #[arg(long, value_enum, default_value = "fluorescence")]
        kind: Kind,
    },
    /// Probe absorption spectrum (same as `spectrum --kind absorption`).
    Absorption,
    /// Run the oracle suite.
    Validate {
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
    },
    /// Reproduce a figure frame and check its assertions. `list` prints the
    /// ids, `all` runs every manifest.
    Manifest { id: String },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn base_config(cli: &Cli) -> Result<RunConfig> {
    let mut entries = match &cli.config {
        Some(path) => Entries::read(path)?,
        None => Entries::default(),
    };
    let mut overrides = Entries::default();
    for pair in &cli.set {
        overrides.set_pair(pair)?;
    }
    entries.merge(&overrides);
    if let Some(out) = &cli.out {
        let out = out
            .to_str()
            .ok_or_else(|| CliError::Config("output path is not valid UTF-8".into()))?;
        entries.set("out", out)?;
    }
    if let Some(v) = cli.beta_variant {
        let name = match v {
            Variant::Corrected => "corrected",
            Variant::PaperExact => "paper-exact",
        };
        entries.set("beta_variant", name)?;
    }
    let cfg = RunConfig::from_entries(&entries)?;
    if cfg.params.bad_cavity_advisory() {
        log::warn!("kappa >= 3g >= 9gamma does not hold; the reduced model is outside the bad-cavity regime");
    }
    Ok(cfg)
}

fn emit(table: &Table, out: &Path, stem: &str, svg: bool) -> Result<()> {
    let path = out.join(format!("{stem}.csv"));
    write_atomic(&path, &table.to_csv())?;
    if svg {
        write_atomic(&out.join(format!("{stem}.svg")), &table.to_svg())?;
    }
    log::info!("wrote {} ({} rows)", path.display(), table.rows.len());
    // The data is written either way; too many failed points is still an
    // error.
    table.check_failures()
}

fn execute(cli: &Cli) -> Result<u8> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            log::warn!("thread pool already initialized: {e}");
        }
    }
    let cfg = base_config(cli)?;
    match &cli.command {
        Command::Populations => emit(
            &commands::populations(&cfg)?,
            &cfg.out,
            "populations",
            cli.svg,
        )?,
        Command::Dressed => emit(&commands::dressed(&cfg)?, &cfg.out, "dressed", cli.svg)?,
        Command::Rates => emit(&commands::rates(&cfg)?, &cfg.out, "rates", cli.svg)?,
        Command::Spectrum { kind } => {
            let kind = match kind {
                Kind::Fluorescence => SpectrumKind::Fluorescence,
                Kind::FluorescenceSecular => SpectrumKind::FluorescenceSecular,
                Kind::Absorption => SpectrumKind::Absorption,
            };
            emit(
                &commands::spectrum(&cfg, kind)?,
                &cfg.out,
                kind.name(),
                cli.svg,
            )?
        }
        Command::Absorption => emit(
            &commands::spectrum(&cfg, SpectrumKind::Absorption)?,
            &cfg.out,
            "absorption",
            cli.svg,
        )?,
        Command::Validate { level } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let outcomes = validate::run(level, cfg.beta_variant)?;
            return Ok(print_report(&outcomes, None));
        }
        Command::Manifest { id } => return run_manifests(id, &cfg, cli.svg),
    }
    Ok(0)
}

fn print_report(outcomes: &[CheckOutcome], prefix: Option<&str>) -> u8 {
    for o in outcomes {
        match prefix {
            Some(p) => println!("{p}\t{o}"),
            None => println!("{o}"),
        }
    }
    u8::from(any_failure(outcomes))
}

fn run_manifests(id: &str, cfg: &RunConfig, svg: bool) -> Result<u8> {
    let selected: Vec<FigureManifest> = match id {
        "list" => {
            for m in manifest::all_manifests() {
                let p = m.config.params;
                let names: Vec<String> = m.assertions.iter().map(|a| a.check.name()).collect();
                println!(
                    "{}\tomega21={} rabi={} delta={:.6}\t{}",
                    m.id,
                    p.omega21,
                    p.rabi,
                    p.delta,
                    names.join(",")
                );
            }
            return Ok(0);
        }
        "all" => manifest::all_manifests(),
        _ => vec![manifest::manifest(id)
            .ok_or_else(|| CliError::Config(format!("unknown manifest '{id}' (try 'list')")))?],
    };
    let mut code = 0;
    for m in selected {
        let m = m.with_run_options(cfg);
        let table = m.table()?;
        emit(&table, &m.config.out, &m.id, svg)?;
        code = code.max(print_report(&m.evaluate(&table)?, Some(&m.id)));
    }
    Ok(code)
}
