//! Argument parsing and dispatch for the `critical-chain` binary.
//!
//! Settings resolve as command-line flag, then config file, then default.
//! The basis budget additionally honours `CHAIN_BUDGET` between the flag and
//! the file.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use super::figures::{cmd_fig1, cmd_fig2, cmd_fig3, cmd_fig4, cmd_sweep, cmd_table, Comparison, Fig3Grid, Grid, Quantity, SweepSpec};
use super::output::SweepResult;
use super::validate::{cmd_validate, ValidateOptions};
use crate::chain::SystemParams;
use crate::error::{Error, Result};
use crate::fock::DEFAULT_BUDGET;

#[derive(Debug, Parser)]
#[command(name = "critical-chain", version, about = "Critical sensing with coupled Kerr resonator chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single resonator: QFI, photons, gap and sweep time against epsilon.
    Fig1(Common),
    /// Photon distribution over the Brillouin zone (default M = 31).
    Fig2(Common),
    /// Exact I/T^2 under a photon constraint against the scaling laws.
    Fig3(Common),
    /// Coupled chain against independent resonators, with log-log slopes.
    Fig4(Common),
    /// Independent-versus-coupled scaling table at the Gaussian photon bound.
    Table(Common),
    /// Run the cross-check suite; exits with 1 if any check fails.
    Validate(ValidateArgs),
    /// Generic one-dimensional sweep.
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Default, Clone)]
pub struct Common {
    /// Resonator frequency [default: 1]
    #[arg(long)]
    pub omega: Option<f64>,
    /// Adiabaticity parameter in (0, 1] [default: 1]
    #[arg(long)]
    pub eta: Option<f64>,
    /// Kerr coefficient [default: 1e-4]
    #[arg(long)]
    pub chi: Option<f64>,
    /// Number of resonators [default: 31 for fig2 and 27 for table, 11 otherwise]
    #[arg(long)]
    pub modes: Option<usize>,
    /// Photons per resonator held fixed [default: 100]
    #[arg(long = "nloc-max")]
    pub nloc_max: Option<f64>,
    /// Distances x = 1 - epsilon/omega [default for fig2: 1e-1,1e-2,1e-4,1e-6]
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<f64>>,
    /// Coupling values [default for fig1: 0, 0.01, ..., 0.99 times omega]
    #[arg(long, value_delimiter = ',')]
    pub epsilon: Option<Vec<f64>>,
    /// Chain lengths [default: odd 3..=31]
    #[arg(long = "m-grid", value_delimiter = ',')]
    pub m_grid: Option<Vec<usize>>,
    /// Photons-per-resonator grid; selects the N_loc axis in fig3 and sweep
    #[arg(long, value_delimiter = ',')]
    pub nloc: Option<Vec<f64>>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of CSV
    #[arg(long)]
    pub json: bool,
    /// Largest Fock basis dimension [default: 20000000]
    #[arg(long, env = "CHAIN_BUDGET")]
    pub budget: Option<usize>,
    /// Worker threads [default: number of cores]
    #[arg(long)]
    pub jobs: Option<usize>,
    /// TOML file of `key = value` settings using the flag names
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Skip the finite-chi checks
    #[arg(long)]
    pub gaussian_only: bool,
    /// Perturb every analytic reference by this relative amount
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub mutate: f64,
}

#[derive(Debug, Args, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// qfi, photons, gap, time, qfi_over_t2, photon_fractions or saturation
    #[arg(long, default_value = "qfi")]
    pub quantity: String,
    /// Comparison columns [default: coupled,independent,asymptotic,continuum]
    #[arg(long, value_delimiter = ',')]
    pub compare: Option<Vec<String>>,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileSettings {
    omega: Option<f64>,
    eta: Option<f64>,
    chi: Option<f64>,
    modes: Option<usize>,
    nloc_max: Option<f64>,
    x: Option<Vec<f64>>,
    epsilon: Option<Vec<f64>>,
    m_grid: Option<Vec<usize>>,
    nloc: Option<Vec<f64>>,
    budget: Option<usize>,
    jobs: Option<usize>,
}

fn load_file(path: &Path) -> Result<FileSettings> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Flags merged over the config file.
#[derive(Debug, Clone)]
pub struct Settings {
    pub omega: f64,
    pub eta: f64,
    pub chi: f64,
    pub modes: Option<usize>,
    pub nloc_max: f64,
    pub x: Option<Vec<f64>>,
    pub epsilon: Option<Vec<f64>>,
    pub m_grid: Vec<usize>,
    pub nloc: Option<Vec<f64>>,
    pub budget: usize,
    pub jobs: Option<usize>,
}

impl Settings {
    pub fn resolve(cli: &Common) -> Result<Self> {
        let file = match &cli.config {
            Some(p) => load_file(p)?,
            None => FileSettings::default(),
        };
        Ok(Self {
            omega: cli.omega.or(file.omega).unwrap_or(1.0),
            eta: cli.eta.or(file.eta).unwrap_or(1.0),
            chi: cli.chi.or(file.chi).unwrap_or(1e-4),
            modes: cli.modes.or(file.modes),
            nloc_max: cli.nloc_max.or(file.nloc_max).unwrap_or(100.0),
            x: cli.x.clone().or(file.x),
            epsilon: cli.epsilon.clone().or(file.epsilon),
            m_grid: cli.m_grid.clone().or(file.m_grid).unwrap_or_else(|| (3..=31).step_by(2).collect()),
            nloc: cli.nloc.clone().or(file.nloc),
            budget: cli.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
            jobs: cli.jobs.or(file.jobs),
        })
    }
}

fn emit(result: &SweepResult, common: &Common) -> Result<()> {
    with_output(common, |w| if common.json { result.write_json(w) } else { result.write_csv(w) })
}

fn with_output(common: &Common, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match &common.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
        }
    }
    Ok(())
}

fn parse_comparison(names: &Option<Vec<String>>) -> Result<Comparison> {
    let Some(names) = names else { return Ok(Comparison::all()) };
    let mut c = Comparison::default();
    for n in names {
        match n.as_str() {
            "coupled" => c.coupled = true,
            "independent" => c.independent = true,
            "asymptotic" => c.asymptotic = true,
            "continuum" => c.continuum = true,
            other => return Err(Error::Parse(format!("unknown comparison {other}"))),
        }
    }
    Ok(c)
}

fn common_of(command: &Command) -> &Common {
    match command {
        Command::Fig1(c) | Command::Fig2(c) | Command::Fig3(c) | Command::Fig4(c) | Command::Table(c) => c,
        Command::Validate(v) => &v.common,
        Command::Sweep(s) => &s.common,
    }
}

/// Runs one command and returns the process exit code.
pub fn execute(cli: &Cli) -> Result<i32> {
    let common = common_of(&cli.command);
    let s = Settings::resolve(common)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = s.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Error::Parse(e.to_string()))?;
    pool.install(|| dispatch(&cli.command, common, &s))
}

fn dispatch(command: &Command, common: &Common, s: &Settings) -> Result<i32> {
    match command {
        Command::Fig1(_) => {
            let grid = s.epsilon.clone().unwrap_or_else(|| (0..100).map(|i| i as f64 / 100.0 * s.omega).collect());
            emit(&cmd_fig1(s.omega, s.eta, &grid)?, common)?;
        }
        Command::Fig2(_) => {
            let x = s.x.clone().unwrap_or_else(|| vec![1e-1, 1e-2, 1e-4, 1e-6]);
            emit(&cmd_fig2(s.omega, s.modes.unwrap_or(31), &x)?, common)?;
        }
        Command::Fig3(_) => {
            let grid = match &s.nloc {
                Some(n) => Fig3Grid::LocalPhotons { m_modes: s.modes.unwrap_or(101), n_loc: n.clone() },
                None => Fig3Grid::Modes { m_grid: s.m_grid.clone(), n_loc_max: s.nloc_max },
            };
            emit(&cmd_fig3(s.omega, s.eta, &grid)?, common)?;
        }
        Command::Fig4(_) => emit(&cmd_fig4(s.omega, s.eta, &s.m_grid, s.nloc_max)?, common)?,
        Command::Table(_) => {
            let table = cmd_table(s.omega, s.chi, s.modes.unwrap_or(27), s.eta)?;
            with_output(common, |w| {
                if common.json {
                    serde_json::to_writer_pretty(&mut *w, &table)?;
                    writeln!(w)?;
                } else {
                    w.write_all(table.render().as_bytes())?;
                }
                Ok(())
            })?;
        }
        Command::Validate(v) => {
            let options = ValidateOptions { budget: s.budget, gaussian_only: v.gaussian_only, mutation: v.mutate };
            let report = cmd_validate(&options)?;
            with_output(common, |w| {
                if common.json {
                    serde_json::to_writer_pretty(&mut *w, &report)?;
                    writeln!(w)?;
                } else {
                    w.write_all(report.render().as_bytes())?;
                }
                Ok(())
            })?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
        Command::Sweep(a) => {
            let quantity: Quantity = a.quantity.parse()?;
            let m = s.modes.unwrap_or(11);
            let (grid, template) = if let Some(e) = &s.epsilon {
                (Grid::Epsilon(e.clone()), SystemParams::new(s.omega, 0.0, m)?)
            } else if let Some(x) = &s.x {
                (Grid::Distance(x.clone()), SystemParams::new(s.omega, 0.0, m)?)
            } else if let Some(n) = &s.nloc {
                (Grid::LocalPhotons(n.clone()), SystemParams::new(s.omega, 0.0, m)?)
            } else {
                (Grid::Modes(s.m_grid.clone()), SystemParams::new(s.omega, 0.0, m)?)
            };
            let n_loc_max = matches!(grid, Grid::Modes(_)).then_some(s.nloc_max);
            let spec = SweepSpec {
                quantity,
                grid,
                params: template.with_eta(s.eta)?.with_chi(s.chi)?,
                n_loc_max,
                comparison: parse_comparison(&a.compare)?,
            };
            emit(&cmd_sweep(&spec)?, common)?;
        }
    }
    Ok(0)
}

/// Entry point used by the binary: parses `args`, runs, reports errors on
/// stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
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
