use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flexcool::config::{ConfigError, RunConfig};
use flexcool::output::{
    cp_table, params_table, rate_table, run_evolve, steady_table, sweep_table, write_csv,
    write_csv_to, Table,
};
use flexcool::sweep::run_sweep;
use flexcool::Error;

const SCHEMAS: &str = "\
CSV schemas (frequencies as ordinary frequencies, LF line endings):
  cp      z_um,u_j,u_hz,c4_hz_um4
  params  quantity,value,unit
  steady  delta_hz,omega_rabi_hz,m_ss,n_total_ss,gamma_eff_per_s,stable
  rate    m0,amplitude_a,gamma_eff_per_s,m_ss,t_ss_k,slow_eigenvalue_per_s,spectral_abscissa_per_s,stable
  sweep   <axis columns>,m_ss,n_total_ss,gamma_eff_per_s,stable
          axis columns: delta_hz omega_rabi_hz g_hz eta omega_ph_hz gamma_hz nu_hz omega_g_shift_hz
  evolve  t_s,m_ode_T<T>K,m_fit_T<T>K,...,diverged

Exit codes: 0 success, 1 I/O or numerical failure, 2 configuration error,
3 singular parameters in a single-point mode.";

#[derive(Parser)]
#[command(name = "flexcool", version, about = "Sympathetic cooling of a graphene flexural mode", after_help = SCHEMAS)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Configuration file; omitted keys keep their red-point defaults.
    #[arg(long, global = true, env = "FLEXCOOL_CONFIG")]
    config: Option<PathBuf>,
    /// Override one key, e.g. `--set drive.detuning="40 MHz"`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    /// Print the fully resolved configuration and exit.
    #[arg(long, global = true)]
    show_config: bool,
    /// Output CSV path; `-` or absent writes to stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Casimir-Polder potential versus atom-surface distance.
    Cp,
    /// Resolved model parameters and regime ratios.
    Params,
    /// Steady state and cooling rate at the configured point.
    Steady,
    /// Cooling rate and decay amplitude from a thermal start.
    Rate {
        /// Initial flexural occupation.
        #[arg(long, conflicts_with = "temperature")]
        m0: Option<f64>,
        /// Initial membrane temperature (K).
        #[arg(long, default_value_t = 300.0)]
        temperature: f64,
    },
    /// Steady state and rate over the configured sweep axes.
    Sweep,
    /// Time evolution of m from each configured starting temperature.
    Evolve,
}

enum Failure {
    Config(String),
    Singular(String),
    Other(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular(_) => Failure::Singular(e.to_string()),
            Error::Invalid { .. } => Failure::Config(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn load(common: &Common) -> Result<RunConfig, Failure> {
    let mut config = RunConfig::default();
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        config.apply_document(&text, &path.display().to_string())?;
    }
    for s in &common.set {
        config.apply_override(s)?;
    }
    if let Some(out) = &common.output {
        config.output = (out != Path::new("-")).then(|| out.clone());
    }
    config.validate()?;
    Ok(config)
}

fn emit(table: &Table, config: &RunConfig) -> Result<(), Failure> {
    match &config.output {
        Some(path) => {
            write_csv(table, path)?;
            let mut meta = path.clone().into_os_string();
            meta.push(".config");
            std::fs::write(&meta, config.to_document())
                .map_err(|e| Failure::Other(format!("{}: {e}", Path::new(&meta).display())))?;
            Ok(())
        }
        None => {
            let mut buf = Vec::new();
            write_csv_to(table, &mut buf, "stdout")?;
            match std::io::stdout().lock().write_all(&buf) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Other(format!("stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = load(&cli.common)?;
    if cli.common.show_config {
        print!("{}", config.to_document());
        return Ok(());
    }
    for o in config.overrides() {
        eprintln!("override {o}");
    }
    let table = match cli.command {
        Command::Cp => cp_table(&config)?,
        Command::Params => {
            let (table, warnings) = params_table(&config)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            table
        }
        Command::Steady => steady_table(&config)?,
        Command::Rate { m0, temperature } => rate_table(&config, temperature, m0)?,
        Command::Sweep => {
            let result = run_sweep(&config);
            for (cell, diag) in result.diagnostics() {
                eprintln!("cell {:?}: {diag}", cell.coords);
            }
            sweep_table(&result)
        }
        Command::Evolve => {
            let table = run_evolve(&config)?;
            if table.rows.last().and_then(|r| r.last())
                == Some(&flexcool::output::Field::Bool(true))
            {
                eprintln!("warning: the moment system has a growing mode at these parameters");
            }
            table
        }
    };
    emit(&table, &config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Config(m) => (2, format!("configuration error: {m}")),
                Failure::Singular(m) => (3, m),
                Failure::Other(m) => (1, m),
            };
            let _ = writeln!(std::io::stderr(), "flexcool: {msg}");
            ExitCode::from(code)
        }
    }
}
