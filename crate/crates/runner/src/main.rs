use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use polariton_runner::{run, table, ConfigError, RunConfig, Table};

/// Light scattering from a condensate slab.
#[derive(Parser)]
#[command(name = "polariton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permittivity against detuning from the bare resonance.
    Epsilon(Common),
    /// Transmission, reflection and loss spectrum.
    Spectrum(Common),
    /// Split-profile reflection at resonance against the modulation wavenumber.
    Bragg(Common),
    /// Bulk propagator components at fixed momentum.
    Dispersion(Common),
    /// Polariton spectrum next to its Maxwell reference.
    Compare(Common),
}

#[derive(Args)]
struct Common {
    /// Plain-text `key=value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// uniform, cosine or split.
    #[arg(long)]
    profile: Option<String>,
    /// Density in units of 1/k0³.
    #[arg(long)]
    density: Option<String>,
    /// Slab depth in resonance wavelengths.
    #[arg(long)]
    length: Option<String>,
    #[arg(long = "mu-c")]
    mu_c: Option<String>,
    #[arg(long)]
    recoil: Option<String>,
    #[arg(long = "resonance-ratio")]
    resonance_ratio: Option<String>,
    /// Fragment modulation wavenumber in units of k0.
    #[arg(long = "delta-q")]
    delta_q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    dmin: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    dmax: Option<String>,
    #[arg(long)]
    points: Option<String>,
    /// `auto` or a fixed s_max.
    #[arg(long)]
    cutoff: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long = "max-doublings")]
    max_doublings: Option<String>,
    #[arg(long)]
    margin: Option<String>,
    /// polariton, maxwell or maxwell-forward-only.
    #[arg(long)]
    method: Option<String>,
    /// Expansion order of the forward-wave reference.
    #[arg(long = "forward-order")]
    forward_order: Option<String>,
    #[arg(long = "dq-min")]
    dq_min: Option<String>,
    #[arg(long = "dq-max")]
    dq_max: Option<String>,
    /// displaced or bare resonance for Bragg scans.
    #[arg(long)]
    resonance: Option<String>,
    /// Momentum in units of ħk0 for the dispersion scan.
    #[arg(long, allow_hyphen_values = true)]
    momentum: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
}

impl Common {
    fn config(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| ConfigError::BadValue {
                key: "config".into(),
                value: path.display().to_string(),
                reason: e.to_string(),
            })?;
            cfg.apply_file(&text)?;
        }
        let flags = [
            ("profile", &self.profile),
            ("density", &self.density),
            ("length", &self.length),
            ("mu-c", &self.mu_c),
            ("recoil", &self.recoil),
            ("resonance-ratio", &self.resonance_ratio),
            ("delta-q", &self.delta_q),
            ("dmin", &self.dmin),
            ("dmax", &self.dmax),
            ("points", &self.points),
            ("cutoff", &self.cutoff),
            ("tol", &self.tol),
            ("max-doublings", &self.max_doublings),
            ("margin", &self.margin),
            ("method", &self.method),
            ("forward-order", &self.forward_order),
            ("dq-min", &self.dq_min),
            ("dq-max", &self.dq_max),
            ("resonance", &self.resonance),
            ("momentum", &self.momentum),
            ("format", &self.format),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

const EXIT_INVALID: u8 = 2;
const EXIT_UNCONVERGED: u8 = 3;

fn emit(table: &Table, cfg: &RunConfig, out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = io::BufWriter::new(file);
            table::write(table, cfg.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table::write(table, cfg.format, &mut w)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Epsilon(c) | Command::Spectrum(c) | Command::Bragg(c) | Command::Dispersion(c) | Command::Compare(c) => c,
    };
    let cfg = match common.config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let result = match &cli.command {
        Command::Epsilon(_) => run::run_epsilon(&cfg).map(|t| (t, false)),
        Command::Spectrum(_) => run::run_spectrum(&cfg).map(|t| (t.to_table(), t.has_failures())),
        Command::Bragg(_) => run::run_bragg_scan(&cfg).map(|t| (t.to_table(), t.has_failures())),
        Command::Dispersion(_) => run::run_dispersion(&cfg).map(|t| (t, false)),
        Command::Compare(_) => run::run_compare(&cfg).map(|t| (t.to_table(), t.has_failures())),
    };
    let (table, failures) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    if let Err(e) = emit(&table, &cfg, &common.out) {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    if failures {
        eprintln!("error: at least one row did not converge");
        return ExitCode::from(EXIT_UNCONVERGED);
    }
    ExitCode::SUCCESS
}
