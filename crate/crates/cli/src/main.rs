//! `brio` — Brillouin-induced opacity and transparency spectra for nanoscale
//! waveguides.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 invariant
//! violation reported by `verify`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use brio_cli::analysis::{
    analyze, summary_json, verification_json, verification_text, verify_tables,
};
use brio_cli::config::{ConfigBuilder, OutputFormat, RunConfig};
use brio_cli::emit::{csv_bytes, json_bytes};
use brio_core::spectra::KernelMode;
use brio_core::sweep::{run_sweep, Geometry, SweepAxis, SweepTable};
use brio_core::waveguide::solve_backward_phase_match;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "brio",
    version,
    about = "Brillouin-induced opacity (linear) and transparency (ring) spectra \
             from phonon-polariton formation in nanoscale waveguides"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to a flat `key = value` config file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Repeatable KEY=VALUE override, applied after the config file in order.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Waveguide geometry; overrides the config.
    #[arg(long, global = true, value_enum)]
    geometry: Option<GeometryArg>,

    /// Output path for the emitted table; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format; `json` also prints a summary document to stdout.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Use exact non-Hermitian eigenvalues for the kernel poles.
    #[arg(long = "exact-eigen", global = true)]
    exact_eigen: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    Linear,
    Ring,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Probe spectrum sweep for the configured geometry.
    Spectrum,
    /// Polariton branch fractions over the half-detuning axis.
    Polariton,
    /// Backward phase-matching triplet for the configured signal wavenumber.
    PhaseMatch,
    /// Sweep along the axis configured by `axis`.
    Sweep,
    /// Recompute linear, ring and fraction sweeps and check every invariant.
    Verify,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(1)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, String> {
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?,
        None => String::new(),
    };
    let mut builder = ConfigBuilder::from_text(&text).map_err(|e| e.to_string())?;
    for (index, assignment) in cli.set.iter().enumerate() {
        builder
            .apply_set(assignment, index)
            .map_err(|e| e.to_string())?;
    }
    if let Some(geometry) = cli.geometry {
        builder.set_geometry(match geometry {
            GeometryArg::Linear => Geometry::Linear,
            GeometryArg::Ring => Geometry::Ring,
        });
    }
    if cli.exact_eigen {
        builder.set_kernel(KernelMode::EigenOracle);
    }
    if let Some(format) = cli.format {
        builder.set_format(match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        });
    }
    if let Some(out) = &cli.out {
        builder.set_out(out.clone());
    }
    builder.finalize().map_err(|e| e.to_string())
}

fn run() -> Result<ExitCode, String> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(ExitCode::SUCCESS);
        }
        Err(e) => return Err(e.to_string()),
    };
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::Spectrum => emit_sweep(&cfg, cfg.sweep_spec(SweepAxis::ProbeDetuning)),
        Command::Sweep => emit_sweep(&cfg, cfg.sweep_spec(cfg.axis)),
        Command::Polariton => emit_sweep(&cfg, cfg.sweep_spec(SweepAxis::PolaritonDetuning)),
        Command::PhaseMatch => phase_match(&cfg),
        Command::Verify => verify(&cfg),
    }
}

fn write_output(cfg: &RunConfig, bytes: &[u8]) -> Result<(), String> {
    match &cfg.out {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

fn emit_sweep(cfg: &RunConfig, spec: brio_core::sweep::SweepSpec<f64>) -> Result<ExitCode, String> {
    let table: SweepTable<f64> = run_sweep(&spec).map_err(|e| e.to_string())?;
    match cfg.format {
        OutputFormat::Csv => write_output(cfg, &csv_bytes(&table))?,
        OutputFormat::Json => {
            if let Some(path) = &cfg.out {
                fs::write(path, json_bytes(&table))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let analysis = analyze(&table);
            let summary = summary_json(&table, &analysis);
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn phase_match(cfg: &RunConfig) -> Result<ExitCode, String> {
    let pair =
        solve_backward_phase_match(cfg.modes.k_signal, &cfg.params).map_err(|e| e.to_string())?;
    let residual = (pair.omega_signal - pair.omega_pump) - pair.omega_phonon;
    let bytes = match cfg.format {
        OutputFormat::Csv => {
            let fs17 = brio_cli::config::format_scalar;
            format!(
                "k_signal = {}\nk_pump = {}\nq_phonon = {}\nomega_k = {}\nomega_kq = {}\n\
                 Omega_q = {}\nenergy_residual = {}\n",
                fs17(pair.k_signal),
                fs17(pair.k_pump),
                fs17(pair.q_phonon),
                fs17(pair.omega_signal),
                fs17(pair.omega_pump),
                fs17(pair.omega_phonon),
                fs17(residual),
            )
            .into_bytes()
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "k_signal": pair.k_signal,
                "k_pump": pair.k_pump,
                "q_phonon": pair.q_phonon,
                "omega_k": pair.omega_signal,
                "omega_kq": pair.omega_pump,
                "Omega_q": pair.omega_phonon,
                "energy_residual": residual,
            });
            let mut bytes = serde_json::to_vec_pretty(&doc).expect("document serializes");
            bytes.push(b'\n');
            bytes
        }
    };
    write_output(cfg, &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(cfg: &RunConfig) -> Result<ExitCode, String> {
    let mut linear_spec = cfg.sweep_spec(SweepAxis::ProbeDetuning);
    linear_spec.geometry = Geometry::Linear;
    let mut ring_spec = linear_spec.clone();
    ring_spec.geometry = Geometry::Ring;
    let linear = run_sweep(&linear_spec).map_err(|e| e.to_string())?;
    let ring = run_sweep(&ring_spec).map_err(|e| e.to_string())?;

    // fraction grid spanning the crossing, ten couplings wide (or the mean
    // damping when the pump is off)
    let mut fraction_spec = cfg.sweep_spec(SweepAxis::PolaritonDetuning);
    let width = if linear.coupling_magnitude > 0.0 {
        10.0 * linear.coupling_magnitude
    } else {
        (cfg.params.photon_damping + cfg.params.phonon_damping).max(1.0)
    };
    fraction_spec.start = -width;
    fraction_spec.stop = width;
    fraction_spec.points = 1001;
    let fractions = run_sweep(&fraction_spec).map_err(|e| e.to_string())?;

    let verification = verify_tables(&linear, &ring, &fractions).map_err(|e| e.to_string())?;
    let bytes = match cfg.format {
        OutputFormat::Csv => verification_text(&verification).into_bytes(),
        OutputFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(&verification_json(&verification))
                .expect("report serializes");
            bytes.push(b'\n');
            bytes
        }
    };
    write_output(cfg, &bytes)?;
    Ok(if verification.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
