//! Flat `key = value` run configuration with line-numbered diagnostics.
//!
//! Defaults reproduce the reference nanoscale-waveguide operating point: a
//! phase-matched backward triplet with the signal photon at 1e14 s^-1, the
//! phonon at 1e10 s^-1 and the pump laser resonant with the pump mode.
//! Unknown keys are rejected, every physical invariant is enforced while
//! parsing, and the frequencies left unset are derived after all overrides:
//! `omega_kq = omega_k - Omega_q`, `omega_p = omega_kq`,
//! `k_pump = k_signal - q_phonon`.

use std::fmt;
use std::path::PathBuf;

use brio_core::pump::PumpDrive;
use brio_core::spectra::KernelMode;
use brio_core::sweep::{Geometry, SweepAxis, SweepSpec};
use brio_core::waveguide::{ModePair, WaveguideParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// Where the offending setting came from: `line N`, `--set N` or `config`.
    pub location: String,
    pub message: String,
}

impl ConfigError {
    fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error at {}: {}", self.location, self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: WaveguideParams<f64>,
    pub drive: PumpDrive<f64>,
    pub modes: ModePair<f64>,
    pub geometry: Geometry,
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub probe_detuning: f64,
    pub kernel: KernelMode,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        ConfigBuilder::default()
            .finalize()
            .expect("built-in defaults are valid")
    }
}

impl RunConfig {
    /// Sweep spec for a given axis, everything else from the config.
    pub fn sweep_spec(&self, axis: SweepAxis) -> SweepSpec<f64> {
        SweepSpec {
            geometry: self.geometry,
            axis,
            start: self.start,
            stop: self.stop,
            points: self.points,
            params: self.params,
            drive: self.drive,
            modes: self.modes,
            kernel_mode: self.kernel,
            probe_detuning: self.probe_detuning,
        }
    }
}

/// Staged configuration: text first, then `--set` overrides, then flags.
#[derive(Debug, Clone)]
pub struct ConfigBuilder {
    omega0: f64,
    v_g: f64,
    v_a: f64,
    length_w: f64,
    gamma: f64,
    big_gamma: f64,
    g: f64,
    u: f64,
    refractive_index: f64,
    omega_p: Option<f64>,
    n_in: f64,
    phase: f64,
    k_signal: f64,
    k_pump: Option<f64>,
    q_phonon: f64,
    omega_k: f64,
    omega_kq: Option<f64>,
    big_omega_q: f64,
    geometry: Geometry,
    axis: SweepAxis,
    start: f64,
    stop: f64,
    points: usize,
    probe_detuning: f64,
    kernel: KernelMode,
    format: OutputFormat,
    out: Option<PathBuf>,
}

impl Default for ConfigBuilder {
    fn default() -> Self {
        // the wavenumbers form the backward phase-matched triplet for the
        // default dispersions: q = 2 k v_g / (v_g + v_a) exactly
        Self {
            omega0: 3.7495e13,
            v_g: 1e8,
            v_a: 8e3,
            length_w: 1e-3,
            gamma: 1e5,
            big_gamma: 1e6,
            g: 1e4,
            u: 1e6,
            refractive_index: 3.5,
            omega_p: None,
            n_in: 1e8,
            phase: 0.0,
            k_signal: 6.2505e5,
            k_pump: None,
            q_phonon: 1.25e6,
            omega_k: 1e14,
            omega_kq: None,
            big_omega_q: 1e10,
            geometry: Geometry::Linear,
            axis: SweepAxis::ProbeDetuning,
            start: -2e7,
            stop: 2e7,
            points: 2001,
            probe_detuning: 0.0,
            kernel: KernelMode::Approximate,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

fn parse_number(value: &str, location: &str) -> Result<f64, ConfigError> {
    let parsed: f64 = value
        .parse()
        .map_err(|_| ConfigError::new(location, format!("unparsable number `{value}`")))?;
    if !parsed.is_finite() {
        return Err(ConfigError::new(
            location,
            format!("value `{value}` must be finite"),
        ));
    }
    Ok(parsed)
}

impl ConfigBuilder {
    /// Parse a whole config text. `#` starts a comment, blank lines are
    /// skipped, everything else must be `key = value`.
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut builder = Self::default();
        for (index, raw) in text.lines().enumerate() {
            let location = format!("line {}", index + 1);
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::new(&location, "expected `key = value`".to_string()))?;
            builder.apply(key.trim(), value.trim(), &location)?;
        }
        Ok(builder)
    }

    /// Apply one `key=value` override; `index` is its position among the
    /// overrides, used for diagnostics.
    pub fn apply_set(&mut self, assignment: &str, index: usize) -> Result<(), ConfigError> {
        let location = format!("--set {}", index + 1);
        let (key, value) = assignment.split_once('=').ok_or_else(|| {
            ConfigError::new(&location, format!("expected KEY=VALUE, got `{assignment}`"))
        })?;
        self.apply(key.trim(), value.trim(), &location)
    }

    fn apply(&mut self, key: &str, value: &str, location: &str) -> Result<(), ConfigError> {
        if value.is_empty() {
            return Err(ConfigError::new(
                location,
                format!("empty value for `{key}`"),
            ));
        }
        let reject = |constraint: &str| -> ConfigError {
            ConfigError::new(location, format!("{key} = {value} violates {constraint}"))
        };
        match key {
            "omega0" => self.omega0 = parse_number(value, location)?,
            "v_g" => {
                let v = parse_number(value, location)?;
                if v <= 0.0 {
                    return Err(reject("v_g > 0"));
                }
                self.v_g = v;
            }
            "v_a" => {
                let v = parse_number(value, location)?;
                if v <= 0.0 {
                    return Err(reject("v_a > 0"));
                }
                self.v_a = v;
            }
            "length_W" => {
                let v = parse_number(value, location)?;
                if v <= 0.0 {
                    return Err(reject("length_W > 0"));
                }
                self.length_w = v;
            }
            "gamma" => {
                let v = parse_number(value, location)?;
                if v < 0.0 {
                    return Err(reject("gamma >= 0"));
                }
                self.gamma = v;
            }
            "Gamma" => {
                let v = parse_number(value, location)?;
                if v < 0.0 {
                    return Err(reject("Gamma >= 0"));
                }
                self.big_gamma = v;
            }
            "g" => {
                let v = parse_number(value, location)?;
                if v < 0.0 {
                    return Err(reject("g >= 0"));
                }
                self.g = v;
            }
            "u" => {
                let v = parse_number(value, location)?;
                if v <= 0.0 {
                    return Err(reject("u > 0"));
                }
                self.u = v;
            }
            "refractive_index_n" => self.refractive_index = parse_number(value, location)?,
            "omega_p" => self.omega_p = Some(parse_number(value, location)?),
            "n_in" => {
                let v = parse_number(value, location)?;
                if v < 0.0 {
                    return Err(reject("n_in >= 0"));
                }
                self.n_in = v;
            }
            "phase" => self.phase = parse_number(value, location)?,
            "k_signal" => self.k_signal = parse_number(value, location)?,
            "k_pump" => self.k_pump = Some(parse_number(value, location)?),
            "q_phonon" => self.q_phonon = parse_number(value, location)?,
            "omega_k" => self.omega_k = parse_number(value, location)?,
            "omega_kq" => self.omega_kq = Some(parse_number(value, location)?),
            "Omega_q" => self.big_omega_q = parse_number(value, location)?,
            "geometry" => {
                self.geometry = match value {
                    "linear" => Geometry::Linear,
                    "ring" => Geometry::Ring,
                    _ => {
                        return Err(ConfigError::new(
                            location,
                            format!("geometry must be `linear` or `ring`, got `{value}`"),
                        ))
                    }
                };
            }
            "axis" => {
                self.axis = match value {
                    "probe_detuning" => SweepAxis::ProbeDetuning,
                    "pump_intensity" => SweepAxis::PumpIntensity,
                    "polariton_detuning" => SweepAxis::PolaritonDetuning,
                    _ => {
                        return Err(ConfigError::new(
                            location,
                            format!(
                                "axis must be `probe_detuning`, `pump_intensity` or \
                                 `polariton_detuning`, got `{value}`"
                            ),
                        ))
                    }
                };
            }
            "start" => self.start = parse_number(value, location)?,
            "stop" => self.stop = parse_number(value, location)?,
            "points" => {
                let v: usize = value.parse().map_err(|_| {
                    ConfigError::new(location, format!("unparsable point count `{value}`"))
                })?;
                if v < 2 {
                    return Err(reject("points >= 2"));
                }
                self.points = v;
            }
            "probe_detuning" => self.probe_detuning = parse_number(value, location)?,
            "kernel" => {
                self.kernel = match value {
                    "approx" => KernelMode::Approximate,
                    "eigen" => KernelMode::EigenOracle,
                    "full" => KernelMode::FullResponse,
                    _ => {
                        return Err(ConfigError::new(
                            location,
                            format!("kernel must be `approx`, `eigen` or `full`, got `{value}`"),
                        ))
                    }
                };
            }
            "format" => {
                self.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => {
                        return Err(ConfigError::new(
                            location,
                            format!("format must be `csv` or `json`, got `{value}`"),
                        ))
                    }
                };
            }
            "out" => self.out = Some(PathBuf::from(value)),
            _ => {
                return Err(ConfigError::new(location, format!("unknown key `{key}`")));
            }
        }
        Ok(())
    }

    pub fn set_geometry(&mut self, geometry: Geometry) {
        self.geometry = geometry;
    }

    pub fn set_kernel(&mut self, kernel: KernelMode) {
        self.kernel = kernel;
    }

    pub fn set_format(&mut self, format: OutputFormat) {
        self.format = format;
    }

    pub fn set_out(&mut self, out: PathBuf) {
        self.out = Some(out);
    }

    /// Resolve derived frequencies, validate everything, produce the config.
    pub fn finalize(&self) -> Result<RunConfig, ConfigError> {
        let params = WaveguideParams {
            omega0: self.omega0,
            group_velocity: self.v_g,
            sound_velocity: self.v_a,
            length: self.length_w,
            photon_damping: self.gamma,
            phonon_damping: self.big_gamma,
            brillouin_coupling: self.g,
            port_coupling: self.u,
            refractive_index: self.refractive_index,
        };
        let omega_kq = self.omega_kq.unwrap_or(self.omega_k - self.big_omega_q);
        let drive = PumpDrive {
            omega_laser: self.omega_p.unwrap_or(omega_kq),
            input_flux: self.n_in,
            phase: self.phase,
        };
        let modes = ModePair {
            k_signal: self.k_signal,
            k_pump: self.k_pump.unwrap_or(self.k_signal - self.q_phonon),
            q_phonon: self.q_phonon,
            omega_signal: self.omega_k,
            omega_pump: omega_kq,
            omega_phonon: self.big_omega_q,
        };
        let reject = |e: brio_core::Error| ConfigError::new("config", e.to_string());
        params.validate().map_err(reject)?;
        drive.validate().map_err(reject)?;
        modes.validate().map_err(reject)?;
        // the negated form also rejects NaN bounds
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.start < self.stop) {
            return Err(ConfigError::new("config", "start must be below stop"));
        }
        if self.axis == SweepAxis::PumpIntensity && self.start < 0.0 {
            return Err(ConfigError::new(
                "config",
                "pump intensity axis must be nonnegative",
            ));
        }
        Ok(RunConfig {
            params,
            drive,
            modes,
            geometry: self.geometry,
            axis: self.axis,
            start: self.start,
            stop: self.stop,
            points: self.points,
            probe_detuning: self.probe_detuning,
            kernel: self.kernel,
            format: self.format,
            out: self.out.clone(),
        })
    }
}

/// Parse a config text with no further overrides.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    ConfigBuilder::from_text(text)?.finalize()
}

/// 17 significant digits: any f64 reparses to the identical bits.
pub fn format_scalar(x: f64) -> String {
    format!("{x:.16e}")
}

/// Emit a config as text that `parse_config` maps back to the same value.
pub fn emit_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    let mut num = |key: &str, value: f64| {
        out.push_str(&format!("{key} = {}\n", format_scalar(value)));
    };
    num("omega0", cfg.params.omega0);
    num("v_g", cfg.params.group_velocity);
    num("v_a", cfg.params.sound_velocity);
    num("length_W", cfg.params.length);
    num("gamma", cfg.params.photon_damping);
    num("Gamma", cfg.params.phonon_damping);
    num("g", cfg.params.brillouin_coupling);
    num("u", cfg.params.port_coupling);
    num("refractive_index_n", cfg.params.refractive_index);
    num("omega_p", cfg.drive.omega_laser);
    num("n_in", cfg.drive.input_flux);
    num("phase", cfg.drive.phase);
    num("k_signal", cfg.modes.k_signal);
    num("k_pump", cfg.modes.k_pump);
    num("q_phonon", cfg.modes.q_phonon);
    num("omega_k", cfg.modes.omega_signal);
    num("omega_kq", cfg.modes.omega_pump);
    num("Omega_q", cfg.modes.omega_phonon);
    num("start", cfg.start);
    num("stop", cfg.stop);
    num("probe_detuning", cfg.probe_detuning);
    let mut word = |key: &str, value: &str| {
        out.push_str(&format!("{key} = {value}\n"));
    };
    word(
        "geometry",
        match cfg.geometry {
            Geometry::Linear => "linear",
            Geometry::Ring => "ring",
        },
    );
    word(
        "axis",
        match cfg.axis {
            SweepAxis::ProbeDetuning => "probe_detuning",
            SweepAxis::PumpIntensity => "pump_intensity",
            SweepAxis::PolaritonDetuning => "polariton_detuning",
        },
    );
    word("points", &cfg.points.to_string());
    word(
        "kernel",
        match cfg.kernel {
            KernelMode::Approximate => "approx",
            KernelMode::EigenOracle => "eigen",
            KernelMode::FullResponse => "full",
        },
    );
    word(
        "format",
        match cfg.format {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        },
    );
    if let Some(path) = &cfg.out {
        word("out", &path.display().to_string());
    }
    out
}
