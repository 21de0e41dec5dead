//! Classical pump steady state from the input-output boundary conditions and
//! the pump-enhanced effective photon-phonon coupling.
//!
//! The pump is treated as undepleted: its steady-state amplitude is frozen
//! and the signal never acts back on it.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::waveguide::WaveguideParams;

/// External pump drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpDrive<T> {
    /// Pump laser angular frequency (s^-1).
    pub omega_laser: T,
    /// Input pump flux; carries units of angular frequency (s^-1).
    pub input_flux: T,
    /// Pump phase (radians). The spectra R, T, A do not depend on it.
    pub phase: T,
}

impl<T: Scalar> PumpDrive<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.input_flux >= T::zero()) {
            return Err(Error::invalid("n_in", "input pump flux must be >= 0"));
        }
        if !self.omega_laser.is_finite() {
            return Err(Error::invalid(
                "omega_p",
                "pump laser frequency must be finite",
            ));
        }
        if !self.phase.is_finite() {
            return Err(Error::invalid("phase", "pump phase must be finite"));
        }
        Ok(())
    }

    /// Input amplitude sqrt(flux) * exp(i phase).
    pub fn input_amplitude(&self) -> Complex<T> {
        Complex::from_polar(self.input_flux.sqrt(), self.phase)
    }
}

/// Frozen pump operating point and the coupling it induces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpSteadyState<T> {
    /// Complex pump detuning (s^-1); the imaginary part is -(u + gamma/2).
    pub detuning: Complex<T>,
    /// Intracavity pump amplitude (dimensionless).
    pub amplitude: Complex<T>,
    /// Mean intracavity pump photon number.
    pub photon_number: T,
    /// Effective photon-phonon coupling f = g * amplitude (s^-1).
    pub coupling: Complex<T>,
}

impl<T: Scalar> PumpSteadyState<T> {
    /// Evaluate the whole chain at a given pump waveguide mode frequency.
    pub fn evaluate(
        omega_pump_mode: T,
        drive: &PumpDrive<T>,
        params: &WaveguideParams<T>,
    ) -> Result<Self> {
        params.validate()?;
        drive.validate()?;
        let detuning = pump_detuning(omega_pump_mode, drive, params);
        let amplitude = pump_steady_amplitude(detuning, drive, params)?;
        let photon_number = intracavity_pump_number(detuning, drive, params)?;
        let coupling = amplitude * params.brillouin_coupling;
        Ok(Self {
            detuning,
            amplitude,
            photon_number,
            coupling,
        })
    }
}

/// Complex pump detuning: mode frequency minus laser frequency, with the port
/// and free-space losses in the imaginary part.
pub fn pump_detuning<T: Scalar>(
    omega_pump_mode: T,
    drive: &PumpDrive<T>,
    params: &WaveguideParams<T>,
) -> Complex<T> {
    Complex::new(
        omega_pump_mode - drive.omega_laser,
        -(params.port_coupling + lit::<T>(0.5) * params.photon_damping),
    )
}

/// Steady-state intracavity pump amplitude sqrt(u) * alpha / (i * detuning).
pub fn pump_steady_amplitude<T: Scalar>(
    detuning: Complex<T>,
    drive: &PumpDrive<T>,
    params: &WaveguideParams<T>,
) -> Result<Complex<T>> {
    if detuning == Complex::zero() {
        return Err(Error::invalid(
            "Delta",
            "pump detuning must not vanish (undamped exact resonance)",
        ));
    }
    let alpha = drive.input_amplitude();
    let i = Complex::new(T::zero(), T::one());
    Ok(alpha * params.port_coupling.sqrt() / (i * detuning))
}

/// Mean intracavity pump photon number u * n_in / |detuning|^2.
pub fn intracavity_pump_number<T: Scalar>(
    detuning: Complex<T>,
    drive: &PumpDrive<T>,
    params: &WaveguideParams<T>,
) -> Result<T> {
    if detuning == Complex::zero() {
        return Err(Error::invalid(
            "Delta",
            "pump detuning must not vanish (undamped exact resonance)",
        ));
    }
    Ok(params.port_coupling * drive.input_flux / detuning.norm_sqr())
}

/// Effective photon-phonon coupling f = g * sqrt(u) * alpha / (i * detuning).
pub fn effective_coupling<T: Scalar>(
    detuning: Complex<T>,
    drive: &PumpDrive<T>,
    params: &WaveguideParams<T>,
) -> Result<Complex<T>> {
    Ok(pump_steady_amplitude(detuning, drive, params)? * params.brillouin_coupling)
}
