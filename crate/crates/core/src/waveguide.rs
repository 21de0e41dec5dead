//! Waveguide parameters, photon and phonon dispersions, discrete mode
//! wavenumbers and the backward phase-matching solver.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

/// Static description of a Brillouin-active waveguide.
///
/// Frequencies and rates are angular (s^-1), velocities m/s, lengths m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideParams<T> {
    /// Photon dispersion offset at zero wavenumber (s^-1).
    pub omega0: T,
    /// Optical group velocity (m/s).
    pub group_velocity: T,
    /// Acoustic sound velocity (m/s).
    pub sound_velocity: T,
    /// Waveguide length (m).
    pub length: T,
    /// Photon damping rate into free space (s^-1).
    pub photon_damping: T,
    /// Phonon damping rate (s^-1).
    pub phonon_damping: T,
    /// Brillouin photon-phonon coupling (s^-1).
    pub brillouin_coupling: T,
    /// Internal-external field coupling at a port (s^-1).
    pub port_coupling: T,
    /// Refractive index. Descriptive only; no formula consumes it.
    pub refractive_index: T,
}

impl<T: Scalar> WaveguideParams<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.group_velocity > T::zero()) {
            return Err(Error::invalid("v_g", "group velocity must be > 0"));
        }
        if !(self.sound_velocity > T::zero()) {
            return Err(Error::invalid("v_a", "sound velocity must be > 0"));
        }
        if !(self.group_velocity > self.sound_velocity) {
            return Err(Error::invalid(
                "v_g",
                "group velocity must exceed the sound velocity",
            ));
        }
        if !(self.length > T::zero()) {
            return Err(Error::invalid("length_W", "waveguide length must be > 0"));
        }
        if !(self.photon_damping >= T::zero()) {
            return Err(Error::invalid("gamma", "photon damping rate must be >= 0"));
        }
        if !(self.phonon_damping >= T::zero()) {
            return Err(Error::invalid("Gamma", "phonon damping rate must be >= 0"));
        }
        if !(self.brillouin_coupling >= T::zero()) {
            return Err(Error::invalid("g", "Brillouin coupling must be >= 0"));
        }
        if !(self.port_coupling > T::zero()) {
            return Err(Error::invalid("u", "port coupling must be > 0"));
        }
        if !self.omega0.is_finite() {
            return Err(Error::invalid("omega0", "dispersion offset must be finite"));
        }
        Ok(())
    }
}

/// One signal/pump/phonon mode triplet.
///
/// Momentum conservation ties the wavenumbers together exactly; energy
/// conservation ties the frequencies to a small relative residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePair<T> {
    /// Signal photon wavenumber k (m^-1).
    pub k_signal: T,
    /// Pump photon wavenumber k - q (m^-1).
    pub k_pump: T,
    /// Phonon wavenumber q (m^-1).
    pub q_phonon: T,
    /// Signal photon frequency (s^-1).
    pub omega_signal: T,
    /// Pump photon frequency (s^-1).
    pub omega_pump: T,
    /// Phonon frequency (s^-1).
    pub omega_phonon: T,
}

impl<T: Scalar> ModePair<T> {
    /// Relative tolerance for the energy conservation check: 1e-9, widened
    /// to a few ulp for scalars that cannot represent 1e-9.
    fn energy_tolerance() -> T {
        lit::<T>(1e-9).max(T::epsilon() * lit(16.0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_pump != self.k_signal - self.q_phonon {
            return Err(Error::invalid(
                "k_pump",
                "momentum conservation requires k_pump = k_signal - q_phonon exactly",
            ));
        }
        let residual = ((self.omega_signal - self.omega_pump) - self.omega_phonon).abs();
        if residual > Self::energy_tolerance() * self.omega_phonon.abs() {
            return Err(Error::invalid(
                "Omega_q",
                "energy conservation requires omega_k - omega_kq = Omega_q to 1e-9 relative",
            ));
        }
        Ok(())
    }

    /// Frame signal frequency: lab signal frequency minus pump mode frequency.
    pub fn frame_photon(&self) -> T {
        self.omega_signal - self.omega_pump
    }
}

/// Photon dispersion: offset plus group velocity times |k|.
///
/// The magnitude realizes the two symmetric branches of the dispersion, which
/// is what makes the backward triplet solvable.
pub fn photon_frequency<T: Scalar>(k: T, params: &WaveguideParams<T>) -> T {
    params.omega0 + params.group_velocity * k.abs()
}

/// Acoustic dispersion: sound velocity times |q|.
pub fn phonon_frequency<T: Scalar>(q: T, params: &WaveguideParams<T>) -> T {
    params.sound_velocity * q.abs()
}

/// Discrete mode wavenumbers 2 pi p / W for p in -p_max..=p_max, ascending.
pub fn allowed_wavenumbers<T: Scalar>(params: &WaveguideParams<T>, p_max: i64) -> Result<Vec<T>> {
    if p_max < 0 {
        return Err(Error::invalid("p_max", "mode index bound must be >= 0"));
    }
    params.validate()?;
    let spacing = lit::<T>(2.0) * T::PI() / params.length;
    Ok((-p_max..=p_max)
        .map(|p| spacing * T::from(p).expect("mode index fits in the scalar"))
        .collect())
}

/// Solve momentum and energy conservation for the backward triplet at a given
/// signal wavenumber: q = 2 k v_g / (v_g + v_a), with the pump photon
/// counter-propagating (k - q < 0).
pub fn solve_backward_phase_match<T: Scalar>(
    k_signal: T,
    params: &WaveguideParams<T>,
) -> Result<ModePair<T>> {
    params.validate()?;
    if !(k_signal > T::zero()) {
        return Err(Error::invalid("k_signal", "signal wavenumber must be > 0"));
    }
    let q = lit::<T>(2.0) * k_signal * params.group_velocity
        / (params.group_velocity + params.sound_velocity);
    let k_pump = k_signal - q;
    Ok(ModePair {
        k_signal,
        k_pump,
        q_phonon: q,
        omega_signal: photon_frequency(k_signal, params),
        omega_pump: photon_frequency(k_pump, params),
        omega_phonon: phonon_frequency(q, params),
    })
}

/// Forward (co-propagating) phase matching.
///
/// With strictly linear dispersions the conservation laws collapse to q = 0,
/// so the forward branch carries no Brillouin triplet and is reported as
/// degenerate instead of inventing dispersion curvature.
pub fn solve_forward_phase_match<T: Scalar>(
    _k_signal: T,
    params: &WaveguideParams<T>,
) -> Result<ModePair<T>> {
    params.validate()?;
    Err(Error::ForwardBranchDegenerate)
}
