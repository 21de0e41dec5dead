//! Diagonalization of the pump-linearized photon-phonon block into upper and
//! lower polariton branches.
//!
//! The rotating-frame coupling matrix is Hermitian, so the branch amplitudes
//! form an orthonormal pair. Damping enters afterwards: either through the
//! fraction-weighted half-width rule, valid at strong coupling, or through
//! the exact non-Hermitian eigenvalues kept here as an oracle.

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pump::PumpSteadyState;
use crate::scalar::{lit, Scalar};
use crate::waveguide::{ModePair, WaveguideParams};

/// Rotating-frame inputs for the two-mode block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonInputs<T> {
    /// Frame signal photon frequency: lab signal minus pump mode (s^-1).
    pub frame_photon: T,
    /// Phonon frequency (s^-1).
    pub phonon: T,
    /// Effective pump-induced coupling (s^-1).
    pub coupling: Complex<T>,
    /// Photon damping rate (s^-1).
    pub photon_damping: T,
    /// Phonon damping rate (s^-1).
    pub phonon_damping: T,
}

impl<T: Scalar> PolaritonInputs<T> {
    pub fn new(
        frame_photon: T,
        phonon: T,
        coupling: Complex<T>,
        photon_damping: T,
        phonon_damping: T,
    ) -> Result<Self> {
        let inputs = Self {
            frame_photon,
            phonon,
            coupling,
            photon_damping,
            phonon_damping,
        };
        inputs.validate()?;
        Ok(inputs)
    }

    /// Assemble the block from a phase-matched mode triplet and a frozen pump.
    pub fn from_modes(
        modes: &ModePair<T>,
        pump: &PumpSteadyState<T>,
        params: &WaveguideParams<T>,
    ) -> Result<Self> {
        Self::new(
            modes.frame_photon(),
            modes.omega_phonon,
            pump.coupling,
            params.photon_damping,
            params.phonon_damping,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.photon_damping >= T::zero()) {
            return Err(Error::invalid("gamma", "photon damping rate must be >= 0"));
        }
        if !(self.phonon_damping >= T::zero()) {
            return Err(Error::invalid("Gamma", "phonon damping rate must be >= 0"));
        }
        if !(self.frame_photon.is_finite() && self.phonon.is_finite()) {
            return Err(Error::invalid(
                "omega",
                "frame photon and phonon frequencies must be finite",
            ));
        }
        if !(self.coupling.re.is_finite() && self.coupling.im.is_finite()) {
            return Err(Error::invalid("f", "effective coupling must be finite"));
        }
        Ok(())
    }
}

/// Mixing amplitudes of one branch as (phonon, photon).
pub type BranchAmplitudes<T> = (Complex<T>, Complex<T>);

/// One polariton branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonBranch<T> {
    /// Phonon mixing amplitude.
    pub phonon_amplitude: Complex<T>,
    /// Photon mixing amplitude.
    pub photon_amplitude: Complex<T>,
    /// Branch frequency in the rotating frame (s^-1).
    pub frequency: T,
    /// Effective branch damping rate (s^-1).
    pub damping: T,
}

impl<T: Scalar> PolaritonBranch<T> {
    /// Complex branch frequency: frequency minus i times damping.
    pub fn complex_frequency(&self) -> Complex<T> {
        Complex::new(self.frequency, -self.damping)
    }

    /// Photon weight of the branch.
    pub fn photon_fraction(&self) -> T {
        self.photon_amplitude.norm_sqr()
    }

    /// Phonon weight of the branch.
    pub fn phonon_fraction(&self) -> T {
        self.phonon_amplitude.norm_sqr()
    }
}

/// Both branches plus the shared detuning bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonPair<T> {
    pub upper: PolaritonBranch<T>,
    pub lower: PolaritonBranch<T>,
    /// Half the photon-phonon detuning (s^-1).
    pub half_detuning: T,
    /// Half the branch separation, sqrt(half_detuning^2 + |f|^2) (s^-1).
    pub half_splitting: T,
}

/// Half-detuning and half-splitting of the block.
pub fn detuning_quantities<T: Scalar>(inputs: &PolaritonInputs<T>) -> (T, T) {
    let delta = (inputs.frame_photon - inputs.phonon) * lit::<T>(0.5);
    (delta, delta.hypot(inputs.coupling.norm()))
}

/// Mixing amplitudes of the upper and lower branches, as
/// ((phonon, photon), (phonon, photon)).
///
/// The amplitudes are evaluated from the half-angle weights
/// (half_splitting -+ half_detuning) / (2 half_splitting), which stay finite
/// on both sides of the crossing and reduce to the bare modes as the coupling
/// vanishes. Branch labels follow frequency ordering, so the photon/phonon
/// character of each branch swaps when the detuning changes sign. At the
/// fully degenerate point (zero coupling on resonance) the convention is:
/// upper branch pure phonon, lower branch pure photon.
pub fn mixing_amplitudes<T: Scalar>(
    inputs: &PolaritonInputs<T>,
) -> (BranchAmplitudes<T>, BranchAmplitudes<T>) {
    let (delta, norm) = detuning_quantities(inputs);
    if norm == T::zero() {
        return (
            (Complex::one(), Complex::zero()),
            (Complex::zero(), Complex::one()),
        );
    }
    let half = lit::<T>(0.5);
    let c = ((norm - delta) / norm * half).sqrt();
    let s = ((norm + delta) / norm * half).sqrt();
    let phase = if inputs.coupling == Complex::zero() {
        Complex::one()
    } else {
        inputs.coupling.conj() / inputs.coupling.norm()
    };
    let upper = (Complex::from(c), phase * s);
    let lower = (Complex::from(-s), phase * c);
    (upper, lower)
}

/// Branch frequencies (upper, lower) in the rotating frame.
pub fn polariton_frequencies<T: Scalar>(inputs: &PolaritonInputs<T>) -> (T, T) {
    let (_, norm) = detuning_quantities(inputs);
    let center = (inputs.frame_photon + inputs.phonon) * lit::<T>(0.5);
    (center + norm, center - norm)
}

/// Fraction-weighted branch damping: half the phonon rate times the phonon
/// weight plus half the photon rate times the photon weight.
pub fn polariton_damping<T: Scalar>(
    phonon_fraction: T,
    photon_fraction: T,
    photon_damping: T,
    phonon_damping: T,
) -> T {
    let half = lit::<T>(0.5);
    phonon_fraction * phonon_damping * half + photon_fraction * photon_damping * half
}

/// Build both branches: amplitudes, frequencies and dampings.
pub fn polariton_pair<T: Scalar>(inputs: &PolaritonInputs<T>) -> PolaritonPair<T> {
    let (delta, norm) = detuning_quantities(inputs);
    let ((up_phonon, up_photon), (low_phonon, low_photon)) = mixing_amplitudes(inputs);
    let (up_freq, low_freq) = polariton_frequencies(inputs);
    let upper = PolaritonBranch {
        phonon_amplitude: up_phonon,
        photon_amplitude: up_photon,
        frequency: up_freq,
        damping: polariton_damping(
            up_phonon.norm_sqr(),
            up_photon.norm_sqr(),
            inputs.photon_damping,
            inputs.phonon_damping,
        ),
    };
    let lower = PolaritonBranch {
        phonon_amplitude: low_phonon,
        photon_amplitude: low_photon,
        frequency: low_freq,
        damping: polariton_damping(
            low_phonon.norm_sqr(),
            low_photon.norm_sqr(),
            inputs.photon_damping,
            inputs.phonon_damping,
        ),
    };
    PolaritonPair {
        upper,
        lower,
        half_detuning: delta,
        half_splitting: norm,
    }
}

/// Exact eigenvalues of the damped two-mode block, ordered (upper, lower).
///
/// The block is the coupling matrix with the damped mode frequencies on the
/// diagonal. Its eigenvalues are center +- sqrt(half_detuning_c^2 + |f|^2)
/// where both center and half-detuning pick up the imaginary damping parts.
/// The principal square root keeps the upper label continuous from the
/// strong-coupling limit.
pub fn exact_eigen_oracle<T: Scalar>(inputs: &PolaritonInputs<T>) -> (Complex<T>, Complex<T>) {
    let half = lit::<T>(0.5);
    let photon = Complex::new(inputs.frame_photon, -half * inputs.photon_damping);
    let phonon = Complex::new(inputs.phonon, -half * inputs.phonon_damping);
    let center = (photon + phonon) * half;
    let half_det = (photon - phonon) * half;
    let split = (half_det * half_det + Complex::from(inputs.coupling.norm_sqr())).sqrt();
    (center + split, center - split)
}

/// Branch data tabulated at one half-detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionPoint<T> {
    pub half_detuning: T,
    pub upper_frequency: T,
    pub lower_frequency: T,
    /// Phonon weight of the upper branch.
    pub upper_phonon_fraction: T,
    /// Photon weight of the upper branch.
    pub upper_photon_fraction: T,
    /// Phonon weight of the lower branch.
    pub lower_phonon_fraction: T,
    /// Photon weight of the lower branch.
    pub lower_photon_fraction: T,
}

/// Tabulate both branches over a strictly increasing half-detuning grid.
///
/// The phonon frequency stays fixed and the frame photon frequency moves,
/// so the grid value is exactly the half-detuning of each row. Rows are
/// independent and evaluated in parallel, collected back in grid order.
pub fn fraction_sweep<T: Scalar>(
    template: &PolaritonInputs<T>,
    half_detunings: &[T],
) -> Result<Vec<FractionPoint<T>>> {
    if half_detunings.is_empty() {
        return Err(Error::InvalidSweep("empty half-detuning grid".into()));
    }
    if half_detunings.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidSweep(
            "half-detuning grid must be strictly increasing".into(),
        ));
    }
    template.validate()?;
    let two = lit::<T>(2.0);
    Ok(half_detunings
        .par_iter()
        .map(|&delta| {
            let inputs = PolaritonInputs {
                frame_photon: template.phonon + two * delta,
                ..*template
            };
            let pair = polariton_pair(&inputs);
            FractionPoint {
                half_detuning: delta,
                upper_frequency: pair.upper.frequency,
                lower_frequency: pair.lower.frequency,
                upper_phonon_fraction: pair.upper.phonon_fraction(),
                upper_photon_fraction: pair.upper.photon_fraction(),
                lower_phonon_fraction: pair.lower.phonon_fraction(),
                lower_photon_fraction: pair.lower.photon_fraction(),
            }
        })
        .collect())
}
