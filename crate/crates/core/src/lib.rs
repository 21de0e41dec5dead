//! Phonon-polariton spectra for Brillouin-active nanoscale waveguides.
//!
//! A pump field driving stimulated Brillouin scattering hybridizes a signal
//! photon mode with an acoustic phonon mode. In the strong coupling regime
//! the hybrid branches (phonon-polaritons) replace the bare modes and reshape
//! the linear probe response: a linear waveguide turns opaque at what would
//! otherwise be a transmission resonance, while a ring waveguide coupled to a
//! fiber turns transparent.
//!
//! The crate is organized along the computation chain:
//!
//! * [`waveguide`] — dispersions, discrete mode wavenumbers, phase matching.
//! * [`pump`] — classical pump steady state and the effective coupling.
//! * [`polariton`] — branch mixing amplitudes, dispersions and dampings.
//! * [`spectra`] — response kernel and per-frequency reflection, transmission
//!   and absorption for both geometries.
//! * [`sweep`] — parameter sweeps, peak analysis and invariant verification.
//!
//! All numeric code is generic over the scalar type through [`Scalar`];
//! `f64` aliases for the main types live at the crate root.

// negated comparisons in the validators are deliberate: `!(x > 0)` rejects
// NaN where `x <= 0` would let it through
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod polariton;
pub mod pump;
pub mod scalar;
pub mod spectra;
pub mod sweep;
pub mod waveguide;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision aliases for the common case.
pub type WaveguideParams64 = waveguide::WaveguideParams<f64>;
pub type ModePair64 = waveguide::ModePair<f64>;
pub type PumpDrive64 = pump::PumpDrive<f64>;
pub type PumpSteadyState64 = pump::PumpSteadyState<f64>;
pub type PolaritonInputs64 = polariton::PolaritonInputs<f64>;
pub type PolaritonPair64 = polariton::PolaritonPair<f64>;
pub type SpectrumPoint64 = spectra::SpectrumPoint<f64>;
pub type SweepSpec64 = sweep::SweepSpec<f64>;
pub type SweepTable64 = sweep::SweepTable<f64>;
