//! Probe response: the photon response kernel and the per-frequency
//! reflection, transmission and absorption of both waveguide geometries.
//!
//! Everything downstream of the kernel is shared between geometries. The
//! linear-cavity reflection and the ring through-fiber transmission are the
//! same port amplitude evaluated by the same code path, which is what makes
//! the opacity/transparency duality structural rather than numerical.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polariton::{exact_eigen_oracle, polariton_pair, PolaritonInputs, PolaritonPair};
use crate::scalar::{lit, Scalar};

/// Probe bookkeeping: lab frequency, rotating-frame frequency and the
/// detuning from the bare signal mode used as the plot axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeFrame<T> {
    /// Probe laser frequency in the lab frame (s^-1).
    pub lab: T,
    /// Probe frequency in the rotating frame: lab minus pump mode (s^-1).
    pub frame: T,
    /// Detuning from the bare signal mode (s^-1).
    pub signal_detuning: T,
}

impl<T: Scalar> ProbeFrame<T> {
    /// Probe specified by its detuning from the bare signal mode.
    pub fn from_signal_detuning(detuning: T, omega_signal: T, omega_pump_mode: T) -> Self {
        let lab = omega_signal + detuning;
        Self {
            lab,
            frame: lab - omega_pump_mode,
            signal_detuning: detuning,
        }
    }
}

/// Pole/weight treatment carried by the response kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    /// Polariton poles with fraction-weighted half-widths. Valid at strong
    /// coupling; this is the default treatment.
    Approximate,
    /// Exact non-Hermitian eigenvalues as poles, photon fractions of the
    /// Hermitian mixing kept as weights.
    EigenOracle,
    /// Exact two-mode linear response: exact poles and exact weights. This is
    /// the faithful kernel at weak coupling, where the polariton half-width
    /// rule misassigns the dampings.
    FullResponse,
}

/// Photon response kernel: what the external ports see of the internal modes,
/// as a function of the rotating-frame probe frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResponseKernel<T> {
    /// Weighted sum over two complex poles.
    PoleSum {
        poles: [Complex<T>; 2],
        weights: [T; 2],
    },
    /// Rational form of the exact two-mode response, free of the exceptional
    /// point where the two exact poles coincide.
    TwoMode {
        photon: Complex<T>,
        phonon: Complex<T>,
        coupling_norm_sqr: T,
    },
}

impl<T: Scalar> ResponseKernel<T> {
    /// Kernel from an already-diagonalized pair (approximate poles).
    pub fn from_pair(pair: &PolaritonPair<T>) -> Self {
        ResponseKernel::PoleSum {
            poles: [
                pair.upper.complex_frequency(),
                pair.lower.complex_frequency(),
            ],
            weights: [pair.upper.photon_fraction(), pair.lower.photon_fraction()],
        }
    }

    /// Kernel from the block inputs with the requested pole treatment.
    pub fn build(inputs: &PolaritonInputs<T>, mode: KernelMode) -> Self {
        match mode {
            KernelMode::Approximate => Self::from_pair(&polariton_pair(inputs)),
            KernelMode::EigenOracle => {
                let pair = polariton_pair(inputs);
                let (upper, lower) = exact_eigen_oracle(inputs);
                ResponseKernel::PoleSum {
                    poles: [upper, lower],
                    weights: [pair.upper.photon_fraction(), pair.lower.photon_fraction()],
                }
            }
            KernelMode::FullResponse => {
                let half = lit::<T>(0.5);
                ResponseKernel::TwoMode {
                    photon: Complex::new(inputs.frame_photon, -half * inputs.photon_damping),
                    phonon: Complex::new(inputs.phonon, -half * inputs.phonon_damping),
                    coupling_norm_sqr: inputs.coupling.norm_sqr(),
                }
            }
        }
    }

    /// Evaluate the kernel at a rotating-frame probe frequency.
    ///
    /// The imaginary part is nonnegative for real frequencies whenever the
    /// dampings are nonnegative. Evaluation exactly on an undamped pole is
    /// rejected.
    pub fn evaluate(&self, frame_omega: T) -> Result<Complex<T>> {
        let omega = Complex::from(frame_omega);
        match self {
            ResponseKernel::PoleSum { poles, weights } => {
                let mut lambda = Complex::zero();
                for (pole, &weight) in poles.iter().zip(weights) {
                    let den = pole - omega;
                    if den == Complex::zero() {
                        return Err(Error::PoleEvaluation {
                            at: frame_omega.to_string(),
                        });
                    }
                    lambda = lambda + Complex::from(weight) / den;
                }
                Ok(lambda)
            }
            ResponseKernel::TwoMode {
                photon,
                phonon,
                coupling_norm_sqr,
            } => {
                let den = (photon - omega) * (phonon - omega) - Complex::from(*coupling_norm_sqr);
                if den == Complex::zero() {
                    return Err(Error::PoleEvaluation {
                        at: frame_omega.to_string(),
                    });
                }
                Ok((phonon - omega) / den)
            }
        }
    }
}

/// Kernel value from a diagonalized pair at one frame frequency.
pub fn response_kernel<T: Scalar>(pair: &PolaritonPair<T>, frame_omega: T) -> Result<Complex<T>> {
    ResponseKernel::from_pair(pair).evaluate(frame_omega)
}

fn port_denominator<T: Scalar>(lambda: Complex<T>, port_coupling: T) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let den = one - i * lambda * port_coupling;
    if den == Complex::new(T::zero(), T::zero()) {
        return Err(Error::DegenerateDenominator {
            lambda: lambda.to_string(),
        });
    }
    Ok(den)
}

/// Amplitude returned to the feeding port: the linear-cavity reflection and,
/// identically, the ring through-fiber transmission.
pub fn through_port_amplitude<T: Scalar>(
    lambda: Complex<T>,
    port_coupling: T,
) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    Ok(-one / port_denominator(lambda, port_coupling)?)
}

/// Amplitude crossing the cavity to the far port: the linear transmission.
pub fn cross_port_amplitude<T: Scalar>(lambda: Complex<T>, port_coupling: T) -> Result<Complex<T>> {
    let den = port_denominator(lambda, port_coupling)?;
    let i = Complex::new(T::zero(), T::one());
    Ok(-(i * lambda * port_coupling) / den)
}

/// Linear-geometry complex amplitudes (reflection, transmission).
///
/// The two formulas satisfy transmission = 1 + reflection at every frequency.
pub fn linear_amplitudes<T: Scalar>(
    lambda: Complex<T>,
    port_coupling: T,
) -> Result<(Complex<T>, Complex<T>)> {
    Ok((
        through_port_amplitude(lambda, port_coupling)?,
        cross_port_amplitude(lambda, port_coupling)?,
    ))
}

/// Response at one probe frequency.
///
/// Reflection fields are populated for the linear geometry only; the ring
/// couples to a single fiber and has no reflected channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint<T> {
    /// Kernel value (units of time).
    pub kernel: Complex<T>,
    /// Complex reflection amplitude (linear geometry).
    pub reflection_amplitude: Option<Complex<T>>,
    /// Complex transmission amplitude.
    pub transmission_amplitude: Complex<T>,
    /// Reflection parameter (linear geometry).
    pub reflection: Option<T>,
    /// Transmission parameter.
    pub transmission: T,
    /// Absorption parameter.
    pub absorption: T,
    /// Reflection phase in (-pi, pi] (linear geometry).
    pub reflection_phase: Option<T>,
    /// Transmission phase in (-pi, pi].
    pub transmission_phase: T,
}

impl<T: Scalar> SpectrumPoint<T> {
    /// Placeholder for a point that could not be evaluated.
    pub fn undefined(linear: bool) -> Self {
        let nan = T::nan();
        let cnan = Complex::new(nan, nan);
        Self {
            kernel: cnan,
            reflection_amplitude: linear.then_some(cnan),
            transmission_amplitude: cnan,
            reflection: linear.then_some(nan),
            transmission: nan,
            absorption: nan,
            reflection_phase: linear.then_some(nan),
            transmission_phase: nan,
        }
    }

    /// True when every populated field is finite.
    pub fn is_finite(&self) -> bool {
        let complex_ok = |z: &Complex<T>| z.re.is_finite() && z.im.is_finite();
        complex_ok(&self.kernel)
            && complex_ok(&self.transmission_amplitude)
            && self.reflection_amplitude.as_ref().is_none_or(complex_ok)
            && self.reflection.is_none_or(|x| x.is_finite())
            && self.transmission.is_finite()
            && self.absorption.is_finite()
            && self.reflection_phase.is_none_or(|x| x.is_finite())
            && self.transmission_phase.is_finite()
    }
}

/// Phase in (-pi, pi]: the two-argument arctangent with the -pi edge folded
/// onto +pi.
fn principal_phase<T: Scalar>(z: Complex<T>) -> T {
    let phase = z.arg();
    if phase == -T::PI() {
        -phase
    } else {
        phase
    }
}

/// Linear-geometry spectrum point from a kernel value.
pub fn linear_point_from_kernel<T: Scalar>(
    lambda: Complex<T>,
    port_coupling: T,
) -> Result<SpectrumPoint<T>> {
    let (r, t) = linear_amplitudes(lambda, port_coupling)?;
    let den = port_denominator(lambda, port_coupling)?.norm_sqr();
    let two = lit::<T>(2.0);
    let reflection = den.recip();
    let transmission = lambda.norm_sqr() * port_coupling * port_coupling / den;
    let absorption = two * port_coupling * lambda.im / den;
    Ok(SpectrumPoint {
        kernel: lambda,
        reflection_amplitude: Some(r),
        transmission_amplitude: t,
        reflection: Some(reflection),
        transmission,
        absorption,
        reflection_phase: Some(principal_phase(r)),
        transmission_phase: principal_phase(t),
    })
}

/// Ring-geometry spectrum point from a kernel value.
///
/// The transmission amplitude is the through-port amplitude, bit for bit the
/// linear reflection at identical inputs; absorption closes the unitarity
/// budget of the single fiber channel.
pub fn ring_point_from_kernel<T: Scalar>(
    lambda: Complex<T>,
    port_coupling: T,
) -> Result<SpectrumPoint<T>> {
    let t = through_port_amplitude(lambda, port_coupling)?;
    let transmission = port_denominator(lambda, port_coupling)?.norm_sqr().recip();
    Ok(SpectrumPoint {
        kernel: lambda,
        reflection_amplitude: None,
        transmission_amplitude: t,
        reflection: None,
        transmission,
        absorption: T::one() - transmission,
        reflection_phase: None,
        transmission_phase: principal_phase(t),
    })
}

/// Linear-geometry spectrum point from a diagonalized pair.
pub fn linear_spectrum_point<T: Scalar>(
    pair: &PolaritonPair<T>,
    probe: &ProbeFrame<T>,
    port_coupling: T,
) -> Result<SpectrumPoint<T>> {
    linear_point_from_kernel(response_kernel(pair, probe.frame)?, port_coupling)
}

/// Ring-geometry spectrum point from a diagonalized pair.
pub fn ring_spectrum_point<T: Scalar>(
    pair: &PolaritonPair<T>,
    probe: &ProbeFrame<T>,
    port_coupling: T,
) -> Result<SpectrumPoint<T>> {
    ring_point_from_kernel(response_kernel(pair, probe.frame)?, port_coupling)
}
