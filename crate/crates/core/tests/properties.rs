//! Property suites for the structural identities of the model: conservation
//! laws, normalization, orthogonality, unitarity, passivity and the
//! linear/ring duality.

use brio_core::polariton::{
    detuning_quantities, exact_eigen_oracle, polariton_pair, PolaritonInputs,
};
use brio_core::pump::{effective_coupling, pump_detuning, PumpDrive, PumpSteadyState};
use brio_core::spectra::{
    linear_amplitudes, linear_point_from_kernel, response_kernel, ring_point_from_kernel,
    KernelMode, ResponseKernel,
};
use brio_core::waveguide::{
    allowed_wavenumbers, phonon_frequency, photon_frequency, solve_backward_phase_match,
    WaveguideParams,
};
use num_complex::Complex;
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = WaveguideParams<f64>> {
    (
        1e12_f64..1e15,
        1e6_f64..1e9,
        1e2_f64..1e5,
        1e-4_f64..1e-1,
        (1e2_f64..1e7, 1e2_f64..1e7, 0.0_f64..1e5, 1e3_f64..1e8),
    )
        .prop_map(
            |(omega0, v_g, v_a, length, (gamma, big_gamma, g, u))| WaveguideParams {
                omega0,
                group_velocity: v_g,
                sound_velocity: v_a,
                length,
                photon_damping: gamma,
                phonon_damping: big_gamma,
                brillouin_coupling: g,
                port_coupling: u,
                refractive_index: 3.5,
            },
        )
}

fn polariton_strategy() -> impl Strategy<Value = PolaritonInputs<f64>> {
    (
        1e8_f64..1e12,
        -1e7_f64..1e7,
        0.0_f64..1e7,
        -std::f64::consts::PI..std::f64::consts::PI,
        1e2_f64..1e7,
        1e2_f64..1e7,
    )
        .prop_map(|(phonon, detuning, f_mag, f_phase, gamma, big_gamma)| {
            PolaritonInputs::new(
                phonon + detuning,
                phonon,
                Complex::from_polar(f_mag, f_phase),
                gamma,
                big_gamma,
            )
            .unwrap()
        })
}

proptest! {
    #[test]
    fn dispersions_are_even(
        params in params_strategy(),
        k in 1e-3_f64..1e9,
    ) {
        prop_assert_eq!(photon_frequency(k, &params), photon_frequency(-k, &params));
        prop_assert_eq!(phonon_frequency(k, &params), phonon_frequency(-k, &params));
    }

    #[test]
    fn wavenumber_grid_is_symmetric_and_uniform(
        params in params_strategy(),
        p_max in 0_i64..200,
    ) {
        let ks = allowed_wavenumbers(&params, p_max).unwrap();
        prop_assert_eq!(ks.len(), (2 * p_max + 1) as usize);
        let n = ks.len();
        for i in 0..n {
            prop_assert_eq!(ks[i], -ks[n - 1 - i]);
        }
        let spacing = 2.0 * std::f64::consts::PI / params.length;
        for w in ks.windows(2) {
            prop_assert!((w[1] - w[0] - spacing).abs() <= 1e-12 * spacing);
        }
    }

    #[test]
    fn backward_triplet_conserves_momentum_and_energy(
        params in params_strategy(),
        k in 1e0_f64..1e9,
    ) {
        let pair = solve_backward_phase_match(k, &params).unwrap();
        prop_assert_eq!(pair.k_pump, pair.k_signal - pair.q_phonon);
        prop_assert!(pair.k_pump < 0.0);
        let residual = ((pair.omega_signal - pair.omega_pump) - pair.omega_phonon).abs();
        prop_assert!(residual <= 1e-9 * pair.omega_phonon);
        pair.validate().unwrap();
    }

    #[test]
    fn pump_chain_identities(
        params in params_strategy(),
        mode_offset in -1e7_f64..1e7,
        n_in in 1e-3_f64..1e12,
        phase in -std::f64::consts::PI..std::f64::consts::PI,
    ) {
        let drive = PumpDrive { omega_laser: 1e14, input_flux: n_in, phase };
        let state = PumpSteadyState::evaluate(1e14 + mode_offset, &drive, &params).unwrap();
        // amplitude modulus squared is the intracavity number
        prop_assert!(
            (state.amplitude.norm_sqr() - state.photon_number).abs()
                <= 1e-12 * state.photon_number
        );
        // coupling modulus identity
        let expected = params.brillouin_coupling
            * (params.port_coupling * n_in).sqrt()
            / state.detuning.norm();
        prop_assert!((state.coupling.norm() - expected).abs() <= 1e-12 * expected.max(1e-300));
    }

    #[test]
    fn coupling_scales_as_sqrt_flux_with_fixed_phase(
        params in params_strategy(),
        mode_offset in -1e7_f64..1e7,
        n_in in 1e0_f64..1e10,
        phase in -1.5_f64..1.5,
        scale in 1e-2_f64..1e2,
    ) {
        prop_assume!(params.brillouin_coupling > 0.0);
        let drive = PumpDrive { omega_laser: 1e14, input_flux: n_in, phase };
        let scaled = PumpDrive { input_flux: scale * scale * n_in, ..drive };
        let delta = pump_detuning(1e14 + mode_offset, &drive, &params);
        let f1 = effective_coupling(delta, &drive, &params).unwrap();
        let f2 = effective_coupling(delta, &scaled, &params).unwrap();
        prop_assert!((f2.norm() - scale * f1.norm()).abs() <= 1e-12 * f2.norm());
        // the argument does not move with the flux
        prop_assert!((f2.arg() - f1.arg()).abs() <= 1e-12);
    }

    #[test]
    fn branches_are_normalized_and_orthogonal(inputs in polariton_strategy()) {
        let pair = polariton_pair(&inputs);
        let up = pair.upper.phonon_fraction() + pair.upper.photon_fraction();
        let low = pair.lower.phonon_fraction() + pair.lower.photon_fraction();
        prop_assert!((up - 1.0).abs() <= 1e-12);
        prop_assert!((low - 1.0).abs() <= 1e-12);
        let overlap = pair.upper.phonon_amplitude * pair.lower.phonon_amplitude.conj()
            + pair.upper.photon_amplitude * pair.lower.photon_amplitude.conj();
        prop_assert!(overlap.norm() <= 1e-12);
    }

    #[test]
    fn branch_amplitudes_are_eigenvectors(inputs in polariton_strategy()) {
        let pair = polariton_pair(&inputs);
        let matrix_norm = (inputs.frame_photon.powi(2)
            + inputs.phonon.powi(2)
            + 2.0 * inputs.coupling.norm_sqr())
        .sqrt();
        for branch in [&pair.upper, &pair.lower] {
            let x = branch.phonon_amplitude;
            let y = branch.photon_amplitude;
            let r1 = x * inputs.phonon + y * inputs.coupling - x * branch.frequency;
            let r2 = x * inputs.coupling.conj() + y * inputs.frame_photon - y * branch.frequency;
            let residual = (r1.norm_sqr() + r2.norm_sqr()).sqrt();
            prop_assert!(
                residual <= 1e-9 * matrix_norm,
                "residual {} vs bound {}",
                residual,
                1e-9 * matrix_norm
            );
        }
    }

    #[test]
    fn branch_frequencies_keep_the_trace_and_split_by_the_norm(
        inputs in polariton_strategy(),
    ) {
        let pair = polariton_pair(&inputs);
        let trace = inputs.frame_photon + inputs.phonon;
        let sum = pair.upper.frequency + pair.lower.frequency;
        prop_assert!((sum - trace).abs() <= 1e-12 * trace.abs());
        let split = pair.upper.frequency - pair.lower.frequency;
        prop_assert!((split - 2.0 * pair.half_splitting).abs() <= 1e-9 * pair.half_splitting.max(1e-300));
    }

    #[test]
    fn branch_dampings_sum_to_the_mean_width(inputs in polariton_strategy()) {
        let pair = polariton_pair(&inputs);
        let expected = 0.5 * (inputs.photon_damping + inputs.phonon_damping);
        let sum = pair.upper.damping + pair.lower.damping;
        prop_assert!((sum - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn linear_response_is_unitary_and_passive(
        inputs in polariton_strategy(),
        offset in -1e8_f64..1e8,
        u in 1e3_f64..1e8,
    ) {
        let pair = polariton_pair(&inputs);
        let omega = 0.5 * (inputs.frame_photon + inputs.phonon) + offset;
        let lambda = response_kernel(&pair, omega).unwrap();
        let point = linear_point_from_kernel(lambda, u).unwrap();
        let budget = point.transmission + point.reflection.unwrap() + point.absorption;
        prop_assert!((budget - 1.0).abs() <= 1e-12);
        for v in [point.transmission, point.reflection.unwrap(), point.absorption] {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn ring_response_is_unitary_and_dual_to_linear(
        inputs in polariton_strategy(),
        offset in -1e8_f64..1e8,
        u in 1e3_f64..1e8,
        mode_choice in 0_u8..3,
    ) {
        let mode = match mode_choice {
            0 => KernelMode::Approximate,
            1 => KernelMode::EigenOracle,
            _ => KernelMode::FullResponse,
        };
        let kernel = ResponseKernel::build(&inputs, mode);
        let omega = 0.5 * (inputs.frame_photon + inputs.phonon) + offset;
        let lambda = kernel.evaluate(omega).unwrap();
        let ring = ring_point_from_kernel(lambda, u).unwrap();
        let linear = linear_point_from_kernel(lambda, u).unwrap();
        prop_assert!((ring.transmission + ring.absorption - 1.0).abs() <= 1e-12);
        // bitwise duality: same code path evaluates both port amplitudes
        prop_assert_eq!(
            ring.transmission_amplitude,
            linear.reflection_amplitude.unwrap()
        );
        prop_assert_eq!(ring.transmission, linear.reflection.unwrap());
        prop_assert!(ring.transmission >= 0.0 && ring.transmission <= 1.0 + 1e-12);
    }

    #[test]
    fn transmission_is_one_plus_reflection(
        inputs in polariton_strategy(),
        offset in -1e8_f64..1e8,
        u in 1e3_f64..1e8,
    ) {
        let pair = polariton_pair(&inputs);
        let omega = 0.5 * (inputs.frame_photon + inputs.phonon) + offset;
        let lambda = response_kernel(&pair, omega).unwrap();
        let (r, t) = linear_amplitudes(lambda, u).unwrap();
        let one = Complex::new(1.0, 0.0);
        prop_assert!((t - r - one).norm() <= 1e-12);
    }

    #[test]
    fn spectrum_is_symmetric_about_the_center_on_resonance(
        phonon in 1e9_f64..1e11,
        f_mag in 1e3_f64..1e7,
        gamma in 1e2_f64..1e6,
        big_gamma in 1e2_f64..1e6,
        u in 1e3_f64..1e7,
        offset in 1e2_f64..1e8,
    ) {
        // zero detuning: the two poles carry equal weights and dampings
        let inputs = PolaritonInputs::new(
            phonon,
            phonon,
            Complex::new(f_mag, 0.0),
            gamma,
            big_gamma,
        )
        .unwrap();
        let pair = polariton_pair(&inputs);
        let above = linear_point_from_kernel(
            response_kernel(&pair, phonon + offset).unwrap(),
            u,
        )
        .unwrap();
        let below = linear_point_from_kernel(
            response_kernel(&pair, phonon - offset).unwrap(),
            u,
        )
        .unwrap();
        prop_assert!((above.transmission - below.transmission).abs()
            <= 1e-9 * above.transmission.max(1e-300));
        prop_assert!((above.reflection.unwrap() - below.reflection.unwrap()).abs()
            <= 1e-9 * above.reflection.unwrap().max(1e-300));
        prop_assert!((above.absorption - below.absorption).abs()
            <= 1e-9 * above.absorption.max(1e-300));
    }
}

/// The fraction-weighted complex frequencies converge to the exact
/// eigenvalues once the coupling dwarfs the damping contrast; the error obeys
/// the second-order bound and falls monotonically along a coupling ladder.
#[test]
fn approximate_complex_frequencies_converge_to_the_oracle() {
    let gamma = 1e5;
    let big_gamma = 1e6;
    let eps = (big_gamma - gamma) / 4.0;
    let mut previous = f64::INFINITY;
    for i in 0..=8 {
        let f_mag = eps * 1e3 * 10f64.powf(i as f64 * 2.0 / 8.0);
        let inputs =
            PolaritonInputs::new(1e10, 1e10, Complex::new(f_mag, 0.0), gamma, big_gamma).unwrap();
        let pair = polariton_pair(&inputs);
        let (upper, lower) = exact_eigen_oracle(&inputs);
        let err_up = (pair.upper.complex_frequency() - upper).norm();
        let err_low = (pair.lower.complex_frequency() - lower).norm();
        let relative = err_up.max(err_low) / f_mag;
        let bound = eps * eps / (2.0 * f_mag * f_mag) + 1e-12;
        assert!(
            relative <= bound,
            "relative error {relative} exceeds bound {bound} at |f| = {f_mag}"
        );
        assert!(
            relative < previous,
            "error must fall along the ladder: {relative} !< {previous}"
        );
        previous = relative;
    }
}

/// The avoided crossing is tightest exactly on resonance, where the branch
/// separation equals twice the coupling magnitude.
#[test]
fn avoided_crossing_minimum_sits_on_resonance() {
    let f_mag = 3e6;
    let inputs = PolaritonInputs::new(1e10, 1e10, Complex::new(f_mag, 0.0), 1e5, 1e6).unwrap();
    let deltas: Vec<f64> = (0..=2000)
        .map(|i| -10.0 * f_mag + i as f64 * (20.0 * f_mag / 2000.0))
        .collect();
    let mut best = (f64::INFINITY, f64::NAN);
    for &delta in &deltas {
        let (d, norm) = detuning_quantities(&PolaritonInputs {
            frame_photon: inputs.phonon + 2.0 * delta,
            ..inputs
        });
        let separation = 2.0 * norm;
        if separation < best.0 {
            best = (separation, d);
        }
    }
    assert_eq!(best.1, 0.0);
    assert_eq!(best.0, 2.0 * f_mag);
}
