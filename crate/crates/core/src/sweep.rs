//! Parameter sweeps, extremum and splitting analysis, regime classification
//! and the invariant verification report.
//!
//! Sweep points are evaluated in parallel and collected in axis order, so a
//! given spec always produces the same table regardless of thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polariton::{fraction_sweep, FractionPoint, PolaritonInputs};
use crate::pump::{PumpDrive, PumpSteadyState};
use crate::scalar::{lit, Scalar};
use crate::spectra::{
    linear_point_from_kernel, ring_point_from_kernel, KernelMode, ProbeFrame, ResponseKernel,
    SpectrumPoint,
};
use crate::waveguide::{ModePair, WaveguideParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Linear,
    Ring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Probe detuning from the bare signal mode (s^-1).
    ProbeDetuning,
    /// Input pump flux (s^-1), spectra evaluated at a fixed probe detuning.
    PumpIntensity,
    /// Polariton half-detuning (s^-1), tabulating branch fractions.
    PolaritonDetuning,
}

impl SweepAxis {
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::ProbeDetuning => "detuning",
            SweepAxis::PumpIntensity => "n_in",
            SweepAxis::PolaritonDetuning => "delta",
        }
    }
}

/// Coupling regime: strong once the coupling magnitude exceeds both damping
/// half-widths, so the two branches are resolvable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Weak,
    Strong,
}

/// Full sweep definition: grid, geometry and the frozen parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T> {
    pub geometry: Geometry,
    pub axis: SweepAxis,
    pub start: T,
    pub stop: T,
    pub points: usize,
    pub params: WaveguideParams<T>,
    pub drive: PumpDrive<T>,
    pub modes: ModePair<T>,
    pub kernel_mode: KernelMode,
    /// Probe detuning held fixed when the axis is not the probe itself.
    pub probe_detuning: T,
}

impl<T: Scalar> SweepSpec<T> {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.drive.validate()?;
        self.modes.validate()?;
        if !(self.start < self.stop) {
            return Err(Error::InvalidSweep("start must be below stop".into()));
        }
        if self.points < 2 {
            return Err(Error::InvalidSweep("at least 2 points required".into()));
        }
        if self.axis == SweepAxis::PumpIntensity && self.start < T::zero() {
            return Err(Error::InvalidSweep(
                "pump intensity axis must be nonnegative".into(),
            ));
        }
        if !self.probe_detuning.is_finite() {
            return Err(Error::InvalidSweep("probe detuning must be finite".into()));
        }
        Ok(())
    }
}

/// Whether a sweep point evaluated cleanly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointQuality {
    Ok,
    /// The point hit a degenerate denominator or an undamped pole; its values
    /// are placeholders and are excluded from analysis.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRecord<T> {
    pub axis: T,
    pub point: SpectrumPoint<T>,
    pub quality: PointQuality,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepRecords<T> {
    Spectrum(Vec<SpectrumRecord<T>>),
    Fractions(Vec<FractionPoint<T>>),
}

/// Sweep output: the spec snapshot, derived regime context and the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable<T> {
    pub spec: SweepSpec<T>,
    /// Coupling magnitude |f| at the spec's drive.
    pub coupling_magnitude: T,
    pub regime: Regime,
    pub records: SweepRecords<T>,
}

impl<T: Scalar> SweepTable<T> {
    pub fn len(&self) -> usize {
        match &self.records {
            SweepRecords::Spectrum(rows) => rows.len(),
            SweepRecords::Fractions(rows) => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn axis_values(&self) -> Vec<T> {
        match &self.records {
            SweepRecords::Spectrum(rows) => rows.iter().map(|r| r.axis).collect(),
            SweepRecords::Fractions(rows) => rows.iter().map(|r| r.half_detuning).collect(),
        }
    }

    /// Extract a named column. Spectrum tables expose `R` (linear only),
    /// `T`, `A`, `phi_r` (linear only), `phi_t`, `re_lambda`, `im_lambda`;
    /// fraction tables expose `omega_plus`, `omega_minus`, `x2_plus`,
    /// `y2_plus`, `x2_minus`, `y2_minus`.
    pub fn column(&self, name: &str) -> Result<Vec<T>> {
        match &self.records {
            SweepRecords::Spectrum(rows) => {
                let get: fn(&SpectrumRecord<T>) -> Option<T> = match name {
                    "R" => |r| r.point.reflection,
                    "T" => |r| Some(r.point.transmission),
                    "A" => |r| Some(r.point.absorption),
                    "phi_r" => |r| r.point.reflection_phase,
                    "phi_t" => |r| Some(r.point.transmission_phase),
                    "re_lambda" => |r| Some(r.point.kernel.re),
                    "im_lambda" => |r| Some(r.point.kernel.im),
                    _ => return Err(Error::UnknownColumn(name.into())),
                };
                rows.iter()
                    .map(|r| get(r).ok_or_else(|| Error::UnknownColumn(name.into())))
                    .collect()
            }
            SweepRecords::Fractions(rows) => {
                let get: fn(&FractionPoint<T>) -> T = match name {
                    "omega_plus" => |r| r.upper_frequency,
                    "omega_minus" => |r| r.lower_frequency,
                    "x2_plus" => |r| r.upper_phonon_fraction,
                    "y2_plus" => |r| r.upper_photon_fraction,
                    "x2_minus" => |r| r.lower_phonon_fraction,
                    "y2_minus" => |r| r.lower_photon_fraction,
                    _ => return Err(Error::UnknownColumn(name.into())),
                };
                Ok(rows.iter().map(get).collect())
            }
        }
    }
}

/// Uniform grid from start to stop inclusive.
pub fn linspace<T: Scalar>(start: T, stop: T, points: usize) -> Vec<T> {
    let step = (stop - start) / T::from(points - 1).expect("point count fits in the scalar");
    (0..points)
        .map(|i| start + T::from(i).expect("index fits in the scalar") * step)
        .collect()
}

fn spectrum_record<T: Scalar>(
    axis: T,
    kernel: &ResponseKernel<T>,
    frame_omega: T,
    geometry: Geometry,
    port_coupling: T,
) -> SpectrumRecord<T> {
    let linear = geometry == Geometry::Linear;
    let point = kernel
        .evaluate(frame_omega)
        .and_then(|lambda| match geometry {
            Geometry::Linear => linear_point_from_kernel(lambda, port_coupling),
            Geometry::Ring => ring_point_from_kernel(lambda, port_coupling),
        });
    match point {
        Ok(point) if point.is_finite() => SpectrumRecord {
            axis,
            point,
            quality: PointQuality::Ok,
        },
        _ => SpectrumRecord {
            axis,
            point: SpectrumPoint::undefined(linear),
            quality: PointQuality::Degenerate,
        },
    }
}

/// Run a sweep. Deterministic: identical specs produce identical tables,
/// independent of the rayon pool evaluating the points.
pub fn run_sweep<T: Scalar>(spec: &SweepSpec<T>) -> Result<SweepTable<T>> {
    spec.validate()?;
    let axis_values = linspace(spec.start, spec.stop, spec.points);
    let pump = PumpSteadyState::evaluate(spec.modes.omega_pump, &spec.drive, &spec.params)?;
    let coupling_magnitude = pump.coupling.norm();
    let regime = classify_regime(
        coupling_magnitude,
        spec.params.photon_damping,
        spec.params.phonon_damping,
    );

    let records = match spec.axis {
        SweepAxis::ProbeDetuning => {
            let inputs = PolaritonInputs::from_modes(&spec.modes, &pump, &spec.params)?;
            let kernel = ResponseKernel::build(&inputs, spec.kernel_mode);
            let rows = axis_values
                .par_iter()
                .map(|&detuning| {
                    let probe = ProbeFrame::from_signal_detuning(
                        detuning,
                        spec.modes.omega_signal,
                        spec.modes.omega_pump,
                    );
                    spectrum_record(
                        detuning,
                        &kernel,
                        probe.frame,
                        spec.geometry,
                        spec.params.port_coupling,
                    )
                })
                .collect();
            SweepRecords::Spectrum(rows)
        }
        SweepAxis::PumpIntensity => {
            let probe = ProbeFrame::from_signal_detuning(
                spec.probe_detuning,
                spec.modes.omega_signal,
                spec.modes.omega_pump,
            );
            let rows = axis_values
                .par_iter()
                .map(|&flux| {
                    let drive = PumpDrive {
                        input_flux: flux,
                        ..spec.drive
                    };
                    let record =
                        PumpSteadyState::evaluate(spec.modes.omega_pump, &drive, &spec.params)
                            .and_then(|pump| {
                                PolaritonInputs::from_modes(&spec.modes, &pump, &spec.params)
                            })
                            .map(|inputs| ResponseKernel::build(&inputs, spec.kernel_mode))
                            .map(|kernel| {
                                spectrum_record(
                                    flux,
                                    &kernel,
                                    probe.frame,
                                    spec.geometry,
                                    spec.params.port_coupling,
                                )
                            });
                    record.unwrap_or(SpectrumRecord {
                        axis: flux,
                        point: SpectrumPoint::undefined(spec.geometry == Geometry::Linear),
                        quality: PointQuality::Degenerate,
                    })
                })
                .collect();
            SweepRecords::Spectrum(rows)
        }
        SweepAxis::PolaritonDetuning => {
            let inputs = PolaritonInputs::from_modes(&spec.modes, &pump, &spec.params)?;
            let rows = fraction_sweep(&inputs, &axis_values)?;
            SweepRecords::Fractions(rows)
        }
    };

    Ok(SweepTable {
        spec: spec.clone(),
        coupling_magnitude,
        regime,
        records,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

/// An interior extremum, parabola-refined between grid neighbours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub location: T,
    pub height: T,
    pub kind: ExtremumKind,
}

/// Topographic prominence of the sample at `i`: its height above the higher
/// of the two lowest points separating it from taller terrain (or from the
/// boundary) on each side. Works on the negated column for minima.
fn prominence_at<T: Scalar>(values: &[T], i: usize) -> T {
    let peak = values[i];
    let side = |range: &mut dyn Iterator<Item = usize>| -> T {
        let mut lowest = peak;
        for j in range {
            if values[j] > peak {
                break;
            }
            lowest = lowest.min(values[j]);
        }
        lowest
    };
    let left = side(&mut (0..i).rev());
    let right = side(&mut (i + 1..values.len()));
    peak - left.max(right)
}

/// Interior local extrema of a column with at least `prominence` (a fraction
/// of the column's full range), sorted by axis position.
pub fn find_extrema<T: Scalar>(
    axis: &[T],
    column: &[T],
    prominence: T,
) -> Result<Vec<Extremum<T>>> {
    if axis.is_empty() || column.is_empty() {
        return Err(Error::InvalidSweep("empty table".into()));
    }
    if axis.len() != column.len() {
        return Err(Error::InvalidSweep("axis and column lengths differ".into()));
    }
    if !(prominence > T::zero() && prominence < T::one()) {
        return Err(Error::InvalidSweep("prominence must lie in (0, 1)".into()));
    }
    let finite: Vec<T> = column.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Ok(Vec::new());
    }
    let hi = finite.iter().copied().fold(T::neg_infinity(), T::max);
    let lo = finite.iter().copied().fold(T::infinity(), T::min);
    let range = hi - lo;
    if range == T::zero() {
        return Ok(Vec::new());
    }
    let threshold = prominence * range;
    let negated: Vec<T> = column.iter().map(|&v| -v).collect();

    let mut out = Vec::new();
    for i in 1..column.len() - 1 {
        let kind = if column[i] > column[i - 1] && column[i] > column[i + 1] {
            ExtremumKind::Maximum
        } else if column[i] < column[i - 1] && column[i] < column[i + 1] {
            ExtremumKind::Minimum
        } else {
            continue;
        };
        let prom = match kind {
            ExtremumKind::Maximum => prominence_at(column, i),
            ExtremumKind::Minimum => prominence_at(&negated, i),
        };
        if !(prom >= threshold) {
            continue;
        }
        let (location, height) = refine_parabolic(axis, column, i);
        out.push(Extremum {
            location,
            height,
            kind,
        });
    }
    Ok(out)
}

/// Vertex of the parabola through a grid point and its two neighbours.
fn refine_parabolic<T: Scalar>(axis: &[T], column: &[T], i: usize) -> (T, T) {
    let half = lit::<T>(0.5);
    let (left, mid, right) = (column[i - 1], column[i], column[i + 1]);
    let curvature = left - lit::<T>(2.0) * mid + right;
    if curvature == T::zero() {
        return (axis[i], mid);
    }
    let step = (axis[i + 1] - axis[i - 1]) * half;
    let offset = half * (left - right) / curvature;
    let height = mid - (left - right) * (left - right) / (lit::<T>(8.0) * curvature);
    (axis[i] + offset * step, height)
}

/// Extrema of a named table column.
pub fn table_extrema<T: Scalar>(
    table: &SweepTable<T>,
    column: &str,
    prominence: T,
) -> Result<Vec<Extremum<T>>> {
    find_extrema(&table.axis_values(), &table.column(column)?, prominence)
}

/// Distance between the two tallest maxima.
pub fn measure_splitting<T: Scalar>(extrema: &[Extremum<T>]) -> Result<T> {
    let mut maxima: Vec<&Extremum<T>> = extrema
        .iter()
        .filter(|e| e.kind == ExtremumKind::Maximum)
        .collect();
    if maxima.len() < 2 {
        return Err(Error::TooFewMaxima {
            found: maxima.len(),
            needed: 2,
        });
    }
    maxima.sort_by(|a, b| {
        b.height
            .partial_cmp(&a.height)
            .expect("extremum heights are finite")
    });
    Ok((maxima[0].location - maxima[1].location).abs())
}

/// Strong when the coupling magnitude exceeds both damping half-widths.
pub fn classify_regime<T: Scalar>(
    coupling_magnitude: T,
    photon_damping: T,
    phonon_damping: T,
) -> Regime {
    if coupling_magnitude > photon_damping.max(phonon_damping) * lit::<T>(0.5) {
        Regime::Strong
    } else {
        Regime::Weak
    }
}

/// Worst-case residuals of a table's structural identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport<T> {
    /// Max |T + R + A - 1| (linear) or |T + A - 1| (ring).
    pub unitarity: Option<T>,
    /// Worst excursion of R, T or A outside [0, 1].
    pub passivity: Option<T>,
    /// Max per-branch |fraction sum - 1| for fraction tables.
    pub normalization: Option<T>,
    pub degenerate_points: usize,
    pub tolerance: T,
}

impl<T: Scalar> InvariantReport<T> {
    pub fn passed(&self) -> bool {
        let ok = |r: Option<T>| r.is_none_or(|v| v <= self.tolerance);
        ok(self.unitarity) && ok(self.passivity) && ok(self.normalization)
    }
}

fn report_tolerance<T: Scalar>() -> T {
    lit::<T>(1e-12).max(T::epsilon() * lit(128.0))
}

/// Check unitarity, passivity and fraction normalization over a table.
pub fn verify_invariants<T: Scalar>(table: &SweepTable<T>) -> InvariantReport<T> {
    let mut report = InvariantReport {
        unitarity: None,
        passivity: None,
        normalization: None,
        degenerate_points: 0,
        tolerance: report_tolerance::<T>(),
    };
    match &table.records {
        SweepRecords::Spectrum(rows) => {
            let mut unitarity = T::zero();
            let mut passivity = T::zero();
            for row in rows {
                if row.quality == PointQuality::Degenerate {
                    report.degenerate_points += 1;
                    continue;
                }
                let p = &row.point;
                let budget = p.transmission + p.absorption + p.reflection.unwrap_or(T::zero());
                unitarity = unitarity.max((budget - T::one()).abs());
                let mut excursion = |v: T| {
                    passivity = passivity.max(-v).max(v - T::one());
                };
                excursion(p.transmission);
                excursion(p.absorption);
                if let Some(r) = p.reflection {
                    excursion(r);
                }
            }
            report.unitarity = Some(unitarity);
            report.passivity = Some(passivity);
        }
        SweepRecords::Fractions(rows) => {
            let mut worst = T::zero();
            for row in rows {
                let upper = row.upper_phonon_fraction + row.upper_photon_fraction;
                let lower = row.lower_phonon_fraction + row.lower_photon_fraction;
                worst = worst
                    .max((upper - T::one()).abs())
                    .max((lower - T::one()).abs());
            }
            report.normalization = Some(worst);
        }
    }
    report
}

/// Max |ring transmission amplitude - linear reflection amplitude| across two
/// sweeps of the same grid. Zero by construction: both sides run the same
/// port-amplitude code path.
pub fn verify_duality<T: Scalar>(linear: &SweepTable<T>, ring: &SweepTable<T>) -> Result<T> {
    let (lin_rows, ring_rows) = match (&linear.records, &ring.records) {
        (SweepRecords::Spectrum(a), SweepRecords::Spectrum(b)) => (a, b),
        _ => {
            return Err(Error::InvalidSweep(
                "duality check needs two spectrum tables".into(),
            ))
        }
    };
    if linear.spec.geometry != Geometry::Linear || ring.spec.geometry != Geometry::Ring {
        return Err(Error::InvalidSweep(
            "duality check needs one linear and one ring table".into(),
        ));
    }
    if lin_rows.len() != ring_rows.len() {
        return Err(Error::InvalidSweep("tables have different lengths".into()));
    }
    let mut worst = T::zero();
    for (lin, ring) in lin_rows.iter().zip(ring_rows) {
        if lin.axis != ring.axis {
            return Err(Error::InvalidSweep("tables have different axes".into()));
        }
        if lin.quality == PointQuality::Degenerate || ring.quality == PointQuality::Degenerate {
            continue;
        }
        let r = lin
            .point
            .reflection_amplitude
            .ok_or_else(|| Error::UnknownColumn("phi_r".into()))?;
        worst = worst.max((ring.point.transmission_amplitude - r).norm());
    }
    Ok(worst)
}
