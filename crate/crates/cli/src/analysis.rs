//! Sweep analysis for the machine-readable summary: regime, splitting,
//! extrema and worst-case invariant residuals.

use brio_core::sweep::{
    measure_splitting, table_extrema, verify_duality, verify_invariants, Extremum, ExtremumKind,
    InvariantReport, Regime, SweepRecords, SweepTable,
};
use serde_json::{json, Value};

/// Prominence used when scanning the headline transmission column: peaks
/// shallower than this fraction of the full range are treated as ripple.
pub const PEAK_PROMINENCE: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct Analysis {
    pub regime: Regime,
    pub coupling_magnitude: f64,
    pub extrema: Vec<Extremum<f64>>,
    pub splitting: Option<f64>,
    pub report: InvariantReport<f64>,
}

/// Analyze a sweep table: extrema and splitting come from the transmission
/// column of spectrum sweeps; fraction sweeps only report residuals.
pub fn analyze(table: &SweepTable<f64>) -> Analysis {
    let extrema = match &table.records {
        SweepRecords::Spectrum(_) => table_extrema(table, "T", PEAK_PROMINENCE).unwrap_or_default(),
        SweepRecords::Fractions(_) => Vec::new(),
    };
    let splitting = measure_splitting(&extrema).ok();
    Analysis {
        regime: table.regime,
        coupling_magnitude: table.coupling_magnitude,
        extrema,
        splitting,
        report: verify_invariants(table),
    }
}

pub fn regime_word(regime: Regime) -> &'static str {
    match regime {
        Regime::Weak => "weak",
        Regime::Strong => "strong",
    }
}

fn extremum_json(e: &Extremum<f64>) -> Value {
    json!({
        "kind": match e.kind {
            ExtremumKind::Maximum => "max",
            ExtremumKind::Minimum => "min",
        },
        "location": e.location,
        "height": e.height,
    })
}

/// Summary document for one sweep.
pub fn summary_json(table: &SweepTable<f64>, analysis: &Analysis) -> Value {
    json!({
        "axis": table.spec.axis.label(),
        "geometry": match table.spec.geometry {
            brio_core::sweep::Geometry::Linear => "linear",
            brio_core::sweep::Geometry::Ring => "ring",
        },
        "points": table.len(),
        "regime": regime_word(analysis.regime),
        "coupling_magnitude": analysis.coupling_magnitude,
        "splitting": analysis.splitting,
        "extrema": analysis.extrema.iter().map(extremum_json).collect::<Vec<_>>(),
        "residuals": {
            "unitarity": analysis.report.unitarity,
            "passivity": analysis.report.passivity,
            "normalization": analysis.report.normalization,
        },
        "degenerate_points": analysis.report.degenerate_points,
        "invariants_passed": analysis.report.passed(),
    })
}

/// Verification outcome across the linear, ring and fraction sweeps.
#[derive(Debug, Clone)]
pub struct Verification {
    pub linear: InvariantReport<f64>,
    pub ring: InvariantReport<f64>,
    pub fractions: InvariantReport<f64>,
    pub duality: f64,
    pub tolerance: f64,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.linear.passed()
            && self.ring.passed()
            && self.fractions.passed()
            && self.duality <= self.tolerance
    }
}

/// Run the invariant checks over a paired linear/ring sweep plus a fraction
/// sweep of the same operating point.
pub fn verify_tables(
    linear: &SweepTable<f64>,
    ring: &SweepTable<f64>,
    fractions: &SweepTable<f64>,
) -> Result<Verification, brio_core::Error> {
    let linear_report = verify_invariants(linear);
    let ring_report = verify_invariants(ring);
    let fraction_report = verify_invariants(fractions);
    let duality = verify_duality(linear, ring)?;
    Ok(Verification {
        tolerance: linear_report.tolerance,
        linear: linear_report,
        ring: ring_report,
        fractions: fraction_report,
        duality,
    })
}

fn residual(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.3e}"),
        None => "n/a".into(),
    }
}

fn worst_passivity(v: &Verification) -> f64 {
    v.linear
        .passivity
        .unwrap_or(0.0)
        .max(v.ring.passivity.unwrap_or(0.0))
}

/// Human-readable verification report, one line per check.
pub fn verification_text(v: &Verification) -> String {
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let mut out = String::new();
    out.push_str(&format!(
        "unitarity linear    max residual {}  {}\n",
        residual(v.linear.unitarity),
        mark(v.linear.passed())
    ));
    out.push_str(&format!(
        "unitarity ring      max residual {}  {}\n",
        residual(v.ring.unitarity),
        mark(v.ring.passed())
    ));
    out.push_str(&format!(
        "passivity           worst excursion {}  {}\n",
        residual(Some(worst_passivity(v))),
        mark(v.linear.passed() && v.ring.passed())
    ));
    out.push_str(&format!(
        "duality ring=linear max residual {:.3e}  {}\n",
        v.duality,
        mark(v.duality <= v.tolerance)
    ));
    out.push_str(&format!(
        "fraction norms      max residual {}  {}\n",
        residual(v.fractions.normalization),
        mark(v.fractions.passed())
    ));
    out.push_str(&format!(
        "verification {}\n",
        if v.passed() { "PASSED" } else { "FAILED" }
    ));
    out
}

/// Machine-readable verification report.
pub fn verification_json(v: &Verification) -> Value {
    json!({
        "residuals": {
            "unitarity_linear": v.linear.unitarity,
            "unitarity_ring": v.ring.unitarity,
            "passivity": worst_passivity(v),
            "duality": v.duality,
            "fraction_normalization": v.fractions.normalization,
        },
        "tolerance": v.tolerance,
        "passed": v.passed(),
    })
}
