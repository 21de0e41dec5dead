//! Deterministic CSV and JSON emission for sweep tables.
//!
//! Every number is written with 17 significant digits, so identical runs
//! produce identical bytes and downstream diffs catch any numeric drift.

use std::io::{self, Write};

use brio_core::sweep::{Geometry, PointQuality, SweepRecords, SweepTable};
use serde_json::{json, Value};

use crate::config::format_scalar;

fn flag(quality: PointQuality) -> &'static str {
    match quality {
        PointQuality::Ok => "ok",
        PointQuality::Degenerate => "degenerate",
    }
}

/// Write a table as CSV. Spectrum sweeps of the linear geometry carry the
/// reflection columns; ring sweeps omit them.
pub fn write_csv<W: Write>(table: &SweepTable<f64>, writer: &mut W) -> io::Result<()> {
    let axis = table.spec.axis.label();
    match &table.records {
        SweepRecords::Spectrum(rows) => match table.spec.geometry {
            Geometry::Linear => {
                writeln!(writer, "{axis},R,T,A,phi_r,phi_t,re_lambda,im_lambda,flag")?;
                for row in rows {
                    let p = &row.point;
                    writeln!(
                        writer,
                        "{},{},{},{},{},{},{},{},{}",
                        format_scalar(row.axis),
                        format_scalar(p.reflection.unwrap_or(f64::NAN)),
                        format_scalar(p.transmission),
                        format_scalar(p.absorption),
                        format_scalar(p.reflection_phase.unwrap_or(f64::NAN)),
                        format_scalar(p.transmission_phase),
                        format_scalar(p.kernel.re),
                        format_scalar(p.kernel.im),
                        flag(row.quality),
                    )?;
                }
            }
            Geometry::Ring => {
                writeln!(writer, "{axis},T,A,phi_t,re_lambda,im_lambda,flag")?;
                for row in rows {
                    let p = &row.point;
                    writeln!(
                        writer,
                        "{},{},{},{},{},{},{}",
                        format_scalar(row.axis),
                        format_scalar(p.transmission),
                        format_scalar(p.absorption),
                        format_scalar(p.transmission_phase),
                        format_scalar(p.kernel.re),
                        format_scalar(p.kernel.im),
                        flag(row.quality),
                    )?;
                }
            }
        },
        SweepRecords::Fractions(rows) => {
            writeln!(
                writer,
                "delta,omega_plus,omega_minus,x2_plus,y2_plus,x2_minus,y2_minus"
            )?;
            for row in rows {
                writeln!(
                    writer,
                    "{},{},{},{},{},{},{}",
                    format_scalar(row.half_detuning),
                    format_scalar(row.upper_frequency),
                    format_scalar(row.lower_frequency),
                    format_scalar(row.upper_phonon_fraction),
                    format_scalar(row.upper_photon_fraction),
                    format_scalar(row.lower_phonon_fraction),
                    format_scalar(row.lower_photon_fraction),
                )?;
            }
        }
    }
    Ok(())
}

/// CSV bytes of a table.
pub fn csv_bytes(table: &SweepTable<f64>) -> Vec<u8> {
    let mut bytes = Vec::new();
    write_csv(table, &mut bytes).expect("writing to a Vec cannot fail");
    bytes
}

/// Table as a JSON document: column names plus row arrays. Non-finite
/// values become `null`.
pub fn table_json(table: &SweepTable<f64>) -> Value {
    let axis = table.spec.axis.label();
    let (columns, rows): (Vec<&str>, Vec<Value>) = match &table.records {
        SweepRecords::Spectrum(rows) => {
            let linear = table.spec.geometry == Geometry::Linear;
            let columns = if linear {
                vec![
                    axis,
                    "R",
                    "T",
                    "A",
                    "phi_r",
                    "phi_t",
                    "re_lambda",
                    "im_lambda",
                    "flag",
                ]
            } else {
                vec![axis, "T", "A", "phi_t", "re_lambda", "im_lambda", "flag"]
            };
            let rows = rows
                .iter()
                .map(|row| {
                    let p = &row.point;
                    let mut cells = vec![json!(row.axis)];
                    if linear {
                        cells.push(json!(p.reflection));
                    }
                    cells.push(json!(p.transmission));
                    cells.push(json!(p.absorption));
                    if linear {
                        cells.push(json!(p.reflection_phase));
                    }
                    cells.push(json!(p.transmission_phase));
                    cells.push(json!(p.kernel.re));
                    cells.push(json!(p.kernel.im));
                    cells.push(json!(flag(row.quality)));
                    Value::Array(cells)
                })
                .collect();
            (columns, rows)
        }
        SweepRecords::Fractions(rows) => {
            let columns = vec![
                "delta",
                "omega_plus",
                "omega_minus",
                "x2_plus",
                "y2_plus",
                "x2_minus",
                "y2_minus",
            ];
            let rows = rows
                .iter()
                .map(|row| {
                    json!([
                        row.half_detuning,
                        row.upper_frequency,
                        row.lower_frequency,
                        row.upper_phonon_fraction,
                        row.upper_photon_fraction,
                        row.lower_phonon_fraction,
                        row.lower_photon_fraction,
                    ])
                })
                .collect();
            (columns, rows)
        }
    };
    json!({
        "geometry": match table.spec.geometry {
            Geometry::Linear => "linear",
            Geometry::Ring => "ring",
        },
        "axis": axis,
        "columns": columns,
        "rows": rows,
    })
}

/// JSON bytes of a table, newline terminated.
pub fn json_bytes(table: &SweepTable<f64>) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(&table_json(table)).expect("table serializes");
    bytes.push(b'\n');
    bytes
}
