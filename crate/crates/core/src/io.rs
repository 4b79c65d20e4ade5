//! Two-column CSV ingestion and export.
//!
//! The accepted format is `x,y` per row with `.` as the decimal point. The
//! first row is treated as a header when neither of its fields parses as a
//! number. Row numbers in errors are one-based physical line numbers.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::sample::BivariateSample;

pub fn read_csv<R: Read>(reader: R) -> Result<BivariateSample> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Csv {
            row: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(idx as u64 + 1, |p| p.line());
        if record.len() != 2 {
            return Err(Error::Csv {
                row,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let x = record[0].parse::<f64>();
        let y = record[1].parse::<f64>();
        if idx == 0 && x.is_err() && y.is_err() {
            continue;
        }
        let parse = |field: &str, value: std::result::Result<f64, _>| match value {
            Ok(v) if f64::is_finite(v) => Ok(v),
            Ok(_) => Err(Error::Csv {
                row,
                message: format!("non-finite value {field:?}"),
            }),
            Err(_) => Err(Error::Csv {
                row,
                message: format!("cannot parse {field:?} as a number"),
            }),
        };
        xs.push(parse(&record[0], x)?);
        ys.push(parse(&record[1], y)?);
    }
    BivariateSample::new(xs, ys)
}

pub fn parse_csv_str(text: &str) -> Result<BivariateSample> {
    read_csv(text.as_bytes())
}

/// Writes an `x,y` header followed by one row per observation. Values use the
/// shortest representation that parses back to the identical `f64`.
pub fn write_csv<W: Write>(sample: &BivariateSample, mut out: W) -> std::io::Result<()> {
    writeln!(out, "x,y")?;
    for (x, y) in sample.points() {
        writeln!(out, "{x},{y}")?;
    }
    Ok(())
}
