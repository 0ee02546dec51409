//! Text artifact formats: CSV tables and flat JSON reports.
//!
//! Floats are rendered with 17 significant digits so that every double
//! round-trips losslessly through the text form.

use crate::error::{Error, Result};
use crate::periodic::CoefficientTable;
use num_complex::Complex64;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Render a double with 17 significant digits (lossless round trip).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad float field: {s:?}")))
}

fn parse_i64(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad integer field: {s:?}")))
}

fn read_rows(path: &Path, header: &str) -> Result<Vec<Vec<String>>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == header => {}
        other => {
            return Err(Error::Parse(format!(
                "expected header {header:?}, found {other:?}"
            )))
        }
    }
    let cols = header.split(',').count();
    lines
        .map(|l| {
            let fields: Vec<String> = l.split(',').map(str::to_string).collect();
            if fields.len() != cols {
                return Err(Error::Parse(format!("expected {cols} fields in row {l:?}")));
            }
            Ok(fields)
        })
        .collect()
}

fn write_csv(path: &Path, header: &str, rows: impl Iterator<Item = String>) -> Result<()> {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Coefficient table as CSV `k,re,im`, rows sorted by `k` ascending.
pub fn write_coefficients_csv(path: &Path, t: &CoefficientTable) -> Result<()> {
    write_csv(
        path,
        "k,re,im",
        t.iter()
            .map(|(k, c)| format!("{k},{},{}", fmt_f64(c.re), fmt_f64(c.im))),
    )
}

pub fn read_coefficients_csv(path: &Path) -> Result<CoefficientTable> {
    let rows = read_rows(path, "k,re,im")?;
    let mut entries = Vec::with_capacity(rows.len());
    let mut kmax = 0i64;
    for row in &rows {
        let k = parse_i64(&row[0])?;
        kmax = kmax.max(k.abs());
        entries.push((k, Complex64::new(parse_f64(&row[1])?, parse_f64(&row[2])?)));
    }
    let mut t = CoefficientTable::zeros(kmax as usize, false);
    for (k, c) in entries {
        t.set(k, c);
    }
    if t.reality_defect() < 1e-12 {
        let kmax = t.kmax();
        t = CoefficientTable::from_values(kmax, t.iter().map(|(_, c)| c).collect(), true)?;
    }
    Ok(t)
}

/// Complex samples as CSV `j,re,im`.
pub fn write_samples_csv(path: &Path, samples: &[Complex64]) -> Result<()> {
    write_csv(
        path,
        "j,re,im",
        samples
            .iter()
            .enumerate()
            .map(|(j, z)| format!("{j},{},{}", fmt_f64(z.re), fmt_f64(z.im))),
    )
}

pub fn read_samples_csv(path: &Path) -> Result<Vec<Complex64>> {
    let rows = read_rows(path, "j,re,im")?;
    let mut samples = vec![Complex64::default(); rows.len()];
    for row in &rows {
        let j = parse_i64(&row[0])?;
        if j < 0 || j as usize >= samples.len() {
            return Err(Error::Parse(format!("sample index {j} out of range")));
        }
        samples[j as usize] = Complex64::new(parse_f64(&row[1])?, parse_f64(&row[2])?);
    }
    Ok(samples)
}

/// Real grid data as CSV with a caller-chosen two-column header such as
/// `x,value` or `x,E`.
pub fn write_pairs_csv(path: &Path, header: &str, rows: &[(f64, f64)]) -> Result<()> {
    write_csv(
        path,
        header,
        rows.iter()
            .map(|&(x, v)| format!("{},{}", fmt_f64(x), fmt_f64(v))),
    )
}

pub fn read_pairs_csv(path: &Path, header: &str) -> Result<Vec<(f64, f64)>> {
    read_rows(path, header)?
        .iter()
        .map(|row| Ok((parse_f64(&row[0])?, parse_f64(&row[1])?)))
        .collect()
}

/// Three-column field data, e.g. `x,y,u`, `x,t,u`, or `p,phi,value`.
pub fn write_triples_csv(path: &Path, header: &str, rows: &[(f64, f64, f64)]) -> Result<()> {
    write_csv(
        path,
        header,
        rows.iter()
            .map(|&(a, b, c)| format!("{},{},{}", fmt_f64(a), fmt_f64(b), fmt_f64(c))),
    )
}

pub fn read_triples_csv(path: &Path, header: &str) -> Result<Vec<(f64, f64, f64)>> {
    read_rows(path, header)?
        .iter()
        .map(|row| {
            Ok((
                parse_f64(&row[0])?,
                parse_f64(&row[1])?,
                parse_f64(&row[2])?,
            ))
        })
        .collect()
}

/// Sample an evaluator on `m >= 2` uniform points of one period and write
/// `x,value` CSV.
pub fn emit_grid(f: impl Fn(f64) -> f64, m: usize, period: f64, path: &Path) -> Result<()> {
    if m < 2 {
        return Err(Error::GridTooCoarse { needed: 2, got: m });
    }
    let rows: Vec<(f64, f64)> = (0..m)
        .map(|j| {
            let x = period * j as f64 / m as f64;
            (x, f(x))
        })
        .collect();
    write_pairs_csv(path, "x,value", &rows)
}

/// One field of a flat (single-level) JSON report.
#[derive(Debug, Clone)]
pub enum JsonField {
    Float(f64),
    Int(i64),
    Str(String),
}

impl From<f64> for JsonField {
    fn from(x: f64) -> Self {
        JsonField::Float(x)
    }
}

impl From<i64> for JsonField {
    fn from(x: i64) -> Self {
        JsonField::Int(x)
    }
}

impl From<&str> for JsonField {
    fn from(s: &str) -> Self {
        JsonField::Str(s.to_string())
    }
}

/// Write a flat JSON object (no nesting) with keys in the given order and
/// floats rendered with 17 significant digits.
pub fn write_flat_json(path: &Path, fields: &[(&str, JsonField)]) -> Result<()> {
    let mut out = String::from("{\n");
    for (i, (key, value)) in fields.iter().enumerate() {
        write!(out, "  \"{key}\": ").unwrap();
        match value {
            JsonField::Float(x) => out.push_str(&fmt_f64(*x)),
            JsonField::Int(n) => write!(out, "{n}").unwrap(),
            JsonField::Str(s) => {
                write!(out, "\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")).unwrap()
            }
        }
        out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    fs::write(path, out)?;
    Ok(())
}

/// Parse a flat JSON report written by [`write_flat_json`] (for tests and
/// round trips); returns key/value pairs with floats parsed.
pub fn read_flat_json(path: &Path) -> Result<Vec<(String, f64)>> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    Ok(obj
        .iter()
        .filter_map(|(k, v)| v.as_f64().map(|x| (k.clone(), x)))
        .collect())
}
