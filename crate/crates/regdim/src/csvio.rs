//! CSV serialization of spectrum sweeps.
//!
//! Floats are written with 17 significant digits so a parse → write cycle
//! reproduces the file byte for byte; oracle columns are left empty when no
//! closed form is attached.

use std::io;
use std::path::Path;

use crate::presets::OracleCurve;
use crate::spectrum::SpectrumEstimate;
use crate::ModelError;

pub const HEADER: &str =
    "theta,assouad_est,lower_est,assouad_oracle,lower_oracle,residual,dropped_pairs";

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    pub theta: f64,
    pub assouad_est: f64,
    pub lower_est: f64,
    pub assouad_oracle: Option<f64>,
    pub lower_oracle: Option<f64>,
    pub residual: f64,
    pub dropped_pairs: usize,
}

/// Attach oracle curves (where present) to an estimate, producing CSV rows.
pub fn rows_from_estimate(
    est: &SpectrumEstimate,
    assouad_oracle: Option<&OracleCurve>,
    lower_oracle: Option<&OracleCurve>,
) -> Vec<SpectrumRow> {
    est.records
        .iter()
        .map(|r| SpectrumRow {
            theta: r.theta,
            assouad_est: r.upper_exponent,
            lower_est: r.lower_exponent,
            assouad_oracle: assouad_oracle.map(|c| c.eval(r.theta)),
            lower_oracle: lower_oracle.map(|c| c.eval(r.theta)),
            residual: r.fit_residual,
            dropped_pairs: r.dropped_pairs,
        })
        .collect()
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

pub fn to_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 128);
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt(r.theta),
            fmt(r.assouad_est),
            fmt(r.lower_est),
            fmt_opt(r.assouad_oracle),
            fmt_opt(r.lower_oracle),
            fmt(r.residual),
            r.dropped_pairs
        ));
    }
    out
}

fn parse_f64(field: &str, line: usize, col: &str) -> Result<f64, ModelError> {
    field.parse::<f64>().map_err(|_| {
        ModelError::InvalidParameter(format!("line {line}: bad {col} value '{field}'"))
    })
}

fn parse_opt(field: &str, line: usize, col: &str) -> Result<Option<f64>, ModelError> {
    if field.is_empty() {
        Ok(None)
    } else {
        parse_f64(field, line, col).map(Some)
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<SpectrumRow>, ModelError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == HEADER => {}
        other => {
            return Err(ModelError::InvalidParameter(format!(
                "missing or wrong header: expected '{HEADER}', got {:?}",
                other.map(|(_, h)| h)
            )))
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let n = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(ModelError::InvalidParameter(format!(
                "line {n}: expected 7 fields, got {}",
                fields.len()
            )));
        }
        rows.push(SpectrumRow {
            theta: parse_f64(fields[0], n, "theta")?,
            assouad_est: parse_f64(fields[1], n, "assouad_est")?,
            lower_est: parse_f64(fields[2], n, "lower_est")?,
            assouad_oracle: parse_opt(fields[3], n, "assouad_oracle")?,
            lower_oracle: parse_opt(fields[4], n, "lower_oracle")?,
            residual: parse_f64(fields[5], n, "residual")?,
            dropped_pairs: fields[6].parse().map_err(|_| {
                ModelError::InvalidParameter(format!(
                    "line {n}: bad dropped_pairs value '{}'",
                    fields[6]
                ))
            })?,
        });
    }
    Ok(rows)
}

/// Write a file atomically: to a sibling temp file first, then rename into
/// place, so readers never observe a half-written file.
pub fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let base = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp = std::ffi::OsString::from(".");
    tmp.push(base);
    tmp.push(format!(".tmp.{}", std::process::id()));
    let tmp_path = match dir {
        Some(d) => d.join(&tmp),
        None => std::path::PathBuf::from(&tmp),
    };
    std::fs::write(&tmp_path, content)?;
    match std::fs::rename(&tmp_path, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = std::fs::remove_file(&tmp_path);
            Err(e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<SpectrumRow> {
        vec![
            SpectrumRow {
                theta: 0.25,
                assouad_est: 13.0 / 6.0,
                lower_est: 2.0 / 9.0,
                assouad_oracle: Some(13.0 / 6.0),
                lower_oracle: None,
                residual: 1.5e-13,
                dropped_pairs: 3,
            },
            SpectrumRow {
                theta: 0.5,
                assouad_est: 1.0,
                lower_est: 0.0,
                assouad_oracle: None,
                lower_oracle: Some(0.0),
                residual: 0.0,
                dropped_pairs: 0,
            },
        ]
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let text = to_csv(&sample_rows());
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed, sample_rows());
        let again = to_csv(&parsed);
        assert_eq!(text, again);
    }

    #[test]
    fn empty_oracle_cells() {
        let text = to_csv(&sample_rows());
        let line = text.lines().nth(2).unwrap();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[3], "");
        assert!(!fields[4].is_empty());
    }

    #[test]
    fn bad_input_is_rejected() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("wrong,header\n").is_err());
        let good = to_csv(&sample_rows());
        let mangled = good.replace("2.5000000000000000e-1", "not-a-number");
        assert!(parse_csv(&mangled).is_err());
        let short = format!("{HEADER}\n1.0,2.0\n");
        assert!(parse_csv(&short).is_err());
    }

    #[test]
    fn atomic_write_creates_file() {
        let dir = std::env::temp_dir().join(format!("regdim-csv-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        write_atomic(&path, "hello\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "hello\n");
        write_atomic(&path, "replaced\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "replaced\n");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
