use std::fs;
use std::io::Write;
use std::path::Path;

use super::{OutputFormat, StudyError, StudyRow};

pub const CSV_HEADER: &str =
    "r,M,k,linf_error,estimator_bound,effectivity,eoc_error,eoc_bound,norm_drift,picard_iters,wall_time";

fn float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// CSV with the fixed header, `\n` line endings and 17 significant digits.
/// An `error` column is appended only when some row failed.
pub fn write_csv(rows: &[StudyRow], mut w: impl Write) -> std::io::Result<()> {
    let with_errors = rows.iter().any(|r| r.error.is_some());
    write!(w, "{CSV_HEADER}")?;
    if with_errors {
        write!(w, ",error")?;
    }
    writeln!(w)?;
    for row in rows {
        write!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            row.r,
            row.m,
            float(row.k),
            float(row.linf_error),
            float(row.estimator_bound),
            float(row.effectivity),
            opt(row.eoc_error),
            opt(row.eoc_bound),
            float(row.norm_drift),
            row.picard_iters,
            float(row.wall_time),
        )?;
        if with_errors {
            let msg = row.error.as_deref().unwrap_or("");
            write!(w, ",\"{}\"", msg.replace('"', "\"\""))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// JSON array of row objects with the CSV column names. Non-finite floats
/// become `null`.
pub fn write_json(rows: &[StudyRow], mut w: impl Write) -> Result<(), StudyError> {
    serde_json::to_writer_pretty(&mut w, rows)?;
    writeln!(w)?;
    Ok(())
}

pub fn write_rows(rows: &[StudyRow], format: OutputFormat, path: &Path) -> Result<(), StudyError> {
    let mut buf = Vec::new();
    match format {
        OutputFormat::Csv => write_csv(rows, &mut buf)?,
        OutputFormat::Json => write_json(rows, &mut buf)?,
    }
    fs::write(path, buf)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> StudyRow {
        StudyRow {
            r: 2,
            m: 16,
            k: 0.25,
            linf_error: 1.5e-4,
            estimator_bound: 3.0e-4,
            effectivity: 2.0,
            eoc_error: Some(3.0),
            eoc_bound: None,
            norm_drift: 0.0,
            picard_iters: 0,
            wall_time: 0.0,
            error: None,
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&[row()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some(
                "2,16,2.5000000000000000e-1,1.4999999999999999e-4,2.9999999999999997e-4,\
                 2.0000000000000000e0,3.0000000000000000e0,,0.0000000000000000e0,0,0.0000000000000000e0"
            )
        );
        assert!(!text.contains('\r'));
    }

    #[test]
    fn csv_error_column_only_on_failure() {
        let mut bad = row();
        bad.error = Some("step 3 failed".into());
        let mut buf = Vec::new();
        write_csv(&[row(), bad], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(&format!("{CSV_HEADER},error\n")));
        assert!(text.contains(",\"step 3 failed\""));
    }

    #[test]
    fn json_field_names() {
        let mut buf = Vec::new();
        write_json(&[row()], &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = v[0].as_object().unwrap();
        for key in CSV_HEADER.split(',') {
            assert!(obj.contains_key(key), "{key}");
        }
        assert_eq!(obj["M"], 16);
        assert!(obj["eoc_bound"].is_null());
    }
}
