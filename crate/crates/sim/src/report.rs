//! CSV output.
//!
//! Integer columns are written as integers and real columns in `{:.8e}`
//! notation. Files are written to a sibling temporary path and renamed into
//! place, so a failed run never leaves a truncated CSV behind.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Result, SimError};
use crate::monte_carlo::AggregateRow;

pub const HEADER: [&str; 13] = [
    "sweep_axis",
    "sweep_value",
    "algorithm",
    "trials",
    "K_mean",
    "K_se",
    "Rsum_mean",
    "Rsum_se",
    "Roma_mean",
    "I1_mean",
    "I2_mean",
    "infeasible_total",
    "seconds",
];

fn real(x: f64) -> String {
    format!("{x:.8e}")
}

fn record(row: &AggregateRow, timing: bool) -> [String; 13] {
    [
        row.axis.name().to_string(),
        row.value.to_string(),
        row.algorithm.to_string(),
        row.trials.to_string(),
        real(row.clusters.mean),
        real(row.clusters.std_error),
        real(row.sum_rate.mean),
        real(row.sum_rate.std_error),
        real(row.oma_rate),
        real(row.examined),
        real(row.candidates),
        row.infeasible_total.to_string(),
        real(if timing { row.seconds } else { 0.0 }),
    ]
}

/// Writes the rows as CSV to any sink.
pub fn write_rows<W: Write>(sink: W, rows: &[AggregateRow], timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(record(row, timing))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".{}.tmp", std::process::id()));
    path.with_file_name(name)
}

/// Writes the rows to `path`, replacing it atomically.
pub fn write_csv(path: &Path, rows: &[AggregateRow], timing: bool) -> Result<()> {
    let tmp = temp_path(path);
    let result = fs::File::create(&tmp)
        .map_err(|source| SimError::Write {
            path: tmp.clone(),
            source,
        })
        .and_then(|file| write_rows(std::io::BufWriter::new(file), rows, timing))
        .and_then(|()| {
            fs::rename(&tmp, path).map_err(|source| SimError::Write {
                path: path.to_path_buf(),
                source,
            })
        });
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monte_carlo::{Summary, SweepAxis};
    use noma_core::Algorithm;

    fn row() -> AggregateRow {
        AggregateRow {
            axis: SweepAxis::DMax,
            value: 3,
            algorithm: Algorithm::BbHet { m: 2 },
            trials: 10,
            clusters: Summary {
                mean: 42.5,
                std_error: 0.25,
            },
            sum_rate: Summary {
                mean: 1234.5678,
                std_error: 1.5,
            },
            oma_rate: 1000.0,
            examined: 1e6,
            candidates: 250.0,
            infeasible_total: 0,
            seconds: 1.75,
        }
    }

    #[test]
    fn golden_output() {
        let mut buf = Vec::new();
        write_rows(&mut buf, &[row()], false).unwrap();
        let expected = "sweep_axis,sweep_value,algorithm,trials,K_mean,K_se,Rsum_mean,Rsum_se,Roma_mean,I1_mean,I2_mean,infeasible_total,seconds\n\
                        d_max,3,bb-het:2,10,4.25000000e1,2.50000000e-1,1.23456780e3,1.50000000e0,1.00000000e3,1.00000000e6,2.50000000e2,0,0.00000000e0\n";
        assert_eq!(String::from_utf8(buf).unwrap(), expected);
    }

    #[test]
    fn timing_column_is_kept_when_enabled() {
        let mut buf = Vec::new();
        write_rows(&mut buf, &[row()], true).unwrap();
        assert!(String::from_utf8(buf).unwrap().trim_end().ends_with(",1.75000000e0"));
    }

    #[test]
    fn failed_write_leaves_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("missing").join("out.csv");
        assert!(write_csv(&target, &[row()], false).is_err());
        assert!(!target.exists());
        let ok = dir.path().join("out.csv");
        write_csv(&ok, &[row()], false).unwrap();
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
