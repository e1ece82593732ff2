//! Deterministic serialization: CSV export, spectrum ingestion, and run
//! manifests.
//!
//! Every writer is byte-deterministic for identical in-memory state.
//! Floats are written with 17 significant digits, which round-trips f64
//! exactly; lines end in LF; manifests are canonical JSON with sorted
//! keys and no insignificant whitespace, so recorded content hashes are
//! stable across platforms.

use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, IntensitySpectrum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Formats one float with 17 significant digits (exact f64 round-trip).
fn push_float(out: &mut String, x: f64) {
    write!(out, "{x:.16e}").expect("writing to a String cannot fail");
}

/// Renders equal-length columns as CSV text with a header row.
pub fn curve_csv_string(headers: &[&str], columns: &[&[f64]]) -> Result<String> {
    if headers.len() != columns.len() || columns.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} headers for {} columns",
            headers.len(),
            columns.len()
        )));
    }
    let rows = columns[0].len();
    for c in columns {
        if c.len() != rows {
            return Err(Error::LengthMismatch {
                values: c.len(),
                grid: rows,
            });
        }
    }
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for r in 0..rows {
        for (k, c) in columns.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            push_float(&mut out, c[r]);
        }
        out.push('\n');
    }
    Ok(out)
}

/// Writes a header-and-columns CSV file.
pub fn write_curve_csv(path: &Path, headers: &[&str], columns: &[&[f64]]) -> Result<()> {
    fs::write(path, curve_csv_string(headers, columns)?)?;
    Ok(())
}

/// Renders a row-major matrix as headerless CSV, one row per line.
pub fn matrix_csv_string(values: &[f64], n_cols: usize) -> Result<String> {
    if n_cols == 0 || !values.len().is_multiple_of(n_cols) {
        return Err(Error::InvalidInput(format!(
            "{} values cannot form rows of {} columns",
            values.len(),
            n_cols
        )));
    }
    let mut out = String::new();
    for row in values.chunks(n_cols) {
        for (k, &v) in row.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            push_float(&mut out, v);
        }
        out.push('\n');
    }
    Ok(out)
}

/// Writes a row-major matrix as headerless CSV.
pub fn write_matrix_csv(path: &Path, values: &[f64], n_cols: usize) -> Result<()> {
    fs::write(path, matrix_csv_string(values, n_cols)?)?;
    Ok(())
}

/// Lowercase hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        write!(out, "{b:02x}").expect("writing to a String cannot fail");
    }
    out
}

fn parse_error(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::CsvParse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

/// Reads a two-column (frequency, intensity) CSV and resamples it onto a
/// uniform grid by linear interpolation.
///
/// The header row is optional; frequencies must be strictly increasing
/// and intensities finite and nonnegative. The output count is the input
/// row count rounded up to the next `2^k + 1`, so downstream consumers
/// always see a uniform odd-count grid spanning the input range.
pub fn read_spectrum_csv(path: &Path) -> Result<IntensitySpectrum> {
    let text = fs::read_to_string(path)?;
    let mut freq = Vec::new();
    let mut intensity = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(parse_error(
                    path,
                    line_no,
                    "expected exactly two comma-separated fields",
                ))
            }
        };
        let parsed = (a.parse::<f64>(), b.parse::<f64>());
        let (w, v) = match parsed {
            (Ok(w), Ok(v)) => (w, v),
            _ if idx == 0 => continue, // header row
            _ => {
                return Err(parse_error(
                    path,
                    line_no,
                    format!("cannot parse '{line}' as two numbers"),
                ))
            }
        };
        if !w.is_finite() || !v.is_finite() {
            return Err(parse_error(path, line_no, "non-finite value"));
        }
        if v < 0.0 {
            return Err(parse_error(
                path,
                line_no,
                format!("negative intensity {v}"),
            ));
        }
        if let Some(&prev) = freq.last() {
            if w <= prev {
                return Err(parse_error(
                    path,
                    line_no,
                    format!("frequency {w} does not increase past {prev}"),
                ));
            }
        }
        freq.push(w);
        intensity.push(v);
    }
    if freq.len() < 2 {
        return Err(parse_error(
            path,
            freq.len() + 1,
            "need at least two data rows",
        ));
    }
    resample_to_uniform(&freq, &intensity)
}

/// Smallest `2^k + 1` that is at least `n` (and at least 3).
fn next_grid_count(n: usize) -> usize {
    let mut count = 3;
    while count < n {
        count = (count - 1) * 2 + 1;
    }
    count
}

fn resample_to_uniform(freq: &[f64], intensity: &[f64]) -> Result<IntensitySpectrum> {
    let first = freq[0];
    let last = *freq.last().expect("checked non-empty");
    let count = next_grid_count(freq.len());
    let grid = FrequencyGrid::new(0.5 * (first + last), last - first, count)?;
    let values = (0..count)
        .map(|i| {
            let x = grid.sample(i).clamp(first, last);
            // segment lookup: partition_point gives the first node > x
            let hi = freq.partition_point(|&w| w <= x).min(freq.len() - 1);
            let lo = hi - 1;
            if x == freq[lo] {
                return intensity[lo];
            }
            if x == freq[hi] {
                return intensity[hi];
            }
            let t = (x - freq[lo]) / (freq[hi] - freq[lo]);
            intensity[lo] + t * (intensity[hi] - intensity[lo])
        })
        .collect();
    IntensitySpectrum::new(grid, values)
}

/// Record of one batch run: the scenario name, every input parameter
/// (seeds included), the tool version, and content hashes of the emitted
/// files. A manifest is written before any data file and marked complete
/// only after all data is on disk, so a crash mid-run is detectable.
///
/// Re-running a command with the parameters of a complete manifest
/// reproduces the hashed files byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub scenario: String,
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    pub complete: bool,
    #[serde(default)]
    pub output_hashes: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(
        scenario: impl Into<String>,
        tool_version: impl Into<String>,
        parameters: BTreeMap<String, String>,
    ) -> Self {
        Self {
            scenario: scenario.into(),
            parameters,
            tool_version: tool_version.into(),
            complete: false,
            output_hashes: BTreeMap::new(),
        }
    }

    /// Records the content hash of an emitted file.
    pub fn record_output(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.output_hashes.insert(name.into(), sha256_hex(bytes));
    }

    /// Canonical JSON: sorted keys, compact separators, LF-terminated.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("manifest is always serializable");
        let mut text = serde_json::to_string(&value).expect("JSON value is always printable");
        text.push('\n');
        text
    }
}

/// Writes a manifest as canonical JSON.
pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    fs::write(path, manifest.to_canonical_json())?;
    Ok(())
}

fn scalar_to_string(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        serde_json::Value::Bool(b) => Ok(b.to_string()),
        other => Err(Error::InvalidInput(format!(
            "parameter value {other} is not scalar"
        ))),
    }
}

fn scalar_map(
    obj: &serde_json::Map<String, serde_json::Value>,
) -> Result<BTreeMap<String, String>> {
    obj.iter()
        .map(|(k, v)| Ok((k.clone(), scalar_to_string(v)?)))
        .collect()
}

/// Reads a manifest back. Accepts either a full manifest or a bare
/// `{"key": value}` parameter map (values are stringified), so a
/// hand-written config file and an emitted manifest load the same way.
pub fn read_manifest(path: &Path) -> Result<RunManifest> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidInput("config must be a JSON object".into()))?;
    let text_field = |key: &str| {
        obj.get(key)
            .and_then(|v| v.as_str())
            .unwrap_or_default()
            .to_string()
    };
    if let Some(serde_json::Value::Object(params)) = obj.get("parameters") {
        let mut manifest = RunManifest::new(
            text_field("scenario"),
            text_field("tool_version"),
            scalar_map(params)?,
        );
        manifest.complete = obj
            .get("complete")
            .and_then(|v| v.as_bool())
            .unwrap_or(false);
        if let Some(serde_json::Value::Object(hashes)) = obj.get("output_hashes") {
            manifest.output_hashes = scalar_map(hashes)?;
        }
        return Ok(manifest);
    }
    let mut params = scalar_map(obj)?;
    let scenario = params.remove("scenario").unwrap_or_default();
    Ok(RunManifest::new(scenario, "", params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn curve_csv_is_deterministic_with_header_and_lf() {
        let x = [0.0, 1.5];
        let y = [2.0, -3.25];
        let a = curve_csv_string(&["tau", "p"], &[&x, &y]).unwrap();
        let b = curve_csv_string(&["tau", "p"], &[&x, &y]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 3);
        assert!(a.starts_with("tau,p\n"));
        assert!(!a.contains('\r'));
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn csv_floats_round_trip_exactly() {
        let values = [
            1.0 / 3.0,
            std::f64::consts::PI,
            -2.2250738585072014e-308,
            6.02214076e23,
            f64::INFINITY,
        ];
        let text = curve_csv_string(&["v"], &[&values]).unwrap();
        for (line, &v) in text.lines().skip(1).zip(&values) {
            let parsed: f64 = line.parse().unwrap();
            assert_eq!(parsed, v, "{line}");
        }
    }

    #[test]
    fn matrix_csv_has_plain_rows() {
        let text = matrix_csv_string(&[1.0, 2.0, 3.0, 4.0], 2).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(text.lines().next().unwrap().split(',').count(), 2);
        assert!(matrix_csv_string(&[1.0, 2.0, 3.0], 2).is_err());
    }

    #[test]
    fn spectrum_round_trips_through_csv() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("spectrum.csv");
        let grid = FrequencyGrid::new(0.0, 8.0, 129).unwrap();
        let values: Vec<f64> = (0..129)
            .map(|i| {
                let w = grid.sample(i);
                (-0.5 * w * w).exp()
            })
            .collect();
        let freqs: Vec<f64> = (0..129).map(|i| grid.sample(i)).collect();
        write_curve_csv(&path, &["frequency", "intensity"], &[&freqs, &values]).unwrap();
        let back = read_spectrum_csv(&path).unwrap();
        assert_eq!(back.grid.count(), 129);
        for (a, b) in back.values.iter().zip(&values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn small_uniform_file_is_preserved_at_nodes() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("three.csv");
        fs::write(&path, "0,1\n1,2\n2,1\n").unwrap();
        let s = read_spectrum_csv(&path).unwrap();
        assert_eq!(s.grid.count(), 3);
        assert_eq!(s.grid.first(), 0.0);
        assert_eq!(s.grid.last(), 2.0);
        assert_eq!(s.values, vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn row_count_rounds_up_to_power_of_two_plus_one() {
        assert_eq!(next_grid_count(2), 3);
        assert_eq!(next_grid_count(3), 3);
        assert_eq!(next_grid_count(4), 5);
        assert_eq!(next_grid_count(6), 9);
        assert_eq!(next_grid_count(1025), 1025);
        assert_eq!(next_grid_count(1026), 2049);

        let dir = tempdir().unwrap();
        let path = dir.path().join("six.csv");
        fs::write(&path, "0,1\n0.5,2\n1.5,3\n2,2\n3.5,1\n4,0.5\n").unwrap();
        let s = read_spectrum_csv(&path).unwrap();
        assert_eq!(s.grid.count(), 9);
        assert_eq!(s.grid.first(), 0.0);
        assert_eq!(s.grid.last(), 4.0);
        // node 1.5 exists in the input, value preserved
        assert_eq!(s.values[3], 3.0);
    }

    #[test]
    fn reader_reports_offending_lines() {
        let dir = tempdir().unwrap();

        let path = dir.path().join("bad_order.csv");
        fs::write(&path, "freq,val\n0,1\n2,1\n1,1\n").unwrap();
        let err = read_spectrum_csv(&path).unwrap_err().to_string();
        assert!(err.contains(":4:"), "{err}");
        assert!(err.contains("does not increase"), "{err}");

        let path = dir.path().join("negative.csv");
        fs::write(&path, "0,1\n1,-0.5\n").unwrap();
        let err = read_spectrum_csv(&path).unwrap_err().to_string();
        assert!(err.contains(":2:") && err.contains("negative"), "{err}");

        let path = dir.path().join("garbled.csv");
        fs::write(&path, "0,1\n1,2\nbanana,3\n").unwrap();
        let err = read_spectrum_csv(&path).unwrap_err().to_string();
        assert!(err.contains(":3:"), "{err}");

        let path = dir.path().join("three_fields.csv");
        fs::write(&path, "0,1,9\n1,2,9\n").unwrap();
        let err = read_spectrum_csv(&path).unwrap_err().to_string();
        assert!(err.contains("two comma-separated fields"), "{err}");
    }

    #[test]
    fn manifest_json_is_canonical_and_round_trips() {
        let mut params = BTreeMap::new();
        params.insert("seed".to_string(), "42".to_string());
        params.insert("epsilon".to_string(), "0.3".to_string());
        let mut m = RunManifest::new("shg-sweep", "1.2.3", params);
        m.record_output("sweep.csv", b"a,b\n1,2\n");
        m.complete = true;

        let text = m.to_canonical_json();
        assert_eq!(text, m.to_canonical_json());
        assert!(!text.contains(": "), "no insignificant whitespace");
        let complete_pos = text.find("\"complete\"").unwrap();
        let scenario_pos = text.find("\"scenario\"").unwrap();
        assert!(complete_pos < scenario_pos, "keys sorted");

        let dir = tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        write_manifest(&path, &m).unwrap();
        let back = read_manifest(&path).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn manifest_hash_matches_emitted_file() {
        let dir = tempdir().unwrap();
        let data_path = dir.path().join("curve.csv");
        let x = [0.0, 1.0, 2.0];
        let text = curve_csv_string(&["x"], &[&x]).unwrap();
        fs::write(&data_path, &text).unwrap();

        let mut m = RunManifest::new("demo", "0.0.0", BTreeMap::new());
        m.record_output("curve.csv", text.as_bytes());
        let on_disk = fs::read(&data_path).unwrap();
        assert_eq!(m.output_hashes["curve.csv"], sha256_hex(&on_disk));
    }

    #[test]
    fn bare_parameter_map_loads_as_config() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("config.json");
        fs::write(
            &path,
            r#"{"seed": 7, "preset": "fig3-narrow", "live": true}"#,
        )
        .unwrap();
        let m = read_manifest(&path).unwrap();
        assert_eq!(m.parameters["seed"], "7");
        assert_eq!(m.parameters["preset"], "fig3-narrow");
        assert_eq!(m.parameters["live"], "true");
        assert!(!m.complete);
    }
}
