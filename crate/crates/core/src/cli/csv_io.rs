//! Sweep CSV files.
//!
//! ```text
//! # observable: I_alpha
//! # ... further `#` metadata lines ...
//! psi,value,std_error
//! 0.00000000000000e0,0.00000000000000e0,
//! ```
//!
//! Numbers carry 15 significant digits; `std_error` is empty for analytic
//! sweeps. Phases are always in radians.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::{format_pi_multiple, SweepResult, SweepRow};

/// Prefix of the one metadata line that differs between identical runs.
pub const TIMESTAMP_PREFIX: &str = "# timestamp:";

/// Formats to 15 significant digits.
pub fn format_value(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn metadata_lines(result: &SweepResult) -> Vec<String> {
    let spec = &result.spec;
    let fixed = spec.fixed;
    let mut lines = vec![
        format!("observable: {}", spec.observable),
        format!(
            "swept: {} from {} to {} ({} points)",
            spec.swept,
            format_value(spec.range.start),
            format_value(spec.range.end),
            spec.range.steps
        ),
        format!("fixed: {}", spec.fixed_parameter_label()),
        format!(
            "phases_rad: phi={} psi={} eta={} xi={}",
            format_value(fixed.phi),
            format_value(fixed.psi),
            format_value(fixed.eta),
            format_value(fixed.xi)
        ),
        format!("i0: {}", format_value(spec.i0)),
    ];
    if let Some(source) = spec.source {
        lines.push(format!("mean_photon_number: {}", format_value(source.mean_photon_number)));
        lines.push(format!("trials_per_point: {}", source.trials));
    }
    lines.push(match result.provenance.seed {
        Some(seed) => format!("seed: {seed} (point i uses seed + i)"),
        None => "seed: none".to_string(),
    });
    lines.push(format!("code_version: {}", result.provenance.code_version));
    for note in &result.provenance.notes {
        lines.push(format!("note: {note}"));
    }
    lines
        .into_iter()
        .map(|l| format!("# {l}"))
        .chain(std::iter::once(format!("{TIMESTAMP_PREFIX} {}", result.provenance.timestamp)))
        .collect()
}

pub fn write_sweep_csv<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    for line in metadata_lines(result) {
        writeln!(out, "{line}")?;
    }
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    writer.write_record([result.spec.swept.name(), "value", "std_error"])?;
    for row in &result.rows {
        writer.write_record([
            format_value(row.swept_value),
            format_value(row.value),
            row.std_error.map(format_value).unwrap_or_default(),
        ])?;
    }
    writer.flush()
}

pub fn sweep_csv_string(result: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_sweep_csv(result, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_sweep_csv(result, &mut out).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

/// Contents of a sweep CSV read back from text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSweep {
    pub swept_name: String,
    /// Metadata lines without the leading `#`.
    pub metadata: Vec<String>,
    pub rows: Vec<SweepRow>,
}

fn csv_error(location: String, value: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::config(location, value, reason)
}

fn parse_number(field: &str, location: &str) -> Result<f64> {
    let x: f64 = field
        .trim()
        .parse()
        .map_err(|_| csv_error(location.to_string(), field, "not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(csv_error(location.to_string(), field, "not finite"))
    }
}

/// Parses the sweep CSV layout written by [`write_sweep_csv`].
pub fn read_sweep_csv(text: &str) -> Result<ParsedSweep> {
    let metadata = text
        .lines()
        .take_while(|l| l.starts_with('#'))
        .map(|l| l[1..].trim().to_string())
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| csv_error("header".into(), "", e.to_string()))?
        .clone();
    if header.len() != 3 || &header[1] != "value" || &header[2] != "std_error" {
        return Err(csv_error(
            "header".into(),
            header.iter().collect::<Vec<_>>().join(","),
            "expected `<swept>,value,std_error`",
        ));
    }
    let swept_name = header[0].to_string();
    if swept_name.is_empty() {
        return Err(csv_error("header".into(), "", "missing swept parameter name"));
    }

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let location = format!("row {}", i + 1);
        let record = record.map_err(|e| csv_error(location.clone(), "", e.to_string()))?;
        if record.len() != 3 {
            return Err(csv_error(location, record.iter().collect::<Vec<_>>().join(","), "expected 3 fields"));
        }
        let std_error = if record[2].trim().is_empty() {
            None
        } else {
            Some(parse_number(&record[2], &location)?)
        };
        rows.push(SweepRow {
            swept_value: parse_number(&record[0], &location)?,
            value: parse_number(&record[1], &location)?,
            std_error,
        });
    }
    Ok(ParsedSweep {
        swept_name,
        metadata,
        rows,
    })
}

/// Output file name for curve `index` (0-based) of `count`.
pub fn curve_path(base: &Path, index: usize, count: usize, extension: &str) -> std::path::PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_string());
    let name = if count <= 1 {
        format!("{stem}.{extension}")
    } else {
        format!("{stem}_{}.{extension}", index + 1)
    };
    base.with_file_name(name)
}

/// Short description of a curve for console output.
pub fn describe(result: &SweepResult) -> String {
    format!(
        "{} vs {} over [{}, {}], {}",
        result.spec.observable,
        result.spec.swept,
        format_pi_multiple(result.spec.range.start),
        format_pi_multiple(result.spec.range.end),
        result.spec.fixed_parameter_label()
    )
}
