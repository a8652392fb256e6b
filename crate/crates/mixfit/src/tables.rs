//! CSV formats: the binned tabulation schema (`bin_lower,bin_upper,returns,total_agi`),
//! ccdf points (`x,ccdf`) and normalized overlays (`x_normalized,ccdf,label`).

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use log::warn;
use mixfit_core::{BinnedSample, DroppedRow, TableRow};

use crate::error::{Error, Result};

pub const BINNED_HEADER: [&str; 4] = ["bin_lower", "bin_upper", "returns", "total_agi"];

/// A validated tabulation plus what ingestion had to say about it.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub sample: BinnedSample,
    /// Rows below the $1 floor, in file order.
    pub dropped: Vec<DroppedRow>,
    /// Bins whose mean amount falls outside their bracket.
    pub inconsistent_means: Vec<usize>,
}

fn parse_f64(origin: &str, line: usize, field: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::Row {
        origin: origin.to_string(),
        line,
        reason: format!("{field} `{value}` is not a number"),
    })
}

fn optional_f64(origin: &str, line: usize, field: &str, value: &str) -> Result<Option<f64>> {
    if value.is_empty() {
        Ok(None)
    } else {
        parse_f64(origin, line, field, value).map(Some)
    }
}

/// Parse a tabulation from `reader`. `origin` names the source in errors.
pub fn read_binned<R: Read>(reader: R, origin: &str, label: &str) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let csv_err = |source| Error::Csv {
        origin: origin.to_string(),
        source,
    };
    let header = rdr.headers().map_err(csv_err)?.clone();
    if header.iter().ne(BINNED_HEADER) {
        return Err(Error::Header {
            origin: origin.to_string(),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let lower = parse_f64(origin, line, "bin_lower", &record[0])?;
        let upper = optional_f64(origin, line, "bin_upper", &record[1])?;
        let returns = record[2].parse::<i64>().map_err(|_| Error::Row {
            origin: origin.to_string(),
            line,
            reason: format!("returns `{}` is not an integer", &record[2]),
        })?;
        let total = optional_f64(origin, line, "total_agi", &record[3])?;
        rows.push(TableRow {
            line,
            lower,
            upper,
            returns,
            total,
        });
    }
    if rows.is_empty() {
        return Err(Error::Invalid(format!("{origin}: no data rows")));
    }

    let (sample, dropped) = BinnedSample::from_rows(&rows, label).map_err(|e| Error::core(origin, e))?;
    for d in &dropped {
        warn!(
            "{origin}: line {}: dropped bracket starting at {} ({} returns) below the $1 floor",
            d.line, d.lower, d.returns
        );
    }
    let inconsistent_means = sample.inconsistent_bin_means();
    for &i in &inconsistent_means {
        let b = &sample.bins()[i];
        warn!(
            "{origin}: bin starting at {} has mean amount {:?} outside its bracket",
            b.lower,
            b.mean_amount()
        );
    }
    Ok(Ingested {
        sample,
        dropped,
        inconsistent_means,
    })
}

/// Dataset label from a file path: its stem.
pub fn label_for(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "data".to_string())
}

pub fn read_binned_csv(path: &Path) -> Result<Ingested> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_binned(file, &path.display().to_string(), &label_for(path))
}

/// Serialize `s` in the ingestion schema. Numbers use the shortest
/// representation that parses back to the same `f64`.
pub fn binned_csv(s: &BinnedSample) -> String {
    let mut out = BINNED_HEADER.join(",");
    out.push('\n');
    for b in s.bins() {
        let upper = b.upper.map(|u| u.to_string()).unwrap_or_default();
        let total = b.total_amount.map(|t| t.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", b.lower, upper, b.count, total);
    }
    out
}

pub fn ccdf_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,ccdf\n");
    for (x, p) in points {
        let _ = writeln!(out, "{x},{p}");
    }
    out
}

pub fn overlay_csv(rows: &[(f64, f64, String)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |source| Error::Csv {
        origin: "overlay".to_string(),
        source,
    };
    w.write_record(["x_normalized", "ccdf", "label"]).map_err(err)?;
    for (x, p, label) in rows {
        w.write_record([x.to_string(), p.to_string(), label.clone()]).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
