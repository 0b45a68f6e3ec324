//! CSV ingestion and output, plus the bundled pollution/mortality fixture.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{DesignMatrix, Matrix};

/// The bundled McDonald–Schwing air pollution and mortality table: 60 rows,
/// 15 predictors and `Mortality`.
pub const FIXTURE_CSV: &str = include_str!("../data/pollution.csv");

/// SHA-256 of [`FIXTURE_CSV`].
pub const FIXTURE_SHA256: &str = "7d0f205f09bc86ba22bad37751304ec361c97c36aa84cf7ca2d38d2fca286324";

pub const FIXTURE_RESPONSE: &str = "Mortality";

/// Response plus named numeric predictors, in file row order.
#[derive(Debug, Clone, Serialize)]
pub struct Dataset {
    pub response_name: String,
    pub predictor_names: Vec<String>,
    pub response: Vec<f64>,
    #[serde(skip)]
    pub predictors: Matrix,
    pub provenance: String,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.response.len()
    }

    pub fn p(&self) -> usize {
        self.predictor_names.len()
    }

    /// Raw (uncentered, unscaled) design.
    pub fn design(&self) -> Result<DesignMatrix> {
        DesignMatrix::new(self.predictors.clone(), self.predictor_names.clone())
    }

    pub fn predictor(&self, name: &str) -> Option<&[f64]> {
        self.predictor_names
            .iter()
            .position(|n| n == name)
            .map(|j| self.predictors.col(j))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Fails with `ChecksumMismatch` if the embedded fixture was edited.
pub fn verify_fixture() -> Result<()> {
    let found = sha256_hex(FIXTURE_CSV.as_bytes());
    if found != FIXTURE_SHA256 {
        return Err(Error::ChecksumMismatch {
            expected: FIXTURE_SHA256.into(),
            found,
        });
    }
    Ok(())
}

/// The bundled fixture with `Mortality` as response and the other 15
/// columns, in file order, as predictors.
pub fn fixture() -> Result<Dataset> {
    verify_fixture()?;
    let mut d = ingest_reader(FIXTURE_CSV.as_bytes(), FIXTURE_RESPONSE, None::<&[&str]>)?;
    d.provenance =
        "McDonald & Schwing (1973) air pollution and mortality, 60 SMSAs (bundled)".into();
    Ok(d)
}

/// Reads `path`, taking `response` and the listed `predictors` (all other
/// columns in file order when `None`).
pub fn ingest_csv<S: AsRef<str>>(
    path: &Path,
    response: &str,
    predictors: Option<&[S]>,
) -> Result<Dataset> {
    let mut d = ingest_reader(File::open(path)?, response, predictors)?;
    d.provenance = path.display().to_string();
    Ok(d)
}

/// As [`ingest_csv`] for any reader. Cell errors carry 1-based coordinates:
/// `row` counts data rows (the header is not row 1) and `col` counts file
/// columns.
pub fn ingest_reader<R: Read, S: AsRef<str>>(
    reader: R,
    response: &str,
    predictors: Option<&[S]>,
) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if headers.iter().all(|h| h.is_empty()) {
        return Err(Error::EmptyData("no header row".into()));
    }
    let find = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            Error::MissingColumn(format!("{name:?} (available: {})", headers.join(", ")))
        })
    };
    let resp_idx = find(response)?;
    let pred_idx: Vec<usize> = match predictors {
        Some(names) => names
            .iter()
            .map(|n| find(n.as_ref()))
            .collect::<Result<_>>()?,
        None => (0..headers.len()).filter(|&j| j != resp_idx).collect(),
    };
    if pred_idx.is_empty() {
        return Err(Error::EmptyData("no predictor columns".into()));
    }

    let mut response_vals = Vec::new();
    let mut cols = vec![Vec::new(); pred_idx.len()];
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        let cell = |j: usize| parse_cell(record.get(j).unwrap_or(""), r + 1, j + 1);
        response_vals.push(cell(resp_idx)?);
        for (c, &j) in cols.iter_mut().zip(&pred_idx) {
            c.push(cell(j)?);
        }
    }
    if response_vals.is_empty() {
        return Err(Error::EmptyData("header row but no data rows".into()));
    }
    Ok(Dataset {
        response_name: response.to_string(),
        predictor_names: pred_idx.iter().map(|&j| headers[j].clone()).collect(),
        response: response_vals,
        predictors: Matrix::from_columns(&cols),
        provenance: String::new(),
    })
}

fn parse_cell(s: &str, row: usize, col: usize) -> Result<f64> {
    if s.is_empty() || s.eq_ignore_ascii_case("na") {
        return Err(Error::MissingValue { row, col });
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::NonNumericCell {
            row,
            col,
            value: s.to_string(),
        }),
    }
}

/// Writes predictors then the response, with shortest round-trip float
/// formatting so that re-reading gives identical values.
pub fn write_csv<W: Write>(d: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = d.predictor_names.clone();
    header.push(d.response_name.clone());
    w.write_record(&header)?;
    for i in 0..d.n() {
        let mut row: Vec<String> = (0..d.p())
            .map(|j| d.predictors[(i, j)].to_string())
            .collect();
        row.push(d.response[i].to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const NONE: Option<&[&str]> = None;

    #[test]
    fn fixture_checksum_and_shape() {
        verify_fixture().unwrap();
        let d = fixture().unwrap();
        assert_eq!((d.n(), d.p()), (60, 15));
        assert_eq!(d.response_name, "Mortality");
        assert_eq!(d.predictor_names[13], "SO2");
        assert_eq!(d.response[0], 921.87);
    }

    #[test]
    fn selects_named_predictors_in_requested_order() {
        let csv = "a,b,y,c\n1,2,3,4\n5,6,7,8\n";
        let d = ingest_reader(csv.as_bytes(), "y", Some(&["c", "a"])).unwrap();
        assert_eq!(d.predictor_names, vec!["c", "a"]);
        assert_eq!(d.predictor("a").unwrap(), &[1.0, 5.0]);
        assert_eq!(d.response, vec![3.0, 7.0]);
    }

    #[test]
    fn missing_column() {
        let r = ingest_reader("a,y\n1,2\n".as_bytes(), "mort", NONE);
        assert!(matches!(r, Err(Error::MissingColumn(_))));
    }

    #[test]
    fn blank_cell_reports_one_based_position() {
        let r = ingest_reader("a,b,y\n1,2,3\n4,,6\n".as_bytes(), "y", NONE);
        assert!(
            matches!(r, Err(Error::MissingValue { row: 2, col: 2 })),
            "{r:?}"
        );
    }

    #[test]
    fn non_numeric_cell() {
        let r = ingest_reader("a,y\n1,2\nx7,3\n".as_bytes(), "y", NONE);
        assert!(
            matches!(r, Err(Error::NonNumericCell { row: 2, col: 1, .. })),
            "{r:?}"
        );
    }

    #[test]
    fn unreferenced_columns_may_be_non_numeric() {
        let d = ingest_reader("city,a,y\nX,1,2\nY,3,4\n".as_bytes(), "y", Some(&["a"])).unwrap();
        assert_eq!(d.p(), 1);
    }

    #[test]
    fn header_only_is_empty() {
        let r = ingest_reader("a,y\n".as_bytes(), "y", NONE);
        assert!(matches!(r, Err(Error::EmptyData(_))));
        assert!(matches!(
            ingest_reader("".as_bytes(), "y", NONE),
            Err(Error::EmptyData(_))
        ));
    }

    #[test]
    fn round_trip_is_value_identical() {
        let d = fixture().unwrap();
        let mut buf = Vec::new();
        write_csv(&d, &mut buf).unwrap();
        let e = ingest_reader(buf.as_slice(), "Mortality", NONE).unwrap();
        assert_eq!(d.predictor_names, e.predictor_names);
        assert_eq!(d.response, e.response);
        assert_eq!(d.predictors.as_slice(), e.predictors.as_slice());
    }
}
