//! Data model and CSV ingestion for right- and interval-censored survival data.
//!
//! Covariates are stored column-major: screening walks one feature at a time
//! across all subjects, so each feature is a contiguous slice.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// A right-censored sample: covariate matrix, observed times `Y = min(T, C)`,
/// and event indicators `status = I(T <= C)`.
///
/// Immutable after construction; safe to share read-only across workers.
#[derive(Debug, Clone)]
pub struct Dataset {
    n: usize,
    p: usize,
    /// Column-major, length `n * p`; column `j` is `covariates[j*n .. (j+1)*n]`.
    covariates: Vec<f64>,
    time: Vec<f64>,
    status: Vec<u8>,
    feature_names: Vec<String>,
}

impl Dataset {
    /// Build a dataset from column-major covariates, checking every invariant.
    pub fn new(
        covariates: Vec<f64>,
        time: Vec<f64>,
        status: Vec<u8>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        let n = time.len();
        let p = feature_names.len();
        if n < 2 {
            return Err(Error::InvalidDataset(format!("need n >= 2 rows, got {n}")));
        }
        if p < 1 {
            return Err(Error::InvalidDataset("need p >= 1 covariates".into()));
        }
        if status.len() != n {
            return Err(Error::InvalidDataset(format!(
                "status length {} != n {}",
                status.len(),
                n
            )));
        }
        if covariates.len() != n * p {
            return Err(Error::InvalidDataset(format!(
                "covariate storage {} != n*p {}",
                covariates.len(),
                n * p
            )));
        }
        let ds = Dataset {
            n,
            p,
            covariates,
            time,
            status,
            feature_names,
        };
        let violations = ds.validate();
        if let Some(v) = violations.first() {
            return Err(Error::InvalidDataset(v.to_string()));
        }
        Ok(ds)
    }

    /// Row-major convenience constructor (row `i` holds subject `i`'s covariates).
    pub fn from_rows(
        rows: &[Vec<f64>],
        time: Vec<f64>,
        status: Vec<u8>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        let n = rows.len();
        let p = feature_names.len();
        let mut cols = vec![0.0; n * p];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(Error::InvalidDataset(format!(
                    "row {i} has {} entries, expected {p}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                cols[j * n + i] = v;
            }
        }
        Dataset::new(cols, time, status, feature_names)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn time(&self) -> &[f64] {
        &self.time
    }

    pub fn status(&self) -> &[u8] {
        &self.status
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Feature column `j` (0-based) as a contiguous slice of length `n`.
    pub fn column(&self, j: usize) -> &[f64] {
        &self.covariates[j * self.n..(j + 1) * self.n]
    }

    /// Report every violated invariant with its row/column location.
    /// A valid dataset returns an empty list.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut any_event = false;
        for (i, (&t, &s)) in self.time.iter().zip(&self.status).enumerate() {
            if !t.is_finite() {
                out.push(Violation::NonFiniteTime { row: i });
            } else if t < 0.0 {
                out.push(Violation::NegativeTime { row: i, value: t });
            }
            if s > 1 {
                out.push(Violation::InvalidStatus { row: i, value: s });
            }
            any_event |= s == 1;
        }
        if !any_event {
            out.push(Violation::NoEvents);
        }
        for j in 0..self.p {
            for (i, &v) in self.column(j).iter().enumerate() {
                if !v.is_finite() {
                    out.push(Violation::NonFiniteCovariate {
                        row: i,
                        column: self.feature_names[j].clone(),
                    });
                }
            }
        }
        out
    }

    /// Serialize to the ingestion CSV format. Values are written with 17
    /// significant digits so a round trip reproduces every f64 bit-exactly.
    pub fn write_csv<P: AsRef<Path>>(&self, path: P, time_col: &str, status_col: &str) -> Result<()> {
        let mut w = csv::Writer::from_path(path.as_ref())?;
        let mut header = vec![time_col.to_string(), status_col.to_string()];
        header.extend(self.feature_names.iter().cloned());
        w.write_record(&header)?;
        let mut buf = String::new();
        for i in 0..self.n {
            let mut record = Vec::with_capacity(2 + self.p);
            record.push(fmt_f64(&mut buf, self.time[i]));
            record.push(self.status[i].to_string());
            for j in 0..self.p {
                record.push(fmt_f64(&mut buf, self.column(j)[i]));
            }
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn fmt_f64(buf: &mut String, v: f64) -> String {
    buf.clear();
    write!(buf, "{v:.16e}").expect("formatting f64 cannot fail");
    buf.clone()
}

/// A single invariant violation found by [`Dataset::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NegativeTime { row: usize, value: f64 },
    NonFiniteTime { row: usize },
    InvalidStatus { row: usize, value: u8 },
    NonFiniteCovariate { row: usize, column: String },
    NoEvents,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NegativeTime { row, value } => {
                write!(f, "negative time {value} at row {row}")
            }
            Violation::NonFiniteTime { row } => write!(f, "non-finite time at row {row}"),
            Violation::InvalidStatus { row, value } => {
                write!(f, "invalid status value {value} at row {row}")
            }
            Violation::NonFiniteCovariate { row, column } => {
                write!(f, "non-finite covariate at row {row}, column '{column}'")
            }
            Violation::NoEvents => write!(f, "no observed events"),
        }
    }
}

/// An interval-censored sample: the event time of subject `i` is only known
/// to lie in `(left[i], right[i]]`, with `right[i] = +inf` encoding a
/// right-censored subject.
#[derive(Debug, Clone)]
pub struct IntervalDataset {
    n: usize,
    p: usize,
    covariates: Vec<f64>,
    left: Vec<f64>,
    right: Vec<f64>,
    feature_names: Vec<String>,
}

impl IntervalDataset {
    pub fn new(
        covariates: Vec<f64>,
        left: Vec<f64>,
        right: Vec<f64>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        let n = left.len();
        let p = feature_names.len();
        if n < 2 {
            return Err(Error::InvalidDataset(format!("need n >= 2 rows, got {n}")));
        }
        if right.len() != n {
            return Err(Error::InvalidDataset(format!(
                "right length {} != n {}",
                right.len(),
                n
            )));
        }
        if covariates.len() != n * p {
            return Err(Error::InvalidDataset(format!(
                "covariate storage {} != n*p {}",
                covariates.len(),
                n * p
            )));
        }
        let mut any_finite = false;
        for i in 0..n {
            if !left[i].is_finite() || left[i] < 0.0 {
                return Err(Error::InvalidDataset(format!(
                    "left endpoint at row {i} must be finite and >= 0"
                )));
            }
            if left[i] >= right[i] {
                return Err(Error::InvertedInterval {
                    row: i,
                    left: left[i],
                    right: right[i],
                });
            }
            any_finite |= right[i].is_finite();
        }
        if !any_finite {
            return Err(Error::NoFiniteIntervals);
        }
        for (k, &v) in covariates.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: k % n,
                    column: feature_names[k / n].clone(),
                });
            }
        }
        Ok(IntervalDataset {
            n,
            p,
            covariates,
            left,
            right,
            feature_names,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn left(&self) -> &[f64] {
        &self.left
    }

    pub fn right(&self) -> &[f64] {
        &self.right
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.covariates[j * self.n..(j + 1) * self.n]
    }

    pub fn write_csv<P: AsRef<Path>>(&self, path: P, left_col: &str, right_col: &str) -> Result<()> {
        let mut w = csv::Writer::from_path(path.as_ref())?;
        let mut header = vec![left_col.to_string(), right_col.to_string()];
        header.extend(self.feature_names.iter().cloned());
        w.write_record(&header)?;
        let mut buf = String::new();
        for i in 0..self.n {
            let mut record = Vec::with_capacity(2 + self.p);
            record.push(fmt_f64(&mut buf, self.left[i]));
            if self.right[i].is_finite() {
                record.push(fmt_f64(&mut buf, self.right[i]));
            } else {
                record.push("inf".to_string());
            }
            for j in 0..self.p {
                record.push(fmt_f64(&mut buf, self.column(j)[i]));
            }
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

struct ParsedCsv {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn read_csv(path: &Path) -> Result<ParsedCsv> {
    let file = std::fs::File::open(path).map_err(|e| Error::MissingFile {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let headers: Vec<String> = reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        rows.push(record.iter().map(|c| c.trim().to_string()).collect());
    }
    Ok(ParsedCsv { headers, rows })
}

fn find_column(headers: &[String], name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::MissingColumn(name.to_string()))
}

fn parse_cell(value: &str, row: usize, column: &str) -> Result<f64> {
    let v: f64 = value.parse().map_err(|_| Error::NonNumericCell {
        row,
        column: column.to_string(),
        value: value.to_string(),
    })?;
    if !v.is_finite() {
        return Err(Error::NonFinite {
            row,
            column: column.to_string(),
        });
    }
    Ok(v)
}

/// Load a right-censored dataset from CSV. `time_col` and `status_col` name
/// the observed-time and event-indicator columns; every other column is a
/// covariate, in file order.
pub fn load_right_censored_csv<P: AsRef<Path>>(
    path: P,
    time_col: &str,
    status_col: &str,
) -> Result<Dataset> {
    let parsed = read_csv(path.as_ref())?;
    let t_idx = find_column(&parsed.headers, time_col)?;
    let s_idx = find_column(&parsed.headers, status_col)?;
    let feat_idx: Vec<usize> = (0..parsed.headers.len())
        .filter(|&k| k != t_idx && k != s_idx)
        .collect();
    let feature_names: Vec<String> = feat_idx.iter().map(|&k| parsed.headers[k].clone()).collect();

    let n = parsed.rows.len();
    let p = feat_idx.len();
    let mut time = Vec::with_capacity(n);
    let mut status = Vec::with_capacity(n);
    let mut covariates = vec![0.0; n * p];
    for (i, row) in parsed.rows.iter().enumerate() {
        if row.len() != parsed.headers.len() {
            return Err(Error::InvalidDataset(format!(
                "row {i} has {} cells, header has {}",
                row.len(),
                parsed.headers.len()
            )));
        }
        let t = parse_cell(&row[t_idx], i, time_col)?;
        if t < 0.0 {
            return Err(Error::NegativeTime { row: i, value: t });
        }
        time.push(t);
        status.push(match row[s_idx].as_str() {
            "0" => 0u8,
            "1" => 1u8,
            other => {
                return Err(Error::InvalidStatus {
                    row: i,
                    value: other.to_string(),
                })
            }
        });
        for (jj, &k) in feat_idx.iter().enumerate() {
            covariates[jj * n + i] = parse_cell(&row[k], i, &parsed.headers[k])?;
        }
    }
    if !status.contains(&1) {
        return Err(Error::NoEvents);
    }
    Dataset::new(covariates, time, status, feature_names)
}

/// Load an interval-censored dataset from CSV. An empty cell or a
/// case-insensitive `inf` in the right column encodes a right-censored
/// subject (`right = +inf`).
pub fn load_interval_censored_csv<P: AsRef<Path>>(
    path: P,
    left_col: &str,
    right_col: &str,
) -> Result<IntervalDataset> {
    let parsed = read_csv(path.as_ref())?;
    let l_idx = find_column(&parsed.headers, left_col)?;
    let r_idx = find_column(&parsed.headers, right_col)?;
    let feat_idx: Vec<usize> = (0..parsed.headers.len())
        .filter(|&k| k != l_idx && k != r_idx)
        .collect();
    let feature_names: Vec<String> = feat_idx.iter().map(|&k| parsed.headers[k].clone()).collect();

    let n = parsed.rows.len();
    let p = feat_idx.len();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut covariates = vec![0.0; n * p];
    for (i, row) in parsed.rows.iter().enumerate() {
        if row.len() != parsed.headers.len() {
            return Err(Error::InvalidDataset(format!(
                "row {i} has {} cells, header has {}",
                row.len(),
                parsed.headers.len()
            )));
        }
        left.push(parse_cell(&row[l_idx], i, left_col)?);
        let r_raw = row[r_idx].as_str();
        if r_raw.is_empty() || r_raw.eq_ignore_ascii_case("inf") {
            right.push(f64::INFINITY);
        } else {
            right.push(parse_cell(r_raw, i, right_col)?);
        }
        for (jj, &k) in feat_idx.iter().enumerate() {
            covariates[jj * n + i] = parse_cell(&row[k], i, &parsed.headers[k])?;
        }
    }
    IntervalDataset::new(covariates, left, right, feature_names)
}
