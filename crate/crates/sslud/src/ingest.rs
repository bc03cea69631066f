//! Data ingestion for the stock-index workflow: delimited price or return
//! series, percentage changes, and location shifts.

use std::path::Path;

use thiserror::Error;

use crate::estimation::{EstimationError, Sample};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("price series must be positive; found {value} at line {line}")]
    NonPositivePrice { line: usize, value: f64 },
    #[error("price series needs at least 2 observations, got {0}")]
    TooShort(usize),
    #[error("line {line}: cannot parse {field:?} as a number")]
    Parse { line: usize, field: String },
    #[error("input holds no data rows")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Sample(#[from] EstimationError),
}

/// Whether an input file holds raw prices or precomputed returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Prices,
    Returns,
}

/// A positive price series, optionally dated.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    dates: Option<Vec<String>>,
    prices: Vec<f64>,
}

impl PriceSeries {
    pub fn new(dates: Option<Vec<String>>, prices: Vec<f64>) -> Result<Self, IngestError> {
        if prices.len() < 2 {
            return Err(IngestError::TooShort(prices.len()));
        }
        for (i, &p) in prices.iter().enumerate() {
            if !p.is_finite() || p <= 0.0 {
                return Err(IngestError::NonPositivePrice { line: i + 1, value: p });
            }
        }
        if let Some(d) = &dates {
            assert_eq!(d.len(), prices.len(), "dates must align with prices");
        }
        Ok(Self { dates, prices })
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn dates(&self) -> Option<&[String]> {
        self.dates.as_deref()
    }

    /// Daily percentage changes `(x_t - x_{t-1}) / x_{t-1} * 100`, one per
    /// consecutive pair.
    pub fn pct_change(&self) -> Sample {
        let values: Vec<f64> = self
            .prices
            .windows(2)
            .map(|w| (w[1] - w[0]) / w[0] * 100.0)
            .collect();
        Sample::new(values).expect("series has >= 2 positive prices")
    }
}

/// Elementwise shift: `{x_i - c}`.
pub fn shift(data: &Sample, c: f64) -> Sample {
    data.shifted(c)
}

/// Parse a delimited series: one value per line, or `date<sep>value`.
/// Separators are tabs, commas, or semicolons; `#` starts a comment. A
/// non-numeric first row is treated as a header.
pub fn parse_series(text: &str) -> Result<(Option<Vec<String>>, Vec<f64>), IngestError> {
    let mut dates = Vec::new();
    let mut values = Vec::new();
    let mut saw_row = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(['\t', ',', ';'])
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .collect();
        let (date, value_field) = match fields.as_slice() {
            [v] => (None, *v),
            [d, v, ..] => (Some(*d), *v),
            [] => continue,
        };
        match value_field.parse::<f64>() {
            Ok(v) => {
                saw_row = true;
                if let Some(d) = date {
                    dates.push(d.to_string());
                }
                values.push(v);
            }
            Err(_) if !saw_row => continue, // header row
            Err(_) => {
                return Err(IngestError::Parse { line: i + 1, field: value_field.to_string() })
            }
        }
    }
    if values.is_empty() {
        return Err(IngestError::Empty);
    }
    let dates = if dates.len() == values.len() { Some(dates) } else { None };
    Ok((dates, values))
}

/// Load a sample from `path`: prices run through [`PriceSeries::pct_change`],
/// returns are used directly; `shift_c` is subtracted elementwise at the end.
pub fn load_sample(path: &Path, kind: InputKind, shift_c: f64) -> Result<Sample, IngestError> {
    let text = std::fs::read_to_string(path)?;
    let (dates, values) = parse_series(&text)?;
    let sample = match kind {
        InputKind::Prices => PriceSeries::new(dates, values)?.pct_change(),
        InputKind::Returns => Sample::new(values)?,
    };
    Ok(if shift_c != 0.0 { shift(&sample, shift_c) } else { sample })
}
