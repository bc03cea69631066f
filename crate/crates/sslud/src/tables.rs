//! Reference tables and curves (median table, summary-measure curves,
//! Shannon entropy curve) plus the delimited-table formatting shared by the
//! CLI.

use std::io::{self, Write};

use crate::dist::SsludParams;

/// Output field separator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delim {
    Tab,
    Comma,
}

impl Delim {
    pub fn as_char(&self) -> char {
        match self {
            Delim::Tab => '\t',
            Delim::Comma => ',',
        }
    }
}

/// Format with `sig` significant digits, positional where compact and
/// scientific otherwise (printf `%g` style).
pub fn format_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= sig as i32 {
        format!("{:.*e}", sig - 1, x)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

/// Seven significant digits, the table convention used throughout.
pub fn fmt7(x: f64) -> String {
    format_sig(x, 7)
}

/// Write a header row plus data rows separated by `delim`.
pub fn write_table<W: Write + ?Sized>(
    out: &mut W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
    delim: Delim,
) -> io::Result<()> {
    let sep = delim.as_char();
    writeln!(out, "{}", header.join(&sep.to_string()))?;
    for row in rows {
        writeln!(out, "{}", row.join(&sep.to_string()))?;
    }
    Ok(())
}

/// Medians of SSLUD(mu) for mu = 0.25, 0.5, ..., 1.5.
pub fn median_table() -> Vec<(f64, f64)> {
    [0.25, 0.5, 0.75, 1.0, 1.25, 1.5]
        .iter()
        .map(|&mu| (mu, SsludParams::new(mu).unwrap().median()))
        .collect()
}

/// One row of the summary-measure curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuresRow {
    pub mu: f64,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

/// Mean, variance, skewness, kurtosis over mu in [-10, 10] excluding zero,
/// in steps of 0.05. The grid is symmetric about zero by construction.
pub fn measures_curve() -> Vec<MeasuresRow> {
    (-200..=200)
        .filter(|&i| i != 0)
        .map(|i| {
            let mu = i as f64 * 0.05;
            let m = SsludParams::new(mu).unwrap().summary_measures();
            MeasuresRow {
                mu,
                mean: m.mean,
                variance: m.variance,
                skewness: m.skewness,
                kurtosis: m.kurtosis,
            }
        })
        .collect()
}

/// Shannon entropy over mu in (0, 30] in steps of 0.1.
pub fn entropy_curve() -> Vec<(f64, f64)> {
    (1..=300)
        .map(|i| {
            let mu = i as f64 * 0.1;
            (mu, SsludParams::new(mu).unwrap().shannon_entropy())
        })
        .collect()
}
