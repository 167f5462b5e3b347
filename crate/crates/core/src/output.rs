//! Deterministic table serialization.
//!
//! CSV: optional `#`-prefixed comment lines, a header row, LF line endings,
//! floats printed in scientific notation with 17 significant digits (or the
//! precision override). JSON mirrors the table as an array of row objects;
//! non-finite values become `null` there and `inf`/`-inf`/`nan` in CSV.

use std::io::{self, Write};

use crate::config::OutputFormat;
use crate::scattering::SweepRow;

pub const DEFAULT_SIG_DIGITS: usize = 17;

/// Scientific-notation float with a fixed number of significant digits.
pub fn format_float(x: f64, sig_digits: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format!("{:.*e}", sig_digits.saturating_sub(1), x)
}

/// A rectangular table of floats with named columns and CSV comment lines.
#[derive(Debug, Clone)]
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn from_sweep(comments: Vec<String>, rows: &[SweepRow]) -> Self {
        Table {
            comments,
            columns: vec!["k", "E_k", "Re_V", "Im_V", "T", "R", "T_plus_R"],
            rows: rows
                .iter()
                .map(|r| vec![r.k, r.energy, r.re_v, r.im_v, r.big_t, r.big_r, r.sum])
                .collect(),
        }
    }

    pub fn write<W: Write>(
        &self,
        w: &mut W,
        format: OutputFormat,
        sig_digits: usize,
    ) -> io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(w, sig_digits),
            OutputFormat::Json => self.write_json(w, sig_digits),
        }
    }

    fn write_csv<W: Write>(&self, w: &mut W, sig_digits: usize) -> io::Result<()> {
        for c in &self.comments {
            write!(w, "# {c}\n")?;
        }
        write!(w, "{}\n", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_float(x, sig_digits)).collect();
            write!(w, "{}\n", cells.join(","))?;
        }
        Ok(())
    }

    fn write_json<W: Write>(&self, w: &mut W, sig_digits: usize) -> io::Result<()> {
        write!(w, "[\n")?;
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(name, &x)| {
                    let value = if x.is_finite() {
                        format_float(x, sig_digits)
                    } else {
                        "null".to_string()
                    };
                    format!("\"{name}\":{value}")
                })
                .collect();
            let comma = if i + 1 < self.rows.len() { "," } else { "" };
            write!(w, "{{{}}}{comma}\n", fields.join(","))?;
        }
        write!(w, "]\n")
    }
}

/// Significant digits from the environment override, clamped to `[2, 17]`.
pub fn sig_digits_from_env() -> usize {
    match std::env::var("CRW_SCATTER_PRECISION") {
        Ok(s) => s
            .parse::<usize>()
            .map(|n| n.clamp(2, DEFAULT_SIG_DIGITS))
            .unwrap_or(DEFAULT_SIG_DIGITS),
        Err(_) => DEFAULT_SIG_DIGITS,
    }
}
