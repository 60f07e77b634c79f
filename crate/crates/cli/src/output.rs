//! Row serialisation for `approx`: aligned table, CSV and JSON lines.

use std::io::{self, Write};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rootsub::{decimal, ApproximantRow, Rational, Ratio};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Jsonl,
}

/// Exact `(num, den)` strings for a ratio; `1/0` is infinity, `0/0` undefined.
fn ratio_parts(r: &Ratio) -> (String, String) {
    match r {
        Ratio::Finite(q) => (q.numer().to_string(), q.denom().to_string()),
        Ratio::Infinity => ("1".into(), "0".into()),
        Ratio::Undefined => ("0".into(), "0".into()),
    }
}

#[derive(Serialize)]
struct JsonRatio {
    num: String,
    den: String,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    iter: usize,
    counts: Vec<String>,
    ratios: Vec<JsonRatio>,
    decimals: Vec<&'a str>,
    abs_errors: Vec<Option<String>>,
    stop: Option<String>,
}

/// Writes rows in one format. `columns` selects which ratio indices appear.
pub struct RowWriter<W: Write> {
    format: OutputFormat,
    columns: Vec<usize>,
    m: usize,
    csv: Option<csv::Writer<W>>,
    out: Option<W>,
    /// `λ` at two extra places, for the table's `|r - λ|` column.
    reference: Option<Rational>,
}

impl<W: Write> RowWriter<W> {
    pub fn new(
        out: W,
        format: OutputFormat,
        m: usize,
        columns: Vec<usize>,
        reference: Option<Rational>,
    ) -> io::Result<Self> {
        let mut writer = RowWriter { format, columns, m, csv: None, out: None, reference };
        match format {
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(writer.csv_header())?;
                writer.csv = Some(w);
            }
            OutputFormat::Table => {
                let mut out = out;
                writeln!(out, "{}", writer.table_header().join("  "))?;
                writer.out = Some(out);
            }
            OutputFormat::Jsonl => writer.out = Some(out),
        }
        Ok(writer)
    }

    fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["iter".to_string()];
        h.extend((0..self.m).map(|j| format!("n{j}")));
        for &j in &self.columns {
            h.push(format!("r{j}_num"));
            h.push(format!("r{j}_den"));
        }
        h.extend(self.columns.iter().map(|j| format!("r{j}_decimal")));
        h.extend(self.columns.iter().map(|j| format!("abs_err{j}")));
        h
    }

    fn table_header(&self) -> Vec<String> {
        let mut h = vec!["iter".to_string()];
        h.extend((0..self.m).map(|j| format!("n{j}")));
        h.extend(self.columns.iter().map(|j| format!("n{j}/n{}", j + 1)));
        h.extend(self.columns.iter().map(|j| format!("|r{j}^m-N|")));
        if self.reference.is_some() {
            h.extend(self.columns.iter().map(|j| format!("|r{j}-λ|")));
        }
        h
    }

    pub fn write_row(&mut self, row: &ApproximantRow) -> io::Result<()> {
        match self.format {
            OutputFormat::Csv => {
                let mut rec = vec![row.iter.to_string()];
                rec.extend(row.counts.as_slice().iter().map(BigUint::to_string));
                for &j in &self.columns {
                    let (num, den) = ratio_parts(&row.ratios[j]);
                    rec.push(num);
                    rec.push(den);
                }
                rec.extend(self.columns.iter().map(|&j| row.decimals[j].clone()));
                rec.extend(self.columns.iter().map(|&j| {
                    row.abs_errors[j].as_ref().map(ToString::to_string).unwrap_or_default()
                }));
                self.csv.as_mut().expect("csv writer").write_record(rec)?;
            }
            OutputFormat::Jsonl => {
                let json = JsonRow {
                    iter: row.iter,
                    counts: row.counts.as_slice().iter().map(BigUint::to_string).collect(),
                    ratios: self
                        .columns
                        .iter()
                        .map(|&j| {
                            let (num, den) = ratio_parts(&row.ratios[j]);
                            JsonRatio { num, den }
                        })
                        .collect(),
                    decimals: self.columns.iter().map(|&j| row.decimals[j].as_str()).collect(),
                    abs_errors: self
                        .columns
                        .iter()
                        .map(|&j| row.abs_errors[j].as_ref().map(ToString::to_string))
                        .collect(),
                    stop: row.stop.map(|s| s.to_string()),
                };
                let out = self.out.as_mut().expect("writer");
                serde_json::to_writer(&mut *out, &json)?;
                writeln!(out)?;
            }
            OutputFormat::Table => {
                let mut cells = vec![row.iter.to_string()];
                cells.extend(row.counts.as_slice().iter().map(BigUint::to_string));
                cells.extend(self.columns.iter().map(|&j| row.decimals[j].clone()));
                cells.extend(self.columns.iter().map(|&j| match &row.abs_errors[j] {
                    Some(e) => scientific(e, 3),
                    None => "-".into(),
                }));
                if let Some(reference) = &self.reference {
                    cells.extend(self.columns.iter().map(|&j| match row.ratios[j].finite() {
                        Some(r) => scientific(&(r - reference).abs(), 3),
                        None => "-".into(),
                    }));
                }
                writeln!(self.out.as_mut().expect("writer"), "{}", cells.join("  "))?;
            }
        }
        Ok(())
    }

    /// Table footer lines; ignored for machine formats.
    pub fn footer(&mut self, lines: &[String]) -> io::Result<()> {
        if self.format == OutputFormat::Table {
            let out = self.out.as_mut().expect("writer");
            for line in lines {
                writeln!(out, "# {line}")?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> io::Result<()> {
        if let Some(mut w) = self.csv {
            w.flush()?;
        }
        if let Some(mut out) = self.out {
            out.flush()?;
        }
        Ok(())
    }
}

/// `d.ddd…e±x` rendering of a nonnegative rational with `places` digits after
/// the point. Zero renders as `0`.
pub fn scientific(r: &Rational, places: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let ten = Rational::from_integer(BigInt::from(10));
    let mut exp = r.numer().to_string().len() as i64 - r.denom().to_string().len() as i64;
    let mantissa = |e: i64| {
        if e >= 0 {
            r / num_traits::pow(ten.clone(), e as usize)
        } else {
            r * num_traits::pow(ten.clone(), (-e) as usize)
        }
    };
    let mut m = mantissa(exp);
    if m < Rational::one() {
        exp -= 1;
        m = mantissa(exp);
    }
    let mut text = decimal(&m, places);
    // Rounding can carry 9.999 up to 10.000.
    if text.starts_with("10") {
        exp += 1;
        text = decimal(&mantissa(exp), places);
    }
    format!("{text}e{exp}")
}
