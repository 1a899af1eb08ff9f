//! CSV and JSON output.
//!
//! CSV is comma separated with a header row and LF line endings. Exact
//! values are written as `p/2^e`, ratios as decimals with
//! [`DECIMAL_DIGITS`] significant digits.

use std::io::Write;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::dyadic::{decimal, Dyadic};
use crate::error::{Error, Result};
use crate::optimizer::ValueTable;
use crate::poly::NapkinPolynomial;
use crate::recurrence::{e_s_table, e_stilde_table, e_w};
use crate::strategy::StrategyId;

pub const DECIMAL_DIGITS: usize = 10;

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// `x / n` as a decimal.
pub fn ratio_decimal(x: &Dyadic, n: usize) -> String {
    decimal(x.to_f64() / n as f64, DECIMAL_DIGITS)
}

/// `p/2^e` followed by the decimal, for human-facing text.
pub fn exact_with_decimal(x: &Dyadic) -> String {
    format!("{x} ({})", decimal(x.to_f64(), DECIMAL_DIGITS))
}

#[derive(Debug, Clone, Serialize)]
pub struct DistributionRecord {
    pub n: usize,
    pub strategy: String,
    pub coeffs: Vec<serde_json::Number>,
}

impl DistributionRecord {
    pub fn new(strategy: &str, poly: &NapkinPolynomial) -> Self {
        let coeffs = poly
            .coeffs
            .iter()
            .map(|c| c.to_string().parse().expect("decimal integers are valid JSON numbers"))
            .collect();
        DistributionRecord { n: poly.n, strategy: strategy.to_string(), coeffs }
    }
}

pub fn distribution_json(strategy: StrategyId, poly: &NapkinPolynomial) -> String {
    serde_json::to_string(&DistributionRecord::new(strategy.name(), poly)).expect("plain data serializes")
}

/// Rows `(n, k, count)`.
pub fn write_distribution_csv<W: Write>(out: W, polys: &[NapkinPolynomial]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["n", "k", "count"]).map_err(io_err)?;
    for p in polys {
        for (k, c) in p.coeffs.iter().enumerate() {
            w.write_record([p.n.to_string(), k.to_string(), c.to_string()]).map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

/// Rows `(n, family, k, coeff)`.
pub fn write_polynomial_csv<W: Write>(out: W, polys: &[(&str, NapkinPolynomial)]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["n", "family", "k", "coeff"]).map_err(io_err)?;
    for (family, p) in polys {
        for (k, c) in p.coeffs.iter().enumerate() {
            w.write_record([p.n.to_string(), family.to_string(), k.to_string(), c.to_string()])
                .map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

/// Exact expectations of every strategy, and the optimum, at one table size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureRow {
    pub n: usize,
    pub e_w: Dyadic,
    pub e_s: Dyadic,
    pub e_stilde: Dyadic,
    pub v_opt: Dyadic,
}

pub const DEFAULT_FIGURE_RANGE: RangeInclusive<usize> = 3..=100;

pub fn figure_rows(range: RangeInclusive<usize>) -> Result<Vec<FigureRow>> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!("bad table-size range {lo}..{hi}")));
    }
    let e_s = e_s_table(hi);
    let e_stilde = e_stilde_table(hi)?;
    let opt = ValueTable::<Dyadic>::build(hi - 1);
    Ok(range
        .map(|n| FigureRow {
            n,
            e_w: e_w(n),
            e_s: e_s[n].clone(),
            e_stilde: e_stilde[n].clone(),
            v_opt: opt.circular(n).expect("built").clone(),
        })
        .collect())
}

/// Columns `n, e_w, e_s, e_stilde, e_w_over_n, e_s_over_n, e_stilde_over_n`.
pub fn write_figure1<W: Write>(out: W, rows: &[FigureRow]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["n", "e_w", "e_s", "e_stilde", "e_w_over_n", "e_s_over_n", "e_stilde_over_n"])
        .map_err(io_err)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.e_w.to_string(),
            r.e_s.to_string(),
            r.e_stilde.to_string(),
            ratio_decimal(&r.e_w, r.n),
            ratio_decimal(&r.e_s, r.n),
            ratio_decimal(&r.e_stilde, r.n),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Columns `n, e_w_over_n, e_s_over_n, e_stilde_over_n, v_opt_over_n`.
pub fn write_figure5<W: Write>(out: W, rows: &[FigureRow]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["n", "e_w_over_n", "e_s_over_n", "e_stilde_over_n", "v_opt_over_n"])
        .map_err(io_err)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            ratio_decimal(&r.e_w, r.n),
            ratio_decimal(&r.e_s, r.n),
            ratio_decimal(&r.e_stilde, r.n),
            ratio_decimal(&r.v_opt, r.n),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Columns `n, v_opt, e_stilde, e_s, e_w`.
pub fn write_optimal<W: Write>(out: W, rows: &[FigureRow]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["n", "v_opt", "e_stilde", "e_s", "e_w"]).map_err(io_err)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.v_opt.to_string(),
            r.e_stilde.to_string(),
            r.e_s.to_string(),
            r.e_w.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}
