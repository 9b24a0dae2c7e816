//! CSV form of a torsion sequence. Orders are exact decimal strings; floats
//! use the shortest representation that parses back to the same value.

use std::io::{Read, Write};

use num_bigint::BigInt;
use torsion_core::TorsionSequencePoint;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceRow {
    pub n: usize,
    /// `[Λ : Λ_N]`, equal to `N` for one variable.
    pub index: usize,
    pub torsion_orders: Vec<BigInt>,
    pub log_t: f64,
    pub log_t_over_n: f64,
    pub max_log_regulator_over_n: f64,
    /// `log T/N + τ`, absent when `τ` is not defined.
    pub predicted_minus_tau2: Option<f64>,
}

impl SequenceRow {
    pub fn from_point(p: &TorsionSequencePoint, tau2: Option<f64>) -> Self {
        SequenceRow {
            n: p.n,
            index: p.n,
            torsion_orders: p.torsion_orders(),
            log_t: p.log_t,
            log_t_over_n: p.log_t_over_index,
            max_log_regulator_over_n: p.max_log_regulator_over_index(),
            predicted_minus_tau2: tau2.map(|t| p.log_t_over_index + t),
        }
    }
}

pub fn write_csv<W: Write>(rows: &[SequenceRow], out: W) -> CliResult<()> {
    let degrees = rows.first().map_or(0, |r| r.torsion_orders.len());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["N".to_string(), "index".to_string()];
    header.extend((0..degrees).map(|i| format!("torsion_H{i}")));
    header.extend(
        ["log_T", "log_T_over_N", "max_log_regulator_over_N", "predicted_minus_tau2"].map(String::from),
    );
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.n.to_string(), r.index.to_string()];
        rec.extend(r.torsion_orders.iter().map(BigInt::to_string));
        rec.push(r.log_t.to_string());
        rec.push(r.log_t_over_n.to_string());
        rec.push(r.max_log_regulator_over_n.to_string());
        rec.push(r.predicted_minus_tau2.map_or_else(String::new, |x| x.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> CliResult<Vec<SequenceRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.len() < 6 {
        return Err(CliError::Input(format!("expected at least 6 columns, found {}", header.len())));
    }
    let degrees = header.len() - 6;
    let bad = |line: usize, col: &str| CliError::Input(format!("row {line}: bad value in column {col}"));
    let mut rows = Vec::new();
    for (line, rec) in rd.records().enumerate() {
        let rec = rec?;
        let col = |k: usize| rec.get(k).unwrap_or("");
        let float = |k: usize| col(k).parse::<f64>().map_err(|_| bad(line + 1, &header[k]));
        let n = col(0).parse().map_err(|_| bad(line + 1, "N"))?;
        let index = col(1).parse().map_err(|_| bad(line + 1, "index"))?;
        let torsion_orders = (0..degrees)
            .map(|i| col(2 + i).parse::<BigInt>().map_err(|_| bad(line + 1, &header[2 + i])))
            .collect::<CliResult<Vec<_>>>()?;
        let base = 2 + degrees;
        let predicted_minus_tau2 = if col(base + 3).is_empty() { None } else { Some(float(base + 3)?) };
        rows.push(SequenceRow {
            n,
            index,
            torsion_orders,
            log_t: float(base)?,
            log_t_over_n: float(base + 1)?,
            max_log_regulator_over_n: float(base + 2)?,
            predicted_minus_tau2,
        });
    }
    Ok(rows)
}
