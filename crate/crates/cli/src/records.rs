//! Flat report rows shared by the CSV, JSON and text writers.

use std::fmt::Write as _;
use std::io::Write;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use spanbound::cutlemma::CutCondition;
use spanbound::factors::{FactorEntry, FactorTable};
use spanbound::hp::rational_to_fixed;
use spanbound::lp::BetaBounds;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRow {
    pub c: usize,
    pub d: usize,
    pub numerator: String,
    pub denominator: String,
    pub value: String,
    /// Canonical key of the minimising subgraph; empty when not enumerated.
    pub argmin: String,
}

impl FactorRow {
    pub fn new(c: usize, d: usize, e: &FactorEntry) -> Self {
        FactorRow {
            c,
            d,
            numerator: e.value.numer().to_string(),
            denominator: e.value.denom().to_string(),
            value: rational_to_fixed(&e.value, 6),
            argmin: e.argmin.clone().unwrap_or_default(),
        }
    }
}

/// Rows ordered by `d`, then `c`, which is the printed reading order.
pub fn factor_rows(table: &FactorTable) -> Vec<FactorRow> {
    let mut rows: Vec<FactorRow> = table
        .iter()
        .map(|((c, d), e)| FactorRow::new(c, d, e))
        .collect();
    rows.sort_by_key(|r| (r.d, r.c));
    rows
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionRow {
    pub c: usize,
    pub d: usize,
    pub maxu: usize,
    pub maxv: usize,
    pub u_partition: String,
    pub v_partition: String,
    pub bound: String,
    pub bound_6dp: String,
    pub margin: String,
    pub margin_6dp: String,
}

impl From<&CutCondition> for ConditionRow {
    fn from(k: &CutCondition) -> Self {
        ConditionRow {
            c: k.c,
            d: k.d,
            maxu: k.maxu,
            maxv: k.maxv,
            u_partition: k.u_partition.to_string(),
            v_partition: k.v_partition.to_string(),
            bound: k.bound.to_string(),
            bound_6dp: rational_to_fixed(&k.bound, 6),
            margin: k.margin.to_string(),
            margin_6dp: rational_to_fixed(&k.margin, 6),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaRow {
    pub d: usize,
    pub upper: String,
    pub lower: String,
    /// Exact optimum of the improved program; empty for `d = 3`.
    pub lp_value: String,
    pub small_d: usize,
}

impl BetaRow {
    pub fn new(b: &BetaBounds, small_d: usize) -> Self {
        BetaRow {
            d: b.d,
            upper: b.upper.to_fixed(6),
            lower: b.lower.to_fixed(6),
            lp_value: b
                .lp_value
                .as_ref()
                .map(BigRational::to_string)
                .unwrap_or_default(),
            small_d,
        }
    }
}

pub fn write_csv<T: Serialize>(out: &mut impl Write, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json_lines<T: Serialize>(out: &mut impl Write, rows: &[T]) -> Result<(), CliError> {
    for r in rows {
        serde_json::to_writer(&mut *out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

/// Two blocks of columns, `c = 2..6` and `c = 7..11`, one line per `d`.
pub fn factor_text(table: &FactorTable) -> String {
    let mut s = String::new();
    for block in [2..=6usize, 7..=11] {
        let rows: Vec<usize> = (3..=table.d_max)
            .filter(|&d| table.contains(*block.start(), d))
            .collect();
        if rows.is_empty() {
            continue;
        }
        if !s.is_empty() {
            s.push('\n');
        }
        let _ = write!(s, "{:>4} |", "c");
        for c in block.clone() {
            let _ = write!(s, " {c:>10}");
        }
        s.push('\n');
        let _ = writeln!(s, "{}", "-".repeat(6 + 11 * block.clone().count()));
        for d in rows {
            let _ = write!(s, "{:>4} |", format!("d={d}"));
            for c in block.clone().filter(|&c| c <= d) {
                match table.entry(c, d) {
                    Some(e) => {
                        let _ = write!(s, " {:>10}", rational_to_fixed(&e.value, 6));
                    }
                    None => {
                        let _ = write!(s, " {:>10}", "-");
                    }
                }
            }
            s.push('\n');
        }
    }
    s
}

pub fn beta_text(rows: &[BetaRow]) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:>6}", "d");
    for r in rows {
        let _ = write!(s, " {:>9}", r.d);
    }
    let _ = write!(s, "\n{:>6}", "upper");
    for r in rows {
        let _ = write!(s, " {:>9}", r.upper);
    }
    let _ = write!(s, "\n{:>6}", "lower");
    for r in rows {
        let _ = write!(s, " {:>9}", r.lower);
    }
    s.push('\n');
    s
}
