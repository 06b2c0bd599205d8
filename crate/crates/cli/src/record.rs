//! The flat per-item record shared by `verify`, `scan` and `report`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use aac_core::congruences::CongruenceReport;
use aac_core::gaac::{GaacVerdict, SieveCount};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub stmt: String,
    pub p: u64,
    pub params: BTreeMap<String, Value>,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub notes: Vec<String>,
}

/// Decimal strings that fit are emitted as JSON numbers.
fn param_value(s: &str) -> Value {
    s.parse::<u64>()
        .map(Value::from)
        .or_else(|_| s.parse::<i64>().map(Value::from))
        .unwrap_or_else(|_| Value::from(s))
}

impl From<CongruenceReport> for Record {
    fn from(r: CongruenceReport) -> Self {
        Record {
            stmt: r.stmt.id().to_string(),
            p: r.p,
            params: r.params.iter().map(|(k, v)| (k.clone(), param_value(v))).collect(),
            lhs: r.lhs,
            rhs: r.rhs,
            holds: r.holds,
            notes: r.notes,
        }
    }
}

impl From<GaacVerdict> for Record {
    /// `lhs = v₁·h(4D) mod D`, `rhs = 0`; the conjecture holds when they differ.
    fn from(v: GaacVerdict) -> Self {
        let mut params = BTreeMap::new();
        params.insert("v1_mod_D".into(), Value::from(v.v1_mod_d));
        params.insert("h4D".into(), Value::from(v.h4d));
        let mut notes = vec!["holds-iff-nonzero".to_string()];
        if v.v1_mod_d == 0 {
            notes.push("v1-divisible-by-D".into());
        }
        Record {
            stmt: "GAAC".into(),
            p: v.d,
            params,
            lhs: v.product_mod_d,
            rhs: 0,
            holds: v.holds,
            notes,
        }
    }
}

/// Tolerance on `count/x − A_z` for the density record.
pub const DENSITY_TOL: f64 = 0.01;

impl From<SieveCount> for Record {
    /// `lhs` is the count, `rhs` the rounded prediction `A_z·x`.
    fn from(s: SieveCount) -> Self {
        let ratio = s.count as f64 / s.x as f64;
        let mut params = BTreeMap::new();
        params.insert("z".into(), Value::from(s.z));
        params.insert("partial_constant".into(), Value::from(s.partial_constant));
        params.insert("ratio".into(), Value::from(ratio));
        Record {
            stmt: "DENSITY".into(),
            p: s.x,
            params,
            lhs: s.count,
            rhs: (s.partial_constant * s.x as f64).round() as u64,
            holds: (ratio - s.partial_constant).abs() < DENSITY_TOL,
            notes: vec![format!("tolerance={DENSITY_TOL}")],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

fn params_text(r: &Record) -> String {
    r.params
        .iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("stmt,p,params,lhs,rhs,holds,notes\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    csv_field(&r.stmt),
                    r.p,
                    csv_field(&params_text(r)),
                    r.lhs,
                    r.rhs,
                    r.holds,
                    csv_field(&r.notes.join(";"))
                );
            }
        }
        Format::Table => {
            let header = ["stmt", "p", "params", "lhs", "rhs", "holds", "notes"].map(String::from);
            let rows: Vec<[String; 7]> = records
                .iter()
                .map(|r| {
                    [
                        r.stmt.clone(),
                        r.p.to_string(),
                        params_text(r),
                        r.lhs.to_string(),
                        r.rhs.to_string(),
                        r.holds.to_string(),
                        r.notes.join(";"),
                    ]
                })
                .collect();
            let mut width = header.clone().map(|h| h.len());
            for row in &rows {
                for (w, cell) in width.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            for row in std::iter::once(&header).chain(&rows) {
                let line: Vec<String> = row.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
        }
    }
    out
}
