//! Output records and their json, csv and table renderings.

use std::io::Write;

use clap::ValueEnum;
use num_traits::ToPrimitive;
use rho_lattice_core::{FloatSumResult, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// An exact rational as decimal strings, so no precision is lost in json.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == "1" {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub terms: usize,
    pub skipped: usize,
    /// `|float - exact|`; absent when there is no exact route.
    pub route_agreement: Option<f64>,
}

/// Result of a single query, echoing its inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    /// Parameter names and values, keyed by name.
    pub params: serde_json::Map<String, serde_json::Value>,
    pub exact: Option<Exact>,
    pub float: f64,
    pub diagnostics: Diagnostics,
    pub tolerance: f64,
}

impl OutputRecord {
    pub fn new(command: &str, params: &[(&str, serde_json::Value)], tolerance: f64) -> Self {
        OutputRecord {
            command: command.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            exact: None,
            float: 0.0,
            diagnostics: Diagnostics { terms: 0, skipped: 0, route_agreement: None },
            tolerance,
        }
    }

    /// Fills in both routes; the gap is recorded, not checked.
    pub fn with_routes(mut self, exact: Option<&Rational>, float: &FloatSumResult) -> Self {
        self.float = float.value + 0.0;
        self.diagnostics.terms = float.terms;
        self.diagnostics.skipped = float.skipped;
        if let Some(e) = exact {
            self.diagnostics.route_agreement = Some((float.value - e.to_f64().unwrap_or(f64::NAN)).abs());
            self.exact = Some(e.into());
        }
        self
    }

    fn flat(&self) -> Vec<(String, String)> {
        let mut out = vec![("command".to_string(), self.command.clone())];
        for (k, v) in &self.params {
            let v = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push((k.clone(), v));
        }
        let (num, den) = self.exact.as_ref().map(|e| (e.num.clone(), e.den.clone())).unwrap_or_default();
        out.push(("exact_num".into(), num));
        out.push(("exact_den".into(), den));
        out.push(("float".into(), fmt_f64(self.float)));
        out.push(("terms".into(), self.diagnostics.terms.to_string()));
        out.push(("skipped".into(), self.diagnostics.skipped.to_string()));
        out.push(("route_agreement".into(), self.diagnostics.route_agreement.map(fmt_f64).unwrap_or_default()));
        out.push(("tolerance".into(), fmt_f64(self.tolerance)));
        out
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> CliResult<()> {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(self)?)?,
            Format::Csv => {
                let flat = self.flat();
                let mut w = csv::Writer::from_writer(out);
                w.write_record(flat.iter().map(|(k, _)| k))?;
                w.write_record(flat.iter().map(|(_, v)| v))?;
                w.flush()?;
            }
            Format::Table => {
                let mut rows = self.flat();
                if let Some(e) = &self.exact {
                    rows.insert(1 + self.params.len(), ("exact".into(), e.to_string()));
                }
                rows.retain(|(k, v)| !v.is_empty() && k != "exact_num" && k != "exact_den");
                write_table(out, &rows)?;
            }
        }
        Ok(())
    }
}

pub fn write_table(out: &mut impl Write, rows: &[(String, String)]) -> CliResult<()> {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

/// Shortest round-trip text for a float, switching to exponent form for
/// very small or large magnitudes (`1e-8`, not `0.00000001`).
pub fn fmt_f64(x: f64) -> String {
    format!("{:?}", x + 0.0)
}

/// Space-separated rank vector, e.g. `3 2 2 2`.
pub fn ranks_string(ranks: &[u64]) -> String {
    ranks.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}
