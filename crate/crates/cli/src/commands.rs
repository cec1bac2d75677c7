//! Single-query commands: lens-space rho, the cotangent sums, Floer reports.

use std::io::Write;

use clap::ValueEnum;
use rho_lattice_core::arith::int;
use rho_lattice_core::{
    dedekind_d_exact, dedekind_d_float, delta_exact, delta_float, delta_tau_exact, delta_tau_float, floer_report,
    lawson_n_mod4, rho_lens_with_tolerance, BrieskornSphere, FloatSumResult, FloerReport, InvolutionKind, LensSpace,
    Rational, U1Rep,
};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, ranks_string, write_table, Exact, Format, OutputRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum SumKind {
    Delta,
    DeltaTau,
    #[value(name = "dedekind-D")]
    DedekindD,
    #[value(name = "lawson-N")]
    LawsonN,
}

impl SumKind {
    pub fn name(&self) -> &'static str {
        match self {
            SumKind::Delta => "delta",
            SumKind::DeltaTau => "delta-tau",
            SumKind::DedekindD => "dedekind-D",
            SumKind::LawsonN => "lawson-N",
        }
    }
}

fn check_gap(record: &OutputRecord, what: impl FnOnce() -> String) -> CliResult<()> {
    match record.diagnostics.route_agreement {
        Some(gap) if gap.is_nan() || gap > record.tolerance => Err(CliError::Consistency(format!(
            "{}: float and exact routes differ by {gap:e} (tolerance {:e})",
            what(),
            record.tolerance
        ))),
        _ => Ok(()),
    }
}

pub fn lens_rho(p: i64, q: i64, ell: i64, inv: InvolutionKind, tolerance: f64) -> CliResult<OutputRecord> {
    let space = LensSpace::new(p, q)?;
    let rep = U1Rep::new(ell, &space);
    let rho = rho_lens_with_tolerance(&space, &rep, inv, tolerance)?;
    let params = [
        ("p", json!(p)),
        ("q", json!(q)),
        ("l", json!(ell)),
        ("involution", json!(inv.label())),
    ];
    Ok(OutputRecord::new("lens-rho", &params, tolerance).with_routes(rho.exact.as_ref(), &rho.float))
}

/// Both routes of one sum. `second` is `q` for the delta sums and `b`
/// otherwise; `first` is `p`, or `q` for `lawson-N`.
pub fn sum_routes(
    kind: SumKind,
    first: i64,
    second: i64,
    ell: i64,
) -> CliResult<(Option<Rational>, FloatSumResult)> {
    let p = first;
    Ok(match kind {
        SumKind::Delta => {
            let float = delta_float(p, second, ell)?;
            let r = ell.rem_euclid(p);
            let exact = if r == 0 {
                Some(int(0))
            } else if p % 2 == 1 || r % 2 == 0 {
                Some(delta_exact(p, second, ell)?)
            } else {
                None
            };
            (exact, float)
        }
        SumKind::DeltaTau => {
            let float = delta_tau_float(p, second, ell)?;
            let exact = if ell.rem_euclid(p) == 0 {
                Some(int(0))
            } else if p % 2 == 1 {
                Some(int(delta_tau_exact(p, second, ell)?))
            } else {
                None
            };
            (exact, float)
        }
        SumKind::DedekindD => (Some(dedekind_d_exact(p, second)?), dedekind_d_float(p, second)?),
        SumKind::LawsonN => {
            let n = lawson_n_mod4(first, second, ell)?;
            let float = FloatSumResult { value: n as f64, terms: 0, skipped: 0 };
            (Some(int(n as i64)), float)
        }
    })
}

fn need(value: Option<i64>, flag: &str, kind: SumKind) -> CliResult<i64> {
    value.ok_or_else(|| CliError::domain(format!("{} needs {flag}", kind.name())))
}

pub fn sums(
    kind: SumKind,
    p: Option<i64>,
    q: Option<i64>,
    ell: Option<i64>,
    b: Option<i64>,
    tolerance: f64,
) -> CliResult<OutputRecord> {
    let (params, first, second, l) = match kind {
        SumKind::Delta | SumKind::DeltaTau => {
            let (p, q, l) = (need(p, "-p", kind)?, need(q, "-q", kind)?, need(ell, "-l", kind)?);
            (vec![("p", json!(p)), ("q", json!(q)), ("l", json!(l))], p, q, l)
        }
        SumKind::DedekindD => {
            let (p, b) = (need(p, "-p", kind)?, need(b, "-b", kind)?);
            (vec![("p", json!(p)), ("b", json!(b))], p, b, 0)
        }
        SumKind::LawsonN => {
            let (q, b, l) = (need(q, "-q", kind)?, need(b, "-b", kind)?, need(ell, "-l", kind)?);
            (vec![("q", json!(q)), ("2b", json!(b)), ("l", json!(l))], q, b, l)
        }
    };
    let (exact, float) = sum_routes(kind, first, second, l)?;
    let mut record = OutputRecord::new(kind.name(), &params, tolerance).with_routes(exact.as_ref(), &float);
    if kind == SumKind::LawsonN {
        // a count mod 4 has no float route
        record.diagnostics.route_agreement = None;
    }
    check_gap(&record, || format!("{} {:?}", kind.name(), record.params))?;
    Ok(record)
}

#[derive(Debug, Clone, Serialize)]
pub struct RepRow {
    pub l1: i64,
    pub l2: i64,
    pub l3: i64,
    pub e: String,
    pub gr: String,
    pub gr_mod8: u32,
    pub rho: Exact,
    pub rho_float: f64,
    pub mu: String,
    pub mu_mod4: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FloerOutput {
    pub command: &'static str,
    pub params: serde_json::Value,
    pub seifert: [i64; 3],
    pub representations: Vec<RepRow>,
    pub instanton: Vec<u64>,
    pub signature: i64,
    pub ic_natural: Vec<u64>,
    pub tolerance: f64,
}

impl FloerOutput {
    pub fn from_report(report: &FloerReport, tolerance: f64) -> Self {
        let s = &report.seifert;
        FloerOutput {
            command: "floer",
            params: json!({ "p": report.sphere.p(), "q": report.sphere.q() }),
            seifert: [s.b1, s.b2, s.b3],
            representations: report
                .records
                .iter()
                .map(|r| RepRow {
                    l1: 1,
                    l2: r.rot.l2,
                    l3: r.rot.l3,
                    e: r.e.to_string(),
                    gr: r.gr.to_string(),
                    gr_mod8: r.gr_mod8,
                    rho: (&r.rho).into(),
                    rho_float: r.rho_float,
                    mu: r.mu.to_string(),
                    mu_mod4: r.mu_mod4,
                })
                .collect(),
            instanton: report.instanton.ranks.clone(),
            signature: report.signature,
            ic_natural: report.ic_natural.ranks.clone(),
            tolerance,
        }
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> CliResult<()> {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(self)?)?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record([
                    "kind", "l1", "l2", "l3", "e", "gr", "gr_mod8", "rho", "rho_float", "mu", "mu_mod4", "value",
                ])?;
                for r in &self.representations {
                    w.write_record([
                        "rep".to_string(),
                        r.l1.to_string(),
                        r.l2.to_string(),
                        r.l3.to_string(),
                        r.e.clone(),
                        r.gr.clone(),
                        r.gr_mod8.to_string(),
                        r.rho.to_string(),
                        fmt_f64(r.rho_float),
                        r.mu.clone(),
                        r.mu_mod4.to_string(),
                        String::new(),
                    ])?;
                }
                let blank = || std::iter::repeat_n(String::new(), 10);
                for (kind, value) in [
                    ("instanton", ranks_string(&self.instanton)),
                    ("signature", self.signature.to_string()),
                    ("ic_natural", ranks_string(&self.ic_natural)),
                    ("tolerance", fmt_f64(self.tolerance)),
                ] {
                    w.write_record(std::iter::once(kind.to_string()).chain(blank()).chain(std::iter::once(value)))?;
                }
                w.flush()?;
            }
            Format::Table => {
                let [b1, b2, b3] = self.seifert;
                writeln!(out, "Sigma(2,{},{})  Seifert data (2,{b1}) (p,{b2}) (q,{b3})", self.params["p"], self.params["q"])?;
                writeln!(out)?;
                writeln!(out, "{:>10} {:>8} {:>8} {:>4} {:>10} {:>8} {:>4}", "(l1,l2,l3)", "e", "gr", "gr8", "rho", "mu", "mu4")?;
                for r in &self.representations {
                    writeln!(
                        out,
                        "{:>10} {:>8} {:>8} {:>4} {:>10} {:>8} {:>4}",
                        format!("(1,{},{})", r.l2, r.l3),
                        r.e,
                        r.gr,
                        r.gr_mod8,
                        r.rho.to_string(),
                        r.mu,
                        r.mu_mod4
                    )?;
                }
                writeln!(out)?;
                write_table(
                    out,
                    &[
                        ("I+ (mod 8)".into(), ranks_string(&self.instanton)),
                        ("signature".into(), self.signature.to_string()),
                        ("IC (mod 4)".into(), ranks_string(&self.ic_natural)),
                        ("tolerance".into(), fmt_f64(self.tolerance)),
                    ],
                )?;
            }
        }
        Ok(())
    }
}

pub fn floer(p: i64, q: i64, tolerance: f64) -> CliResult<FloerOutput> {
    let sphere = BrieskornSphere::new(p, q)?;
    let report = floer_report(&sphere, tolerance)?;
    Ok(FloerOutput::from_report(&report, tolerance))
}
