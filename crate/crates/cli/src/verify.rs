//! Self-verification: cross-route invariants over all small parameters.
//! Cases run in increasing order, so the first failure reported for a check
//! is its minimal counterexample.

use std::io::Write;

use num_traits::ToPrimitive;
use rho_lattice_core::arith::{gcd, int, ratio, residue};
use rho_lattice_core::{
    dedekind_d_exact, dedekind_d_float, delta_exact, delta_float, delta_tau_exact, delta_tau_float, enumerate_reps,
    floer_record, floer_report, rho_lens_with_tolerance, rho_via_defects, solve_seifert, BrieskornSphere,
    InvolutionKind, LensSpace, U1Rep,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, ranks_string, Format};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_p: i64,
    pub tolerance: f64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> CliResult<()> {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(self)?)?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["check", "passed", "cases", "counterexample", "max_p", "tolerance"])?;
                for c in &self.checks {
                    w.write_record([
                        c.name.to_string(),
                        c.passed.to_string(),
                        c.cases.to_string(),
                        c.counterexample.clone().unwrap_or_default(),
                        self.max_p.to_string(),
                        fmt_f64(self.tolerance),
                    ])?;
                }
                w.flush()?;
            }
            Format::Table => {
                for c in &self.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    write!(out, "{status}  {:<20} {:>8} cases", c.name, c.cases)?;
                    match &c.counterexample {
                        Some(ce) => writeln!(out, "  counterexample: {ce}")?,
                        None => writeln!(out)?,
                    }
                }
                let verdict = if self.passed() { "all checks passed" } else { "verification FAILED" };
                writeln!(out, "{verdict} (max p {}, tolerance {})", self.max_p, fmt_f64(self.tolerance))?;
            }
        }
        Ok(())
    }
}

/// Collects case outcomes, keeping only the first failure.
struct Check {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, cases: 0, failure: None }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }

    fn case(&mut self, outcome: Result<(), String>) {
        self.cases += 1;
        if let Err(msg) = outcome {
            self.failure.get_or_insert(msg);
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult { name: self.name, passed: self.failure.is_none(), cases: self.cases, counterexample: self.failure }
    }
}

fn close(what: String, float: f64, exact: f64, tol: f64) -> Result<(), String> {
    let gap = (float - exact).abs();
    if gap <= tol {
        Ok(())
    } else {
        Err(format!("{what}: float {float} vs exact {exact} (gap {gap:e})"))
    }
}

fn odd_triples(max_p: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (3..=max_p)
        .step_by(2)
        .flat_map(|p| (1..p).filter(move |&q| gcd(p, q) == 1).map(move |q| (p, q)))
        .flat_map(|(p, q)| (2..p).step_by(2).map(move |l| (p, q, l)))
}

fn spheres(max_p: i64) -> Vec<BrieskornSphere> {
    let mut out = Vec::new();
    for p in (3..=max_p).step_by(2) {
        for q in ((p + 2)..=max_p).step_by(2) {
            if let Ok(s) = BrieskornSphere::new(p, q) {
                out.push(s);
            }
        }
    }
    out
}

fn exact_vs_float(max_p: i64, tol: f64) -> CheckResult {
    let mut c = Check::new("exact-vs-float");
    for (p, q, l) in odd_triples(max_p) {
        if c.done() {
            break;
        }
        c.case((|| {
            let t = delta_tau_exact(p, q, l).map_err(|e| e.to_string())? as f64;
            let tf = delta_tau_float(p, q, l).map_err(|e| e.to_string())?.value;
            close(format!("delta^t({p};{q},{l})"), tf, t, tol)?;
            let d = delta_exact(p, q, l).map_err(|e| e.to_string())?.to_f64().unwrap_or(f64::NAN);
            let df = delta_float(p, q, l).map_err(|e| e.to_string())?.value;
            close(format!("delta({p};{q},{l})"), df, d, tol)?;
            if l == 2 {
                let d = dedekind_d_exact(p, q).map_err(|e| e.to_string())?.to_f64().unwrap_or(f64::NAN);
                let df = dedekind_d_float(p, q).map_err(|e| e.to_string())?.value;
                close(format!("D({p};{q})"), df, d, tol)?;
            }
            Ok(())
        })());
    }
    c.finish()
}

fn defect_route(max_p: i64, tol: f64) -> CheckResult {
    let mut c = Check::new("defect-route");
    'outer: for p in 2..=max_p {
        for q in (1..p).filter(|&q| gcd(p, q) == 1) {
            for l in 0..p {
                if c.done() {
                    break 'outer;
                }
                c.case((|| {
                    let space = LensSpace::new(p, q).map_err(|e| e.to_string())?;
                    for inv in [InvolutionKind::B, InvolutionKind::BPrime] {
                        // the lens route also enforces exact-vs-float for odd p
                        let closed = rho_lens_with_tolerance(&space, &U1Rep::new(l, &space), inv, tol)
                            .map_err(|e| e.to_string())?;
                        let defect = rho_via_defects(p, q, l, inv).map_err(|e| e.to_string())?;
                        let gap = (closed.float.value - defect.value).abs();
                        if gap.is_nan() || gap > tol {
                            return Err(format!(
                                "{space}, l = {l}, {inv}: closed form {} vs defects {} (gap {gap:e})",
                                closed.float.value, defect.value
                            ));
                        }
                    }
                    Ok(())
                })());
            }
        }
    }
    c.finish()
}

fn doubling(max_p: i64) -> CheckResult {
    let mut c = Check::new("doubling-identity");
    for (p, q, l) in odd_triples(max_p) {
        if c.done() {
            break;
        }
        c.case((|| {
            let lhs = int(delta_tau_exact(p, q, l).map_err(|e| e.to_string())?)
                + delta_exact(p, q, l).map_err(|e| e.to_string())?;
            let rhs = delta_exact(p, (2 * q) % p, l).map_err(|e| e.to_string())? * int(2);
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("(p,q,l) = ({p},{q},{l}): delta^t + delta = {lhs}, 2 delta(p;2q,l) = {rhs}"))
            }
        })());
    }
    c.finish()
}

fn oddness(max_p: i64) -> CheckResult {
    let mut c = Check::new("oddness");
    for (p, q, l) in odd_triples(max_p) {
        if c.done() {
            break;
        }
        c.case(match delta_tau_exact(p, q, l) {
            Ok(v) if v.rem_euclid(2) == 1 => Ok(()),
            Ok(v) => Err(format!("delta^t({p};{q},{l}) = {v} is even")),
            Err(e) => Err(e.to_string()),
        });
    }
    c.finish()
}

fn parity(max_p: i64, tol: f64) -> CheckResult {
    let mut c = Check::new("parity");
    for s in spheres(max_p) {
        if c.done() {
            break;
        }
        c.case((|| {
            let report = floer_report(&s, tol).map_err(|e| format!("{s}: {e}"))?;
            for r in &report.records {
                if residue(&(&r.mu - &r.gr), 2) != 0 {
                    return Err(format!("{s}, {}: mu = {}, gr = {}", r.rot, r.mu, r.gr));
                }
            }
            Ok(())
        })());
    }
    c.finish()
}

fn seifert_invariance(max_p: i64, tol: f64) -> CheckResult {
    let mut c = Check::new("seifert-invariance");
    for s in spheres(max_p) {
        if c.done() {
            break;
        }
        let base = solve_seifert(&s);
        c.case((|| {
            for rot in enumerate_reps(&s) {
                let a = floer_record(&s, &base, &rot, tol).map_err(|e| format!("{s}: {e}"))?;
                for t in [-1, 1] {
                    let other = base.shifted(&s, t);
                    let b = floer_record(&s, &other, &rot, tol).map_err(|e| format!("{s}: {e}"))?;
                    if a != b {
                        return Err(format!("{s}, {rot}: {base:?} and {other:?} disagree"));
                    }
                }
            }
            Ok(())
        })());
    }
    c.finish()
}

fn regression(tol: f64) -> CheckResult {
    let mut c = Check::new("regression");
    let eq = |what: &str, got: String, want: &str| {
        if got == want {
            Ok(())
        } else {
            Err(format!("{what} = {got}, expected {want}"))
        }
    };
    let err = |e: rho_lattice_core::Error| e.to_string();
    c.case(delta_exact(3, 2, 2).map_err(err).and_then(|v| eq("delta(3;2,2)", v.to_string(), "-1/3")));
    c.case(delta_tau_exact(3, 2, 2).map_err(err).and_then(|v| eq("delta^t(3;2,2)", v.to_string(), "1")));
    c.case(dedekind_d_exact(3, 2).map_err(err).and_then(|v| eq("D(3;2)", v.to_string(), "4/3")));
    c.case(dedekind_d_exact(7, 6).map_err(err).and_then(|v| eq("D(7;6)", v.to_string(), "12/7")));
    for n in 1..=20i64 {
        let q = 6 * n + 1;
        let want = (int(n - 1) + ratio(5 * n + 1, q)) * int(2);
        c.case(dedekind_d_exact(q, 5 * n + 1).map_err(err).and_then(|v| eq(&format!("D({q};{})", 5 * n + 1), v.to_string(), &want.to_string())));
    }
    let s = BrieskornSphere::new(3, 7).expect("valid");
    c.case((|| {
        let r = floer_report(&s, tol).map_err(err)?;
        let mu: Vec<String> = r.records.iter().map(|x| x.mu.to_string()).collect();
        eq("mu on Sigma(2,3,7)", mu.join(" "), "87 125")?;
        eq("I+ of Sigma(2,3,7)", ranks_string(&r.instanton.ranks), "0 0 0 1 0 0 0 1")?;
        eq("IC of T(3,7)", ranks_string(&r.ic_natural.ranks), "3 2 2 2")
    })());
    for n in 1..=5u64 {
        let s = BrieskornSphere::new(3, 6 * n as i64 + 1).expect("valid");
        c.case((|| {
            let r = floer_report(&s, tol).map_err(err)?;
            let want = ranks_string(&[2 * n + 1, 2 * n, 2 * n, 2 * n]);
            eq(&format!("IC of T(3,{})", 6 * n + 1), ranks_string(&r.ic_natural.ranks), &want)
        })());
    }
    c.finish()
}

pub fn verify(max_p: i64, tolerance: f64) -> VerifyReport {
    let checks = vec![
        exact_vs_float(max_p, tolerance),
        defect_route(max_p, tolerance),
        doubling(max_p),
        oddness(max_p),
        parity(max_p, tolerance),
        seifert_invariance(max_p, tolerance),
        regression(tolerance),
    ];
    VerifyReport { max_p, tolerance, checks }
}

pub fn run(max_p: i64, tolerance: f64, format: Format, out: &mut impl Write) -> CliResult<()> {
    let report = verify(max_p, tolerance);
    report.render(format, out)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verify)
    }
}
