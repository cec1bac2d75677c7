//! Parameter sweeps. Tuples are evaluated on a worker pool and written by a
//! single writer in sorted key order, so the file is identical for any
//! number of workers.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use rayon::prelude::*;
use rho_lattice_core::arith::gcd;
use rho_lattice_core::{BrieskornSphere, InvolutionKind};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::commands::{self, SumKind};
use crate::error::{CliError, CliResult};
use crate::output::{ranks_string, Format};

/// Inclusive integer range written `a`, `a:b` or `a:b:step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: i64,
    pub end: i64,
    pub step: i64,
}

impl IntRange {
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        let IntRange { start, end, step } = *self;
        (start..=end).step_by(step as usize)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range {s:?}; expected a:b[:step]"));
        let range = match parts.as_slice() {
            [a] => IntRange { start: num(a)?, end: num(a)?, step: 1 },
            [a, b] => IntRange { start: num(a)?, end: num(b)?, step: 1 },
            [a, b, c] => IntRange { start: num(a)?, end: num(b)?, step: num(c)? },
            _ => return Err(format!("bad range {s:?}; expected a:b[:step]")),
        };
        if range.step < 1 {
            return Err(format!("range step must be positive in {s:?}"));
        }
        Ok(range)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Lens,
    Floer,
    Sums,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub what: What,
    pub p: IntRange,
    pub q: Option<IntRange>,
    pub b: Option<IntRange>,
    pub ell: Option<IntRange>,
    pub even_ell: bool,
    pub involution: Option<InvolutionKind>,
    pub sum: SumKind,
    pub jobs: usize,
    pub out: PathBuf,
    pub skip_existing: bool,
    pub format: Option<Format>,
    pub tolerance: f64,
}

type Key = Vec<i64>;

trait SweepRow: Serialize + DeserializeOwned + Send + Clone {
    fn key(&self) -> Key;
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LensRow {
    p: i64,
    q: i64,
    l: i64,
    involution: String,
    exact_num: Option<String>,
    exact_den: Option<String>,
    float: f64,
    terms: usize,
    skipped: usize,
    route_agreement: Option<f64>,
    tolerance: f64,
}

fn involution_index(label: &str) -> i64 {
    InvolutionKind::ALL.iter().position(|i| i.label() == label).map_or(-1, |i| i as i64)
}

impl SweepRow for LensRow {
    fn key(&self) -> Key {
        vec![self.p, self.q, self.l, involution_index(&self.involution)]
    }
}

/// One sum evaluation. Unused parameters are left empty: `dedekind-D` has
/// no `q` or `l`, `lawson-N` has no `p` and reads `b` as `2b`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct SumRow {
    sum: String,
    p: Option<i64>,
    q: Option<i64>,
    b: Option<i64>,
    l: Option<i64>,
    exact_num: Option<String>,
    exact_den: Option<String>,
    float: f64,
    terms: usize,
    skipped: usize,
    route_agreement: Option<f64>,
    tolerance: f64,
}

impl SweepRow for SumRow {
    fn key(&self) -> Key {
        let o = |v: Option<i64>| v.unwrap_or(i64::MIN);
        vec![o(self.p), o(self.q), o(self.b), o(self.l)]
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FloerRow {
    p: i64,
    q: i64,
    reps: usize,
    instanton: String,
    signature: i64,
    ic_natural: String,
    tolerance: f64,
}

impl SweepRow for FloerRow {
    fn key(&self) -> Key {
        vec![self.p, self.q]
    }
}

fn output_format(cfg: &SweepConfig) -> Format {
    match cfg.format {
        Some(Format::Csv) => Format::Csv,
        Some(Format::Json) => Format::Json,
        _ if cfg.out.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => Format::Csv,
        _ => Format::Json,
    }
}

fn read_rows<R: SweepRow>(path: &Path, format: Format) -> CliResult<Vec<R>> {
    let file = File::open(path)?;
    match format {
        Format::Csv => {
            let mut reader = csv::Reader::from_reader(file);
            reader.deserialize().map(|r| r.map_err(CliError::from)).collect()
        }
        _ => BufReader::new(file)
            .lines()
            .filter(|l| !matches!(l, Ok(s) if s.trim().is_empty()))
            .map(|l| Ok(serde_json::from_str(&l?)?))
            .collect(),
    }
}

fn write_rows<R: SweepRow>(path: &Path, format: Format, rows: &[R]) -> CliResult<()> {
    let file = File::create(path)?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(file);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        _ => {
            let mut w = BufWriter::new(file);
            for r in rows {
                writeln!(w, "{}", serde_json::to_string(r)?)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Returns the number of rows computed in this run.
fn run<R, T>(cfg: &SweepConfig, tasks: Vec<(Key, T)>, compute: impl Fn(&T) -> CliResult<R> + Sync) -> CliResult<usize>
where
    R: SweepRow,
    T: Send + Sync,
{
    let format = output_format(cfg);
    let mut rows: BTreeMap<Key, R> = BTreeMap::new();
    if cfg.skip_existing && cfg.out.exists() {
        for r in read_rows::<R>(&cfg.out, format)? {
            rows.insert(r.key(), r);
        }
    }
    let pending: Vec<&(Key, T)> = tasks.iter().filter(|(k, _)| !rows.contains_key(k)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker pool: {e}")))?;
    let results: Vec<(Key, CliResult<R>)> =
        pool.install(|| pending.par_iter().map(|(k, t)| (k.clone(), compute(t))).collect());
    let computed = results.len();
    // sorted first so the reported error is the smallest failing key
    let mut sorted = results;
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for (key, r) in sorted {
        rows.insert(key, r?);
    }
    let rows: Vec<R> = rows.into_values().collect();
    write_rows(&cfg.out, format, &rows)?;
    Ok(computed)
}

fn default_range(lo: i64, hi: i64) -> IntRange {
    IntRange { start: lo, end: hi, step: 1 }
}

fn lens_tasks(cfg: &SweepConfig) -> Vec<(Key, (i64, i64, i64, InvolutionKind))> {
    let invs: Vec<InvolutionKind> = cfg.involution.map_or(InvolutionKind::ALL.to_vec(), |i| vec![i]);
    let mut tasks = Vec::new();
    for p in cfg.p.iter().filter(|&p| p >= 2) {
        for q in cfg.q.unwrap_or(default_range(1, p - 1)).iter() {
            if !(1..p).contains(&q) || gcd(p, q) != 1 {
                continue;
            }
            for l in cfg.ell.unwrap_or(default_range(0, p - 1)).iter() {
                if !(0..p).contains(&l) || (cfg.even_ell && l % 2 != 0) {
                    continue;
                }
                for &inv in &invs {
                    tasks.push((vec![p, q, l, involution_index(inv.label())], (p, q, l, inv)));
                }
            }
        }
    }
    tasks
}

type SumTask = (Option<i64>, Option<i64>, Option<i64>, Option<i64>);

fn sum_tasks(cfg: &SweepConfig) -> Vec<(Key, SumTask)> {
    let mut tasks = Vec::new();
    let mut push = |p: Option<i64>, q: Option<i64>, b: Option<i64>, l: Option<i64>| {
        let o = |v: Option<i64>| v.unwrap_or(i64::MIN);
        tasks.push((vec![o(p), o(q), o(b), o(l)], (p, q, b, l)));
    };
    match cfg.sum {
        SumKind::Delta | SumKind::DeltaTau => {
            for p in cfg.p.iter().filter(|&p| p >= 2) {
                for q in cfg.q.unwrap_or(default_range(1, p - 1)).iter() {
                    if !(1..p).contains(&q) || gcd(p, q) != 1 {
                        continue;
                    }
                    for l in cfg.ell.unwrap_or(default_range(1, p - 1)).iter() {
                        if (0..p).contains(&l) && !(cfg.even_ell && l % 2 != 0) {
                            push(Some(p), Some(q), None, Some(l));
                        }
                    }
                }
            }
        }
        SumKind::DedekindD => {
            for p in cfg.p.iter().filter(|&p| p >= 3 && p % 2 == 1) {
                for b in cfg.b.unwrap_or(default_range(1, p - 1)).iter() {
                    if (1..p).contains(&b) && gcd(p, b) == 1 {
                        push(Some(p), None, Some(b), None);
                    }
                }
            }
        }
        SumKind::LawsonN => {
            // the modulus comes from -q; -p is not used
            for q in cfg.q.unwrap_or(cfg.p).iter().filter(|&q| q >= 2) {
                for b in cfg.b.unwrap_or(default_range(1, q - 1)).iter() {
                    if !(1..q).contains(&b) || gcd(q, b) != 1 {
                        continue;
                    }
                    for l in cfg.ell.unwrap_or(default_range(2, q - 1)).iter() {
                        if l >= 2 && l % 2 == 0 {
                            push(None, Some(q), Some(b), Some(l));
                        }
                    }
                }
            }
        }
    }
    tasks
}

fn compute_sum(kind: SumKind, task: &SumTask, tolerance: f64) -> CliResult<SumRow> {
    let &(p, q, b, l) = task;
    let record = commands::sums(kind, p, q, l, b, tolerance)?;
    Ok(SumRow {
        sum: kind.name().to_string(),
        p,
        q,
        b,
        l,
        exact_num: record.exact.as_ref().map(|e| e.num.clone()),
        exact_den: record.exact.as_ref().map(|e| e.den.clone()),
        float: record.float,
        terms: record.diagnostics.terms,
        skipped: record.diagnostics.skipped,
        route_agreement: record.diagnostics.route_agreement,
        tolerance,
    })
}

pub fn sweep(cfg: &SweepConfig) -> CliResult<usize> {
    if cfg.jobs == 0 {
        return Err(CliError::domain("--jobs must be at least 1"));
    }
    let tol = cfg.tolerance;
    match cfg.what {
        What::Lens => run(cfg, lens_tasks(cfg), |&(p, q, l, inv)| {
            let r = commands::lens_rho(p, q, l, inv, tol)?;
            Ok(LensRow {
                p,
                q,
                l,
                involution: inv.label().to_string(),
                exact_num: r.exact.as_ref().map(|e| e.num.clone()),
                exact_den: r.exact.as_ref().map(|e| e.den.clone()),
                float: r.float,
                terms: r.diagnostics.terms,
                skipped: r.diagnostics.skipped,
                route_agreement: r.diagnostics.route_agreement,
                tolerance: tol,
            })
        }),
        What::Sums => run(cfg, sum_tasks(cfg), |t| compute_sum(cfg.sum, t, tol)),
        What::Floer => {
            let mut tasks = Vec::new();
            for p in cfg.p.iter() {
                for q in cfg.q.unwrap_or(cfg.p).iter() {
                    if BrieskornSphere::new(p, q).is_ok() {
                        tasks.push((vec![p, q], (p, q)));
                    }
                }
            }
            run(cfg, tasks, |&(p, q)| {
                let f = commands::floer(p, q, tol)?;
                Ok(FloerRow {
                    p,
                    q,
                    reps: f.representations.len(),
                    instanton: ranks_string(&f.instanton),
                    signature: f.signature,
                    ic_natural: ranks_string(&f.ic_natural),
                    tolerance: tol,
                })
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!("3:9:2".parse::<IntRange>().unwrap().iter().collect::<Vec<_>>(), [3, 5, 7, 9]);
        assert_eq!("4".parse::<IntRange>().unwrap().iter().collect::<Vec<_>>(), [4]);
        assert_eq!("5:3".parse::<IntRange>().unwrap().iter().count(), 0);
        assert!("1:5:0".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
    }
}
