//! Graded rank vectors: instanton Floer homology of `Sigma(2,p,q)` (mod 8)
//! and the singular instanton chain complex of the torus knot `T(p,q)` (mod 4).

use crate::brieskorn::{enumerate_reps, floer_record, solve_seifert, torus_signature, BrieskornSphere, FloerRecord, SeifertData};
use crate::error::Result;
use crate::DEFAULT_TOLERANCE;

/// Ranks indexed by grading `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRanks {
    pub ranks: Vec<u64>,
}

impl GradedRanks {
    pub fn zeros(len: usize) -> Self {
        GradedRanks { ranks: vec![0; len] }
    }

    /// Adds `count` generators at `grading mod len`.
    pub fn add(&mut self, grading: i64, count: u64) {
        let idx = grading.rem_euclid(self.ranks.len() as i64) as usize;
        self.ranks[idx] += count;
    }

    pub fn total(&self) -> u64 {
        self.ranks.iter().sum()
    }
}

/// Everything the chain-level computation produces for one sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct FloerReport {
    pub sphere: BrieskornSphere,
    pub seifert: SeifertData,
    pub records: Vec<FloerRecord>,
    pub instanton: GradedRanks,
    pub signature: i64,
    pub ic_natural: GradedRanks,
}

fn instanton_from(records: &[FloerRecord]) -> GradedRanks {
    let mut ranks = GradedRanks::zeros(8);
    for r in records {
        ranks.add(r.gr_mod8 as i64, 1);
    }
    ranks
}

/// The trivial representation contributes one generator in grading
/// `sigma(K) mod 4`; each irreducible one contributes two generators in
/// grading `mu` and two in `mu + 1`.
fn ic_natural_from(records: &[FloerRecord], signature: i64) -> GradedRanks {
    let mut ranks = GradedRanks::zeros(4);
    ranks.add(signature, 1);
    for r in records {
        ranks.add(r.mu_mod4 as i64, 2);
        ranks.add(r.mu_mod4 as i64 + 1, 2);
    }
    ranks
}

pub fn floer_report(sphere: &BrieskornSphere, tolerance: f64) -> Result<FloerReport> {
    let seifert = solve_seifert(sphere);
    let records = enumerate_reps(sphere)
        .iter()
        .map(|rot| floer_record(sphere, &seifert, rot, tolerance))
        .collect::<Result<Vec<_>>>()?;
    let signature = torus_signature(sphere.p(), sphere.q())?;
    Ok(FloerReport {
        sphere: *sphere,
        seifert,
        instanton: instanton_from(&records),
        ic_natural: ic_natural_from(&records, signature),
        signature,
        records,
    })
}

/// `I_*(Sigma(2,p,q))`: entry `d` counts representations with `gr = d (mod 8)`.
pub fn instanton_ranks(sphere: &BrieskornSphere) -> Result<GradedRanks> {
    Ok(floer_report(sphere, DEFAULT_TOLERANCE)?.instanton)
}

/// Generator counts of `IC^natural(T(p,q))` by grading mod 4.
pub fn ic_natural_ranks(p: i64, q: i64) -> Result<GradedRanks> {
    let sphere = BrieskornSphere::new(p, q)?;
    Ok(floer_report(&sphere, DEFAULT_TOLERANCE)?.ic_natural)
}
