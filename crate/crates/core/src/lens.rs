//! Equivariant rho-invariants of lens spaces `L(p,q)` for the involutions
//! with one-dimensional fixed set.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::arith::{gcd, int, mod_inverse, Rational};
use crate::cotan::{lens_closed_form_float, FloatSumResult};
use crate::error::{consistency, domain, Error, Result};
use crate::lattice::{delta_tau_exact, even_representative};
use crate::DEFAULT_TOLERANCE;

/// `L(p,q)` with `1 <= q <= p-1` and `gcd(p,q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    /// `q` is reduced mod `p` before validation.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 {
            return domain(format!("lens space needs p >= 2, got {p}"));
        }
        let q = q.rem_euclid(p);
        if gcd(p, q) != 1 {
            return domain(format!("L({p},{q}): p and q are not coprime"));
        }
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// The representation `alpha_l` sending the canonical generator of
/// `pi_1 L(p,q) = Z/p` to `exp(2 pi i l / p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct U1Rep {
    ell: i64,
}

impl U1Rep {
    pub fn new(ell: i64, space: &LensSpace) -> Self {
        U1Rep { ell: ell.rem_euclid(space.p) }
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }
}

/// Involution types on `L(p,q)` admitting equivariant representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionKind {
    /// Complex conjugation `[z1,z2] -> [conj z1, conj z2]`.
    A,
    /// `[z1,z2] -> [z1,-z2]`.
    B,
    /// `[z1,z2] -> [-z1,z2]`.
    BPrime,
}

impl InvolutionKind {
    pub const ALL: [InvolutionKind; 3] = [InvolutionKind::A, InvolutionKind::B, InvolutionKind::BPrime];

    pub fn label(&self) -> &'static str {
        match self {
            InvolutionKind::A => "A",
            InvolutionKind::B => "B",
            InvolutionKind::BPrime => "Bprime",
        }
    }

    /// The closed formula evaluated for this involution.
    pub fn formula(&self) -> &'static str {
        match self {
            InvolutionKind::A => "0 (complex conjugation)",
            InvolutionKind::B => "-(2/p) sum_k cot(pi k/p) tan(pi q k/p) sin^2(pi k l/p)  for [z1,z2] -> [z1,-z2]",
            InvolutionKind::BPrime => "-(2/p) sum_k tan(pi k/p) cot(pi k q/p) sin^2(pi k l/p)  for [z1,z2] -> [-z1,z2]",
        }
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InvolutionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(InvolutionKind::A),
            "B" | "b" => Ok(InvolutionKind::B),
            "Bprime" | "bprime" | "B'" | "b'" | "Bp" => Ok(InvolutionKind::BPrime),
            other => domain(format!("unknown involution {other:?}; expected A, B or Bprime")),
        }
    }
}

/// Both evaluations of a lens-space rho-invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct LensRho {
    /// Exact value; present for type A and for odd `p`.
    pub exact: Option<Rational>,
    pub float: FloatSumResult,
}

impl LensRho {
    /// `|float - exact|`, when an exact value exists.
    pub fn route_gap(&self) -> Option<f64> {
        let exact = self.exact.as_ref()?.to_f64()?;
        Some((self.float.value - exact).abs())
    }
}

/// Exact value via the lattice count. Type B is `delta^t(p;q,l)` directly;
/// type B' becomes type B after the substitution `k -> q* k`, i.e.
/// `delta^t(p; q*, q* l)`.
pub fn rho_lens_exact(space: &LensSpace, rep: &U1Rep, inv: InvolutionKind) -> Result<Option<Rational>> {
    let (p, q, ell) = (space.p, space.q, rep.ell);
    if inv == InvolutionKind::A {
        return Ok(Some(Rational::zero()));
    }
    if p % 2 == 0 {
        return Ok(None);
    }
    if ell == 0 {
        return Ok(Some(Rational::zero()));
    }
    let value = match inv {
        InvolutionKind::B => delta_tau_exact(p, q, even_representative(p, ell))?,
        InvolutionKind::BPrime => {
            let q_star = mod_inverse(q, p)?;
            delta_tau_exact(p, q_star, even_representative(p, q_star * ell))?
        }
        InvolutionKind::A => unreachable!(),
    };
    Ok(Some(int(value)))
}

/// `rho_alpha(tau, L(p,q))` with the default route tolerance.
pub fn rho_lens(space: &LensSpace, rep: &U1Rep, inv: InvolutionKind) -> Result<LensRho> {
    rho_lens_with_tolerance(space, rep, inv, DEFAULT_TOLERANCE)
}

/// Evaluates the closed formula in floating point and, where available, the
/// exact lattice route, failing if they differ by more than `tolerance`.
pub fn rho_lens_with_tolerance(
    space: &LensSpace,
    rep: &U1Rep,
    inv: InvolutionKind,
    tolerance: f64,
) -> Result<LensRho> {
    let float = lens_closed_form_float(space.p, space.q, rep.ell, inv)?;
    let exact = rho_lens_exact(space, rep, inv)?;
    let out = LensRho { exact, float };
    if let Some(gap) = out.route_gap() {
        if gap.is_nan() || gap > tolerance {
            return consistency(format!(
                "rho for {space}, l = {}, involution {inv}: float {} vs exact {} (gap {gap:e})",
                rep.ell,
                out.float.value,
                out.exact.as_ref().unwrap()
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotan::rho_via_defects;

    fn rho(p: i64, q: i64, ell: i64, inv: InvolutionKind) -> LensRho {
        let space = LensSpace::new(p, q).unwrap();
        rho_lens(&space, &U1Rep::new(ell, &space), inv).unwrap()
    }

    #[test]
    fn type_b_on_l32() {
        let r = rho(3, 2, 2, InvolutionKind::B);
        assert_eq!(r.exact, Some(int(1)));
        assert!((r.float.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trivial_rep_vanishes() {
        for inv in [InvolutionKind::B, InvolutionKind::BPrime] {
            for (p, q) in [(5, 1), (7, 3), (8, 3), (2, 1)] {
                let r = rho(p, q, 0, inv);
                assert_eq!(r.float.value, 0.0);
                if p % 2 == 1 {
                    assert_eq!(r.exact, Some(int(0)));
                }
            }
        }
    }

    #[test]
    fn type_a_is_zero() {
        let r = rho(9, 4, 5, InvolutionKind::A);
        assert_eq!(r.exact, Some(Rational::zero()));
        assert_eq!(r.float, FloatSumResult::ZERO);
    }

    #[test]
    fn even_p_is_float_only() {
        let r = rho(4, 1, 1, InvolutionKind::B);
        assert!(r.exact.is_none());
        assert!(r.float.skipped >= 1);
        assert!(r.float.value.is_finite());
    }

    #[test]
    fn odd_p_values_are_odd_integers() {
        for p in (3..40).step_by(2) {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                for ell in 1..p {
                    for inv in [InvolutionKind::B, InvolutionKind::BPrime] {
                        let r = rho(p, q, ell, inv);
                        let v = r.exact.unwrap();
                        assert!(v.is_integer());
                        assert_eq!(crate::arith::residue(&v.to_integer(), 2), 1, "{p} {q} {ell} {inv}");
                        let mirrored = rho(p, q, p - ell, inv);
                        assert_eq!(mirrored.exact.unwrap(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_defects() {
        for p in 2..30 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                for ell in 0..p {
                    for inv in [InvolutionKind::B, InvolutionKind::BPrime] {
                        let closed = rho(p, q, ell, inv).float;
                        let defect = rho_via_defects(p, q, ell, inv).unwrap();
                        assert!((closed.value - defect.value).abs() < 1e-9, "{p} {q} {ell} {inv}");
                        assert_eq!(closed.skipped, defect.skipped);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_tolerance_trips_on_rounding() {
        let space = LensSpace::new(3, 2).unwrap();
        let rep = U1Rep::new(2, &space);
        // the float sum for L(3,2), l = 2 is 0.999...; any gap is rejected
        let out = rho_lens_with_tolerance(&space, &rep, InvolutionKind::B, 0.0);
        let gap = rho_lens(&space, &rep, InvolutionKind::B).unwrap().route_gap().unwrap();
        assert_eq!(out.is_err(), gap > 0.0);
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!("Bprime".parse::<InvolutionKind>().unwrap(), InvolutionKind::BPrime);
        assert_eq!("B'".parse::<InvolutionKind>().unwrap(), InvolutionKind::BPrime);
        assert!("C".parse::<InvolutionKind>().is_err());
        assert!(LensSpace::new(6, 4).is_err());
        assert!(LensSpace::new(1, 0).is_err());
        assert_eq!(LensSpace::new(7, -1).unwrap().q(), 6);
    }
}
