//! Brieskorn homology spheres `Sigma(2,p,q)` with `p, q` odd: Seifert data,
//! irreducible SU(2) representations, Floer gradings and the equivariant
//! rho-invariant of the adjoint representation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{gcd, int, mod_inverse, ratio, residue, Rational};
use crate::cotan::{cos_sq_pi, cot_pi, delta_tau_float, eta_lens_float, sum_over_k, tan_pi};
use crate::error::{consistency, domain, Result};
use crate::lattice::{dedekind_d_exact, delta_exact, delta_tau_exact};
use crate::DEFAULT_TOLERANCE;

/// `Sigma(2,p,q)` for coprime odd `p, q >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrieskornSphere {
    p: i64,
    q: i64,
}

impl BrieskornSphere {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 3 || q < 3 || p % 2 == 0 || q % 2 == 0 {
            return domain(format!("Sigma(2,{p},{q}) needs odd p, q >= 3"));
        }
        if gcd(p, q) != 1 {
            return domain(format!("Sigma(2,{p},{q}): p and q are not coprime"));
        }
        Ok(BrieskornSphere { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for BrieskornSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sigma(2,{},{})", self.p, self.q)
    }
}

/// Unnormalized Seifert invariants `(2,b1), (p,b2), (q,b3)` with
/// `pq b1 + 2q b2 + 2p b3 = 1` and `b2, b3` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeifertData {
    pub b1: i64,
    pub b2: i64,
    pub b3: i64,
}

impl SeifertData {
    pub fn new(sphere: &BrieskornSphere, b1: i64, b2: i64, b3: i64) -> Result<Self> {
        let data = SeifertData { b1, b2, b3 };
        data.check(sphere)?;
        Ok(data)
    }

    fn check(&self, sphere: &BrieskornSphere) -> Result<()> {
        let (p, q) = (sphere.p as i128, sphere.q as i128);
        let lhs = p * q * self.b1 as i128 + 2 * q * self.b2 as i128 + 2 * p * self.b3 as i128;
        if lhs != 1 {
            return domain(format!("{self:?} violates pq b1 + 2q b2 + 2p b3 = 1 for {sphere} (got {lhs})"));
        }
        if self.b2 % 2 != 0 || self.b3 % 2 != 0 {
            return domain(format!("{self:?}: b2 and b3 must be even"));
        }
        Ok(())
    }

    /// `(b1, b2 + 2pt, b3 - 2qt)`, another valid triple for the same sphere.
    pub fn shifted(&self, sphere: &BrieskornSphere, t: i64) -> SeifertData {
        SeifertData { b1: self.b1, b2: self.b2 + 2 * sphere.p * t, b3: self.b3 - 2 * sphere.q * t }
    }
}

/// Canonical Seifert data: `0 < b2 < 2p`, and `|b3|` minimal among the even
/// values compatible with that `b2`.
pub fn solve_seifert(sphere: &BrieskornSphere) -> SeifertData {
    let (p, q) = (sphere.p, sphere.q);
    // b2 = 2 c2, b3 = 2 c3 with 4q c2 = 1 (mod p) and 4p c3 = 1 (mod q)
    let c2 = mod_inverse(4 * q, p).expect("coprime");
    let mut c3 = mod_inverse(4 * p, q).expect("coprime");
    if 2 * c3 > q {
        c3 -= q;
    }
    let (b2, b3) = (2 * c2, 2 * c3);
    let rest = 1 - 2 * q as i128 * b2 as i128 - 2 * p as i128 * b3 as i128;
    let pq = p as i128 * q as i128;
    debug_assert_eq!(rest % pq, 0);
    SeifertData { b1: (rest / pq) as i64, b2, b3 }
}

/// Rotation numbers `(1, l2, l3)` of an irreducible representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationNumbers {
    pub l2: i64,
    pub l3: i64,
}

impl RotationNumbers {
    pub const L1: i64 = 1;

    pub fn new(sphere: &BrieskornSphere, l2: i64, l3: i64) -> Result<Self> {
        if l2 % 2 != 0 || l3 % 2 != 0 || !(0 < l2 && l2 < sphere.p) || !(0 < l3 && l3 < sphere.q) {
            return domain(format!(
                "rotation numbers (1,{l2},{l3}) need even 0 < l2 < {} and 0 < l3 < {}",
                sphere.p, sphere.q
            ));
        }
        if !is_realizable(sphere, l2, l3) {
            return domain(format!("(1,{l2},{l3}) is not realized by a representation of {sphere}"));
        }
        Ok(RotationNumbers { l2, l3 })
    }

    /// `e = pq l1 + 2q l2 + 2p l3`.
    pub fn e(&self, sphere: &BrieskornSphere) -> BigInt {
        let (p, q) = (BigInt::from(sphere.p), BigInt::from(sphere.q));
        &p * &q * Self::L1 + 2 * &q * self.l2 + 2 * &p * self.l3
    }
}

impl fmt::Display for RotationNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1,{},{})", self.l2, self.l3)
    }
}

/// Whether the angles `(pi/2, pi l2/p, pi l3/q)` satisfy the strict
/// spherical triangle inequalities and sum to less than `2 pi`.
pub fn is_realizable(sphere: &BrieskornSphere, l2: i64, l3: i64) -> bool {
    // angles scaled by 2pq/pi
    let (p, q) = (sphere.p as i128, sphere.q as i128);
    let a = p * q;
    let b = 2 * q * l2 as i128;
    let c = 2 * p * l3 as i128;
    a < b + c && b < a + c && c < a + b && a + b + c < 4 * p * q
}

/// All irreducible representations, sorted by `(l2, l3)`.
pub fn enumerate_reps(sphere: &BrieskornSphere) -> Vec<RotationNumbers> {
    let mut out = Vec::new();
    for l2 in (2..sphere.p).step_by(2) {
        for l3 in (2..sphere.q).step_by(2) {
            if is_realizable(sphere, l2, l3) {
                out.push(RotationNumbers { l2, l3 });
            }
        }
    }
    out
}

fn check_inputs(sphere: &BrieskornSphere, seifert: &SeifertData, rot: &RotationNumbers) -> Result<()> {
    seifert.check(sphere)?;
    RotationNumbers::new(sphere, rot.l2, rot.l3)?;
    Ok(())
}

fn to_integer(value: Rational, what: &str) -> Result<BigInt> {
    if !value.is_integer() {
        return consistency(format!("{what} = {value} is not an integer"));
    }
    Ok(value.to_integer())
}

/// Floer grading `gr = e^2/pq + delta(p; b2, l2) + delta(q; b3, l3)`, exact.
pub fn fs_grading(sphere: &BrieskornSphere, seifert: &SeifertData, rot: &RotationNumbers) -> Result<BigInt> {
    check_inputs(sphere, seifert, rot)?;
    let (p, q) = (sphere.p, sphere.q);
    let e = rot.e(sphere);
    let value = Rational::new(&e * &e, BigInt::from(p) * q)
        + delta_exact(p, seifert.b2, rot.l2)?
        + delta_exact(q, seifert.b3, rot.l3)?;
    to_integer(value, &format!("gr{rot} on {sphere}"))
}

/// Exact rho-invariant:
/// `1 - 2/pq - 2 delta^t(p;b2,l2) - 2 delta^t(q;b3,l3) + 2 D(p;b2) + 2 D(q;b3)`.
pub fn rho_brieskorn_exact(sphere: &BrieskornSphere, seifert: &SeifertData, rot: &RotationNumbers) -> Result<Rational> {
    check_inputs(sphere, seifert, rot)?;
    let (p, q) = (sphere.p, sphere.q);
    let dt = delta_tau_exact(p, seifert.b2, rot.l2)? + delta_tau_exact(q, seifert.b3, rot.l3)?;
    let d = dedekind_d_exact(p, seifert.b2)? + dedekind_d_exact(q, seifert.b3)?;
    Ok(int(1) - ratio(2, p * q) - int(2 * dt) + d * int(2))
}

/// One `(4/n) sum cot(pi k/n) tan(pi b k/n) cos^2(pi k l/n)` block.
fn side_block(n: i64, b: i64, ell: i64) -> f64 {
    let sum = sum_over_k(n, |k| Some(cot_pi(k, n)? * tan_pi(b * k, n)? * cos_sq_pi(k * ell, n)));
    4.0 / n as f64 * sum.value
}

/// The rho-invariant evaluated directly from its cotangent-tangent-cosine sums.
pub fn rho_brieskorn_float(sphere: &BrieskornSphere, seifert: &SeifertData, rot: &RotationNumbers) -> Result<f64> {
    check_inputs(sphere, seifert, rot)?;
    let (p, q) = (sphere.p, sphere.q);
    Ok(1.0 - 2.0 / (p * q) as f64
        - side_block(p, seifert.b2, rot.l2)
        - side_block(q, seifert.b3, rot.l3))
}

/// The rho-invariant assembled from the lens-space pieces of the orbifold
/// cobordism: `1 - 2/pq - 2 delta^t_p - 2 delta^t_q - 4 eta(L(p,b2)) - 4 eta(L(q,b3))`,
/// where each eta carries the prefactor of its own lens space.
pub fn rho_brieskorn_via_eta(sphere: &BrieskornSphere, seifert: &SeifertData, rot: &RotationNumbers) -> Result<f64> {
    check_inputs(sphere, seifert, rot)?;
    let (p, q) = (sphere.p, sphere.q);
    let dt = delta_tau_float(p, seifert.b2, rot.l2)?.value + delta_tau_float(q, seifert.b3, rot.l3)?.value;
    let eta = eta_lens_float(p, seifert.b2)?.value + eta_lens_float(q, seifert.b3)?.value;
    Ok(1.0 - 2.0 / (p * q) as f64 - 2.0 * dt - 4.0 * eta)
}

/// Exact rho-invariant, checked against the direct float sums.
pub fn rho_brieskorn(sphere: &BrieskornSphere, seifert: &SeifertData, rot: &RotationNumbers) -> Result<Rational> {
    rho_brieskorn_with_tolerance(sphere, seifert, rot, DEFAULT_TOLERANCE).map(|(exact, _)| exact)
}

/// Returns `(exact, float)` after checking `|exact - float| <= tolerance`.
pub fn rho_brieskorn_with_tolerance(
    sphere: &BrieskornSphere,
    seifert: &SeifertData,
    rot: &RotationNumbers,
    tolerance: f64,
) -> Result<(Rational, f64)> {
    let exact = rho_brieskorn_exact(sphere, seifert, rot)?;
    let float = rho_brieskorn_float(sphere, seifert, rot)?;
    let gap = (exact.to_f64().unwrap_or(f64::NAN) - float).abs();
    if gap.is_nan() || gap > tolerance {
        return consistency(format!("rho{rot} on {sphere}: exact {exact} vs float {float} (gap {gap:e})"));
    }
    Ok((exact, float))
}

/// `mu = gr/2 + (1 - rho)/4`, exact.
pub fn mu_grading(sphere: &BrieskornSphere, seifert: &SeifertData, rot: &RotationNumbers) -> Result<BigInt> {
    let gr = fs_grading(sphere, seifert, rot)?;
    let rho = rho_brieskorn(sphere, seifert, rot)?;
    mu_from_parts(&gr, &rho, sphere, rot)
}

fn mu_from_parts(gr: &BigInt, rho: &Rational, sphere: &BrieskornSphere, rot: &RotationNumbers) -> Result<BigInt> {
    let value = Rational::new(gr.clone(), BigInt::from(2)) + (int(1) - rho) / int(4);
    to_integer(value, &format!("mu{rot} on {sphere}"))
}

/// Signature of the `(p,q)` torus knot: over `1 <= a < p`, `1 <= b < q`,
/// count `-1` when `a/p + b/q` lies in `(1/2, 3/2)` and `+1` otherwise.
pub fn torus_signature(p: i64, q: i64) -> Result<i64> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return domain(format!("T({p},{q}) needs coprime p, q >= 2"));
    }
    let pq = p as i128 * q as i128;
    let mut sigma = 0i64;
    for a in 1..p {
        for b in 1..q {
            // a/p + b/q = (aq + bp)/pq
            let twice = 2 * (a as i128 * q as i128 + b as i128 * p as i128);
            sigma += if pq < twice && twice < 3 * pq { -1 } else { 1 };
        }
    }
    Ok(sigma)
}

/// Invariants of one irreducible representation.
#[derive(Debug, Clone, PartialEq)]
pub struct FloerRecord {
    pub rot: RotationNumbers,
    pub e: BigInt,
    pub gr: BigInt,
    pub gr_mod8: u32,
    pub rho: Rational,
    pub rho_float: f64,
    pub mu: BigInt,
    pub mu_mod4: u32,
}

pub fn floer_record(
    sphere: &BrieskornSphere,
    seifert: &SeifertData,
    rot: &RotationNumbers,
    tolerance: f64,
) -> Result<FloerRecord> {
    let gr = fs_grading(sphere, seifert, rot)?;
    let (rho, rho_float) = rho_brieskorn_with_tolerance(sphere, seifert, rot, tolerance)?;
    let mu = mu_from_parts(&gr, &rho, sphere, rot)?;
    if residue(&(&mu - &gr), 2) != 0 {
        return consistency(format!("mu = {mu} and gr = {gr} differ in parity for {rot} on {sphere}"));
    }
    Ok(FloerRecord {
        rot: *rot,
        e: rot.e(sphere),
        gr_mod8: residue(&gr, 8),
        gr,
        rho,
        rho_float,
        mu_mod4: residue(&mu, 4),
        mu,
    })
}
