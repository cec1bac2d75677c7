//! Floating-point evaluation of the cotangent sums.
//!
//! Every trigonometric value is taken at a rational multiple of pi, `pi*n/d`.
//! The helpers below reduce `n` exactly in integers before touching floating
//! point, so `cot(pi*(d-k)/d)` is bit-for-bit `-cot(pi*k/d)` and singular
//! arguments are detected by integer predicates.

use std::f64::consts::PI;

use crate::arith::{gcd, mod_inverse};
use crate::error::{consistency, domain, Result};
use crate::lens::InvolutionKind;

/// Imaginary residue allowed in the signature-defect route.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;

/// A summed cotangent expression together with bookkeeping about which
/// indices contributed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatSumResult {
    pub value: f64,
    /// Number of summands included.
    pub terms: usize,
    /// Number of singular indices left out (only ever non-zero for even `p`).
    pub skipped: usize,
}

impl FloatSumResult {
    pub const ZERO: FloatSumResult = FloatSumResult { value: 0.0, terms: 0, skipped: 0 };

    fn scaled(self, factor: f64) -> Self {
        FloatSumResult { value: self.value * factor, ..self }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `cot(pi*n/d)`, or `None` when `n` is a multiple of `d`.
pub fn cot_pi(n: i64, d: i64) -> Option<f64> {
    let r = n.rem_euclid(d);
    if r == 0 {
        return None;
    }
    if 2 * r == d {
        return Some(0.0);
    }
    if 2 * r < d {
        let x = PI * r as f64 / d as f64;
        Some(x.cos() / x.sin())
    } else {
        cot_pi(d - r, d).map(|v| -v)
    }
}

/// `tan(pi*n/d)`, or `None` when `2n = d (mod 2d)`.
pub fn tan_pi(n: i64, d: i64) -> Option<f64> {
    let r = n.rem_euclid(d);
    cot_pi(d - 2 * r, 2 * d)
}

/// `sin(pi*n/d)`.
pub fn sin_pi(n: i64, d: i64) -> f64 {
    let r = n.rem_euclid(2 * d);
    let (r, sign) = if r > d { (r - d, -1.0) } else { (r, 1.0) };
    let r = r.min(d - r);
    if r == 0 {
        return 0.0;
    }
    sign * (PI * r as f64 / d as f64).sin()
}

/// `cos(pi*n/d)`.
pub fn cos_pi(n: i64, d: i64) -> f64 {
    sin_pi(d - 2 * n.rem_euclid(2 * d), 2 * d)
}

/// `sin^2(pi*n/d)`.
pub fn sin_sq_pi(n: i64, d: i64) -> f64 {
    let s = sin_pi(n, d);
    s * s
}

/// `cos^2(pi*n/d)`.
pub fn cos_sq_pi(n: i64, d: i64) -> f64 {
    let c = cos_pi(n, d);
    c * c
}

/// Sums `term(k)` for `k = 1..p-1`, skipping indices where the term is
/// singular.
pub(crate) fn sum_over_k(p: i64, term: impl Fn(i64) -> Option<f64>) -> FloatSumResult {
    let mut acc = CompensatedSum::default();
    let (mut terms, mut skipped) = (0, 0);
    for k in 1..p {
        match term(k) {
            Some(v) => {
                acc.add(v);
                terms += 1;
            }
            None => skipped += 1,
        }
    }
    FloatSumResult { value: acc.value(), terms, skipped }
}

fn check_coprime(p: i64, q: i64) -> Result<()> {
    if p < 2 {
        return domain(format!("modulus p must be at least 2, got {p}"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("p = {p} and q = {q} are not coprime"));
    }
    Ok(())
}

fn check_odd(p: i64) -> Result<()> {
    if p % 2 == 0 {
        return domain(format!("p = {p} must be odd"));
    }
    Ok(())
}

/// `delta(p;q,l) = (2/p) sum cot(pi k/p) cot(pi q k/p) sin^2(pi k l/p)`.
pub fn delta_float(p: i64, q: i64, ell: i64) -> Result<FloatSumResult> {
    check_coprime(p, q)?;
    let r = sum_over_k(p, |k| Some(cot_pi(k, p)? * cot_pi(q * k, p)? * sin_sq_pi(k * ell, p)));
    Ok(r.scaled(2.0 / p as f64))
}

/// `delta^t(p;q,l) = (2/p) sum cot(pi k/p) cot(pi q k/p + pi/2) sin^2(pi k l/p)`.
///
/// For even `p` the index with `2qk = p (mod 2p)` is singular and skipped.
pub fn delta_tau_float(p: i64, q: i64, ell: i64) -> Result<FloatSumResult> {
    check_coprime(p, q)?;
    let r = sum_over_k(p, |k| Some(-cot_pi(k, p)? * tan_pi(q * k, p)? * sin_sq_pi(k * ell, p)));
    Ok(r.scaled(2.0 / p as f64))
}

fn shifted_cot_sum(p: i64, b: i64) -> FloatSumResult {
    sum_over_k(p, |k| Some(-cot_pi(k, p)? * tan_pi(b * k, p)?))
}

/// `D(p;b) = (2/p) sum cot(pi k/p) cot(pi b k/p + pi/2)` for odd `p`.
pub fn dedekind_d_float(p: i64, b: i64) -> Result<FloatSumResult> {
    check_coprime(p, b)?;
    check_odd(p)?;
    Ok(shifted_cot_sum(p, b).scaled(2.0 / p as f64))
}

/// Equivariant eta-invariant of the involution on `L(p,b)` for the trivial
/// U(1) representation: `-(1/p) sum cot(pi k/p) cot(pi b k/p + pi/2)`.
///
/// The same expression serves the `L(q, b3)` factor of a Brieskorn sphere
/// with prefactor `1/q`. The value is also checked against `-D(p;b)/2`
/// evaluated with an independent summation order.
pub fn eta_lens_float(p: i64, b: i64) -> Result<FloatSumResult> {
    check_coprime(p, b)?;
    let direct = shifted_cot_sum(p, b).scaled(-1.0 / p as f64);
    // descending k, halved D
    let mut acc = CompensatedSum::default();
    for k in (1..p).rev() {
        if let (Some(c), Some(t)) = (cot_pi(k, p), tan_pi(b * k, p)) {
            acc.add(-c * t);
        }
    }
    let via_d = -0.5 * (2.0 / p as f64) * acc.value();
    if (direct.value - via_d).abs() > 1e-9 * (1.0 + direct.value.abs()) {
        return consistency(format!(
            "eta(L({p},{b})) routes disagree: {} vs {via_d}",
            direct.value
        ));
    }
    Ok(direct)
}

/// Signature defect `eta(tau g^k, S^3)` at the isolated fixed point of the
/// lifted map; `None` where the fixed set is a disk (even `p` only).
fn signature_defect(p: i64, q: i64, k: i64, inv: InvolutionKind) -> Option<f64> {
    match inv {
        // rotation numbers (p + 2k, 2kq) mod 2p
        InvolutionKind::BPrime => Some(tan_pi(k, p)? * cot_pi(k * q, p)?),
        // rotation numbers (2k, p + 2qk) mod 2p
        InvolutionKind::B => Some(cot_pi(k, p)? * tan_pi(q * k, p)?),
        InvolutionKind::A => None,
    }
}

/// Rho-invariant of `L(p,q)` assembled from signature defects weighted by
/// `chi(g^k) - 1 = exp(2 pi i k l/p) - 1`, averaged over the group.
///
/// The imaginary part cancels between `k` and `p - k`; it is checked against
/// [`IMAGINARY_TOLERANCE`] and discarded.
pub fn rho_via_defects(p: i64, q: i64, ell: i64, inv: InvolutionKind) -> Result<FloatSumResult> {
    check_coprime(p, q)?;
    if inv == InvolutionKind::A {
        return domain("the defect route covers only involutions B and B'");
    }
    let ell = ell.rem_euclid(p);
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let (mut terms, mut skipped) = (0, 0);
    for k in 1..p {
        let Some(defect) = signature_defect(p, q, k, inv) else {
            skipped += 1;
            continue;
        };
        let phase = 2 * ((k * ell) % p);
        re.add(defect * (cos_pi(phase, p) - 1.0));
        im.add(defect * sin_pi(phase, p));
        terms += 1;
    }
    let scale = 1.0 / p as f64;
    let imaginary = im.value() * scale;
    if imaginary.abs() >= IMAGINARY_TOLERANCE {
        return consistency(format!(
            "defect sum for L({p},{q}), l = {ell} has imaginary part {imaginary:e}"
        ));
    }
    Ok(FloatSumResult { value: re.value() * scale, terms, skipped })
}

/// Closed form evaluated in floating point for involutions B, B'.
///
/// * `BPrime`, `[z1,z2] -> [-z1,z2]`: `-(2/p) sum tan(pi k/p) cot(pi k q/p) sin^2(pi k l/p)`
/// * `B`, `[z1,z2] -> [z1,-z2]`: `-(2/p) sum cot(pi k/p) tan(pi q k/p) sin^2(pi k l/p)`
///
/// Singular indices (even `p`) are left out.
pub fn lens_closed_form_float(p: i64, q: i64, ell: i64, inv: InvolutionKind) -> Result<FloatSumResult> {
    check_coprime(p, q)?;
    let r = match inv {
        InvolutionKind::A => return Ok(FloatSumResult::ZERO),
        InvolutionKind::BPrime => {
            sum_over_k(p, |k| Some(tan_pi(k, p)? * cot_pi(k * q, p)? * sin_sq_pi(k * ell, p)))
        }
        InvolutionKind::B => {
            sum_over_k(p, |k| Some(cot_pi(k, p)? * tan_pi(q * k, p)? * sin_sq_pi(k * ell, p)))
        }
    };
    Ok(r.scaled(-2.0 / p as f64))
}

/// Index `k` (if any) at which the B-type sums are singular: `k = q* p/2`.
pub fn singular_index_b(p: i64, q: i64) -> Option<i64> {
    if p % 2 != 0 {
        return None;
    }
    let qs = mod_inverse(q, p).ok()?;
    Some((qs * (p / 2)).rem_euclid(p))
}
