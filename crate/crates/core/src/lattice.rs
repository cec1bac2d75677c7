//! Exact evaluation of the cotangent sums through lattice-point counts.
//!
//! For coprime `(p, q)` and even `l` with `0 < l < p`, let `q*` be the inverse
//! of `q` mod `p` and `M = q* l - 1`. Expanding the sums over `p`-th roots of
//! unity gives
//!
//! ```text
//! delta^t(p;q,l) = 2 S_int + S_l + S_0 + 1
//! delta(p;q,l)   = -2 q* l^2 / p + (2 N_int + N_l + N_0) + 1
//! ```
//!
//! where, over `j = 1..M`, `N_int` counts `j` with `qj mod p` in `[1, l-1]`,
//! `N_l` those with `qj = l (mod p)`, `N_0` those with `qj = 0 (mod p)`, and
//! the `S_*` are the same counts with each `j` weighted by `(-1)^j`.
//! Geometrically these are the points `(j, qj/p - i/p)` of a parallelogram,
//! interior points counted twice.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{dedekind_sum, gcd, int, mod_inverse, ratio, Rational};
use crate::error::{consistency, domain, Result};

/// Lattice-point counts of the parallelogram attached to `(p, q, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParallelogramCount {
    /// Pairs `(i, j)`, `1 <= i <= l-1`, `1 <= j <= q* l - 1`, with `qj = i (mod p)`.
    pub interior: u64,
    /// `j` with `qj = l (mod p)`.
    pub on_ell_line: u64,
    /// `j` with `qj = 0 (mod p)`.
    pub on_axis: u64,
    pub signed_interior: i64,
    pub signed_ell: i64,
    pub signed_axis: i64,
}

impl ParallelogramCount {
    /// `#^s P`: signed count with interior points of weight two.
    pub fn signed_total(&self) -> i64 {
        2 * self.signed_interior + self.signed_ell + self.signed_axis
    }

    /// `# P`: unsigned count with interior points of weight two.
    pub fn unsigned_total(&self) -> u64 {
        2 * self.interior + self.on_ell_line + self.on_axis
    }
}

/// Number and signed number (weight `(-1)^j`) of `j` in `[1, max_j]` with
/// `j = start (mod p)`.
fn progression_counts(max_j: i64, start: i64, p: i64) -> (u64, i64) {
    let first = if start == 0 { p } else { start };
    if first > max_j {
        return (0, 0);
    }
    let n = (max_j - first) / p + 1;
    let sign = if first % 2 == 0 { 1 } else { -1 };
    let signed = if p % 2 == 0 { sign * n } else { sign * (n % 2) };
    (n as u64, signed)
}

fn validate(p: i64, q: i64) -> Result<i64> {
    if p < 2 {
        return domain(format!("modulus p must be at least 2, got {p}"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("p = {p} and q = {q} are not coprime"));
    }
    Ok(q.rem_euclid(p))
}

/// Counts the parallelogram points for `(p, q, l)`.
///
/// `q` and `l` are reduced mod `p` first; the reduced `l` must be even and
/// non-zero. Runs in `O(l)` by counting each residue class of `j` as an
/// arithmetic progression.
pub fn count_parallelogram(p: i64, q: i64, ell: i64) -> Result<ParallelogramCount> {
    let q = validate(p, q)?;
    let ell = ell.rem_euclid(p);
    if ell == 0 {
        return domain(format!("l must not be divisible by p = {p}"));
    }
    if ell % 2 != 0 {
        return domain(format!("l = {ell} (mod {p}) must be even"));
    }
    let q_star = mod_inverse(q, p)?;
    let max_j = q_star * ell - 1;
    // j with qj = r (mod p) are exactly j = q* r (mod p)
    let class = |r: i64| progression_counts(max_j, (q_star * r).rem_euclid(p), p);

    let mut out = ParallelogramCount::default();
    for r in 1..ell {
        let (n, s) = class(r);
        out.interior += n;
        out.signed_interior += s;
    }
    (out.on_ell_line, out.signed_ell) = class(ell);
    (out.on_axis, out.signed_axis) = class(0);
    Ok(out)
}

/// Reduces `l` mod odd `p` and reflects it to `p - l` if needed, giving the
/// even representative; the defining sums only see `sin^2(pi k l/p)`.
pub fn even_representative(p: i64, ell: i64) -> i64 {
    let ell = ell.rem_euclid(p);
    if ell % 2 == 0 {
        ell
    } else {
        p - ell
    }
}

fn require_odd(p: i64) -> Result<()> {
    if p % 2 == 0 {
        return domain(format!("exact evaluation needs odd p, got {p}"));
    }
    Ok(())
}

/// Exact `delta^t(p;q,l) = #^s P + 1` for odd `p`. Always an odd integer.
pub fn delta_tau_exact(p: i64, q: i64, ell: i64) -> Result<i64> {
    validate(p, q)?;
    require_odd(p)?;
    let counts = count_parallelogram(p, q, even_representative(p, ell))?;
    let value = counts.signed_total() + 1;
    if value.rem_euclid(2) != 1 {
        return consistency(format!("delta^t({p};{q},{ell}) = {value} is not odd"));
    }
    Ok(value)
}

/// Exact Casson-Gordon sum `delta(p;q,l) = -2 q* l^2 / p + #P + 1`.
///
/// `l` is reduced mod `p`; for odd `p` an odd residue is reflected to its even
/// partner `p - l`.
pub fn delta_exact(p: i64, q: i64, ell: i64) -> Result<Rational> {
    let q = validate(p, q)?;
    let ell = if p % 2 == 1 { even_representative(p, ell) } else { ell.rem_euclid(p) };
    let counts = count_parallelogram(p, q, ell)?;
    let q_star = mod_inverse(q, p)?;
    let ell_big = BigInt::from(ell);
    let correction = Rational::new(-2 * BigInt::from(q_star) * &ell_big * &ell_big, BigInt::from(p));
    Ok(correction + int(counts.unsigned_total() as i64 + 1))
}

/// Exact `D(p;b) = 16 s(2b, p) - 8 s(b, p)` for odd `p`, from
/// `tan x = cot x - 2 cot 2x` and `s(b,p) = (1/4p) sum cot(pi k/p) cot(pi b k/p)`.
pub fn dedekind_d_exact(p: i64, b: i64) -> Result<Rational> {
    let b = validate(p, b)?;
    require_odd(p)?;
    let s2 = dedekind_sum((2 * b) % p, p)?;
    let s1 = dedekind_sum(b, p)?;
    Ok(s2 * int(16) - s1 * int(8))
}

/// Euclidean-type sequences attached to `(p, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DieterSequences {
    /// `a_0 = p, a_1 = b, a_{i+1} = a_{i-1} - a_i q_i`, ending with the first zero.
    pub a: Vec<i64>,
    /// `q_i = floor(a_{i-1} / a_i)`, `i = 1..N-1`.
    pub quotients: Vec<i64>,
    /// `s_i = s_{i-1} q_i + s_{i-2}` from `s_{-1} = 0, s_0 = 1`; entries `s_1..`.
    pub s: Vec<i64>,
    /// `x_{i+1} = x_{i-1} - x_i q_i` from `x_0 = 0, x_1 = 1/2`.
    pub x: Vec<Rational>,
}

pub fn dieter_sequences(p: i64, b: i64) -> Result<DieterSequences> {
    if !(0 < b && b < p) {
        return domain(format!("need 0 < b < p, got b = {b}, p = {p}"));
    }
    if gcd(p, b) != 1 {
        return domain(format!("p = {p} and b = {b} are not coprime"));
    }
    let mut a = vec![p, b];
    let mut quotients = Vec::new();
    let (mut s_prev2, mut s_prev) = (0i64, 1i64);
    let mut s = Vec::new();
    let mut x = vec![Rational::zero(), ratio(1, 2)];
    while *a.last().unwrap() != 0 {
        let i = a.len() - 1;
        let qi = a[i - 1] / a[i];
        quotients.push(qi);
        a.push(a[i - 1] - a[i] * qi);
        let si = s_prev * qi + s_prev2;
        s.push(si);
        (s_prev2, s_prev) = (s_prev, si);
        let next = &x[i - 1] - &x[i] * int(qi);
        x.push(next);
    }
    Ok(DieterSequences { a, quotients, s, x })
}

/// `[x; y, z]`: whether `z = m y (mod x)` for some `1 <= m <= y* - 1`.
pub fn bracket_indicator(x: i64, y: i64, z: i64) -> Result<bool> {
    let y_star = mod_inverse(y, x)?;
    // the unique m in [0, x) with m y = z
    let m = (z.rem_euclid(x) as i128 * y_star as i128).rem_euclid(x as i128) as i64;
    Ok(m >= 1 && m < y_star)
}

/// Lawson's count `N(q; 2b, l)` reduced mod 4:
/// `-1 - 2 sum_{k=1}^{l-1} [q; 2b, k+1]`.
pub fn lawson_n_mod4(q: i64, twob: i64, ell: i64) -> Result<u8> {
    if ell <= 0 || ell % 2 != 0 {
        return domain(format!("l = {ell} must be a positive even integer"));
    }
    let mut hits = 0i64;
    for k in 1..ell {
        if bracket_indicator(q, twob, k + 1)? {
            hits += 1;
        }
    }
    Ok((-1 - 2 * hits).rem_euclid(4) as u8)
}
