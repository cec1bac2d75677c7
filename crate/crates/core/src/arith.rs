//! Exact arithmetic substrate: gcd/inverse helpers and classical Dedekind
//! sums evaluated through the reciprocity law.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// Reduced fraction over arbitrary-precision integers. The denominator is
/// always positive and coprime to the numerator.
pub type Rational = BigRational;

/// Builds `num / den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn extended_gcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return domain("extended_gcd(0, 0) is undefined");
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_x, mut x) = (1i128, 0i128);
    let (mut old_y, mut y) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (old_r, old_x, old_y) = (-old_r, -old_x, -old_y);
    }
    Ok((old_r as i64, old_x as i64, old_y as i64))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Multiplicative inverse of `a` modulo `m`, in `[1, m-1]`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return domain(format!("modulus must be at least 2, got {m}"));
    }
    let a = a.rem_euclid(m);
    let (g, x, _) = extended_gcd(a, m)?;
    if g != 1 {
        return domain(format!("{a} is not invertible modulo {m} (gcd {g})"));
    }
    Ok(x.rem_euclid(m))
}

/// Classical Dedekind sum `s(b, p) = sum_{k=1}^{p-1} ((k/p)) ((kb/p))`.
///
/// Evaluated with the reciprocity law
/// `s(b,p) + s(p,b) = -1/4 + (b/p + p/b + 1/(pb)) / 12`, alternating with the
/// reduction `s(p, b) = s(p mod b, b)`, so the number of steps is that of the
/// Euclidean algorithm on `(p, b)`.
pub fn dedekind_sum(b: i64, p: i64) -> Result<Rational> {
    if p < 1 {
        return domain(format!("Dedekind sum needs p >= 1, got {p}"));
    }
    let mut b = b.rem_euclid(p);
    let mut p = p;
    if gcd(b, p) != 1 {
        return domain(format!("Dedekind sum s({b}, {p}) needs coprime arguments"));
    }
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    let mut acc = Rational::zero();
    let mut positive = true;
    // s(0, 1) = 0 terminates the recursion.
    while p > 1 {
        let (bb, pp) = (BigInt::from(b), BigInt::from(p));
        let step = Rational::new(&bb * &bb + &pp * &pp + 1, BigInt::from(12) * &bb * &pp) - &quarter;
        if positive {
            acc += step;
        } else {
            acc -= step;
        }
        positive = !positive;
        (b, p) = (p % b, b);
    }
    Ok(acc)
}

/// Reduces a big integer into `[0, m)`.
pub fn residue(n: &BigInt, m: u32) -> u32 {
    let m = BigInt::from(m);
    let r = n.mod_floor(&m);
    u32::try_from(&r).expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_gcd_examples() {
        assert_eq!(extended_gcd(21, 14).unwrap(), (7, 1, -1));
        assert_eq!(extended_gcd(1, 0).unwrap(), (1, 1, 0));
        let (g, x, y) = extended_gcd(6, 35).unwrap();
        assert_eq!(g, 1);
        assert_eq!(6 * x + 35 * y, 1);
        let (g, x, y) = extended_gcd(-12, 18).unwrap();
        assert_eq!(g, 6);
        assert_eq!(-12 * x + 18 * y, 6);
        assert!(extended_gcd(0, 0).is_err());
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(2, 3).unwrap(), 2);
        assert_eq!(mod_inverse(5, 7).unwrap(), 3);
        for n in 1..200 {
            assert_eq!(mod_inverse(4 * n + 1, 6 * n + 1).unwrap(), 3, "n = {n}");
        }
        assert_eq!(mod_inverse(-2, 7).unwrap(), 3);
        assert!(mod_inverse(6, 9).is_err());
        assert!(mod_inverse(3, 1).is_err());
    }

    #[test]
    fn dedekind_sum_small_values() {
        assert_eq!(dedekind_sum(1, 3).unwrap(), ratio(1, 18));
        assert_eq!(dedekind_sum(2, 3).unwrap(), ratio(-1, 18));
        assert_eq!(dedekind_sum(5, 7).unwrap(), ratio(-1, 14));
        assert_eq!(dedekind_sum(2, 5).unwrap(), Rational::zero());
        assert_eq!(dedekind_sum(0, 1).unwrap(), Rational::zero());
        assert_eq!(dedekind_sum(-2, 7).unwrap(), dedekind_sum(5, 7).unwrap());
        assert!(dedekind_sum(4, 6).is_err());
        assert!(dedekind_sum(1, 0).is_err());
    }

    #[test]
    fn dedekind_sum_of_one() {
        // s(1, p) = (p - 1)(p - 2) / (12 p)
        for p in 1..60 {
            assert_eq!(dedekind_sum(1, p).unwrap(), ratio((p - 1) * (p - 2), 12 * p));
        }
    }

    #[test]
    fn residue_of_negative() {
        assert_eq!(residue(&BigInt::from(-9), 8), 7);
        assert_eq!(residue(&BigInt::from(175), 8), 7);
    }
}
