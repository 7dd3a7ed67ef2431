//! Exact scalar arithmetic: arbitrary-precision rationals and integers.
//!
//! Every coefficient in this crate is a `Rat` (reduced, positive denominator,
//! both guaranteed by `num_rational`). No floating point appears anywhere in
//! a computation path; command-line rationals are `p/q` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = BigRational;
pub type Int = BigInt;

/// Parse a rational from `p` or `p/q` decimal strings.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = Int::from_str(num).map_err(|_| format!("invalid numerator in `{s}`"))?;
    let q = Int::from_str(den).map_err(|_| format!("invalid denominator in `{s}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(p, q))
}

/// Canonical `p/q` form; integers print without the `/1`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Exact integer value of a rational known to be integral.
pub fn rat_to_int(r: &Rat) -> Option<Int> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `n! / (parts_1! ... parts_m!)`; the parts must sum to `n`.
pub fn multinomial(n: u64, parts: &[u64]) -> Int {
    debug_assert_eq!(parts.iter().sum::<u64>(), n);
    let mut acc = Int::one();
    let mut rest = n;
    for &p in parts {
        acc *= binomial(rest, p);
        rest -= p;
    }
    acc
}

pub fn int_pow(base: i64, exp: u32) -> Int {
    num_traits::pow::pow(Int::from(base), exp as usize)
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(rat_from_str("3/4").unwrap(), rat(3, 4));
        assert_eq!(rat_from_str("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(rat_from_str("5").unwrap(), rat_int(5));
        assert_eq!(rat_to_string(&rat(-3, 4)), "-3/4");
        assert_eq!(rat_to_string(&rat_int(7)), "7");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 1), Int::from(4));
        assert_eq!(binomial(16, 8), Int::from(12870));
        assert_eq!(binomial(3, 5), Int::zero());
        assert_eq!(multinomial(4, &[2, 1, 1]), Int::from(12));
    }
}
