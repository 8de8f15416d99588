//! Arbitrary-precision rationals, always in lowest terms with positive
//! denominator. Bit-for-bit reproducibility of every computation in this
//! crate rests on the exactness of this type.

use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A rational number with arbitrary-precision numerator and denominator.
///
/// `num_rational::BigRational` keeps values reduced and the denominator
/// positive, so equality is value equality.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q` in decimal, e.g. `4/3`, `-8/3`, `1`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` in decimal.
pub fn rat_from_str(s: &str) -> Result<Rat, Error> {
    let bad = || Error::BadRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Integer square root test: `Some(s)` with `s*s == n` when `n` is a perfect
/// square, `None` otherwise (negative numbers are never squares).
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = num_integer::Roots::sqrt(n);
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for s in ["4/3", "-8/3", "1", "0", "-3", "7/2"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // non-reduced input normalizes
        assert_eq!(rat_to_string(&rat_from_str("6/4").unwrap()), "3/2");
        assert_eq!(rat_to_string(&rat_from_str("4/-2").unwrap()), "-2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(perfect_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(perfect_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(perfect_sqrt(&BigInt::from(32)), None);
        assert_eq!(perfect_sqrt(&BigInt::from(-4)), None);
    }
}
