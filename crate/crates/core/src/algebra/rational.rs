//! Exact rationals (arbitrary precision) and small helpers around them.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back on digit-wise division for huge numerators/denominators.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root, if `q` is the square of a rational.
pub fn sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Parses `p`, `-p` or `p/q` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |m: &str| Error::Parse {
        offset: 0,
        message: format!("{m}: `{s}`"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad("bad rational"))?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares() {
        assert_eq!(sqrt_exact(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(sqrt_exact(&rat(8)), None);
        assert_eq!(sqrt_exact(&rat(-1)), None);
        assert_eq!(sqrt_exact(&rat(0)), Some(rat(0)));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(format_rational(&frac(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_conversion() {
        assert!((to_f64(&frac(1, 3)) - 1.0 / 3.0).abs() < 1e-16);
    }
}
