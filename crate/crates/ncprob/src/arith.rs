//! Exact-arithmetic helpers shared across the crate: rational parsing and
//! formatting, binomial coefficients, and the Catalan/Bell sequences used as
//! counting cross-checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Failure to interpret a string as an exact rational.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Parse an exact rational from `p/q`, an integer, or a finite decimal.
///
/// `"3/2"`, `"-7"`, `"0.25"` and `"1e-2"` are all accepted; decimals are
/// converted exactly (`0.1` becomes `1/10`, not the nearest double).
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let s = s.trim();
    let err = || ParseRationalError(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    // Integer, decimal, or scientific notation, handled exactly.
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.chars().any(|c| !c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{}{}", int_part, frac_part);
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(err());
    }
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let scale = frac_part.len() as i32;
    let mut value = BigRational::from(n);
    let shift = exp - scale;
    let ten = BigInt::from(10);
    if shift >= 0 {
        value *= BigRational::from(ten.pow(shift as u32));
    } else {
        value /= BigRational::from(ten.pow((-shift) as u32));
    }
    Ok(value)
}

/// Render a rational as `p/q` (or just `p` when the denominator is 1).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering for display columns; exact rationals stay authoritative.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite double into a rational.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

#[cfg(test)]
pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Binomial coefficient as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// Bell number via the Bell-triangle recurrence.
pub fn bell(n: u64) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        row = next;
    }
    row[0].clone()
}

/// Integer power of a rational with signed exponent (`base != 0` for negative exponents).
pub fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow::pow(base.clone(), (-exp) as usize).recip()
    }
}

/// Absolute value helper (num-traits `Signed` re-exported for convenience).
pub fn rational_abs(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/2").unwrap(), big(3) / big(2));
        assert_eq!(parse_rational("-7").unwrap(), big(-7));
        assert_eq!(parse_rational("0.25").unwrap(), big(1) / big(4));
        assert_eq!(parse_rational("-1.5").unwrap(), big(-3) / big(2));
        assert_eq!(parse_rational("1e-2").unwrap(), big(1) / big(100));
        assert_eq!(parse_rational("2.5e3").unwrap(), big(2500));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for s in ["3/2", "-7", "0", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn catalan_and_bell_tables() {
        let cats: Vec<u64> = (0..=14).map(|n| catalan(n).to_u64().unwrap()).collect();
        assert_eq!(
            cats,
            vec![
                1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900, 2674440
            ]
        );
        let bells: Vec<u64> = (0..=12).map(|n| bell(n).to_u64().unwrap()).collect();
        assert_eq!(
            bells,
            vec![1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]
        );
    }

    #[test]
    fn signed_powers() {
        let half = big(1) / big(2);
        assert_eq!(rational_pow(&half, 3), big(1) / big(8));
        assert_eq!(rational_pow(&half, -2), big(4));
        assert_eq!(rational_pow(&half, 0), big(1));
    }
}
