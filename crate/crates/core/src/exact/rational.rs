//! Helpers around the arbitrary-precision rational scalar.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction with a positive denominator, always kept in lowest terms.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// `(-1)^exp` as a rational.
pub fn sign_pow(exp: usize) -> Rational {
    if exp.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Positive part `x_+`.
pub fn positive_part(x: i64) -> usize {
    if x > 0 {
        x as usize
    } else {
        0
    }
}

/// Parses `"num/den"` or a bare integer. The denominator must be nonzero.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => from_decimal_pair(num.trim(), den.trim()),
        None => {
            let num: BigInt = text
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer or fraction: {text:?}")))?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// Builds a rational from decimal numerator and denominator strings.
pub fn from_decimal_pair(num: &str, den: &str) -> Result<Rational> {
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

/// `[numerator, denominator]` as decimal strings.
pub fn to_decimal_pair(value: &Rational) -> [String; 2] {
    [value.numer().to_string(), value.denom().to_string()]
}

/// Always `"num/den"`, including integers (`"3/1"`), so output is uniform.
pub fn format_fraction(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// The exact rational value of a finite double.
pub fn from_f64_exact(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Scientific notation with `digits` significant digits, rounded half away
/// from zero, e.g. `-2.809929189497896000000000e-2`.
pub fn to_scientific(value: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if value.is_zero() {
        return format!("0.{}e0", "0".repeat(digits - 1));
    }
    let negative = value.is_negative();
    let a = value.abs();

    // Estimate the decimal exponent from bit lengths, then correct.
    let bits = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut exp10 = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    loop {
        let lower = pow_signed(&ten, exp10);
        if a < lower {
            exp10 -= 1;
            continue;
        }
        if a >= &lower * &ten {
            exp10 += 1;
            continue;
        }
        break;
    }

    let shift = digits as i64 - 1 - exp10;
    let scaled = &a * pow_signed(&ten, shift);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut mantissa = q;
    if &r * BigInt::from(2) >= *scaled.denom() {
        mantissa += 1;
    }
    let limit = num_traits::pow(BigInt::from(10), digits);
    if mantissa >= limit {
        mantissa /= 10;
        exp10 += 1;
    }
    let s = mantissa.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp10}")
    } else {
        format!("{sign}{head}.{tail}e{exp10}")
    }
}

fn pow_signed(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        pow(base, exp as usize)
    } else {
        pow(base, (-exp) as usize).recip()
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Binomial coefficient `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub fn sign_of(value: &Rational) -> i8 {
    match value.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn denominator_is_normalised_positive() {
        let r = parse_rational("3/-6").unwrap();
        assert_eq!(to_decimal_pair(&r), ["-1".to_string(), "2".to_string()]);
    }

    #[test]
    fn scientific_formatting() {
        assert_eq!(to_scientific(&rat(1, 8), 3), "1.25e-1");
        assert_eq!(to_scientific(&rat(-1, 3), 4), "-3.333e-1");
        assert_eq!(to_scientific(&int(999_999), 3), "1.00e6");
        assert_eq!(to_scientific(&int(100), 1), "1e2");
        assert_eq!(to_scientific(&Rational::zero(), 2), "0.0e0");
    }

    #[test]
    fn pow_and_positive_part() {
        assert_eq!(pow(&rat(1, 2), 8), rat(1, 256));
        assert_eq!(pow(&rat(5, 7), 0), int(1));
        assert_eq!(positive_part(-3), 0);
        assert_eq!(positive_part(4), 4);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(24, 12), BigInt::from(2_704_156));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
    }

    #[test]
    fn float_round_trip_is_exact() {
        let x = -0.028_099_291_894_978_96_f64;
        assert_eq!(to_f64(&from_f64_exact(x)), x);
    }
}
