use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`). A zero denominator is an error.
pub fn parse_rational(text: &str) -> Result<Rational, FieldError> {
    let t = text.trim();
    let bad = || FieldError::Parse(format!("malformed rational {text:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(FieldError::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"p/q"` text, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// gcd of a slice of integers (non-negative, zero for an all-zero slice).
pub(crate) fn content(values: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        if v.is_zero() {
            continue;
        }
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Lossy conversion that survives numerators far outside the f64 range.
pub(crate) fn ratio_to_f64(n: &BigInt, d: &BigInt) -> f64 {
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb - db - 60).max(0) as usize;
    let lshift = (db - nb + 60).max(0) as usize;
    let q = (n << lshift) / (d << shift);
    let mant = bigint_to_f64(&q);
    mant * 2f64.powi((shift as i64 - lshift as i64) as i32)
}

pub(crate) fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(if n.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(matches!(parse_rational("1/0"), Err(FieldError::Parse(_))));
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn lowest_terms_invariant() {
        let r = parse_rational("-10/-4").unwrap();
        assert_eq!(r.numer(), &BigInt::from(5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn f64_of_huge_ratio() {
        let n = BigInt::from(3) << 2000usize;
        let d = BigInt::from(2) << 2000usize;
        assert!((ratio_to_f64(&n, &d) - 1.5).abs() < 1e-12);
    }
}
