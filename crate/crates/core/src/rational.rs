//! Exact rational scalars and their canonical text form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational as Rational;

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"num/den"` or a bare integer `"num"`. Signs are allowed on either
/// part; whitespace is not.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or num/den"));
        }
        t.parse::<BigInt>().map_err(|_| err("expected an integer or num/den"))
    };
    let num = parse_int(num)?;
    let den = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` form: reduced, positive denominator, always with a
/// slash (`"5/1"`, `"0/1"`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("4/-2").unwrap(), int(-2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["1/0", "", "/3", "1.5", "x", "1/", " 1", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn canonical_form_round_trips() {
        for s in ["0/1", "5/1", "-3/7", "12345678901234567890123/2"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(format_rational(&parse_rational("10/4").unwrap()), "5/2");
    }
}
