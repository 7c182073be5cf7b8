//! Exact rational scalars.
//!
//! All geometry in this crate is done on arbitrary-precision rationals so
//! that touching-versus-separated decisions are never tolerance-dependent.
//! `num_rational::BigRational` already maintains the representation
//! invariants we need (reduced fraction, positive denominator), so it is the
//! scalar type; this module adds the construction, parsing and formatting
//! helpers used throughout.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `1/3^k`.
pub fn third_pow(k: usize) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(3).pow(k as u32))
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::invalid(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Always `"num/den"`, including `"0/1"` and `"1/1"`. Machine-readable
/// outputs use this form exclusively; round-trips through
/// [`parse_rational`] are bit-exact.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy decimal value, for human-facing summaries only.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Decimal with 6 significant digits, for human-facing summaries only.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // strip trailing zeros but keep at least one digit after the point
    if s.contains('.') {
        let t = s.trim_end_matches('0');
        let t = t.strip_suffix('.').unwrap_or(t);
        t.to_string()
    } else {
        s
    }
}

/// Sum of squares of the entries, exact.
pub fn sum_of_squares(v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for x in v {
        acc += x * x;
    }
    acc
}

/// Exact check of `a <= b + c` for non-negative values given as squares.
///
/// With `a = sqrt(a2)` etc. the inequality is equivalent to
/// `a2 <= b2 + c2 + 2*sqrt(b2*c2)`, and after isolating the root to
/// `(a2 - b2 - c2)^2 <= 4*b2*c2` whenever the left side is positive.
/// Everything stays rational, so no square root is ever taken.
pub fn sqrt_triangle_le(a2: &Rational, b2: &Rational, c2: &Rational) -> bool {
    debug_assert!(!a2.is_negative() && !b2.is_negative() && !c2.is_negative());
    let lhs = a2 - b2 - c2;
    if !lhs.is_positive() {
        return true;
    }
    &lhs * &lhs <= rat_int(4) * b2 * c2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["2/3", "-7/9", "0/1", "5", "-12/30"] {
            let r = parse_rational(s).unwrap();
            let back = parse_rational(&format_rational(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert_eq!(format_rational(&rat(-12, 30)), "-2/5");
        assert_eq!(format_rational(&rat_int(0)), "0/1");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn sig6_trims() {
        assert_eq!(sig6(0.6666666666), "0.666667");
        assert_eq!(sig6(1.0 / 9.0), "0.111111");
        assert_eq!(sig6(0.5), "0.5");
        assert_eq!(sig6(0.0), "0");
    }

    proptest! {
        // reduced form and exact reconstruction of a/b + c/d
        #[test]
        fn addition_is_exact_and_reduced(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let x = rat(a, b) + rat(c, d);
            let expected = Rational::new(BigInt::from(a * d + c * b), BigInt::from(b * d));
            prop_assert_eq!(&x, &expected);
            prop_assert!(x.denom() > &BigInt::from(0));
            prop_assert!(num_integer::gcd(x.numer().abs(), x.denom().clone()) == BigInt::one());
        }

        #[test]
        fn triangle_check_matches_floats(a2 in 0i64..1000, b2 in 0i64..1000, c2 in 0i64..1000) {
            let exact = sqrt_triangle_le(&rat_int(a2), &rat_int(b2), &rat_int(c2));
            let float = (a2 as f64).sqrt() <= (b2 as f64).sqrt() + (c2 as f64).sqrt() + 1e-9;
            prop_assert_eq!(exact, float);
        }
    }
}
