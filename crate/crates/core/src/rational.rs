//! Exact rational arithmetic used for every by-construction degree bound.
//!
//! Averages, expansion thresholds and schedule constants are kept as
//! `BigRational` so that inequalities lifted from the construction are checked
//! with tolerance zero. Floating point appears only where an exponent is
//! irrational (`(log n)^c` style quantities), and those comparisons go through
//! [`guarded_ge`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

pub type Rat = BigRational;

/// Relative guard band for comparisons that involve a double-precision side.
/// Near-ties resolve in the certifying direction so that verdicts are stable
/// under rounding of `(log n)^c`.
pub const GUARD_BAND: f64 = 1e-12;

pub fn rat_int(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat_usize(v: usize) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion; every finite f64 is a dyadic rational.
pub fn rat_from_f64(v: f64) -> Option<Rat> {
    BigRational::from_float(v)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `⌈log₂ n⌉` for n ≥ 1; 0 for n ≤ 1.
pub fn log2_ceil(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        (n - 1).ilog2() + 1
    }
}

/// `log₂ n` in double precision (n ≥ 1). All logarithms are base 2.
pub fn log2_f64(n: usize) -> f64 {
    (n as f64).log2()
}

/// `lhs ≥ rhs` with the relative guard band applied in the certifying
/// direction: values within `GUARD_BAND` of the threshold count as holding.
pub fn guarded_ge(lhs: f64, rhs: f64) -> bool {
    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    lhs >= rhs - GUARD_BAND * scale
}

/// Parses "3", "-1/7" or a decimal literal like "0.05" into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') { -1 } else { 1 };
        let int_digits = if int_part.is_empty() || int_part == "-" { "0" } else { int_part };
        let i = BigInt::from_str(int_digits).map_err(|e| format!("bad number {s:?}: {e}"))?;
        if frac_part.is_empty() {
            return Ok(BigRational::from_integer(i));
        }
        if !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let f = BigInt::from_str(frac_part).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigRational::new(f, den);
        let whole = BigRational::from_integer(i.magnitude().clone().into());
        let abs = whole + frac;
        return Ok(if sign < 0 { -abs } else { abs });
    }
    let n = BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}"))?;
    Ok(BigRational::from_integer(n))
}

/// A rational rendered as `{"num": "...", "den": "..."}` in artifacts.
/// Decimal strings keep arbitrary-precision values bit-exact in JSON.
#[derive(Clone, PartialEq, Eq)]
pub struct RatJson(pub Rat);

impl Serialize for RatJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RatJson", 2)?;
        s.serialize_field("num", &self.0.numer().to_string())?;
        s.serialize_field("den", &self.0.denom().to_string())?;
        s.end()
    }
}

impl fmt::Debug for RatJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Display helper: 6 significant digits, for human-facing lines only.
pub fn approx_display(r: &Rat) -> String {
    let v = rat_to_f64(r);
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() { "0".into() } else { s.to_string() }
}

/// Saturating floor of a nonnegative rational into usize.
pub fn floor_to_usize(r: &Rat) -> usize {
    if r.is_negative() {
        return 0;
    }
    r.floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

pub fn rat_pow_f64(base: f64, exp: &Rat) -> f64 {
    base.powf(rat_to_f64(exp))
}

/// `(log₂ n)^c` as used by robust expansion thresholds, in double precision.
pub fn polylog(n: usize, c: &Rat) -> f64 {
    rat_pow_f64(log2_f64(n.max(2)), c)
}

pub fn rat_min(a: Rat, b: Rat) -> Rat {
    if a <= b { a } else { b }
}

pub fn rat_from_u64(v: u64) -> Rat {
    BigRational::from_u64(v).expect("u64 into rational")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal_forms() {
        assert_eq!(parse_rational("1/20").unwrap(), rat_frac(1, 20));
        assert_eq!(parse_rational("0.05").unwrap(), rat_frac(1, 20));
        assert_eq!(parse_rational("-0.5").unwrap(), rat_frac(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("4/5").unwrap(), rat_frac(4, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn log2_ceil_matches_definition() {
        assert_eq!(log2_ceil(1), 0);
        assert_eq!(log2_ceil(2), 1);
        assert_eq!(log2_ceil(3), 2);
        assert_eq!(log2_ceil(8), 3);
        assert_eq!(log2_ceil(9), 4);
        assert_eq!(log2_ceil(1024), 10);
    }

    #[test]
    fn f64_round_trip_is_exact() {
        let r = rat_from_f64(0.1).unwrap();
        assert_eq!(rat_to_f64(&r), 0.1);
    }

    #[test]
    fn guard_band_resolves_ties_toward_certifying() {
        assert!(guarded_ge(1.0, 1.0 + 1e-13));
        assert!(!guarded_ge(1.0, 1.0 + 1e-9));
        assert!(guarded_ge(2.0, 1.0));
    }
}
