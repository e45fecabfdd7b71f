//! The arithmetic substrate for all fractional-part logic.
//!
//! A [`WeightValue`] is either an exact rational or a *declared* irrational:
//! a decimal string of at least [`MIN_IRRATIONAL_PRECISION`] significant
//! digits whose irrationality is input metadata, never decided from the
//! digits. Arithmetic on irrationals runs exactly on the rational surrogate
//! parsed from the decimal string; strict comparisons that land within
//! [`CMP_TOLERANCE`] of the boundary raise `BoundaryUndecidable` instead of
//! guessing.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Minimum number of significant digits a declared irrational must carry.
pub const MIN_IRRATIONAL_PRECISION: usize = 30;

/// Half-width of the undecidable band around strict-comparison boundaries
/// for declared irrationals, as (numerator, power of ten): 1e-12.
pub const CMP_TOLERANCE_EXP: u32 = 12;

/// Returns the exact rational 1e-12 used as the comparison tolerance.
pub fn cmp_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(CMP_TOLERANCE_EXP))
}

/// An exact rational or a declared-irrational high-precision number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightValue {
    /// Stored in lowest terms with positive denominator (kept so by
    /// `BigRational` itself).
    Rational(BigRational),
    /// `decimal` is preserved verbatim for round-tripping; `value` is the
    /// exact rational surrogate it parses to.
    Irrational {
        decimal: String,
        precision: usize,
        value: BigRational,
    },
}

impl WeightValue {
    pub fn zero() -> Self {
        WeightValue::Rational(BigRational::zero())
    }

    pub fn integer(n: i64) -> Self {
        WeightValue::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidValue("rational with zero denominator".into()));
        }
        Ok(WeightValue::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_big(value: BigRational) -> Self {
        WeightValue::Rational(value)
    }

    /// Parses a plain decimal string (optional sign, digits, optional
    /// fractional part) as a declared irrational. The significant-digit
    /// count must be at least [`MIN_IRRATIONAL_PRECISION`] and the value
    /// must lie in (-1e9, 1e9).
    pub fn irrational(decimal: &str) -> Result<Self> {
        let (value, precision) = parse_decimal(decimal)?;
        if precision < MIN_IRRATIONAL_PRECISION {
            return Err(Error::PrecisionInsufficient {
                declared: precision,
                required: MIN_IRRATIONAL_PRECISION,
            });
        }
        let bound = BigRational::from_integer(BigInt::from(1_000_000_000u64));
        if value.abs() >= bound {
            return Err(Error::InvalidValue(format!(
                "irrational value {decimal} outside (-1e9, 1e9)"
            )));
        }
        Ok(WeightValue::Irrational {
            decimal: decimal.to_string(),
            precision,
            value,
        })
    }

    /// Builds a derived irrational from an exact surrogate, rendering its
    /// decimal form at the given precision.
    pub fn derived_irrational(value: BigRational, precision: usize) -> Self {
        let decimal = render_decimal(&value, precision);
        WeightValue::Irrational {
            decimal,
            precision,
            value,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, WeightValue::Rational(_))
    }

    pub fn is_irrational(&self) -> bool {
        !self.is_rational()
    }

    pub fn precision(&self) -> Option<usize> {
        match self {
            WeightValue::Rational(_) => None,
            WeightValue::Irrational { precision, .. } => Some(*precision),
        }
    }

    /// The exact rational this value computes with: the number itself for
    /// rationals, the declared decimal surrogate for irrationals.
    pub fn surrogate(&self) -> &BigRational {
        match self {
            WeightValue::Rational(r) => r,
            WeightValue::Irrational { value, .. } => value,
        }
    }

    pub fn to_f64(&self) -> f64 {
        big_to_f64(self.surrogate())
    }

    pub fn is_zero(&self) -> bool {
        self.surrogate().is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.surrogate().is_positive()
    }

    /// Exact integrality for rationals; for declared irrationals, true when
    /// the surrogate sits within the tolerance band of an integer (the digits
    /// cannot distinguish it from one).
    pub fn is_near_integer(&self) -> bool {
        match self {
            WeightValue::Rational(r) => r.is_integer(),
            WeightValue::Irrational { value, .. } => {
                let nearest = value.round();
                (value - nearest).abs() < cmp_tolerance()
            }
        }
    }

    /// Fractional part with the floor convention: {x} = x - floor(x) in [0,1).
    pub fn fract(&self) -> WeightValue {
        match self {
            WeightValue::Rational(r) => WeightValue::Rational(r - r.floor()),
            WeightValue::Irrational {
                precision, value, ..
            } => WeightValue::derived_irrational(value - value.floor(), *precision),
        }
    }

    /// Sum; the result is rational only when both operands are.
    pub fn add(&self, other: &WeightValue) -> WeightValue {
        self.combine(other, self.surrogate() + other.surrogate())
    }

    pub fn sub(&self, other: &WeightValue) -> WeightValue {
        self.combine(other, self.surrogate() - other.surrogate())
    }

    pub fn mul_int(&self, k: i64) -> WeightValue {
        let product = self.surrogate() * BigRational::from_integer(BigInt::from(k));
        match self {
            WeightValue::Rational(_) => WeightValue::Rational(product),
            WeightValue::Irrational { precision, .. } => {
                WeightValue::derived_irrational(product, *precision)
            }
        }
    }

    fn combine(&self, other: &WeightValue, value: BigRational) -> WeightValue {
        if self.is_rational() && other.is_rational() {
            WeightValue::Rational(value)
        } else {
            let precision = self
                .precision()
                .into_iter()
                .chain(other.precision())
                .min()
                .unwrap_or(MIN_IRRATIONAL_PRECISION);
            WeightValue::derived_irrational(value, precision)
        }
    }

    /// Strict `self > threshold` with the tolerance contract: exact when both
    /// sides are rational; otherwise an error if the gap is nonzero but
    /// smaller than the tolerance. Surrogate-equal values compare not-greater.
    pub fn gt_with_tolerance(&self, threshold: &BigRational, irrational: bool, what: &str) -> Result<bool> {
        let diff = self.surrogate() - threshold;
        if diff.is_zero() {
            return Ok(false);
        }
        if irrational && diff.abs() < cmp_tolerance() {
            return Err(Error::BoundaryUndecidable(format!(
                "{what}: gap {} is inside the 1e-12 band",
                big_to_f64(&diff)
            )));
        }
        Ok(diff.is_positive())
    }

    /// Floor of `k * self`, guarded against the tolerance band for declared
    /// irrationals (a floor that could flip within 1e-12 is refused).
    pub fn floor_scaled(&self, k: u64) -> Result<BigInt> {
        let scaled = self.surrogate() * BigRational::from_integer(BigInt::from(k));
        if self.is_irrational() {
            let nearest = scaled.round();
            let gap = (&scaled - &nearest).abs();
            if !gap.is_zero() && gap < cmp_tolerance() {
                return Err(Error::BoundaryUndecidable(format!(
                    "floor of {k} * {self} sits within 1e-12 of an integer"
                )));
            }
        }
        Ok(scaled.floor().to_integer())
    }
}

impl fmt::Display for WeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightValue::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            WeightValue::Irrational { decimal, .. } => write!(f, "{decimal}~"),
        }
    }
}

/// Parses "[-]digits[.digits]" into an exact rational plus its
/// significant-digit count (digits from the first nonzero digit on).
fn parse_decimal(text: &str) -> Result<(BigRational, usize)> {
    let bad = |msg: &str| Error::InvalidValue(format!("decimal '{text}': {msg}"));
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let mut int_part = String::new();
    let mut frac_part = String::new();
    let mut seen_dot = false;
    for ch in digits.chars() {
        match ch {
            '0'..='9' => {
                if seen_dot {
                    frac_part.push(ch);
                } else {
                    int_part.push(ch);
                }
            }
            '.' if !seen_dot => seen_dot = true,
            _ => return Err(bad("expected only digits and one decimal point")),
        }
    }
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("no digits"));
    }
    let all: String = format!("{int_part}{frac_part}");
    let mantissa: BigInt = all.parse().map_err(|_| bad("unparseable digits"))?;
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    let mut value = BigRational::new(mantissa, scale);
    if negative {
        value = -value;
    }
    let significant = all
        .as_str()
        .trim_start_matches('0')
        .len();
    // "0.000...0" has zero significant digits but is a legal number.
    Ok((value, significant))
}

/// Renders `value` as a plain decimal with `sig` significant digits
/// (truncated, deterministic). Used only for derived irrationals.
fn render_decimal(value: &BigRational, sig: usize) -> String {
    if value.is_zero() {
        return "0".into();
    }
    let negative = value.is_negative();
    let abs = value.abs();
    let int_part = abs.floor().to_integer();
    let int_digits = if int_part.is_zero() {
        0
    } else {
        int_part.to_string().len()
    };
    // Number of fractional digits needed to reach `sig` significant digits.
    let frac_digits = if int_digits >= sig {
        0
    } else if int_part.is_zero() {
        // Count leading zeros after the point before the first digit.
        let mut shifted = abs.clone();
        let mut leading = 0usize;
        let one = BigRational::one();
        let ten = BigRational::from_integer(BigInt::from(10));
        while shifted < one {
            shifted *= &ten;
            leading += 1;
            if leading > 400 {
                break;
            }
        }
        leading - 1 + sig
    } else {
        sig - int_digits
    };
    let scale = BigInt::from(10u32).pow(frac_digits as u32);
    let scaled = (abs * BigRational::from_integer(scale.clone())).floor().to_integer();
    let digits = scaled.to_string();
    let text = if frac_digits == 0 {
        digits
    } else if digits.len() <= frac_digits {
        format!("0.{}{}", "0".repeat(frac_digits - digits.len()), digits)
    } else {
        let split = digits.len() - frac_digits;
        format!("{}.{}", &digits[..split], &digits[split..])
    };
    if negative {
        format!("-{text}")
    } else {
        text
    }
}

pub(crate) fn big_to_f64(value: &BigRational) -> f64 {
    value
        .to_f64()
        .unwrap_or_else(|| match value.numer().sign() {
            Sign::Minus => f64::NEG_INFINITY,
            _ => f64::INFINITY,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2_M1: &str = "0.414213562373095048801688724209";

    #[test]
    fn rational_reduces_to_lowest_terms() {
        let v = WeightValue::rational(4, 8).unwrap();
        match &v {
            WeightValue::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(1));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => panic!("expected rational"),
        }
        let neg = WeightValue::rational(1, -3).unwrap();
        assert!(neg.surrogate().is_negative());
        assert!(neg.surrogate().denom() > &BigInt::zero());
    }

    #[test]
    fn irrational_requires_thirty_significant_digits() {
        assert!(WeightValue::irrational("0.5").is_err());
        let v = WeightValue::irrational(SQRT2_M1).unwrap();
        assert_eq!(v.precision(), Some(30));
    }

    #[test]
    fn irrational_precision_counts_significant_digits() {
        // The spec's parse example: 31 significant digits ending in a zero.
        let v = WeightValue::irrational("0.3333333333333333333333333333330").unwrap();
        assert_eq!(v.precision(), Some(31));
    }

    #[test]
    fn fract_uses_floor_convention_for_negatives() {
        let v = WeightValue::rational(-3, 2).unwrap();
        assert_eq!(v.fract(), WeightValue::rational(1, 2).unwrap());
        let w = WeightValue::rational(7, 3).unwrap();
        assert_eq!(w.fract(), WeightValue::rational(1, 3).unwrap());
    }

    #[test]
    fn near_integer_detection() {
        assert!(WeightValue::integer(3).is_near_integer());
        assert!(!WeightValue::rational(1, 2).unwrap().is_near_integer());
        let nearly_two = WeightValue::irrational("1.999999999999999999999999999999").unwrap();
        assert!(nearly_two.is_near_integer());
        let sqrt2m1 = WeightValue::irrational(SQRT2_M1).unwrap();
        assert!(!sqrt2m1.is_near_integer());
    }

    #[test]
    fn floor_scaled_guards_the_band_for_irrationals() {
        let v = WeightValue::irrational(SQRT2_M1).unwrap();
        assert_eq!(v.floor_scaled(7).unwrap(), BigInt::from(2));
        // 0.5 exactly but declared irrational: 2 * it is exactly 1, fine
        // (zero gap is exact); a value 1e-13 away from the integer errors.
        let touchy = WeightValue::irrational("0.4999999999999965000000000000000").unwrap();
        assert!(matches!(
            touchy.floor_scaled(2),
            Err(Error::BoundaryUndecidable(_))
        ));
    }

    #[test]
    fn derived_decimal_rendering_round_trips_through_parse() {
        let v = WeightValue::irrational(SQRT2_M1).unwrap();
        let f = v.fract();
        let (reparsed, _) = parse_decimal(match &f {
            WeightValue::Irrational { decimal, .. } => decimal,
            _ => panic!(),
        })
        .unwrap();
        // Truncated rendering differs from the surrogate by < 1e-29.
        let gap = (reparsed - f.surrogate()).abs();
        assert!(gap < BigRational::new(BigInt::one(), BigInt::from(10u64).pow(28)));
    }
}
