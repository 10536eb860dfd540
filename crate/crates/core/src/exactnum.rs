//! Exact rational numbers.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always stored in
//! lowest terms with a positive denominator. Every quantity in this crate
//! (probabilities, thresholds, cylinder endpoints, series values) is a
//! `Rational`; nothing is ever rounded except by the explicit
//! [`Rational::to_decimal`] rendering.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact, reduced fraction `numerator / denominator` with `denominator >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds the reduced fraction equal to `numerator / denominator`.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numerator.into(), denominator)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// True when `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && self.0 <= BigRational::one()
    }

    /// Lossy conversion for plotting and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point rendering with exactly `places` fractional digits, rounded
    /// half-to-even. `places == 0` renders an integer without a decimal point.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = self.numer().abs() * scale;
        let (mut quotient, remainder) = scaled.div_rem(self.denom());
        let twice = remainder * 2u32;
        match twice.cmp(self.denom()) {
            std::cmp::Ordering::Greater => quotient += 1u32,
            std::cmp::Ordering::Equal if quotient.is_odd() => quotient += 1u32,
            _ => {}
        }

        let mut digits = quotient.to_string();
        if digits.len() <= places {
            digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
        }
        let sign = if self.is_negative() && !quotient.is_zero() {
            "-"
        } else {
            ""
        };
        if places == 0 {
            return format!("{sign}{digits}");
        }
        let split = digits.len() - places;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

impl fmt::Display for Rational {
    /// `a/b`, or the bare integer `a` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

fn parse_integer(text: &str, whole: &str) -> Result<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax(format!("malformed fraction {whole:?}")));
    }
    BigInt::from_str(text).map_err(|_| Error::Syntax(format!("malformed fraction {whole:?}")))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b` or `a`, ASCII digits with an optional leading `-` on
    /// either part.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => Rational::new(parse_integer(num, s)?, parse_integer(den, s)?),
            None => Ok(Rational::from_integer(parse_integer(s, s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the primitive types; use `checked_div` for
// untrusted input.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// Schoolbook long division, digit by digit, with an explicit
    /// half-to-even decision on the first dropped digit and the tail.
    fn long_division_oracle(num: u64, den: u64, places: usize) -> String {
        let mut int_part = num / den;
        let mut rem = num % den;
        let mut digits = Vec::new();
        for _ in 0..places {
            rem *= 10;
            digits.push((rem / den) as u8);
            rem %= den;
        }
        // Remaining tail compared with one half.
        let round_up = match (2 * rem).cmp(&den) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                let last = digits.last().copied().unwrap_or((int_part % 10) as u8);
                last % 2 == 1
            }
        };
        if round_up {
            let mut i = digits.len();
            loop {
                if i == 0 {
                    int_part += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
        let frac: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
        if places == 0 {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac}")
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(Rational::new(-2, -4).unwrap(), r("1/2"));
        let zero = Rational::new(0, 5).unwrap();
        assert_eq!(zero.numer(), &BigInt::from(0));
        assert_eq!(zero.denom(), &BigInt::from(1));
        let x = Rational::new(6, 4).unwrap();
        assert_eq!((x.numer().clone(), x.denom().clone()), (3.into(), 2.into()));
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
        assert_eq!(Rational::new(3, -6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn decimal_examples() {
        assert_eq!(r("1/2").to_decimal(6), "0.500000");
        assert_eq!(long_division_oracle(35, 36, 6), "0.972222");
        assert_eq!(r("35/36").to_decimal(6), "0.972222");
        assert_eq!(long_division_oracle(1, 8, 2), "0.12");
        assert_eq!(r("1/8").to_decimal(2), "0.12");
        assert_eq!(r("3/8").to_decimal(2), "0.38");
        assert_eq!(r("-1/8").to_decimal(2), "-0.12");
        assert_eq!(r("-1/1000").to_decimal(2), "0.00");
        assert_eq!(r("5/2").to_decimal(0), "2");
        assert_eq!(r("7/2").to_decimal(0), "4");
        assert_eq!(r("1").to_decimal(3), "1.000");
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(r("-3/6").to_string(), "-1/2");
        assert_eq!(r("4").to_string(), "4");
        assert_eq!(r("10/5").to_string(), "2");
        for bad in ["", "1/", "/2", "a/b", "1/0", "1.5", "+1", "1/2/3", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    proptest! {
        #[test]
        fn decimal_matches_long_division(num in 0u64..100_000, den in 1u64..10_000, places in 0usize..9) {
            let x = Rational::new(num, den).unwrap();
            prop_assert_eq!(x.to_decimal(places), long_division_oracle(num, den, places));
        }

        #[test]
        fn normalize_preserves_value(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            prop_assume!(b != 0);
            let x = Rational::new(a, b).unwrap();
            prop_assert!(x.denom() > &BigInt::from(0));
            prop_assert!(x.numer().gcd(x.denom()).is_one());
            // a/b == n/d  <=>  a*d == n*b
            prop_assert_eq!(BigInt::from(a) * x.denom(), x.numer() * BigInt::from(b));
        }

        #[test]
        fn field_closure(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500) {
            let x = Rational::new(a, b).unwrap();
            let y = Rational::new(c, d).unwrap();
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assume!(!y.is_zero());
            prop_assert_eq!(&(&x * &y) / &y, x);
        }

        #[test]
        fn decimal_error_bound(a in -100_000i64..100_000, b in 1i64..100_000, places in 0usize..10) {
            let x = Rational::new(a, b).unwrap();
            let text = x.to_decimal(places);
            let (sign, body) = match text.strip_prefix('-') {
                Some(rest) => (-1i64, rest.to_string()),
                None => (1, text.clone()),
            };
            let digits: String = body.chars().filter(|c| *c != '.').collect();
            let back = Rational::new(
                BigInt::from(sign) * BigInt::from_str(&digits).unwrap(),
                BigInt::from(10u32).pow(places as u32),
            ).unwrap();
            let bound = Rational::new(5, BigInt::from(10u32).pow(places as u32 + 1)).unwrap();
            prop_assert!((back - &x).abs() <= bound);
        }

        #[test]
        fn parse_display_roundtrip(a in any::<i64>(), b in 1i64..i64::MAX) {
            let x = Rational::new(a, b).unwrap();
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
