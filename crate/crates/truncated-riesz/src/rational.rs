//! Exact rational scalars.
//!
//! Every scalar in the library (coordinates, function values, norms, the
//! scalar part of a unitized element) is a [`Rational`]: an
//! arbitrary-precision fraction kept in canonical form, meaning the
//! denominator is positive and the fraction is fully reduced. All arithmetic
//! is exact; there is no rounding anywhere in the computation path. Floats
//! appear only in optional report rendering.
//!
//! The wire form is a decimal-digit string `"p/q"`, or just `"p"` when the
//! denominator is one. The sign, if any, sits on the numerator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`. Panics if `den == 0`; use [`Rational::from_str`]
    /// for untrusted input.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
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

    /// `min` over references (plain `Ord::min` consumes its operands).
    pub fn min_of(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `max` over references.
    pub fn max_of(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero; callers guard.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Lossy conversion for display purposes only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with 15 significant digits. Rendering only; never
    /// used in comparisons.
    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        format!("{:.14e}", self.to_f64())
    }

    /// The nearest rational with denominator dividing `den` (ties round
    /// toward positive infinity). Used by counterexample shrinking.
    pub fn snap_to_den(&self, den: i64) -> Rational {
        use num_integer::Integer;
        assert!(den > 0, "positive denominator required");
        let d = BigInt::from(den);
        // round(x * den) = floor((2 * numer * den + denom) / (2 * denom)).
        let two = BigInt::from(2);
        let scaled = self.numer() * &d;
        let rounded = (scaled * &two + self.denom()).div_floor(&(self.denom() * &two));
        Rational(BigRational::new(rounded, d))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("invalid rational `{s}`"));
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let (neg, digits) = match num_str.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, num_str),
        };
        let mut num = parse_digits(digits).ok_or_else(err)?;
        if neg {
            num = -num;
        }
        let den = match den_str {
            // Sign on the numerator only; denominator must be positive.
            Some(d) => {
                let den = parse_digits(d).ok_or_else(err)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                den
            }
            None => BigInt::one(),
        };
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

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

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn canonical(r: &Rational) -> bool {
        r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
    }

    #[test]
    fn display_wire_form() {
        assert_eq!(Rational::ratio(5, 1).to_string(), "5");
        assert_eq!(Rational::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_accepts_canonical_and_reducible() {
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_int(7));
        assert_eq!("-4/8".parse::<Rational>().unwrap(), Rational::ratio(-1, 2));
        assert_eq!("0/5".parse::<Rational>().unwrap(), Rational::zero());
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "1/0", "1/-2", "+3", "a", "1.5", " 1", "3/ 4", "1//2"] {
            assert!(bad.parse::<Rational>().is_err(), "accepted `{bad}`");
        }
    }

    #[test]
    fn serde_round_trip() {
        let r = Rational::ratio(-7, 3);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"-7/3\"");
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn snapping_rounds_to_the_nearest_grid_point() {
        assert_eq!(
            Rational::ratio(-3, 8).snap_to_den(4),
            Rational::ratio(-1, 4)
        );
        assert_eq!(Rational::ratio(5, 7).snap_to_den(1), Rational::one());
        assert_eq!(Rational::ratio(2, 7).snap_to_den(1), Rational::zero());
        // Values already on the grid are fixed points.
        assert_eq!(Rational::ratio(3, 4).snap_to_den(8), Rational::ratio(3, 4));
        assert_eq!(Rational::zero().snap_to_den(16), Rational::zero());
    }

    #[test]
    fn decimal_rendering_is_display_only() {
        assert_eq!(Rational::zero().to_decimal_string(), "0");
        let rendered = Rational::ratio(1, 3).to_decimal_string();
        assert!(rendered.starts_with("3.3333333333333"), "got {rendered}");
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in -200i64..200, b in 1i64..50, c in -200i64..200, d in 1i64..50) {
            let x = Rational::ratio(a, b);
            let y = Rational::ratio(c, d);
            for r in [&x + &y, &x - &y, &x * &y, x.abs(), x.min_of(&y), x.max_of(&y), -&x] {
                prop_assert!(canonical(&r), "non-canonical {r}");
            }
            if !y.is_zero() {
                prop_assert!(canonical(&(&x / &y)));
            }
        }

        #[test]
        fn parse_display_round_trip(a in -1000i64..1000, b in 1i64..1000) {
            let x = Rational::ratio(a, b);
            let back: Rational = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
