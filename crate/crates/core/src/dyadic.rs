//! Exact rationals with power-of-two denominators.
//!
//! Every expectation over uniformly random preference orders is a sum of
//! integers divided by `2^n`, and the recurrences only ever add, multiply
//! and halve, so nothing more general than `p / 2^e` is needed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `numerator / 2^exponent`, kept in lowest terms: the numerator is odd
/// unless the exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u64,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u64) -> Self {
        let mut d = Dyadic { num: num.into(), exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic { num: v.into(), exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(self.exp);
        if tz > 0 {
            self.num >>= tz;
            self.exp -= tz;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// `e` in `p / 2^e`.
    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `self / 2^k`.
    pub fn shr(&self, k: u64) -> Self {
        Dyadic::new(self.num.clone(), self.exp + k)
    }

    pub fn half(&self) -> Self {
        self.shr(1)
    }

    /// `self * 2^k`.
    pub fn shl(&self, k: u64) -> Self {
        if k <= self.exp {
            Dyadic { num: self.num.clone(), exp: self.exp - k }
        } else {
            Dyadic { num: &self.num << (k - self.exp), exp: 0 }
        }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        Dyadic::new(&self.num * k.into(), self.exp)
    }

    /// Exact division by an integer, if the quotient is still dyadic.
    pub fn div_exact(&self, d: impl Into<BigInt>) -> Option<Self> {
        let d = d.into();
        if d.is_zero() {
            return None;
        }
        let tz = d.trailing_zeros().unwrap_or(0);
        let odd = &d >> tz;
        if !(&self.num % &odd).is_zero() {
            return None;
        }
        Some(Dyadic::new(&self.num / odd, self.exp + tz))
    }

    /// The numerator scaled onto the common denominator `2^exp`.
    fn scaled(&self, exp: u64) -> BigInt {
        &self.num << (exp - self.exp)
    }

    /// Compares `self / a` with `other / b` for positive integers `a`, `b`.
    pub fn cmp_ratio(&self, a: u64, other: &Dyadic, b: u64) -> Ordering {
        let e = self.exp.max(other.exp);
        (self.scaled(e) * b).cmp(&(other.scaled(e) * a))
    }

    /// Compares `self / a` against the rational `p / q` (`a`, `q` positive).
    pub fn cmp_ratio_rational(&self, a: u64, p: i64, q: u64) -> Ordering {
        let lhs = &self.num * q;
        let rhs = (BigInt::from(p) * a) << self.exp;
        lhs.cmp(&rhs)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.num.bits();
        let (mant, shift) = if bits > 64 {
            let s = bits - 64;
            ((&self.num >> s).to_f64().unwrap_or(f64::NAN), s as i64)
        } else {
            (self.num.to_f64().unwrap_or(f64::NAN), 0)
        };
        let e = shift - self.exp as i64;
        mant * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// `p/q` with the denominator written out in full.
    pub fn to_fraction_string(&self) -> String {
        if self.exp == 0 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

/// Formats `x` with `digits` significant digits.
pub fn decimal(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled(e).cmp(&other.scaled(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled(e) + rhs.scaled(e), e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled(e) - rhs.scaled(e), e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

/// `p/2^e`, or plain `p` for integers.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// Parses `p`, `p/2^e` or `p/q` with `q` a power of two.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let s = s.trim();
        let Some((p, q)) = s.split_once('/') else {
            return s.parse::<BigInt>().map(Dyadic::from_int).map_err(|_| bad());
        };
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim();
        if let Some(e) = q.strip_prefix("2^") {
            let exp: u64 = e.parse().map_err(|_| bad())?;
            return Ok(Dyadic::new(num, exp));
        }
        let den: BigInt = q.parse().map_err(|_| bad())?;
        if !den.is_positive() || den.magnitude().count_ones() != 1 {
            return Err(bad());
        }
        let exp = den.trailing_zeros().unwrap_or(0);
        Ok(Dyadic::new(num, exp))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms() {
        let x = Dyadic::new(12, 5);
        assert_eq!(x.numerator(), &BigInt::from(3));
        assert_eq!(x.exponent(), 3);
        assert_eq!(Dyadic::new(0, 9).exponent(), 0);
        assert_eq!(Dyadic::new(-6, 1), Dyadic::from_int(-3));
    }

    #[test]
    fn formatting() {
        assert_eq!(d("4551/2048").to_string(), "4551/2^11");
        assert_eq!(d("4551/2^11").to_fraction_string(), "4551/2048");
        assert_eq!(Dyadic::zero().to_string(), "0");
        assert_eq!(decimal(d("4551/2048").to_f64(), 10), "2.222167969");
        assert!("3/6".parse::<Dyadic>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&d("3/4") + &d("1/4"), Dyadic::one());
        assert_eq!(&d("1/2") - &d("3/4"), d("-1/4"));
        assert_eq!(&d("3/4") * &d("1/2"), d("3/8"));
        assert_eq!(d("3/4").half(), d("3/8"));
        assert_eq!(d("3/8").shl(4), Dyadic::from_int(6));
        assert_eq!(d("3/4").div_exact(6), Some(d("1/8")));
        assert_eq!(d("1/4").div_exact(3), None);
    }

    #[test]
    fn ratio_comparison() {
        // 41/32 / 7 = 41/224 > 453/256 / 10
        assert_eq!(d("41/32").cmp_ratio(7, &d("453/256"), 10), Ordering::Greater);
        assert_eq!(d("1/2").cmp_ratio(3, &Dyadic::one(), 6), Ordering::Equal);
        assert_eq!(d("1/2").cmp_ratio_rational(3, 1, 6), Ordering::Equal);
        assert_eq!(d("7/8").cmp_ratio_rational(5, 1769, 10000), Ordering::Less);
    }

    #[test]
    fn huge_values_convert_to_float() {
        let big = Dyadic::new(BigInt::from(3) << 5000u32, 5001);
        assert_eq!(big.to_f64(), 1.5);
    }

    proptest! {
        #[test]
        fn add_matches_float(a in -1_000_000i64..1_000_000, ea in 0u64..20, b in -1_000_000i64..1_000_000, eb in 0u64..20) {
            let x = Dyadic::new(a, ea);
            let y = Dyadic::new(b, eb);
            let sum = (&x + &y).to_f64();
            prop_assert!((sum - (x.to_f64() + y.to_f64())).abs() < 1e-9);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(x.cmp(&y), x.to_f64().partial_cmp(&y.to_f64()).unwrap());
        }

        #[test]
        fn display_parse_round_trip(a in any::<i64>(), e in 0u64..200) {
            let x = Dyadic::new(a, e);
            prop_assert_eq!(x.to_string().parse::<Dyadic>().unwrap(), x.clone());
            prop_assert_eq!(x.to_fraction_string().parse::<Dyadic>().unwrap(), x);
        }
    }
}
