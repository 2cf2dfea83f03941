//! Half-integers and exact Gamma arithmetic on them.
//!
//! Every parameter in this crate lives in `Z/2`. [`HalfInt`] stores twice its
//! value as an `i64`, so sums, differences and parity tests are exact. Gamma,
//! its reciprocal and the digamma function are evaluated at half-integers by
//! finite recursion from `Gamma(1) = 1` and `Gamma(1/2) = sqrt(pi)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `sqrt(pi)`.
pub const SQRT_PI: f64 = 1.772_453_850_905_516_f64;
/// The Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9_f64;

/// Largest `|x|` for which [`gamma_exact`] returns a finite value.
pub const GAMMA_MAX_ABS: i64 = 170;

/// An element of `Z/2`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// The half-integer `twice / 2`.
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// True for elements of `Z + 1/2`.
    pub const fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    /// The value as an integer, if it is one.
    pub const fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    /// True for `0, -1, -2, ...`, the poles of Gamma.
    pub const fn is_nonpositive_integer(self) -> bool {
        self.is_integer() && self.twice <= 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Exact halving, defined when `self` is an integer.
    pub const fn half(self) -> Option<HalfInt> {
        if self.is_integer() {
            Some(HalfInt {
                twice: self.twice / 2,
            })
        } else {
            None
        }
    }

    pub const fn abs(self) -> HalfInt {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// Exact product of two half-integers, when it is again a half-integer.
    pub fn checked_mul(self, other: HalfInt) -> Option<HalfInt> {
        let num = self.twice.checked_mul(other.twice)?;
        if num % 2 == 0 {
            Some(HalfInt { twice: num / 2 })
        } else {
            None
        }
    }

    /// `self + n` for an integer `n`.
    pub const fn plus_int(self, n: i64) -> HalfInt {
        HalfInt {
            twice: self.twice + 2 * n,
        }
    }

    /// True when `self` is a non-negative even integer, i.e. lies in `2N`.
    pub const fn in_two_n(self) -> bool {
        self.twice >= 0 && self.twice % 4 == 0
    }

    /// True when `self` is an odd integer.
    pub const fn is_odd_integer(self) -> bool {
        self.twice % 4 == 2 || self.twice % 4 == -2
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3"`, `"-7/2"`, `"6/2"` and decimal forms such as `"3.5"` or `"-0.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseHalfInt(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => num.checked_mul(2).map(HalfInt::from_twice).ok_or_else(bad),
                2 => Ok(HalfInt::from_twice(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int_part, frac)) = t.split_once('.') {
            let negative = int_part.trim_start().starts_with('-');
            let digits = int_part.trim_start_matches(['-', '+']);
            let whole: i64 = if digits.is_empty() {
                0
            } else {
                digits.parse().map_err(|_| bad())?
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let frac_twice = if frac.bytes().all(|b| b == b'0') {
                0
            } else if frac.starts_with('5') && frac[1..].bytes().all(|b| b == b'0') {
                1
            } else {
                return Err(bad());
            };
            let mag = whole
                .checked_mul(2)
                .and_then(|w| w.checked_add(frac_twice))
                .ok_or_else(bad)?;
            return Ok(HalfInt::from_twice(if negative { -mag } else { mag }));
        }
        let n: i64 = t.parse().map_err(|_| bad())?;
        n.checked_mul(2).map(HalfInt::from_twice).ok_or_else(bad)
    }
}

impl TryFrom<f64> for HalfInt {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        let twice = 2.0 * x;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > 9.0e15 {
            return Err(Error::ParseHalfInt(x.to_string()));
        }
        Ok(HalfInt::from_twice(twice as i64))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
            Float(f64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => n
                .checked_mul(2)
                .map(HalfInt::from_twice)
                .ok_or_else(|| serde::de::Error::custom(Error::HalfIntOverflow)),
            Repr::Float(x) => HalfInt::try_from(x).map_err(serde::de::Error::custom),
        }
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

/// Value of Gamma at a half-integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaValue {
    Finite(f64),
    /// `x` is a non-positive integer.
    Pole,
}

impl GammaValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            GammaValue::Finite(v) => Some(v),
            GammaValue::Pole => None,
        }
    }
}

/// Gamma at a half-integer, by recursion from `Gamma(1)` or `Gamma(1/2)`.
///
/// Returns [`GammaValue::Pole`] at `0, -1, -2, ...` and
/// [`Error::GammaOverflow`] once `|x|` exceeds [`GAMMA_MAX_ABS`].
pub fn gamma_exact(x: HalfInt) -> Result<GammaValue> {
    if x.is_nonpositive_integer() {
        return Ok(GammaValue::Pole);
    }
    if x.twice().abs() > 2 * GAMMA_MAX_ABS {
        return Err(Error::GammaOverflow(x.to_string()));
    }
    Ok(GammaValue::Finite(gamma_unchecked(x)))
}

fn gamma_unchecked(x: HalfInt) -> f64 {
    let t = x.twice();
    if t % 2 == 0 {
        let n = t / 2;
        (1..n).fold(1.0, |acc, k| acc * k as f64)
    } else if t > 0 {
        // x = k + 1/2 with k >= 0
        let k = (t - 1) / 2;
        (0..k).fold(SQRT_PI, |acc, j| acc * (j as f64 + 0.5))
    } else {
        // divide down: Gamma(y) = Gamma(y + 1) / y for y = -1/2, -3/2, ..., x
        let mut g = SQRT_PI;
        let mut y = -1;
        while y >= t {
            g /= y as f64 / 2.0;
            y -= 2;
        }
        g
    }
}

/// `1 / Gamma(x)`, which is zero at the poles of Gamma.
pub fn rgamma(x: HalfInt) -> f64 {
    if x.is_nonpositive_integer() {
        return 0.0;
    }
    if x.twice().abs() <= 2 * GAMMA_MAX_ABS {
        return 1.0 / gamma_unchecked(x);
    }
    if x.twice() > 0 {
        (-ln_gamma_positive(x)).exp()
    } else {
        // reflection keeps the sign: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
        let k = (-x.twice() - 1) / 2;
        let sign = if k % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        sign * f64::INFINITY
    }
}

fn ln_gamma_positive(x: HalfInt) -> f64 {
    let t = x.twice();
    if t % 2 == 0 {
        (1..t / 2).map(|k| (k as f64).ln()).sum()
    } else {
        let k = (t - 1) / 2;
        SQRT_PI.ln() + (0..k).map(|j| (j as f64 + 0.5).ln()).sum::<f64>()
    }
}

/// Digamma at a half-integer, `None` at the poles `0, -1, -2, ...`.
pub fn digamma(x: HalfInt) -> Option<f64> {
    if x.is_nonpositive_integer() {
        return None;
    }
    if x.twice() < 0 {
        // psi(1 - x) - psi(x) = pi cot(pi x) vanishes on Z + 1/2
        return digamma(HalfInt::ONE - x);
    }
    let t = x.twice();
    if t % 2 == 0 {
        let n = t / 2;
        Some(-EULER_GAMMA + (1..n).rev().map(|k| 1.0 / k as f64).sum::<f64>())
    } else {
        let n = (t - 1) / 2;
        let s: f64 = (1..=n).rev().map(|k| 2.0 / (2 * k - 1) as f64).sum();
        Some(-EULER_GAMMA - 2.0 * std::f64::consts::LN_2 + s)
    }
}

/// The entire function `psi(x) / Gamma(x)`.
///
/// At `x = -n` it takes the limiting value `(-1)^(n+1) n!`.
pub fn psi_over_gamma(x: HalfInt) -> f64 {
    match x.as_integer() {
        Some(n) if n <= 0 => {
            let m = -n;
            let fact = (1..=m).fold(1.0, |acc, k| acc * k as f64);
            if m % 2 == 0 {
                -fact
            } else {
                fact
            }
        }
        _ => digamma(x).expect("non-pole") * rgamma(x),
    }
}

/// `n!` as a float.
pub fn factorial(n: u64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
