//! Exact comparisons of rationals against powers `n^e` with rational `e`.
//!
//! A float comparison of logarithms settles almost every case; when the two
//! sides are within rounding distance the comparison is redone with exact
//! integer powers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact-power fallback is attempted only below this many result bits.
const EXACT_BIT_LIMIT: u64 = 1 << 24;

/// A rational exponent such as `1/2` or `-1.6`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("exponent with zero denominator".into()));
        }
        Ok(Self(Ratio::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Self(Ratio::from_integer(n))
    }

    /// The shortest decimal representation of `x`, read exactly.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!("exponent {x} is not finite")));
        }
        format!("{x}").parse()
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn is_positive(self) -> bool {
        self.0.is_positive()
    }
}

impl std::ops::Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl std::ops::Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot read exponent {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            return Self::new(n, d);
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mantissa, exp10) = match body.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (body, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let scale = exp10 - frac_part.len() as i32;
        let mut num: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
        let mut den: i64 = 1;
        let pow = 10i64.checked_pow(scale.unsigned_abs()).ok_or_else(bad)?;
        if scale >= 0 {
            num = num.checked_mul(pow).ok_or_else(bad)?;
        } else {
            den = pow;
        }
        if negative {
            num = -num;
        }
        Self::new(num, den)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 900;
        (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Compares `num/den` with `base^exp` exactly.
///
/// `den` and `base` must be positive.
pub fn cmp_ratio_with_power(num: &BigUint, den: &BigUint, base: u64, exp: Exponent) -> Ordering {
    assert!(!den.is_zero() && base > 0, "cmp_ratio_with_power needs den > 0, base > 0");
    if num.is_zero() {
        return Ordering::Less;
    }
    if base == 1 || exp.numer() == 0 {
        return num.cmp(den);
    }
    let lhs = ln_big(num) - ln_big(den);
    let rhs = exp.to_f64() * (base as f64).ln();
    let margin = 1e-12 * (lhs.abs() + rhs.abs() + 1.0);
    if (lhs - rhs).abs() > margin {
        return lhs.partial_cmp(&rhs).unwrap();
    }
    // (num/den)^q vs base^p
    let (p, q) = (exp.numer(), exp.denom() as u64);
    let base_big = BigUint::from(base);
    let cost = q.saturating_mul(num.bits().max(den.bits()))
        .saturating_add(p.unsigned_abs().saturating_mul(64));
    if cost > EXACT_BIT_LIMIT {
        return lhs.partial_cmp(&rhs).unwrap_or(Ordering::Equal);
    }
    let q32 = q as u32;
    let p32 = p.unsigned_abs() as u32;
    let mut left = num.pow(q32);
    let mut right = den.pow(q32);
    if p > 0 {
        right *= base_big.pow(p32);
    } else {
        left *= base_big.pow(p32);
    }
    left.cmp(&right)
}

/// Compares the integer `x` with `base^exp`.
pub fn cmp_int_with_power(x: &BigUint, base: u64, exp: Exponent) -> Ordering {
    cmp_ratio_with_power(x, &BigUint::one(), base, exp)
}

/// `floor(base^exp)` for non-negative results that fit in `u64`.
pub fn floor_power(base: u64, exp: Exponent) -> u64 {
    let approx = (base as f64).powf(exp.to_f64()).floor();
    let mut m = if approx.is_finite() && approx >= 0.0 { approx as u64 } else { 0 };
    while m > 0 && cmp_int_with_power(&BigUint::from(m), base, exp) == Ordering::Greater {
        m -= 1;
    }
    while cmp_int_with_power(&BigUint::from(m + 1), base, exp) != Ordering::Greater {
        m += 1;
    }
    m
}

/// `ceil(base^exp)`.
pub fn ceil_power(base: u64, exp: Exponent) -> u64 {
    let f = floor_power(base, exp);
    if cmp_int_with_power(&BigUint::from(f), base, exp) == Ordering::Equal {
        f
    } else {
        f + 1
    }
}
