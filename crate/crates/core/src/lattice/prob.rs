use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact probability: a rational in `[0, 1]` kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactProb(Ratio<BigUint>);

impl ExactProb {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::InvalidArgument("probability with zero denominator".into()));
        }
        if num > den {
            return Err(Error::InvalidArgument(format!("{num}/{den} exceeds 1")));
        }
        Ok(Self(Ratio::new(num, den)))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn ratio(&self) -> &Ratio<BigUint> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_on_construction() {
        let p = ExactProb::new(8u32, 36u32).unwrap();
        assert_eq!(p.to_string(), "2/9");
        assert_eq!(p, ExactProb::new(2u32, 9u32).unwrap());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ExactProb::new(3u32, 2u32).is_err());
        assert!(ExactProb::new(0u32, 0u32).is_err());
        assert_eq!(ExactProb::new(0u32, 5u32).unwrap(), ExactProb::zero());
    }
}
