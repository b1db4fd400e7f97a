use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Signed rational number of unbounded size, always in lowest terms with a
/// positive denominator.
///
/// Displays as `num/den`, or just `num` when the denominator is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Self(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as a nonnegative integer, if it is one.
    pub fn to_biguint(&self) -> Option<BigUint> {
        if self.is_integer() {
            self.numer().to_biguint()
        } else {
            None
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_biguint()?.to_u64()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("reciprocal of zero"));
        }
        Ok(Self(self.0.recip()))
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::invalid("negative power of zero"));
        }
        Ok(Self(num_traits::Pow::pow(&self.0, exp)))
    }

    /// `v_p` of a nonzero rational: `v_p(numerator) - v_p(denominator)`.
    pub fn valuation(&self, p: u64) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::invalid("valuation of zero"));
        }
        Ok(bigint_vp(self.numer(), p) as i64 - bigint_vp(self.denom(), p) as i64)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

fn bigint_vp(n: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigUint> for ExactRational {
    fn from(n: BigUint) -> Self {
        Self::from_integer(BigInt::from(n))
    }
}

impl Mul for &ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 * &rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;

    fn mul(self, rhs: ExactRational) -> ExactRational {
        ExactRational(self.0 * rhs.0)
    }
}

/// Panics on division by zero, like the integer types.
impl Div for &ExactRational {
    type Output = ExactRational;

    fn div(self, rhs: &ExactRational) -> ExactRational {
        ExactRational(&self.0 / &rhs.0)
    }
}

impl Div for ExactRational {
    type Output = ExactRational;

    fn div(self, rhs: ExactRational) -> ExactRational {
        ExactRational(self.0 / rhs.0)
    }
}

impl std::iter::Product for ExactRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::invalid(format!("not a rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse(n)?, parse(d)?),
            None => Ok(Self::from_integer(parse(s)?)),
        }
    }
}
