use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::One;

use super::primes::{factor_u64, is_prime};
use crate::error::{Error, Result};

/// A positive integer stored as its prime factorization.
///
/// Keys are primes, exponents are nonzero, and the empty map is 1. Large
/// quantities such as `c * lcm(1..=1224)` stay in this form; call
/// [`FactoredInteger::value`] only when the decimal value is needed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factorizes `n`. Rejects zero.
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cannot factorize 0"));
        }
        Ok(Self {
            factors: factor_u64(n),
        })
    }

    pub fn prime_power(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(p, e);
        }
        Ok(Self { factors })
    }

    /// Builds from an explicit map, checking every key for primality and
    /// dropping zero exponents.
    pub fn from_factors(map: BTreeMap<u64, u32>) -> Result<Self> {
        if let Some((&p, _)) = map.iter().find(|(&p, _)| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::from_factors_unchecked(map))
    }

    pub(crate) fn from_factors_unchecked(mut map: BTreeMap<u64, u32>) -> Self {
        map.retain(|_, e| *e > 0);
        Self { factors: map }
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    /// `v_p` of this integer. Zero for primes that do not divide it.
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn divisible_by(&self, p: u64) -> bool {
        self.exponent(p) > 0
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> BigUint {
        self.iter().fold(BigUint::one(), |acc, (p, e)| {
            acc * BigUint::from(p).pow(e)
        })
    }

    /// The value as a `u64`, or `None` if it does not fit.
    pub fn to_u64(&self) -> Option<u64> {
        self.iter().try_fold(1u64, |acc, (p, e)| {
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    /// Exponent-wise max.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in other.iter() {
            let slot = factors.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self { factors }
    }

    /// Exponent-wise min.
    pub fn gcd(&self, other: &Self) -> Self {
        let factors = self
            .iter()
            .filter_map(|(p, e)| {
                let m = e.min(other.exponent(p));
                (m > 0).then_some((p, m))
            })
            .collect();
        Self { factors }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.iter().all(|(p, e)| other.exponent(p) >= e)
    }

    /// `self / other` when the division is exact.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let mut factors = self.factors.clone();
        for (p, e) in other.iter() {
            *factors.get_mut(&p).expect("divisibility checked") -= e;
        }
        Some(Self::from_factors_unchecked(factors))
    }

    /// Removes every power of `p`.
    pub fn without_prime(&self, p: u64) -> Self {
        let mut factors = self.factors.clone();
        factors.remove(&p);
        Self { factors }
    }

    /// Number of positive divisors, saturating at `u64::MAX`.
    pub fn divisor_count(&self) -> u64 {
        self.iter()
            .fold(1u64, |acc, (_, e)| acc.saturating_mul(e as u64 + 1))
    }

    /// All positive divisors in ascending order. Requires the value to fit in
    /// a `u64`.
    pub fn divisors(&self) -> Result<Vec<u64>> {
        if self.to_u64().is_none() {
            return Err(Error::Overflow("divisor enumeration"));
        }
        let mut divs = vec![1u64];
        for (p, e) in self.iter() {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        Ok(divs)
    }
}

impl Mul for &FactoredInteger {
    type Output = FactoredInteger;

    fn mul(self, rhs: &FactoredInteger) -> FactoredInteger {
        let mut factors = self.factors.clone();
        for (p, e) in rhs.iter() {
            *factors.entry(p).or_insert(0) += e;
        }
        FactoredInteger { factors }
    }
}

impl Mul for FactoredInteger {
    type Output = FactoredInteger;

    fn mul(self, rhs: FactoredInteger) -> FactoredInteger {
        &self * &rhs
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}
