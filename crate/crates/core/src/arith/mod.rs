//! Exact integer and rational arithmetic: factorization, p-adic valuations,
//! lcm/gcd folds, and the alternating-min expansion of a maximum.

mod factored;
mod primes;
mod rational;

pub use factored::FactoredInteger;
pub use primes::{is_prime, next_prime, primes_upto, TRIAL_DIVISION_LIMIT};
pub use rational::ExactRational;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Default cap on the multiset size for subset enumeration (2^20 subsets).
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Prime factorization of `n >= 1`.
pub fn factorize(n: u64) -> Result<FactoredInteger> {
    FactoredInteger::new(n)
}

/// Exponent of the prime `p` in `n >= 1`.
pub fn vp(p: u64, n: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::invalid("v_p(0) is undefined"));
    }
    Ok(vp_unchecked(p, n))
}

pub(crate) fn vp_unchecked(p: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Largest `e` with `p^e <= k`, i.e. `floor(log_p k)`; zero for `k < p`.
pub(crate) fn floor_log(p: u64, k: u64) -> u32 {
    let mut e = 0;
    let mut pe = p;
    while pe <= k {
        e += 1;
        match pe.checked_mul(p) {
            Some(next) => pe = next,
            None => break,
        }
    }
    e
}

/// `L_k = lcm(1, ..., k)` in factored form. `L_0 = L_1 = 1`.
pub fn lcm_upto(k: u64) -> Result<FactoredInteger> {
    if k > u32::MAX as u64 {
        return Err(Error::capacity("k for lcm(1..=k)", k, u32::MAX));
    }
    let factors = primes_upto(k)
        .into_iter()
        .map(|p| (p, floor_log(p, k)))
        .collect();
    Ok(FactoredInteger::from_factors_unchecked(factors))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_list(values: &[u64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::invalid("empty list"));
    }
    if values.contains(&0) {
        return Err(Error::invalid("list entries must be positive"));
    }
    Ok(())
}

/// lcm of a nonempty list of positive integers, kept factored.
pub fn lcm_factored(values: &[u64]) -> Result<FactoredInteger> {
    check_list(values)?;
    values.iter().try_fold(FactoredInteger::one(), |acc, &v| {
        Ok(acc.lcm(&factorize(v)?))
    })
}

/// lcm of a nonempty list of positive integers.
pub fn lcm_list(values: &[u64]) -> Result<BigUint> {
    Ok(lcm_factored(values)?.value())
}

/// gcd of a nonempty list of positive integers.
pub fn gcd_list(values: &[u64]) -> Result<u64> {
    check_list(values)?;
    Ok(values.iter().fold(0, |acc, &v| gcd(acc, v)))
}

/// Calls `visit(mask)` for every nonempty subset of `0..n`, as a bitmask.
pub(crate) fn for_each_nonempty_subset(n: usize, cap: usize, mut visit: impl FnMut(u32)) -> Result<()> {
    if n > cap || n > 31 {
        return Err(Error::capacity("subset enumeration size", n, cap.min(31)));
    }
    for mask in 1u32..(1u32 << n) {
        visit(mask);
    }
    Ok(())
}

/// Sum over nonempty subsets `S` of `(-1)^(|S|+1) * min(S)`.
///
/// The result always equals `max(values)`; it is computed the long way so the
/// identity can be checked. Fails above `cap` elements.
pub fn alternating_min_expansion(values: &[u64], cap: usize) -> Result<i128> {
    if values.is_empty() {
        return Err(Error::invalid("empty multiset"));
    }
    let mut total: i128 = 0;
    for_each_nonempty_subset(values.len(), cap, |mask| {
        let min = (0..values.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| values[i])
            .min()
            .expect("nonempty subset");
        if mask.count_ones() % 2 == 1 {
            total += min as i128;
        } else {
            total -= min as i128;
        }
    })?;
    Ok(total)
}
