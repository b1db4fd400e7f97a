//! Brute-force smallest periods.
//!
//! `cL_k` is always a period of `g_{k,f}`. The set of periods of a function
//! on the positive integers is closed under gcd (if `s` and `t` are periods,
//! so is `xs + yt` whenever it is positive, and Bezout gives `gcd(s, t)`), so
//! the smallest period divides `cL_k`. It is therefore enough to try the
//! divisors of `cL_k` in increasing order. Checking `g(n + d) = g(n)` for
//! `n` in `[1, cL_k]` suffices: any larger `n` reduces into that window
//! modulo the known period `cL_k`.

use rayon::prelude::*;

use crate::arith::ExactRational;
use crate::error::{Error, Result};
use crate::g_function::{g_eval, Progression};
use crate::multiplicative::MultiplicativeFunctionSpec;

/// Default largest `cL_k` the oracle will enumerate.
pub const DEFAULT_ORACLE_BUDGET: u64 = 5000;

/// Values of `g` on `n = 1..=2 cL_k`, enough to test every divisor of `cL_k`.
#[derive(Debug, Clone)]
pub struct OracleTable {
    clk: u64,
    divisors: Vec<u64>,
    values: Vec<ExactRational>,
}

/// A rejected candidate period together with an `n` that refutes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Refutation {
    pub candidate: u64,
    pub n: u64,
}

impl OracleTable {
    pub fn new(spec: &MultiplicativeFunctionSpec, prog: &Progression, budget: u64) -> Result<Self> {
        let clk = match prog.clk().to_u64() {
            Some(v) if v <= budget => v,
            _ => return Err(Error::capacity("cL_k for the oracle", prog.clk(), budget)),
        };
        let values = (1..=2 * clk)
            .into_par_iter()
            .map(|n| g_eval(spec, prog, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            clk,
            divisors: prog.clk().divisors()?,
            values,
        })
    }

    pub fn clk(&self) -> u64 {
        self.clk
    }

    /// `g(n)` for `1 <= n <= 2 cL_k`.
    pub fn value(&self, n: u64) -> &ExactRational {
        &self.values[(n - 1) as usize]
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    /// Smallest divisor `t` of `cL_k` with `key(n + t) = key(n)` on `[1, cL_k]`,
    /// plus a refuting `n` for every smaller divisor.
    fn search<K: PartialEq>(&self, keys: &[K]) -> (u64, Vec<Refutation>) {
        let clk = self.clk as usize;
        let mut refuted = Vec::new();
        for &t in &self.divisors {
            let shift = t as usize;
            match (0..clk).find(|&i| keys[i + shift] != keys[i]) {
                Some(i) => refuted.push(Refutation {
                    candidate: t,
                    n: i as u64 + 1,
                }),
                None => return (t, refuted),
            }
        }
        unreachable!("cL_k itself is always a period")
    }

    pub fn smallest_period(&self) -> u64 {
        self.search(&self.values).0
    }

    pub fn smallest_period_with_refutations(&self) -> (u64, Vec<Refutation>) {
        self.search(&self.values)
    }

    /// `v_p(g(n))` for every tabulated `n`.
    pub fn valuations(&self, p: u64) -> Result<Vec<i64>> {
        self.values.iter().map(|v| v.valuation(p)).collect()
    }

    /// Smallest period of `n -> v_p(g(n))`.
    pub fn local_period(&self, p: u64) -> Result<u64> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(self.search(&self.valuations(p)?).0)
    }
}

/// Smallest period of `g_{k,f}` by enumeration; fails if `cL_k > budget`.
pub fn brute_force_smallest_period(
    spec: &MultiplicativeFunctionSpec,
    prog: &Progression,
    budget: u64,
) -> Result<u64> {
    Ok(OracleTable::new(spec, prog, budget)?.smallest_period())
}

/// Smallest period of `n -> v_p(g_{k,phi}(n))` by enumeration.
pub fn brute_force_local_period(p: u64, prog: &Progression, budget: u64) -> Result<u64> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    OracleTable::new(&MultiplicativeFunctionSpec::phi(), prog, budget)?.local_period(p)
}
