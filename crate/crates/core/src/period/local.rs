//! Smallest period of `n -> v_p(g_{k,phi}(n))` for a single prime `p`, and
//! the global period as the lcm of these local ones.
//!
//! Four situations are distinguished by whether `p` divides `cL_k`, `a'` and
//! `d`. In each, the local period is a product of primes `q` with
//! `p | q - 1` (those whose shared multiples in the window move `v_p`),
//! times a power of `p` coming from terms divisible by high powers of `p`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{factorize, is_prime, vp_unchecked, FactoredInteger};
use crate::error::{Error, Result};
use crate::g_function::Progression;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalCase {
    /// `p` does not divide `cL_k`.
    CoprimeToPeriod,
    /// `p | cL_k` and `p | a'`: no window term is divisible by `p`.
    DividesReducedA,
    /// `p | cL_k`, `p` coprime to `a'` and to `d`.
    CoprimeToD,
    /// `p | cL_k`, `p` coprime to `a'`, `p | d`.
    DividesD,
}

/// The formula's answer for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPeriod {
    pub prime: u64,
    pub case: LocalCase,
    /// Exponent of `p` itself in the local period.
    pub p_exponent: u32,
    pub period: FactoredInteger,
}

pub fn local_case(p: u64, prog: &Progression) -> LocalCase {
    if !prog.clk().divisible_by(p) {
        LocalCase::CoprimeToPeriod
    } else if prog.a_prime() % p == 0 {
        LocalCase::DividesReducedA
    } else if prog.d() % p != 0 {
        LocalCase::CoprimeToD
    } else {
        LocalCase::DividesD
    }
}

/// Primes `q | c`, `q` coprime to `a`, with `p | q - 1`.
fn primes_from_c(p: u64, prog: &Progression) -> Result<Vec<u64>> {
    Ok(factorize(prog.c())?
        .primes()
        .filter(|&q| prog.a() % q != 0 && (q - 1) % p == 0)
        .collect())
}

/// Primes `q | L_k`, `q` coprime to `ac`, with `p | q - 1` and `q` not dividing `k + 1`.
fn primes_from_lk(p: u64, prog: &Progression) -> Vec<u64> {
    prog.lk()
        .primes()
        .filter(|&q| {
            prog.a() % q != 0
                && prog.c() % q != 0
                && (q - 1) % p == 0
                && (prog.k() + 1) % q != 0
        })
        .collect()
}

fn p_exponent(p: u64, prog: &Progression, case: LocalCase) -> u32 {
    let v_c = vp_unchecked(p, prog.c());
    let v_lk = prog.lk().exponent(p);
    let v_clk = v_c + v_lk;
    let v_next = vp_unchecked(p, prog.k() + 1);
    match case {
        LocalCase::CoprimeToPeriod | LocalCase::DividesReducedA => 0,
        LocalCase::CoprimeToD if v_clk == 1 => 0,
        LocalCase::CoprimeToD | LocalCase::DividesD if v_next >= v_lk => v_c,
        LocalCase::CoprimeToD | LocalCase::DividesD => v_clk,
    }
}

/// Closed-form local period at prime `p <= cL_k`.
pub fn local_period_formula(p: u64, prog: &Progression) -> Result<LocalPeriod> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some(clk) = prog.clk().to_u64() {
        if p > clk {
            return Err(Error::invalid(format!(
                "p = {p} exceeds cL_k = {clk}; its local period is 1"
            )));
        }
    }
    let case = local_case(p, prog);
    let mut primes = primes_from_c(p, prog)?;
    if case != LocalCase::CoprimeToPeriod {
        primes.extend(primes_from_lk(p, prog));
    }
    let mut period = FactoredInteger::one();
    for q in primes {
        period = &period * &FactoredInteger::prime_power(q, 1)?;
    }
    let p_exponent = p_exponent(p, prog, case);
    period = &period * &FactoredInteger::prime_power(p, p_exponent)?;
    Ok(LocalPeriod {
        prime: p,
        case,
        p_exponent,
        period,
    })
}

/// Primes whose local period can exceed 1: the prime factors of `cL_k` and
/// primes `p | q - 1` for prime `q | c` coprime to `a`.
pub fn candidate_primes(prog: &Progression) -> Result<Vec<u64>> {
    let mut out: BTreeSet<u64> = prog.clk().primes().collect();
    for q in factorize(prog.c())?.primes() {
        if prog.a() % q != 0 && q > 2 {
            out.extend(factorize(q - 1)?.primes());
        }
    }
    Ok(out.into_iter().collect())
}

/// lcm of the local formula over [`candidate_primes`].
pub fn assemble_from_locals(prog: &Progression) -> Result<FactoredInteger> {
    candidate_primes(prog)?
        .into_iter()
        .try_fold(FactoredInteger::one(), |acc, p| {
            Ok(acc.lcm(&local_period_formula(p, prog)?.period))
        })
}
