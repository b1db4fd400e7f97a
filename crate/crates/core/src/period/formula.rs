use std::fmt;

use serde::Serialize;

use crate::arith::{factorize, floor_log, vp_unchecked, FactoredInteger};
use crate::error::{Error, Result};
use crate::g_function::Progression;

/// Which line of the power-of-two correction table applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaBranch {
    /// `a'` odd and `v_2(k+1) >= v_2(L_k) >= 2`: factor `2^{v_2(L_k)}`.
    TwoPowerOfLk,
    /// `a` odd and `v_2(cL_k) = 1`: factor 2.
    OddAUnitValuation,
    /// `k = 3`, `a` odd, `c` even: factor 2.
    K3OddAEvenC,
    /// `k = 3`, `a'` odd, `d` even: factor 2.
    K3OddReducedAEvenD,
    /// None of the above: factor 1.
    Trivial,
}

impl EtaBranch {
    pub fn tag(self) -> &'static str {
        match self {
            EtaBranch::TwoPowerOfLk => "two_power_lk",
            EtaBranch::OddAUnitValuation => "two_odd_a_v2_one",
            EtaBranch::K3OddAEvenC => "two_k3_odd_a_even_c",
            EtaBranch::K3OddReducedAEvenD => "two_k3_odd_a_prime_even_d",
            EtaBranch::Trivial => "one",
        }
    }
}

impl fmt::Display for EtaBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The power of two divided out of `cL_k` in the period formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EtaCase {
    pub value: u64,
    /// `log2(value)`.
    pub exponent: u32,
    pub branch: EtaBranch,
}

/// The odd prime `p` not dividing `a'` with `v_p(k+1) >= v_p(L_k) >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExceptionalPrime {
    pub p: u64,
    /// `v_p(L_k)`.
    pub correction_exponent: u32,
}

/// The correction factor `eta` from raw inputs. `a = d * a'` must hold.
pub fn eta2(k: u64, a: u64, a_prime: u64, c: u64, d: u64) -> Result<EtaCase> {
    if k == 0 || c == 0 || d == 0 || a_prime == 0 || d.checked_mul(a_prime) != Some(a) {
        return Err(Error::invalid(format!(
            "inconsistent eta inputs: k={k}, a={a}, a'={a_prime}, c={c}, d={d}"
        )));
    }
    let odd = |x: u64| x % 2 == 1;
    let v2_lk = floor_log(2, k);
    let v2_clk = vp_unchecked(2, c) + v2_lk;
    let v2_next = vp_unchecked(2, k + 1);

    let full = odd(a_prime) && v2_next >= v2_lk && v2_lk >= 2;
    let halves = [
        (odd(a) && v2_clk == 1, EtaBranch::OddAUnitValuation),
        (k == 3 && odd(a) && !odd(c), EtaBranch::K3OddAEvenC),
        (k == 3 && odd(a_prime) && !odd(d), EtaBranch::K3OddReducedAEvenD),
    ];
    let half = halves.iter().find(|(hit, _)| *hit).map(|&(_, b)| b);

    // The first line needs v_2(L_k) >= 2, i.e. k >= 4, and every second-line
    // disjunct needs k = 3 or v_2(cL_k) = 1; they cannot both fire.
    if full && half.is_some() {
        return Err(Error::Invariant(format!(
            "eta branches overlap at k={k}, a={a}, a'={a_prime}, c={c}, d={d}"
        )));
    }
    let (exponent, branch) = if full {
        (v2_lk, EtaBranch::TwoPowerOfLk)
    } else if let Some(branch) = half {
        (1, branch)
    } else {
        (0, EtaBranch::Trivial)
    };
    Ok(EtaCase {
        value: 1 << exponent,
        exponent,
        branch,
    })
}

pub fn eta_for(prog: &Progression) -> Result<EtaCase> {
    eta2(prog.k(), prog.a(), prog.a_prime(), prog.c(), prog.d())
}

/// `cL_k / (eta * prod_{q | a'} q^{v_q(cL_k)})`, kept factored.
pub fn q_formula(prog: &Progression) -> Result<FactoredInteger> {
    let eta = eta_for(prog)?;
    let mut q = prog.clk().clone();
    for p in factorize(prog.a_prime())?.primes() {
        q = q.without_prime(p);
    }
    let eta = FactoredInteger::prime_power(2, eta.exponent)?;
    q.checked_div(&eta).ok_or_else(|| {
        Error::Invariant(format!("eta = {eta} does not divide the reduced cL_k = {q}"))
    })
}

/// The unique odd prime `p` not dividing `a'` with `v_p(k+1) >= v_p(L_k) >= 1`, if any.
pub fn exceptional_odd_prime(prog: &Progression) -> Result<Option<ExceptionalPrime>> {
    let k = prog.k();
    let next = factorize(k.checked_add(1).ok_or(Error::Overflow("k + 1"))?)?;
    // Only primes dividing k + 1 can have v_p(k+1) >= 1.
    let hits: Vec<ExceptionalPrime> = next
        .iter()
        .filter(|&(p, _)| p != 2 && p <= k && prog.a_prime() % p != 0)
        .filter_map(|(p, e)| {
            let lk = prog.lk().exponent(p);
            (lk >= 1 && e >= lk).then_some(ExceptionalPrime {
                p,
                correction_exponent: lk,
            })
        })
        .collect();
    match hits.as_slice() {
        [] => Ok(None),
        [one] => Ok(Some(*one)),
        many => Err(Error::Invariant(format!(
            "k = {k} has {} exceptional odd primes, at most one is possible",
            many.len()
        ))),
    }
}

/// Every piece of the closed-form period in one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodFormula {
    pub eta: EtaCase,
    pub exceptional: Option<ExceptionalPrime>,
    pub q: FactoredInteger,
    pub period: FactoredInteger,
}

pub fn period_formula(prog: &Progression) -> Result<PeriodFormula> {
    let eta = eta_for(prog)?;
    let q = q_formula(prog)?;
    let exceptional = exceptional_odd_prime(prog)?;
    let period = match exceptional {
        Some(ex) => {
            let corr = FactoredInteger::prime_power(ex.p, ex.correction_exponent)?;
            q.checked_div(&corr).ok_or_else(|| {
                Error::Invariant(format!("{}^{} does not divide Q", ex.p, ex.correction_exponent))
            })?
        }
        None => q.clone(),
    };
    Ok(PeriodFormula {
        eta,
        exceptional,
        q,
        period,
    })
}

/// Smallest period of `g_{k,phi}` from the closed form.
pub fn smallest_period_phi(prog: &Progression) -> Result<FactoredInteger> {
    Ok(period_formula(prog)?.period)
}
