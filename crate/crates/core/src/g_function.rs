//! The progression window and the ratio
//! `g_{k,f}(n) = prod_i f(b + a(n + ic)) / f(lcm_i (b + a(n + ic)))`,
//! together with the per-prime valuation breakdown of `g_{k,phi}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arith::{self, factorize, gcd, is_prime, lcm_upto, vp_unchecked, ExactRational, FactoredInteger};
use crate::error::{Error, Result};
use crate::multiplicative::{eval_f, MultiplicativeFunctionSpec};

/// The four integers that fix an instance: `k >= 1`, `a >= 1`, `b >= 0`, `c >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProgressionParams {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl ProgressionParams {
    pub fn new(k: u64, a: u64, b: u64, c: u64) -> Result<Self> {
        let params = Self { k, a, b, c };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k must be >= 1"));
        }
        if self.a == 0 {
            return Err(Error::invalid("a must be >= 1"));
        }
        if self.c == 0 {
            return Err(Error::invalid("c must be >= 1"));
        }
        Ok(())
    }
}

/// Quantities derived from `(k, a, b, c)` that the period analysis uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedParams {
    /// `gcd(a, b)`, with `gcd(a, 0) = a`.
    pub d: u64,
    pub a_prime: u64,
    pub b_prime: u64,
    /// `lcm(1, ..., k)`.
    pub lk: FactoredInteger,
    /// `c * lcm(1, ..., k)`.
    pub clk: FactoredInteger,
}

pub fn derive_params(params: &ProgressionParams) -> Result<DerivedParams> {
    params.validate()?;
    let d = gcd(params.a, params.b);
    let lk = lcm_upto(params.k)?;
    let clk = &factorize(params.c)? * &lk;
    Ok(DerivedParams {
        d,
        a_prime: params.a / d,
        b_prime: params.b / d,
        lk,
        clk,
    })
}

/// Validated parameters bundled with their derived quantities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progression {
    params: ProgressionParams,
    derived: DerivedParams,
}

impl Progression {
    pub fn new(params: ProgressionParams) -> Result<Self> {
        let derived = derive_params(&params)?;
        Ok(Self { params, derived })
    }

    pub fn from_parts(k: u64, a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new(ProgressionParams::new(k, a, b, c)?)
    }

    pub fn params(&self) -> &ProgressionParams {
        &self.params
    }

    pub fn derived(&self) -> &DerivedParams {
        &self.derived
    }

    pub fn k(&self) -> u64 {
        self.params.k
    }

    pub fn a(&self) -> u64 {
        self.params.a
    }

    pub fn b(&self) -> u64 {
        self.params.b
    }

    pub fn c(&self) -> u64 {
        self.params.c
    }

    pub fn d(&self) -> u64 {
        self.derived.d
    }

    pub fn a_prime(&self) -> u64 {
        self.derived.a_prime
    }

    pub fn b_prime(&self) -> u64 {
        self.derived.b_prime
    }

    pub fn lk(&self) -> &FactoredInteger {
        &self.derived.lk
    }

    pub fn clk(&self) -> &FactoredInteger {
        &self.derived.clk
    }

    /// `b + a(n + ic)`, or `None` on overflow.
    fn term(&self, offset: u64, scale: u64, n: u64, i: u64) -> Option<u64> {
        let step = i.checked_mul(self.params.c)?.checked_add(n)?;
        scale.checked_mul(step)?.checked_add(offset)
    }
}

/// The `k + 1` terms `b + a(n + ic)` and their reduced forms `b' + a'(n + ic)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressionWindow {
    pub full_terms: Vec<u64>,
    pub reduced_terms: Vec<u64>,
}

pub fn window(prog: &Progression, n: u64) -> Result<ProgressionWindow> {
    if n == 0 {
        return Err(Error::invalid("n must be >= 1"));
    }
    let len = prog.k() + 1;
    let mut full_terms = Vec::with_capacity(len as usize);
    let mut reduced_terms = Vec::with_capacity(len as usize);
    for i in 0..len {
        let full = prog
            .term(prog.b(), prog.a(), n, i)
            .ok_or(Error::Overflow("progression term"))?;
        let reduced = prog
            .term(prog.b_prime(), prog.a_prime(), n, i)
            .ok_or(Error::Overflow("progression term"))?;
        if full == 0 {
            return Err(Error::Invariant(format!("nonpositive window term at i = {i}")));
        }
        full_terms.push(full);
        reduced_terms.push(reduced);
    }
    Ok(ProgressionWindow {
        full_terms,
        reduced_terms,
    })
}

/// `g_{k,f}(n)` for `n >= 1`.
///
/// A prime dividing exactly one window term contributes `f(p^e) / f(p^e) = 1`,
/// so only primes shared by two or more terms are evaluated.
pub fn g_eval(spec: &MultiplicativeFunctionSpec, prog: &Progression, n: u64) -> Result<ExactRational> {
    let w = window(prog, n)?;
    let mut exponents: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &t in &w.full_terms {
        for (p, e) in factorize(t)?.iter() {
            exponents.entry(p).or_default().push(e);
        }
    }
    let mut acc = ExactRational::one();
    for (p, es) in exponents.into_iter().filter(|(_, es)| es.len() > 1) {
        let top = *es.iter().max().expect("nonempty");
        let mut numer = ExactRational::one();
        for e in es {
            numer = &numer * &spec.prime_power_value(p, e)?;
        }
        acc = &acc * &(numer / spec.prime_power_value(p, top)?);
    }
    Ok(acc)
}

/// `g_{k,f}(n)` straight from the definition: the product of `f` over the
/// window divided by `f` of the window's lcm.
pub fn g_eval_by_definition(
    spec: &MultiplicativeFunctionSpec,
    prog: &Progression,
    n: u64,
) -> Result<ExactRational> {
    let w = window(prog, n)?;
    let mut numer = ExactRational::one();
    for &t in &w.full_terms {
        numer = &numer * &eval_f(spec, t)?;
    }
    Ok(numer / crate::multiplicative::f_of_lcm_direct(spec, &w.full_terms)?)
}

/// `v_p(g_{k,phi}(n))` split into its three contributions:
/// `k * v_p(phi(d))`, the prime-power counts for `p` itself, and the
/// `v_p(q - 1)` contributions from primes `q` shared by several terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalValuationBreakdown {
    pub prime: u64,
    pub base: u64,
    /// `e -> max(0, #{m : p^e | m} - 1)` over the reduced window.
    pub fe_terms: BTreeMap<u32, u64>,
    /// `q -> max(0, #{m : q | m} - 1) * v_p(q - 1)`.
    pub hq_terms: BTreeMap<u64, u64>,
    pub total: u64,
}

impl LocalValuationBreakdown {
    fn finish(prime: u64, base: u64, fe_terms: BTreeMap<u32, u64>, hq_terms: BTreeMap<u64, u64>) -> Self {
        let total = base + fe_terms.values().sum::<u64>() + hq_terms.values().sum::<u64>();
        Self {
            prime,
            base,
            fe_terms,
            hq_terms,
            total,
        }
    }
}

fn surplus(terms: &[u64], modulus: u64) -> u64 {
    let count = terms.iter().filter(|&&m| m % modulus == 0).count() as u64;
    count.saturating_sub(1)
}

fn phi_d_base(p: u64, prog: &Progression) -> Result<u64> {
    let phi_d = eval_f(&MultiplicativeFunctionSpec::phi(), prog.d())?
        .to_u64()
        .ok_or(Error::Overflow("phi(d)"))?;
    Ok(prog.k() * vp_unchecked(p, phi_d) as u64)
}

/// The breakdown of `v_p(g_{k,phi}(n))` with `e` limited to
/// `v_p(cL_k)` and `q` limited to prime factors of `cL_k` not dividing `a`.
pub fn g_phi_local_valuation(p: u64, prog: &Progression, n: u64) -> Result<LocalValuationBreakdown> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let w = window(prog, n)?;
    let terms = &w.reduced_terms;
    let base = phi_d_base(p, prog)?;

    let first_e = if prog.d() % p == 0 { 1 } else { 2 };
    let mut fe_terms = BTreeMap::new();
    for e in first_e..=prog.clk().exponent(p) {
        let pe = p.checked_pow(e).ok_or(Error::Overflow("p^e"))?;
        fe_terms.insert(e, surplus(terms, pe));
    }

    let mut hq_terms = BTreeMap::new();
    for q in prog.clk().primes() {
        if prog.a() % q != 0 && (q - 1) % p == 0 {
            let weight = vp_unchecked(p, q - 1) as u64;
            hq_terms.insert(q, surplus(terms, q) * weight);
        }
    }
    Ok(LocalValuationBreakdown::finish(p, base, fe_terms, hq_terms))
}

/// The same breakdown before simplification: `e` runs over every exponent
/// reached in the window and `q` over every prime factor of a reduced term
/// with `q` coprime to `d` and `p | q - 1`.
pub fn g_phi_local_valuation_unreduced(
    p: u64,
    prog: &Progression,
    n: u64,
) -> Result<LocalValuationBreakdown> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let w = window(prog, n)?;
    let terms = &w.reduced_terms;
    let base = phi_d_base(p, prog)?;

    let first_e = if prog.d() % p == 0 { 1 } else { 2 };
    let top = terms.iter().map(|&m| vp_unchecked(p, m)).max().unwrap_or(0);
    let fe_terms = (first_e..=top)
        .map(|e| (e, surplus(terms, p.pow(e))))
        .collect();

    let mut shared = BTreeSet::new();
    for &m in terms {
        shared.extend(factorize(m)?.primes());
    }
    let hq_terms = shared
        .into_iter()
        .filter(|&q| prog.d() % q != 0 && (q - 1) % p == 0)
        .map(|q| (q, surplus(terms, q) * vp_unchecked(p, q - 1) as u64))
        .collect();
    Ok(LocalValuationBreakdown::finish(p, base, fe_terms, hq_terms))
}

/// Largest `p^e` block [`check_incongruence`] will materialize.
pub const INCONGRUENCE_BLOCK_CAP: u64 = 1 << 22;

/// Whether the `p^e` consecutive terms `b' + a'(m + ic)`, `0 <= i < p^e`,
/// are pairwise distinct modulo `p^(v_p(c) + e)`. Requires `p` not dividing `a'`.
pub fn check_incongruence(p: u64, e: u32, prog: &Progression, m: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || m == 0 {
        return Err(Error::invalid("e and m must be positive"));
    }
    if prog.a_prime() % p == 0 {
        return Err(Error::invalid(format!("{p} divides a' = {}", prog.a_prime())));
    }
    let block = p
        .checked_pow(e)
        .filter(|&b| b <= INCONGRUENCE_BLOCK_CAP)
        .ok_or_else(|| Error::capacity("p^e block", format!("{p}^{e}"), INCONGRUENCE_BLOCK_CAP))?;
    let modulus = p
        .checked_pow(arith::vp_unchecked(p, prog.c()) + e)
        .ok_or(Error::Overflow("p^(v_p(c)+e)"))? as u128;

    let (ap, bp, c) = (prog.a_prime() as u128, prog.b_prime() as u128, prog.c() as u128);
    let mut residues: Vec<u128> = (0..block as u128)
        .map(|i| (bp + ap * ((m as u128 + i * c) % modulus)) % modulus)
        .collect();
    residues.sort_unstable();
    Ok(residues.windows(2).all(|w| w[0] != w[1]))
}
