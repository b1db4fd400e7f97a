use serde::Serialize;

use crate::arith::{is_prime, next_prime, vp_unchecked};
use crate::error::{Error, Result};
use crate::multiplicative::{eval_f, MultiplicativeFunctionSpec};

/// A point where `prod_i phi(n + i) / lcm_i phi(n + i)` is at least `p`.
///
/// With `n0 = m p^2` and `n0 + 1` prime, `p` divides both `phi(n0)` and
/// `phi(n0 + 1) = n0`, so for every `k >= 1` the ratio at `n0` is divisible
/// by `p^min(v_p(phi(n0)), v_p(phi(n0 + 1)))`. Since `p` can be taken above
/// any bound, the ratio is unbounded and therefore not periodic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub p: u64,
    pub m: u64,
    pub n0: u64,
    pub g_bar_value_lower_bound: u64,
}

fn phi_u64(n: u64) -> Result<u64> {
    eval_f(&MultiplicativeFunctionSpec::phi(), n)?
        .to_u64()
        .ok_or(Error::Overflow("phi"))
}

/// Smallest prime `p > min_bound`, then smallest `m <= search_limit` with
/// `m p^2 + 1` prime.
pub fn nonperiodic_witness(min_bound: u64, search_limit: u64) -> Result<WitnessRecord> {
    if min_bound < 2 {
        return Err(Error::invalid("min_bound must be >= 2"));
    }
    let p = next_prime(min_bound).ok_or(Error::Overflow("next prime"))?;
    let p2 = p.checked_mul(p).ok_or(Error::Overflow("p^2"))?;
    for m in 1..=search_limit {
        let n0 = m.checked_mul(p2).ok_or(Error::Overflow("m p^2"))?;
        let Some(next) = n0.checked_add(1) else {
            return Err(Error::Overflow("m p^2 + 1"));
        };
        if !is_prime(next) {
            continue;
        }
        let (phi0, phi1) = (phi_u64(n0)?, phi_u64(next)?);
        let shared = vp_unchecked(p, phi0).min(vp_unchecked(p, phi1));
        let record = WitnessRecord {
            p,
            m,
            n0,
            g_bar_value_lower_bound: p.checked_pow(shared).ok_or(Error::Overflow("p^e"))?,
        };
        verify_witness(&record)?;
        return Ok(record);
    }
    Err(Error::NotFound(format!(
        "no m <= {search_limit} makes m*{p}^2 + 1 prime; raise the search limit"
    )))
}

/// Rechecks a witness from its fields alone.
pub fn verify_witness(w: &WitnessRecord) -> Result<()> {
    let fail = |what: &str| Err(Error::Invariant(format!("witness {w:?}: {what}")));
    if !is_prime(w.p) {
        return fail("p is not prime");
    }
    if w.p.checked_mul(w.p).and_then(|p2| p2.checked_mul(w.m)) != Some(w.n0) {
        return fail("n0 != m p^2");
    }
    if !is_prime(w.n0 + 1) {
        return fail("n0 + 1 is not prime");
    }
    if phi_u64(w.n0)? % w.p != 0 {
        return fail("p does not divide phi(n0)");
    }
    if phi_u64(w.n0 + 1)? % w.p != 0 {
        return fail("p does not divide phi(n0 + 1)");
    }
    if w.g_bar_value_lower_bound < w.p {
        return fail("lower bound below p");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_examples() {
        let w = nonperiodic_witness(5, 100).unwrap();
        assert_eq!((w.p, w.m, w.n0), (7, 4, 196));
        assert_eq!(w.g_bar_value_lower_bound, 7);

        let w = nonperiodic_witness(2, 100).unwrap();
        assert_eq!((w.p, w.m, w.n0), (3, 2, 18));
    }

    #[test]
    fn exhausted_search() {
        assert!(matches!(nonperiodic_witness(5, 1), Err(Error::NotFound(_))));
        assert!(matches!(nonperiodic_witness(1, 100), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let mut w = nonperiodic_witness(5, 100).unwrap();
        w.m = 3;
        w.n0 = 147;
        assert!(verify_witness(&w).is_err());
    }
}
