//! Primality testing and factorization of machine-sized integers.
//!
//! Every input here fits in a `u64`. Trial division handles all prime
//! factors up to [`TRIAL_DIVISION_LIMIT`]; anything left over is either a
//! prime (certified by a deterministic Miller-Rabin test) or is split with
//! Pollard-Brent rho and recursed on.

use std::collections::BTreeMap;

pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

// First twelve primes. Miller-Rabin with these bases is exact for n < 3.3e24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for any `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> Option<u64> {
    let mut m = n.checked_add(1)?;
    while !is_prime(m) {
        m = m.checked_add(1)?;
    }
    Some(m)
}

/// All primes `<= limit`, ascending.
pub fn primes_upto(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Finds a nontrivial factor of an odd composite `n` (Brent's variant of rho).
fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime(n));
    const BATCH: u64 = 128;
    for c in 1..n {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r <<= 1;
        }
        if g == n {
            // Batched product collapsed; step one at a time from the checkpoint.
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausted every polynomial for composite {n}")
}

fn split_into(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let f = pollard_brent(n);
    split_into(f, out);
    split_into(n / f, out);
}

/// Prime factorization of `n >= 1` as an ordered prime -> exponent map.
pub(crate) fn factor_u64(mut n: u64) -> BTreeMap<u64, u32> {
    debug_assert!(n >= 1);
    let mut out = BTreeMap::new();
    let tz = n.trailing_zeros();
    if tz > 0 {
        out.insert(2, tz);
        n >>= tz;
    }
    let mut p = 3u64;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.insert(p, e);
        }
        p += 2;
    }
    if n > 1 {
        if p * p > n {
            // No factor <= sqrt(n) remains, so n is prime.
            *out.entry(n).or_insert(0) += 1;
        } else {
            split_into(n, &mut out);
        }
    }
    out
}
