//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use periodlab::arith::{alternating_min_expansion, factorize, is_prime, ExactRational, DEFAULT_SUBSET_CAP};
use periodlab::g_function::{g_eval, g_phi_local_valuation, Progression};
use periodlab::harness::{bound_check, nonperiodic_witness, verify_witness};
use periodlab::multiplicative::{eval_f, f_of_lcm_direct, f_of_lcm_hua, Builtin, MultiplicativeFunctionSpec};
use periodlab::period::{
    assemble_from_locals, candidate_primes, local_period_formula, smallest_period_phi, OracleTable,
    DEFAULT_ORACLE_BUDGET,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn prog(k: u64, a: u64, b: u64, c: u64) -> Progression {
    Progression::from_parts(k, a, b, c).expect("valid params")
}

fn grid(k: u64, a: u64, b: u64, c: u64) -> Vec<(u64, u64, u64, u64)> {
    let mut out = Vec::new();
    for k in 1..=k {
        for a in 1..=a {
            for b in 0..=b {
                for c in 1..=c {
                    out.push((k, a, b, c));
                }
            }
        }
    }
    out
}

fn first_failure<T: Send>(items: Vec<T>, check: impl Fn(T) -> Option<String> + Sync + Send) -> Option<String> {
    items.into_par_iter().filter_map(check).min()
}

fn periodicity() -> Check {
    let specs = ["phi", "sigma:1", "pow:1", "one"];
    let points = grid(5, 4, 4, 3);
    let mut checked = 0u64;
    for tag in specs {
        let spec = MultiplicativeFunctionSpec::from_tag(tag).unwrap();
        let fail = first_failure(points.clone(), |(k, a, b, c)| {
            let p = prog(k, a, b, c);
            let clk = p.clk().to_u64().unwrap();
            for n in 1..=2 * clk {
                let lhs = g_eval(&spec, &p, n + clk).ok()?;
                if lhs != g_eval(&spec, &p, n).ok()? {
                    return Some(format!("{tag} ({k},{a},{b},{c}) n={n}"));
                }
            }
            None
        });
        if let Some(f) = fail {
            return Err(format!("g(n + cL_k) != g(n) at {f}"));
        }
        checked += points.len() as u64;
    }
    Ok(format!("{checked} (function, params) pairs, n in [1, 2cL_k]"))
}

fn theorem_grid() -> Check {
    let points = grid(8, 6, 6, 4);
    let total = points.len();
    let outcomes: Vec<_> = points
        .into_par_iter()
        .map(|(k, a, b, c)| {
            let p = prog(k, a, b, c);
            let formula = smallest_period_phi(&p).unwrap();
            match OracleTable::new(&MultiplicativeFunctionSpec::phi(), &p, DEFAULT_ORACLE_BUDGET) {
                Ok(t) => {
                    let oracle = t.smallest_period();
                    if formula.to_u64() == Some(oracle) {
                        Ok(true)
                    } else {
                        Err(format!("({k},{a},{b},{c}): formula {formula}, oracle {oracle}"))
                    }
                }
                Err(_) => Ok(false),
            }
        })
        .collect();
    let mut skipped = 0;
    for o in &outcomes {
        match o {
            Ok(true) => {}
            Ok(false) => skipped += 1,
            Err(e) => return Err(e.clone()),
        }
    }
    if skipped * 10 >= total {
        return Err(format!("{skipped} of {total} points over the oracle budget"));
    }
    Ok(format!("{total} points, 0 disagreements, {skipped} skipped"))
}

fn worked_examples() -> Check {
    let phi = MultiplicativeFunctionSpec::phi();
    for (k, expected) in [(7, 105u64), (8, 280)] {
        let p = prog(k, 1, 0, 1);
        let formula = smallest_period_phi(&p).unwrap().to_u64();
        let oracle = OracleTable::new(&phi, &p, DEFAULT_ORACLE_BUDGET).unwrap().smallest_period();
        if formula != Some(expected) || oracle != expected {
            return Err(format!("k={k}: formula {formula:?}, oracle {oracle}, expected {expected}"));
        }
    }
    let p = prog(1224, 1, 0, 1);
    let formula = smallest_period_phi(&p).unwrap();
    if &formula != p.clk() {
        return Err(format!("k=1224: formula {formula} differs from cL_k"));
    }
    Ok(format!("105 and 280 by both routes; k=1224 formula = cL_k ({} digits, formula only)", formula.to_string().len()))
}

fn local_suite() -> Check {
    let phi = MultiplicativeFunctionSpec::phi();
    let points: Vec<_> = grid(8, 6, 6, 4)
        .into_iter()
        .filter(|&(k, a, b, c)| prog(k, a, b, c).clk().to_u64().unwrap() <= 1000)
        .collect();
    let count = points.len();
    let fail = first_failure(points, |(k, a, b, c)| {
        let p = prog(k, a, b, c);
        let table = OracleTable::new(&phi, &p, 1000).unwrap();
        let clk = table.clk();
        let candidates = candidate_primes(&p).unwrap();
        let small: BTreeSet<u64> = (2..=clk.min(60)).filter(|&q| is_prime(q)).collect();
        for &q in candidates.iter().chain(small.iter()) {
            let formula = local_period_formula(q, &p).unwrap().period.to_u64();
            let oracle = table.local_period(q).unwrap();
            if formula != Some(oracle) {
                return Some(format!("({k},{a},{b},{c}) p={q}: formula {formula:?}, oracle {oracle}"));
            }
        }
        let assembled = assemble_from_locals(&p).unwrap().to_u64();
        if assembled != Some(table.smallest_period()) {
            return Some(format!("({k},{a},{b},{c}): lcm of locals {assembled:?}, oracle {}", table.smallest_period()));
        }
        None
    });
    match fail {
        Some(f) => Err(f),
        None => Ok(format!("{count} points with cL_k <= 1000, candidate primes plus primes <= 60")),
    }
}

fn multisets(size: usize, lo: u64, hi: u64, prefix: &mut Vec<u64>, visit: &mut impl FnMut(&[u64])) {
    if prefix.len() == size {
        visit(prefix);
        return;
    }
    let start = prefix.last().copied().unwrap_or(lo);
    for v in start..=hi {
        prefix.push(v);
        multisets(size, lo, hi, prefix, visit);
        prefix.pop();
    }
}

fn hua_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let specs: Vec<_> = Builtin::ALL_SMALL.iter().map(|&b| MultiplicativeFunctionSpec::builtin(b)).collect();
    let lists = 10_000;
    for _ in 0..lists {
        let len = rng.gen_range(1..=6);
        let values: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=50)).collect();
        for spec in &specs {
            let hua = f_of_lcm_hua(spec, &values, DEFAULT_SUBSET_CAP).map_err(|e| e.to_string())?;
            let direct = f_of_lcm_direct(spec, &values).map_err(|e| e.to_string())?;
            if hua != direct {
                return Err(format!("{} on {values:?}: {hua} vs {direct}", spec.name()));
            }
        }
    }

    let mut multisets_checked = 0u64;
    let mut bad = None;
    for size in 1..=6 {
        multisets(size, 0, 9, &mut Vec::new(), &mut |m| {
            multisets_checked += 1;
            let max = *m.iter().max().unwrap() as i128;
            if bad.is_none() && alternating_min_expansion(m, DEFAULT_SUBSET_CAP).ok() != Some(max) {
                bad = Some(m.to_vec());
            }
        });
    }
    if let Some(m) = bad {
        return Err(format!("alternating-min expansion wrong on {m:?}"));
    }
    Ok(format!(
        "{lists} lists x {} functions; {multisets_checked} multisets of size <= 6 over [0,9]",
        specs.len()
    ))
}

fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).unwrap().primes().collect()
}

fn valuation_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let phi = MultiplicativeFunctionSpec::phi();
    let samples = 1_000;
    for _ in 0..samples {
        let (k, a, b, c) = (
            rng.gen_range(1..=10),
            rng.gen_range(1..=12),
            rng.gen_range(0..=12),
            rng.gen_range(1..=6),
        );
        let n = rng.gen_range(1..=2_000);
        let p = prog(k, a, b, c);
        let g = g_eval(&phi, &p, n).unwrap();
        if !(g.is_integer() && g.is_positive()) {
            return Err(format!("g({n}) = {g} for ({k},{a},{b},{c}) is not a positive integer"));
        }

        let phi_d = eval_f(&phi, p.d()).unwrap().to_u64().unwrap();
        let mut primes: BTreeSet<u64> = prime_divisors(phi_d).into_iter().collect();
        for q in p.clk().primes() {
            primes.insert(q);
            if q > 2 {
                primes.extend(prime_divisors(q - 1));
            }
        }
        let mut rebuilt = BigUint::one();
        for &q in &primes {
            let total = g_phi_local_valuation(q, &p, n).unwrap().total;
            rebuilt *= BigUint::from(q).pow(total as u32);
        }
        if ExactRational::from(rebuilt.clone()) != g {
            return Err(format!("({k},{a},{b},{c}) n={n}: valuations give {rebuilt}, g = {g}"));
        }
    }
    Ok(format!("{samples} random (params, n)"))
}

fn bound_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples = 10_000;
    let mut done = 0;
    while done < samples {
        let (k, a, b, c) = (
            rng.gen_range(1..=8),
            rng.gen_range(1..=10),
            rng.gen_range(0..=10),
            rng.gen_range(1..=6),
        );
        let p = prog(k, a, b, c);
        if p.clk().to_u64().is_none_or(|v| v > 5000) {
            continue;
        }
        let n = rng.gen_range(1..=1_000_000);
        let r = bound_check(&p, n).map_err(|e| e.to_string())?;
        if !r.holds {
            return Err(format!("({k},{a},{b},{c}) n={n}: lhs {} > rhs {}", r.lhs, r.rhs));
        }
        done += 1;
    }

    let w = nonperiodic_witness(5, 100).map_err(|e| e.to_string())?;
    if (w.p, w.n0) != (7, 196) {
        return Err(format!("witness(5, 100) gave p={}, n0={}", w.p, w.n0));
    }
    verify_witness(&w).map_err(|e| e.to_string())?;
    let phi = MultiplicativeFunctionSpec::phi();
    let phi0 = eval_f(&phi, w.n0).unwrap().to_u64().unwrap();
    let phi1 = eval_f(&phi, w.n0 + 1).unwrap().to_u64().unwrap();
    if !(is_prime(w.m * w.p * w.p + 1) && phi0 % w.p == 0 && phi1 % w.p == 0) {
        return Err(format!("witness claims fail: phi(n0)={phi0}, phi(n0+1)={phi1}"));
    }
    Ok(format!("{samples} random bound checks; witness p=7 m={} n0=196", w.m))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("periodicity with period cL_k", periodicity),
        ("closed-form period equals oracle on the grid", theorem_grid),
        ("worked examples", worked_examples),
        ("local periods and their lcm", local_suite),
        ("subset-gcd product and alternating-min identities", hua_suite),
        ("valuation decomposition of g_phi", valuation_suite),
        ("lcm bound and non-periodicity witness", bound_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
