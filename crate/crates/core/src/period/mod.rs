//! Smallest period of `g_{k,phi}`: the closed form, its per-prime
//! decomposition, and brute-force oracles for both.

mod formula;
mod local;
mod oracle;

pub use formula::{
    eta2, eta_for, exceptional_odd_prime, period_formula, q_formula, smallest_period_phi, EtaBranch,
    EtaCase, ExceptionalPrime, PeriodFormula,
};
pub use local::{
    assemble_from_locals, candidate_primes, local_case, local_period_formula, LocalCase, LocalPeriod,
};
pub use oracle::{
    brute_force_local_period, brute_force_smallest_period, OracleTable, Refutation,
    DEFAULT_ORACLE_BUDGET,
};
