//! Exact computation of
//! `g_{k,f}(n) = prod_{i=0..k} f(b + a(n + ic)) / f(lcm_{i} (b + a(n + ic)))`
//! for multiplicative `f`, the closed-form smallest period of `g_{k,phi}`,
//! and brute-force oracles that check it.

pub mod arith;
pub mod error;
pub mod g_function;
pub mod harness;
pub mod multiplicative;
pub mod period;

pub use error::{Error, Result};
