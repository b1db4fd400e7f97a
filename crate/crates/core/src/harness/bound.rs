use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{ExactRational, FactoredInteger};
use crate::error::{Error, Result};
use crate::g_function::{g_eval, window, Progression};
use crate::multiplicative::{eval_f, MultiplicativeFunctionSpec};
use crate::period::smallest_period_phi;

/// `lcm_i phi(t_i) <= prod_i phi(t_i) / g_{k,phi}(<n>_P)` for one `n`, where
/// `t_i` are the window terms and `<n>_P` is `n` reduced into `[1, P]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub n: u64,
    pub representative: u64,
    pub period: FactoredInteger,
    pub lhs: BigUint,
    pub rhs: ExactRational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub n: u64,
    pub representative: u64,
    pub period: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl BoundRecord {
    pub fn row(&self, prog: &Progression) -> BoundRow {
        let p = prog.params();
        BoundRow {
            k: p.k,
            a: p.a,
            b: p.b,
            c: p.c,
            n: self.n,
            representative: self.representative,
            period: self.period.to_string(),
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            holds: self.holds,
        }
    }
}

pub fn bound_check(prog: &Progression, n: u64) -> Result<BoundRecord> {
    let phi = MultiplicativeFunctionSpec::phi();
    let terms = window(prog, n)?.full_terms;

    let mut lhs = BigUint::one();
    let mut product = BigUint::one();
    for &t in &terms {
        let v = eval_f(&phi, t)?
            .to_biguint()
            .ok_or_else(|| Error::Invariant(format!("phi({t}) is not a positive integer")))?;
        lhs = lhs.lcm(&v);
        product *= v;
    }

    let period = smallest_period_phi(prog)?;
    let representative = ((BigUint::from(n) - 1u32) % period.value() + 1u32)
        .to_u64()
        .expect("representative is at most n");
    let g = g_eval(&phi, prog, representative)?;
    let rhs = ExactRational::from(product) / g;
    let holds = ExactRational::from(lhs.clone()) <= rhs;
    Ok(BoundRecord {
        n,
        representative,
        period,
        lhs,
        rhs,
        holds,
    })
}
