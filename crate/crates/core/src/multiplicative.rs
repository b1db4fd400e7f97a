//! Multiplicative functions defined by their values on prime powers.
//!
//! A function is described once by `(p, e) -> f(p^e)` and evaluated at `n`
//! by multiplying over the factorization of `n`, so multiplicativity holds by
//! construction. Two routes to `f(lcm(values))` are provided: the direct one
//! and the inclusion-exclusion product over gcds of all subsets.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{
    factorize, for_each_nonempty_subset, gcd_list, lcm_factored, ExactRational, FactoredInteger,
};
use crate::error::{Error, Result};

/// The built-in function families, addressable by string tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Euler's totient, tag `phi`.
    Phi,
    /// Sum of `alpha`-th powers of divisors, tag `sigma:<alpha>`.
    Sigma(u32),
    /// `n^e` for an integer `e`, tag `pow:<e>`.
    Pow(i32),
    /// Constant 1, tag `one`.
    One,
}

impl Builtin {
    pub const ALL_SMALL: [Builtin; 6] = [
        Builtin::Phi,
        Builtin::Sigma(0),
        Builtin::Sigma(1),
        Builtin::Pow(1),
        Builtin::Pow(-1),
        Builtin::One,
    ];

    fn prime_power_value(self, p: u64, e: u32) -> ExactRational {
        let p_big = BigUint::from(p);
        match self {
            Builtin::Phi => ExactRational::from(p_big.pow(e - 1) * (p - 1)),
            Builtin::Sigma(alpha) => {
                let step = p_big.pow(alpha);
                let mut term = BigUint::one();
                let mut sum = BigUint::zero();
                for _ in 0..=e {
                    sum += &term;
                    term *= &step;
                }
                ExactRational::from(sum)
            }
            Builtin::Pow(exp) => {
                let power = p_big.pow(e * exp.unsigned_abs());
                if exp >= 0 {
                    ExactRational::from(power)
                } else {
                    ExactRational::new(BigInt::one(), BigInt::from(power))
                        .expect("p^k is nonzero")
                }
            }
            Builtin::One => ExactRational::one(),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Phi => write!(f, "phi"),
            Builtin::Sigma(a) => write!(f, "sigma:{a}"),
            Builtin::Pow(e) => write!(f, "pow:{e}"),
            Builtin::One => write!(f, "one"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(tag: &str) -> Result<Self> {
        let tag = tag.trim();
        match tag.split_once(':') {
            None if tag == "phi" => Ok(Builtin::Phi),
            None if tag == "one" => Ok(Builtin::One),
            Some(("sigma", alpha)) => alpha.parse().map(Builtin::Sigma).map_err(|_| {
                Error::invalid(format!("sigma needs a nonnegative integer exponent, got {alpha:?}"))
            }),
            Some(("pow", exp)) => exp.parse().map(Builtin::Pow).map_err(|_| {
                Error::invalid(format!("pow needs an integer exponent, got {exp:?}"))
            }),
            _ => Err(Error::invalid(format!(
                "unknown function tag {tag:?} (expected phi, sigma:<a>, pow:<e>, one)"
            ))),
        }
    }
}

type PrimePowerRule = dyn Fn(u64, u32) -> ExactRational + Send + Sync;

#[derive(Clone)]
enum Rule {
    Builtin(Builtin),
    Custom(Arc<PrimePowerRule>),
}

/// A multiplicative function `f` with `f(1) = 1`, given by its values on
/// prime powers.
#[derive(Clone)]
pub struct MultiplicativeFunctionSpec {
    name: String,
    rule: Rule,
}

impl fmt::Debug for MultiplicativeFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeFunctionSpec")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl MultiplicativeFunctionSpec {
    pub fn builtin(kind: Builtin) -> Self {
        Self {
            name: kind.to_string(),
            rule: Rule::Builtin(kind),
        }
    }

    /// Parses a tag such as `phi`, `sigma:2`, `pow:-1` or `one`.
    pub fn from_tag(tag: &str) -> Result<Self> {
        Ok(Self::builtin(tag.parse()?))
    }

    pub fn phi() -> Self {
        Self::builtin(Builtin::Phi)
    }

    /// A function from an arbitrary prime-power rule. The rule is only ever
    /// called with `e >= 1`; returning zero makes evaluation fail.
    pub fn custom(
        name: impl Into<String>,
        rule: impl Fn(u64, u32) -> ExactRational + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            rule: Rule::Custom(Arc::new(rule)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn as_builtin(&self) -> Option<Builtin> {
        match self.rule {
            Rule::Builtin(b) => Some(b),
            Rule::Custom(_) => None,
        }
    }

    pub fn is_phi(&self) -> bool {
        self.as_builtin() == Some(Builtin::Phi)
    }

    /// `f(p^e)` for prime `p` and `e >= 1`.
    pub fn prime_power_value(&self, p: u64, e: u32) -> Result<ExactRational> {
        debug_assert!(e >= 1);
        let v = match &self.rule {
            Rule::Builtin(b) => b.prime_power_value(p, e),
            Rule::Custom(rule) => rule(p, e),
        };
        if v.is_zero() {
            return Err(Error::Invariant(format!(
                "{}({p}^{e}) = 0; multiplicative functions here must not vanish",
                self.name
            )));
        }
        Ok(v)
    }

    /// `f(n)` for an already factored `n`.
    pub fn eval_factored(&self, n: &FactoredInteger) -> Result<ExactRational> {
        n.iter()
            .map(|(p, e)| self.prime_power_value(p, e))
            .try_fold(ExactRational::one(), |acc, v| Ok(acc * v?))
    }
}

/// `f(n)` for `n >= 1`.
pub fn eval_f(spec: &MultiplicativeFunctionSpec, n: u64) -> Result<ExactRational> {
    spec.eval_factored(&factorize(n)?)
}

/// `f(lcm(values))`, computed from the factored lcm.
pub fn f_of_lcm_direct(spec: &MultiplicativeFunctionSpec, values: &[u64]) -> Result<ExactRational> {
    spec.eval_factored(&lcm_factored(values)?)
}

/// `f(lcm(values))` through the subset product
/// `prod_{nonempty S} f(gcd S)^((-1)^(|S|-1))`.
///
/// Enumerates all `2^n - 1` subsets, so `values.len()` must not exceed `cap`.
pub fn f_of_lcm_hua(
    spec: &MultiplicativeFunctionSpec,
    values: &[u64],
    cap: usize,
) -> Result<ExactRational> {
    if values.is_empty() {
        return Err(Error::invalid("empty list"));
    }
    if values.contains(&0) {
        return Err(Error::invalid("list entries must be positive"));
    }
    let mut numer = ExactRational::one();
    let mut denom = ExactRational::one();
    let mut subset = Vec::with_capacity(values.len());
    let mut failure = None;
    for_each_nonempty_subset(values.len(), cap, |mask| {
        if failure.is_some() {
            return;
        }
        subset.clear();
        subset.extend((0..values.len()).filter(|i| mask >> i & 1 == 1).map(|i| values[i]));
        let g = gcd_list(&subset).expect("nonempty positive subset");
        match eval_f(spec, g) {
            Ok(v) if mask.count_ones() % 2 == 1 => numer = &numer * &v,
            Ok(v) => denom = &denom * &v,
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(numer / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, DEFAULT_SUBSET_CAP};
    use proptest::prelude::*;

    fn r(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn spec(tag: &str) -> MultiplicativeFunctionSpec {
        MultiplicativeFunctionSpec::from_tag(tag).unwrap()
    }

    fn naive_phi(n: u64) -> u64 {
        (1..=n).filter(|&m| gcd(m, n) == 1).count() as u64
    }

    #[test]
    fn builtin_examples() {
        assert_eq!(eval_f(&spec("phi"), 12).unwrap(), r("4"));
        assert_eq!(eval_f(&spec("sigma:1"), 6).unwrap(), r("12"));
        assert_eq!(eval_f(&spec("pow:-1"), 8).unwrap(), r("1/8"));
        assert_eq!(eval_f(&spec("phi"), 1).unwrap(), r("1"));
        assert_eq!(eval_f(&spec("phi"), 504).unwrap(), r("144"));
        assert_eq!(eval_f(&spec("sigma:0"), 12).unwrap(), r("6"));
        assert!(eval_f(&spec("phi"), 0).is_err());
    }

    #[test]
    fn phi_matches_coprime_count() {
        let phi = spec("phi");
        for n in 1..=300 {
            assert_eq!(eval_f(&phi, n).unwrap().to_u64(), Some(naive_phi(n)), "n = {n}");
        }
    }

    #[test]
    fn sigma_matches_divisor_sum() {
        for alpha in 0..=3u32 {
            let s = spec(&format!("sigma:{alpha}"));
            for n in 1..=120u64 {
                let want: u64 = (1..=n).filter(|d| n % d == 0).map(|d| d.pow(alpha)).sum();
                assert_eq!(eval_f(&s, n).unwrap().to_u64(), Some(want));
            }
        }
    }

    #[test]
    fn tags_round_trip_and_reject_junk() {
        for tag in ["phi", "one", "sigma:0", "sigma:3", "pow:-2", "pow:5"] {
            assert_eq!(spec(tag).name(), tag);
        }
        for bad in ["pow:0.5", "pow:", "sigma:-1", "sigma:1.5", "tau", ""] {
            assert!(MultiplicativeFunctionSpec::from_tag(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(f_of_lcm_direct(&spec("phi"), &[4, 6]).unwrap(), r("4"));
        assert_eq!(f_of_lcm_direct(&spec("phi"), &[2, 3]).unwrap(), r("2"));
        assert_eq!(f_of_lcm_direct(&spec("one"), &[5, 7, 9]).unwrap(), r("1"));
        let cap = DEFAULT_SUBSET_CAP;
        assert_eq!(f_of_lcm_hua(&spec("phi"), &[4, 6], cap).unwrap(), r("4"));
        assert_eq!(f_of_lcm_hua(&spec("phi"), &[2, 3], cap).unwrap(), r("2"));
        assert_eq!(f_of_lcm_hua(&spec("pow:1"), &[6, 10, 15], cap).unwrap(), r("30"));
        assert!(f_of_lcm_direct(&spec("phi"), &[]).is_err());
        assert!(f_of_lcm_hua(&spec("phi"), &[], cap).is_err());
        assert!(matches!(
            f_of_lcm_hua(&spec("phi"), &[1; 8], 5),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn vanishing_custom_function_is_rejected() {
        let bad = MultiplicativeFunctionSpec::custom("bad", |p, _| {
            ExactRational::from(if p == 3 { 0 } else { 1 })
        });
        assert!(eval_f(&bad, 4).is_ok());
        assert!(matches!(eval_f(&bad, 6), Err(Error::Invariant(_))));
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_pairs(m in 1u64..5000, n in 1u64..5000, which in 0usize..6) {
            prop_assume!(gcd(m, n) == 1);
            let s = MultiplicativeFunctionSpec::builtin(Builtin::ALL_SMALL[which]);
            let lhs = eval_f(&s, m * n).unwrap();
            let rhs = &eval_f(&s, m).unwrap() * &eval_f(&s, n).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn builtins_never_vanish(n in 1u64..1_000_000, which in 0usize..6) {
            let s = MultiplicativeFunctionSpec::builtin(Builtin::ALL_SMALL[which]);
            prop_assert!(!eval_f(&s, n).unwrap().is_zero());
        }
    }
}
