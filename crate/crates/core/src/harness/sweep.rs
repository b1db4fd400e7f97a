use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::report::{period_report, Method, PeriodReport};
use crate::error::{Error, Result};
use crate::g_function::Progression;
use crate::multiplicative::MultiplicativeFunctionSpec;
use crate::period::DEFAULT_ORACLE_BUDGET;

/// Environment variable that overrides [`DEFAULT_ORACLE_BUDGET`].
pub const ORACLE_BUDGET_ENV: &str = "PERIODLAB_ORACLE_BUDGET";

/// The oracle budget from the environment, or the default when unset.
pub fn oracle_budget_from_env() -> Result<u64> {
    match std::env::var(ORACLE_BUDGET_ENV) {
        Ok(raw) => match raw.trim().parse::<u64>() {
            Ok(b) if b >= 1 => Ok(b),
            _ => Err(Error::invalid(format!("{ORACLE_BUDGET_ENV}={raw:?} is not a positive integer"))),
        },
        Err(_) => Ok(DEFAULT_ORACLE_BUDGET),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub k_range: RangeInclusive<u64>,
    pub a_range: RangeInclusive<u64>,
    pub b_range: RangeInclusive<u64>,
    pub c_range: RangeInclusive<u64>,
    pub oracle_budget: u64,
    pub function_tag: String,
    pub method: Method,
    pub parallelism: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            k_range: 1..=8,
            a_range: 1..=6,
            b_range: 0..=6,
            c_range: 1..=4,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            function_tag: "phi".into(),
            method: Method::Both,
            parallelism: 1,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let ranges = [
            ("k", &self.k_range, 1),
            ("a", &self.a_range, 1),
            ("b", &self.b_range, 0),
            ("c", &self.c_range, 1),
        ];
        for (name, range, min) in ranges {
            if range.is_empty() {
                return Err(Error::invalid(format!(
                    "{name} range {}..={} is empty",
                    range.start(),
                    range.end()
                )));
            }
            if *range.start() < min {
                return Err(Error::invalid(format!("{name} range must start at >= {min}")));
            }
        }
        if self.oracle_budget == 0 {
            return Err(Error::invalid("oracle budget must be >= 1"));
        }
        if self.parallelism == 0 {
            return Err(Error::invalid("parallelism must be >= 1"));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<(u64, u64, u64, u64)> {
        let mut out = Vec::new();
        for k in self.k_range.clone() {
            for a in self.a_range.clone() {
                for b in self.b_range.clone() {
                    for c in self.c_range.clone() {
                        out.push((k, a, b, c));
                    }
                }
            }
        }
        out
    }
}

/// One report per grid point, sorted by `(k, a, b, c)`.
pub fn sweep_verify(config: &SweepConfig) -> Result<Vec<PeriodReport>> {
    config.validate()?;
    let spec = MultiplicativeFunctionSpec::from_tag(&config.function_tag)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let mut reports = pool.install(|| {
        config
            .grid()
            .into_par_iter()
            .map(|(k, a, b, c)| {
                let prog = Progression::from_parts(k, a, b, c)?;
                period_report(&spec, &prog, config.method, config.oracle_budget, false)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    reports.sort_by_key(|r| r.params);
    Ok(reports)
}
