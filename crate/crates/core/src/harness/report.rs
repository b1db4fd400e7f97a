use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::FactoredInteger;
use crate::error::{Error, Result};
use crate::g_function::{Progression, ProgressionParams};
use crate::multiplicative::MultiplicativeFunctionSpec;
use crate::period::{
    candidate_primes, local_period_formula, period_formula, EtaCase, ExceptionalPrime, LocalCase,
    OracleTable,
};

/// Which route(s) to the smallest period to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Formula,
    Oracle,
    #[default]
    Both,
}

impl Method {
    fn formula(self) -> bool {
        matches!(self, Method::Formula | Method::Both)
    }

    fn oracle(self) -> bool {
        matches!(self, Method::Oracle | Method::Both)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(Method::Formula),
            "oracle" => Ok(Method::Oracle),
            "both" => Ok(Method::Both),
            _ => Err(Error::invalid(format!("unknown method {s:?} (formula|oracle|both)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::invalid(format!("unknown format {s:?} (json|csv)"))),
        }
    }
}

/// Formula and oracle local periods at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalComparison {
    pub case: LocalCase,
    pub formula: FactoredInteger,
    pub oracle: Option<u64>,
}

impl LocalComparison {
    pub fn agree(&self) -> Option<bool> {
        self.oracle.map(|o| self.formula.to_u64() == Some(o))
    }
}

/// Outcome of computing the smallest period one or two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub params: ProgressionParams,
    pub function: String,
    pub d: u64,
    pub a_prime: u64,
    pub clk: FactoredInteger,
    pub eta: EtaCase,
    pub exceptional: Option<ExceptionalPrime>,
    pub formula_period: Option<FactoredInteger>,
    pub oracle_period: Option<u64>,
    /// Why the oracle was requested but not run.
    pub oracle_skipped: Option<String>,
    pub local_breakdown: Option<BTreeMap<u64, LocalComparison>>,
    pub agree: Option<bool>,
}

impl PeriodReport {
    /// True when both routes ran and gave different answers, globally or at
    /// any prime.
    pub fn disagrees(&self) -> bool {
        self.agree == Some(false)
            || self
                .local_breakdown
                .iter()
                .flat_map(|m| m.values())
                .any(|l| l.agree() == Some(false))
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            k: self.params.k,
            a: self.params.a,
            b: self.params.b,
            c: self.params.c,
            d: self.d,
            a_prime: self.a_prime,
            c_lk: self.clk.to_string(),
            eta: self.eta.value,
            eta_case: self.eta.branch.tag(),
            exceptional_prime: self.exceptional.map(|e| e.p),
            formula_period: self.formula_period.as_ref().map(|p| p.to_string()),
            oracle_period: self.oracle_period.map(|p| p.to_string()),
            agree: self.agree,
        }
    }
}

/// One row of a period report, in the JSON/CSV field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub a_prime: u64,
    #[serde(rename = "cLk")]
    pub c_lk: String,
    pub eta: u64,
    pub eta_case: &'static str,
    pub exceptional_prime: Option<u64>,
    pub formula_period: Option<String>,
    pub oracle_period: Option<String>,
    pub agree: Option<bool>,
}

/// Computes the period report for one parameter point.
///
/// The closed form exists only for `phi`; for other functions `Method::Formula`
/// is rejected and `Method::Both` runs the oracle alone. When the formula also
/// ran, an oracle over budget is recorded in `oracle_skipped` rather than
/// failing.
pub fn period_report(
    spec: &MultiplicativeFunctionSpec,
    prog: &Progression,
    method: Method,
    budget: u64,
    with_locals: bool,
) -> Result<PeriodReport> {
    let formula = period_formula(prog)?;
    let use_formula = method.formula() && spec.is_phi();
    if method == Method::Formula && !spec.is_phi() {
        return Err(Error::invalid(format!(
            "no closed-form period for {}; use --method oracle",
            spec.name()
        )));
    }

    let mut oracle_skipped = None;
    let table = if method.oracle() {
        match OracleTable::new(spec, prog, budget) {
            Ok(t) => Some(t),
            Err(e @ Error::Capacity { .. }) if use_formula => {
                oracle_skipped = Some(e.to_string());
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let oracle_period = table.as_ref().map(OracleTable::smallest_period);
    let formula_period = use_formula.then(|| formula.period.clone());

    let local_breakdown = if with_locals && spec.is_phi() {
        let mut map = BTreeMap::new();
        for p in candidate_primes(prog)? {
            let lp = local_period_formula(p, prog)?;
            let oracle = table.as_ref().map(|t| t.local_period(p)).transpose()?;
            map.insert(
                p,
                LocalComparison {
                    case: lp.case,
                    formula: lp.period,
                    oracle,
                },
            );
        }
        Some(map)
    } else {
        None
    };

    let agree = match (&formula_period, oracle_period) {
        (Some(f), Some(o)) => Some(f.to_u64() == Some(o)),
        _ => None,
    };
    Ok(PeriodReport {
        params: *prog.params(),
        function: spec.name().to_string(),
        d: prog.d(),
        a_prime: prog.a_prime(),
        clk: prog.clk().clone(),
        eta: formula.eta,
        exceptional: formula.exceptional,
        formula_period,
        oracle_period,
        oracle_skipped,
        local_breakdown,
        agree,
    })
}

/// Renders records as a pretty JSON array (`as_array`) or a single object,
/// or as CSV with a header row.
pub fn render<T: Serialize>(rows: &[T], format: OutputFormat, as_array: bool) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let out = if as_array || rows.len() != 1 {
                serde_json::to_string_pretty(rows)
            } else {
                serde_json::to_string_pretty(&rows[0])
            };
            out.map(|s| s + "\n")
                .map_err(|e| Error::Invariant(format!("json encoding failed: {e}")))
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)
                    .map_err(|e| Error::Invariant(format!("csv encoding failed: {e}")))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Invariant(format!("csv flush failed: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
        }
    }
}
