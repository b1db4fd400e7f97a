use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use periodlab::g_function::{g_eval, Progression};
use periodlab::harness::{
    bound_check, nonperiodic_witness, oracle_budget_from_env, period_report, render, sweep_verify,
    verify_witness, Method, OutputFormat, SweepConfig,
};
use periodlab::multiplicative::MultiplicativeFunctionSpec;
use periodlab::period::{brute_force_local_period, candidate_primes, local_period_formula, LocalCase};
use periodlab::{Error, Result};

/// Exact evaluation and period analysis of lcm-ratio arithmetic functions.
#[derive(Debug, Parser)]
#[command(name = "periodlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Multiplicative function: phi, sigma:<alpha>, pow:<e>, one.
    #[arg(long, global = true, default_value = "phi")]
    function: String,

    /// formula, oracle or both.
    #[arg(long, global = true, default_value = "both")]
    method: String,

    /// json or csv.
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Worker threads for sweep.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Largest cL_k the brute-force oracle will tabulate.
    /// Overrides PERIODLAB_ORACLE_BUDGET.
    #[arg(long, global = true)]
    oracle_budget: Option<u64>,
}

#[derive(Debug, Args)]
struct Point {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    c: u64,
}

impl Point {
    fn progression(&self) -> Result<Progression> {
        Progression::from_parts(self.k, self.a, self.b, self.c)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate g at one n.
    Eval {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        n: u64,
    },
    /// Smallest period by formula and/or oracle.
    Period {
        #[command(flatten)]
        point: Point,
    },
    /// Per-prime local periods (all candidate primes unless --p is given).
    Local {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Compare formula and oracle over a grid. Ranges are LO..HI or a single value.
    Sweep {
        #[arg(long, default_value = "1..8")]
        k: String,
        #[arg(long, default_value = "1..6")]
        a: String,
        #[arg(long, default_value = "0..6")]
        b: String,
        #[arg(long, default_value = "1..4")]
        c: String,
    },
    /// Check lcm phi(terms) <= prod phi(terms) / g(<n>_P).
    Bound {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        n: u64,
    },
    /// Find p > min-bound and n0 = m p^2 with m p^2 + 1 prime.
    WitnessNonperiodic {
        #[arg(long)]
        min_bound: u64,
        #[arg(long, default_value_t = 10_000)]
        search_limit: u64,
    },
}

#[derive(Serialize)]
struct EvalRow {
    k: u64,
    a: u64,
    b: u64,
    c: u64,
    n: u64,
    function: String,
    value: String,
}

#[derive(Serialize)]
struct LocalRow {
    prime: u64,
    case: LocalCase,
    p_exponent: u32,
    formula_period: String,
    oracle_period: Option<String>,
    agree: Option<bool>,
}

fn parse_range(name: &str, s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || Error::invalid(format!("--{name} {s:?}: expected LO..HI or an integer"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

struct Outcome {
    text: String,
    disagreement: bool,
}

fn run(cli: &Cli) -> Result<Outcome> {
    let format: OutputFormat = cli.format.parse()?;
    let method: Method = cli.method.parse()?;
    let budget = match cli.oracle_budget {
        Some(0) => return Err(Error::invalid("--oracle-budget must be >= 1")),
        Some(b) => b,
        None => oracle_budget_from_env()?,
    };
    let spec = MultiplicativeFunctionSpec::from_tag(&cli.function)?;
    let ok = |text| Outcome {
        text,
        disagreement: false,
    };

    match &cli.command {
        Command::Eval { point, n } => {
            let prog = point.progression()?;
            let value = g_eval(&spec, &prog, *n)?;
            let row = EvalRow {
                k: point.k,
                a: point.a,
                b: point.b,
                c: point.c,
                n: *n,
                function: spec.name().to_string(),
                value: value.to_string(),
            };
            Ok(ok(render(&[row], format, false)?))
        }
        Command::Period { point } => {
            let report = period_report(&spec, &point.progression()?, method, budget, false)?;
            if let Some(why) = &report.oracle_skipped {
                eprintln!("oracle skipped: {why}");
            }
            Ok(Outcome {
                text: render(&[report.record()], format, false)?,
                disagreement: report.disagrees(),
            })
        }
        Command::Local { point, p } => {
            if !spec.is_phi() {
                return Err(Error::invalid("local periods are defined for phi only"));
            }
            let prog = point.progression()?;
            let primes = match p {
                Some(p) => vec![*p],
                None => candidate_primes(&prog)?,
            };
            let mut rows = Vec::new();
            for p in primes {
                let lp = local_period_formula(p, &prog)?;
                let formula = (method != Method::Oracle).then(|| lp.period.to_string());
                let oracle = if method == Method::Formula {
                    None
                } else {
                    match brute_force_local_period(p, &prog, budget) {
                        Ok(v) => Some(v),
                        Err(e @ Error::Capacity { .. }) if method == Method::Both => {
                            eprintln!("oracle skipped: {e}");
                            None
                        }
                        Err(e) => return Err(e),
                    }
                };
                rows.push(LocalRow {
                    prime: p,
                    case: lp.case,
                    p_exponent: lp.p_exponent,
                    agree: oracle.map(|o| lp.period.to_u64() == Some(o)),
                    formula_period: formula.unwrap_or_default(),
                    oracle_period: oracle.map(|o| o.to_string()),
                });
            }
            let disagreement = rows.iter().any(|r| r.agree == Some(false));
            Ok(Outcome {
                text: render(&rows, format, true)?,
                disagreement,
            })
        }
        Command::Sweep { k, a, b, c } => {
            let config = SweepConfig {
                k_range: parse_range("k", k)?,
                a_range: parse_range("a", a)?,
                b_range: parse_range("b", b)?,
                c_range: parse_range("c", c)?,
                oracle_budget: budget,
                function_tag: cli.function.clone(),
                method,
                parallelism: cli.jobs,
            };
            let reports = sweep_verify(&config)?;
            let skipped = reports.iter().filter(|r| r.oracle_skipped.is_some()).count();
            let bad: Vec<_> = reports.iter().filter(|r| r.disagrees()).collect();
            eprintln!(
                "{} points, {} disagreements, {} oracle skipped",
                reports.len(),
                bad.len(),
                skipped
            );
            for r in &bad {
                let p = r.params;
                eprintln!("disagreement at k={} a={} b={} c={}", p.k, p.a, p.b, p.c);
            }
            let rows: Vec<_> = reports.iter().map(|r| r.record()).collect();
            Ok(Outcome {
                text: render(&rows, format, true)?,
                disagreement: !bad.is_empty(),
            })
        }
        Command::Bound { point, n } => {
            let prog = point.progression()?;
            let record = bound_check(&prog, *n)?;
            if !record.holds {
                return Err(Error::Invariant(format!("bound fails at n={n}")));
            }
            Ok(ok(render(&[record.row(&prog)], format, false)?))
        }
        Command::WitnessNonperiodic {
            min_bound,
            search_limit,
        } => {
            let w = nonperiodic_witness(*min_bound, *search_limit)?;
            verify_witness(&w)?;
            Ok(ok(render(&[w], format, false)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.disagreement { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
