//! `trapset` command-line front end.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage or input
//! error, 3 budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use trapset::alist::{parse_alist, write_alist};
use trapset::harness::{
    self, random_cubic, random_three_uniform, Caps, VerificationReport,
};
use trapset::reductions::{
    build_min_a_eabs_instance, build_min_a_lets_instance, full_min_b_chain,
};
use trapset::sat::{
    brute_force_gamma_in_beta, parse_formula, random_instance, validate_class, write_formula,
    ClassDescriptor, MonotoneFormula, DEFAULT_ORACLE_CAP,
};
use trapset::search::{enumerate_class, min_a, min_b, Kind, SearchBudget, SearchOptions, SearchStatus};

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "trapset", version, about = "Trapping-set toolkit: classification, exact search, reductions, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monotone gamma-IN-beta formulas: solve, validate, generate.
    Sat {
        #[command(subcommand)]
        command: SatCommand,
    },
    /// Build a Tanner graph instance from a monotone formula.
    Reduce(ReduceArgs),
    /// Exact Min-b / Min-a / enumeration search on an alist graph.
    Search(SearchArgs),
    /// Run a verification pipeline and report pass/fail per check.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum SatCommand {
    /// Exhaustive gamma-IN-beta satisfiability check.
    Solve {
        /// Monotone formula file.
        input: PathBuf,
        /// Required true-variable count per clause.
        #[arg(long, default_value_t = 1)]
        gamma: usize,
        /// Variable-count cap for the exhaustive sweep.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        max_vars: usize,
    },
    /// Check clause width and occurrence regularity.
    Validate {
        input: PathBuf,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        beta: Option<usize>,
    },
    /// Generate a random beta-uniform alpha-regular monotone formula.
    Gen {
        #[arg(long)]
        n_vars: usize,
        #[arg(long, default_value_t = 3)]
        alpha: usize,
        #[arg(long, default_value_t = 3)]
        beta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceTarget {
    /// Min-a-LETS gadget graph.
    MinALets,
    /// Min-a-EABS gadget graph.
    MinAEabs,
    /// Four-step chain ending in the Min-b graph.
    MinB,
}

#[derive(Args)]
struct ReduceArgs {
    /// Monotone formula file.
    input: PathBuf,
    #[arg(long, value_enum)]
    target: ReduceTarget,
    /// Occurrence count for the min-b chain.
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    /// Clause width for the min-b chain.
    #[arg(long, default_value_t = 3)]
    beta: usize,
    /// alist output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Provenance trace JSON output file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchProblem {
    MinB,
    MinA,
    Enumerate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Lets,
    Eabs,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Lets => Kind::Lets,
            KindArg::Eabs => Kind::Eabs,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// alist graph file.
    input: PathBuf,
    #[arg(long, value_enum)]
    problem: SearchProblem,
    #[arg(long, value_enum, default_value = "lets")]
    kind: KindArg,
    /// Subset size (min-b) or maximum size (enumerate).
    #[arg(short)]
    a: Option<usize>,
    /// Target unsatisfied-check count (min-a) or cap (enumerate).
    #[arg(short)]
    b: Option<usize>,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    max_subset_size: Option<usize>,
    #[arg(long)]
    time_limit_secs: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Disable admissible pruning (exactness is unaffected).
    #[arg(long)]
    no_prune: bool,
    /// Write the JSON result to this file as well as stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyStep {
    #[value(name = "1")]
    Step1,
    #[value(name = "2")]
    Step2,
    #[value(name = "3")]
    Step3,
    #[value(name = "4")]
    Step4,
    Thm2,
    Thm4,
    Equalizer,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    step: VerifyStep,
    /// Monotone formula file; a seeded random instance is used when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    #[arg(long, default_value_t = 3)]
    beta: usize,
    /// Clause count for generated thm2/thm4 instances.
    #[arg(long, default_value_t = 3)]
    eta: usize,
    /// Search for an unsatisfiable generated instance first.
    #[arg(long)]
    unsat: bool,
    /// Variable-count cap for exhaustive sweeps.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    max_vars: usize,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    max_subset_size: Option<usize>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Equalizer gadget block parameter.
    #[arg(long, default_value_t = 3)]
    t: usize,
    /// Write the JSON report to this file as well as stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sat { command } => run_sat(command),
        Command::Reduce(args) => run_reduce(args),
        Command::Search(args) => run_search(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn read_formula(path: &PathBuf) -> Result<MonotoneFormula> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_formula(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run_sat(command: SatCommand) -> Result<ExitCode> {
    match command {
        SatCommand::Solve { input, gamma, max_vars } => {
            let f = read_formula(&input)?;
            let witness = brute_force_gamma_in_beta(&f, gamma, max_vars)?;
            let out = json!({
                "satisfiable": witness.is_some(),
                "witness": witness.as_ref().map(|w| w.true_vars()),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        SatCommand::Validate { input, alpha, beta } => {
            let f = read_formula(&input)?;
            let diags = validate_class(&f, &ClassDescriptor { beta, alpha });
            println!("{}", serde_json::to_string_pretty(&json!({ "violations": diags }))?);
            if diags.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VERIFY_FAIL))
            }
        }
        SatCommand::Gen { n_vars, alpha, beta, seed, out } => {
            let d = ClassDescriptor { beta: Some(beta), alpha: Some(alpha) };
            let f = random_instance(&d, n_vars, seed)?;
            emit(&out, write_formula(&f).trim_end())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_reduce(args: ReduceArgs) -> Result<ExitCode> {
    let phi = read_formula(&args.input)?;
    let (graph, trace_json) = match args.target {
        ReduceTarget::MinALets => {
            let inst = build_min_a_lets_instance(&phi)?;
            let t = json!({
                "target": "min-a-lets",
                "b": inst.b,
                "a_expected": inst.a_expected,
                "traces": [inst.trace],
            });
            (inst.graph, t)
        }
        ReduceTarget::MinAEabs => {
            let inst = build_min_a_eabs_instance(&phi)?;
            let t = json!({
                "target": "min-a-eabs",
                "b": inst.b,
                "a_expected": inst.a_expected,
                "traces": [inst.trace],
            });
            (inst.graph, t)
        }
        ReduceTarget::MinB => {
            let chain = full_min_b_chain(&phi, args.alpha, args.beta)?;
            let t = json!({
                "target": "min-b",
                "a": chain.a(),
                "traces": chain.traces(),
            });
            (chain.step4.graph.clone(), t)
        }
    };
    emit(&args.out, write_alist(&graph).trim_end())?;
    if let Some(p) = &args.trace {
        std::fs::write(p, serde_json::to_string_pretty(&trace_json)?)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_search(args: SearchArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let graph = parse_alist(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let budget = SearchBudget {
        max_subset_size: args.max_subset_size,
        max_nodes: args.max_nodes,
        time_limit: args.time_limit_secs.map(Duration::from_secs),
    };
    let opts = SearchOptions { pruning: !args.no_prune, threads: args.threads };
    let kind: Kind = args.kind.into();
    let (out, budget_hit) = match args.problem {
        SearchProblem::MinB => {
            let a = args.a.context("min-b requires -a <size>")?;
            let r = min_b(&graph, a, kind, &budget, &opts);
            let hit = r.status == SearchStatus::BudgetExceeded;
            (serde_json::to_value(&r)?, hit)
        }
        SearchProblem::MinA => {
            let b = args.b.context("min-a requires -b <count>")?;
            let r = min_a(&graph, b, kind, &budget, &opts);
            let hit = r.status == SearchStatus::BudgetExceeded;
            (serde_json::to_value(&r)?, hit)
        }
        SearchProblem::Enumerate => {
            let a_max = args.a.context("enumerate requires -a <max size>")?;
            let b_max = args.b.context("enumerate requires -b <max count>")?;
            let r = enumerate_class(&graph, a_max, b_max, kind, &budget);
            let hit = !r.complete;
            (serde_json::to_value(&r)?, hit)
        }
    };
    let text = serde_json::to_string_pretty(&out)?;
    println!("{text}");
    if let Some(p) = &args.json {
        std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if budget_hit { ExitCode::from(EXIT_BUDGET) } else { ExitCode::SUCCESS })
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let caps = Caps {
        oracle_max_vars: args.max_vars,
        budget: SearchBudget {
            max_subset_size: args.max_subset_size,
            max_nodes: args.max_nodes,
            time_limit: None,
        },
        threads: args.threads,
    };
    let seed = args.seed;
    let load_or_random_3uniform = |args: &VerifyArgs| -> Result<(MonotoneFormula, Option<u64>)> {
        match &args.input {
            Some(p) => Ok((read_formula(p)?, None)),
            None => Ok((random_three_uniform(4, 4, seed)?, Some(seed))),
        }
    };
    let load_or_random_cubic = |args: &VerifyArgs| -> Result<(MonotoneFormula, Option<u64>)> {
        match &args.input {
            Some(p) => Ok((read_formula(p)?, None)),
            None if args.unsat => {
                let found = harness::find_unsat_cubic(args.eta, seed, 10_000, args.max_vars)?;
                match found {
                    Some((psi, used)) => Ok((psi, Some(used))),
                    None => bail!(
                        "no unsatisfiable cubic instance with {} clauses found near seed {}",
                        args.eta,
                        seed
                    ),
                }
            }
            None => Ok((random_cubic(args.eta, seed)?, Some(seed))),
        }
    };
    let report: VerificationReport = match args.step {
        VerifyStep::Step1 => {
            let (phi, s) = load_or_random_3uniform(&args)?;
            harness::verify_step1(&phi, args.beta, s, &caps)?
        }
        VerifyStep::Step2 => {
            let (phi, s) = load_or_random_3uniform(&args)?;
            harness::verify_step2(&phi, args.beta, s, &caps)?
        }
        VerifyStep::Step3 => {
            let (phi, s) = load_or_random_3uniform(&args)?;
            harness::verify_step3(&phi, args.alpha, args.beta, s, &caps)?
        }
        VerifyStep::Step4 => {
            // Step 4 consumes an already alpha-regular beta-uniform formula.
            let (phi, s) = match &args.input {
                Some(p) => (read_formula(p)?, None),
                None => {
                    let d = ClassDescriptor { beta: Some(args.beta), alpha: Some(args.alpha) };
                    (random_instance(&d, 2 * args.beta, seed)?, Some(seed))
                }
            };
            harness::verify_step4(&phi, s, &caps)?
        }
        VerifyStep::Thm2 => {
            let (psi, s) = load_or_random_cubic(&args)?;
            harness::verify_thm2(&psi, s, &caps)?
        }
        VerifyStep::Thm4 => {
            let (psi, s) = load_or_random_cubic(&args)?;
            harness::verify_thm4(&psi, s, &caps)?
        }
        VerifyStep::Equalizer => harness::verify_equalizer(args.t, args.beta, 0)?,
    };
    let text = serde_json::to_string_pretty(&report)?;
    println!("{text}");
    if let Some(p) = &args.json {
        std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
    }
    for check in &report.checks {
        let status = match check.status {
            trapset::harness::CheckStatus::Pass => "pass",
            trapset::harness::CheckStatus::Fail => "FAIL",
            trapset::harness::CheckStatus::Skip => "skip",
        };
        eprintln!("[{status}] {}", check.name);
    }
    if !report.passed {
        Ok(ExitCode::from(EXIT_VERIFY_FAIL))
    } else if report.budget_exhausted {
        Ok(ExitCode::from(EXIT_BUDGET))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
