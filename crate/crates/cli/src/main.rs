// `!(v > 0.0)` style checks are deliberate: the negation also rejects NaN,
// which `v <= 0.0` silently lets through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Scenario-driven command line over the force-analysis library.
//!
//! Every number printed or written here is produced by a library call; the
//! binary only loads scenarios, dispatches, formats, and sets the exit code:
//! 0 when all of a scenario's assertions pass, 1 when any fails, 2 on bad
//! input or I/O.

mod explain;
mod report;
mod run_powerlaw;
mod run_trace;
mod run_vonthunen;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::ScenarioOutcome;

#[derive(Parser)]
#[command(
    name = "cas",
    version,
    about = "Force traces, power-law verification, and ring-economy experiments"
)]
struct Cli {
    /// Print the defining formula behind a named operation and exit.
    /// Pass an unknown name to list the available ones.
    #[arg(long, value_name = "OP")]
    explain: Option<String>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize the cost/entropy ratio and check the power-law hypotheses.
    Powerlaw {
        #[command(subcommand)]
        action: PowerlawAction,
    },
    /// Ring-economy statics, brute-force equivalence, and adaptive runs.
    Vonthunen {
        #[command(subcommand)]
        action: VonthunenAction,
    },
    /// Force evaluation over interaction-space trajectories.
    Gep {
        #[command(subcommand)]
        action: GepAction,
    },
}

#[derive(Subcommand)]
enum PowerlawAction {
    /// Solve a scenario and assert its hypothesis and residual bounds.
    Verify(RunOpts),
}

#[derive(Subcommand)]
enum VonthunenAction {
    /// Run the seeded adaptive search and write its force trace.
    Run(RunOpts),
    /// Check equivalence, zone ordering, and flux equalization.
    Verify(RunOpts),
}

#[derive(Subcommand)]
enum GepAction {
    /// Evaluate all forces along a scenario's trajectory.
    Trace(RunOpts),
}

/// Flags shared by every scenario-running subcommand.
#[derive(Args)]
struct RunOpts {
    /// Scenario files (JSON).
    #[arg(required = true, value_name = "SCENARIO")]
    scenarios: Vec<PathBuf>,

    /// Directory receiving one artifact subdirectory per scenario.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    /// Overrides the scenario's seed for adaptive runs.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,

    /// Overrides the scenario's optimizer or certification tolerance.
    #[arg(long, value_name = "REAL")]
    tol: Option<f64>,

    /// What to echo on stdout; artifacts on disk are unaffected.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads when several scenarios are given.
    #[arg(long, value_name = "N", default_value_t = 1)]
    jobs: usize,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    /// Echo the JSON report.
    Json,
    /// Echo the scenario's CSV table, if the command produces one.
    Csv,
}

type Runner = fn(&std::path::Path, &RunOpts) -> Result<ScenarioOutcome>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(op) = &cli.explain {
        return match explain::lookup(op) {
            Some(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!(
                    "error: unknown operation \"{op}\"; available: {}",
                    explain::names().join(", ")
                );
                ExitCode::from(2)
            }
        };
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required; see --help");
        return ExitCode::from(2);
    };
    let (runner, opts): (Runner, RunOpts) = match command {
        Command::Powerlaw {
            action: PowerlawAction::Verify(opts),
        } => (run_powerlaw::verify, opts),
        Command::Vonthunen {
            action: VonthunenAction::Run(opts),
        } => (run_vonthunen::run, opts),
        Command::Vonthunen {
            action: VonthunenAction::Verify(opts),
        } => (run_vonthunen::verify, opts),
        Command::Gep {
            action: GepAction::Trace(opts),
        } => (run_trace::trace, opts),
    };
    run_all(runner, &opts)
}

fn run_all(runner: Runner, opts: &RunOpts) -> ExitCode {
    let stems: Vec<String> = opts
        .scenarios
        .iter()
        .map(|p| report::scenario_stem(p))
        .collect();
    for (i, stem) in stems.iter().enumerate() {
        if let Some(j) = stems[..i].iter().position(|s| s == stem) {
            eprintln!(
                "error: {} and {} share the output name \"{stem}\"; rename one or run them separately",
                opts.scenarios[j].display(),
                opts.scenarios[i].display()
            );
            return ExitCode::from(2);
        }
    }

    let results = if opts.jobs > 1 && opts.scenarios.len() > 1 {
        run_parallel(runner, opts)
    } else {
        opts.scenarios.iter().map(|p| runner(p, opts)).collect()
    };

    let mut any_error = false;
    let mut any_fail = false;
    for (path, result) in opts.scenarios.iter().zip(results) {
        match result {
            Ok(outcome) => {
                if outcome.pass {
                    eprintln!("{}: PASS", outcome.stem);
                } else {
                    any_fail = true;
                    eprintln!("{}: FAIL ({})", outcome.stem, outcome.failed.join(", "));
                }
                for artifact in &outcome.artifacts {
                    eprintln!("  wrote {}", artifact.display());
                }
                print!("{}", outcome.stdout);
            }
            Err(e) => {
                any_error = true;
                // Loaders and builders already name the offending file.
                let _ = path;
                eprintln!("error: {e:#}");
            }
        }
    }
    if any_error {
        ExitCode::from(2)
    } else if any_fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// Fans scenarios over worker threads; results keep the input order.
fn run_parallel(runner: Runner, opts: &RunOpts) -> Vec<Result<ScenarioOutcome>> {
    let n = opts.scenarios.len();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<ScenarioOutcome>>>> =
        Mutex::new((0..n).map(|_| None).collect());
    let workers = opts.jobs.min(n);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let result = runner(&opts.scenarios[i], opts);
                slots.lock().expect("result slots")[i] = Some(result);
            });
        }
    });
    slots
        .into_inner()
        .expect("result slots")
        .into_iter()
        .map(|r| r.expect("every scenario ran"))
        .collect()
}
