//! `qsn` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure or failed verification, 2 bad flags.

pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::dense::DENSE_MODE_CAP;
use crate::discrimination::analytic_mean_with;
use crate::montecarlo::{run_plan, run_plan_with_threads, Backend, SamplingPlan, RNG_ALGORITHM};
use crate::protocols::{Case, Priors, Strategy};
use crate::verify::{self, DrawOutcome, FailureRecord, Fault, VerifyConfig};

use output::{write_analytic_csv, write_sweep_csv, write_sweep_json, AnalyticRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "QSN_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "qsn",
    version,
    about = "Local vs. W-state single-photon identification of phase-plate ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo sweep over N; one output row per (strategy, N)
    Sweep(SweepArgs),
    /// Ensemble-mean error probabilities from the closed-form averages (no sampling)
    Analytic(AnalyticArgs),
    /// Cross-check simulators and closed forms; nonzero exit on any mismatch
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    /// same phase on every plate vs. uniform on [0, 2pi)
    A,
    /// uniform on [-pi/M, pi/M] vs. uniform on [0, 2pi)
    B,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::A => Case::SameVsDifferent,
            CaseArg::B => Case::SimilarVsDifferent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Local,
    Nonlocal,
    Both,
}

impl StrategyArg {
    fn strategies(self) -> Vec<Strategy> {
        match self {
            StrategyArg::Local => vec![Strategy::Local],
            StrategyArg::Nonlocal => vec![Strategy::Nonlocal],
            StrategyArg::Both => vec![Strategy::Local, Strategy::Nonlocal],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    ClosedForm,
    #[value(alias = "sim")]
    SimCompact,
    SimDense,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::ClosedForm => Backend::ClosedForm,
            BackendArg::SimCompact => Backend::SimCompact,
            BackendArg::SimDense => Backend::SimDense,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    None,
    BeamSplitterConvention,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::None => Fault::None,
            FaultArg::BeamSplitterConvention => Fault::BeamSplitterConvention,
        }
    }
}

/// List of N values: comma-separated integers and/or `start:end:step`
/// ranges. A range includes `end` only when `start + k*step` hits it exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<usize>);

impl FromStr for NList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut values = Vec::new();
        for item in s.split(',').map(str::trim) {
            if item.is_empty() {
                return Err(format!("empty entry in N list {s:?}"));
            }
            let parts: Vec<&str> = item.split(':').collect();
            let num = |p: &str| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("{p:?} is not a nonnegative integer"))
            };
            match parts.as_slice() {
                [single] => values.push(num(single)?),
                [start, end, step] => {
                    let (start, end, step) = (num(start)?, num(end)?, num(step)?);
                    if step == 0 {
                        return Err(format!("range {item:?} has zero step"));
                    }
                    if start > end {
                        return Err(format!("range {item:?} has start > end"));
                    }
                    values.extend((start..=end).step_by(step));
                }
                _ => return Err(format!("{item:?} is neither an integer nor start:end:step")),
            }
        }
        Ok(NList(values))
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long, value_enum, default_value = "both")]
    pub strategy: StrategyArg,
    /// N values, e.g. `2:10:2` or `2,4,8` (ranges include end when hit exactly)
    #[arg(long = "n", value_name = "LIST")]
    pub n: NList,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Narrow-ensemble width parameter (phases in [-pi/M, pi/M]); required for case b
    #[arg(long = "m", value_name = "M")]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "closed-form")]
    pub backend: BackendArg,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Interaction time t; sampled plate frequencies are scaled by t
    #[arg(long = "t", default_value_t = 1.0)]
    pub t: f64,
    /// Prior of the Same (case a) / Similar (case b) hypothesis
    #[arg(long, default_value_t = 0.5)]
    pub prior: f64,
    /// Worker threads (overrides QSN_THREADS); never changes results
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long, value_enum, default_value = "both")]
    pub strategy: StrategyArg,
    #[arg(long = "n", value_name = "LIST")]
    pub n: NList,
    #[arg(long = "m", value_name = "M")]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    pub prior: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest register size checked (dense oracle capped at 20)
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Random draws per (check, N)
    #[arg(long, default_value_t = 1000)]
    pub draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Re-run a failure record written by a previous run
    #[arg(long, value_name = "FILE")]
    pub replay: Option<PathBuf>,
    /// Where to write the first failure record
    #[arg(long, value_name = "FILE")]
    pub dump: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "none", hide = true)]
    pub inject_fault: FaultArg,
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let text = if e.use_stderr() {
                rendered.ansi().to_string()
            } else {
                rendered.to_string()
            };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match cli.command {
        Command::Sweep(args) => cmd_sweep(&args, stdout, stderr),
        Command::Analytic(args) => cmd_analytic(&args, stdout, stderr),
        Command::Verify(args) => cmd_verify(&args, stdout, stderr),
    }
}

fn usage_error(subcommand: &str, message: impl std::fmt::Display, stderr: &mut dyn Write) -> i32 {
    let mut cmd = Cli::command();
    cmd.build();
    let err = match cmd.find_subcommand_mut(subcommand) {
        Some(sub) => sub.error(ErrorKind::ValueValidation, message),
        None => cmd.error(ErrorKind::ValueValidation, message),
    };
    let _ = write!(stderr, "{}", err.render());
    EXIT_USAGE
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Option<BufWriter<File>>> {
    path.as_ref()
        .map(|p| File::create(p).map(BufWriter::new))
        .transpose()
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, String> {
    if let Some(n) = flag {
        return if n == 0 {
            Err("--threads must be >= 1".into())
        } else {
            Ok(Some(n))
        };
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV}={v:?} is not a positive integer")),
        },
        _ => Ok(None),
    }
}

/// Build the sampling plan a sweep invocation describes.
pub fn sweep_plan(args: &SweepArgs) -> crate::error::Result<SamplingPlan> {
    let case: Case = args.case.into();
    let mut plan = SamplingPlan::new(
        case,
        args.strategy.strategies(),
        args.n.0.clone(),
        args.trials,
    );
    plan.m = args.m;
    plan.seed = args.seed;
    plan.backend = args.backend.into();
    plan.interaction_time = args.t;
    plan.priors = Priors::with_first(args.prior)?;
    plan.validate()?;
    Ok(plan)
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let plan = match sweep_plan(args) {
        Ok(plan) => plan,
        Err(e) => return usage_error("sweep", e, stderr),
    };
    let threads = match thread_count(args.threads) {
        Ok(t) => t,
        Err(e) => return usage_error("sweep", e, stderr),
    };
    if plan.strategies.contains(&Strategy::Nonlocal) {
        let odd: Vec<String> = plan
            .n_values
            .iter()
            .filter(|n| !n.is_power_of_two())
            .map(|n| n.to_string())
            .collect();
        if !odd.is_empty() && plan.backend != Backend::ClosedForm {
            let _ = writeln!(
                stderr,
                "warning: beam-splitter cascade needs N = 2^m; W state written directly for N = {}",
                odd.join(",")
            );
        }
    }
    if plan.interaction_time != 1.0 {
        let _ = writeln!(
            stderr,
            "warning: analytic_perr assumes phases uniform on the stated intervals (t = 1)"
        );
    }
    let _ = writeln!(stderr, "rng: {RNG_ALGORITHM}, seed {}", plan.seed);

    // fail on an unwritable destination before spending time on sampling
    let mut file = match open_output(&args.out) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(stderr, "error: opening output: {e}");
            return EXIT_FAILURE;
        }
    };
    let rows = match threads {
        Some(t) => run_plan_with_threads(&plan, t),
        None => run_plan(&plan),
    };
    let rows = match rows {
        Ok(rows) => rows,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_FAILURE;
        }
    };

    let result = (|| -> io::Result<()> {
        let sink: &mut dyn Write = match file.as_mut() {
            Some(f) => f,
            None => stdout,
        };
        match args.format {
            FormatArg::Csv => write_sweep_csv(&rows, sink)?,
            FormatArg::Json => write_sweep_json(&plan, &rows, sink)?,
        }
        sink.flush()
    })();
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: writing output: {e}");
            EXIT_FAILURE
        }
    }
}

pub fn cmd_analytic(args: &AnalyticArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let case: Case = args.case.into();
    if case == Case::SimilarVsDifferent && args.m.is_none() {
        return usage_error("analytic", "case b needs --m", stderr);
    }
    let priors = match Priors::with_first(args.prior) {
        Ok(p) => p,
        Err(e) => return usage_error("analytic", e, stderr),
    };
    if args.n.0.is_empty() {
        return usage_error("analytic", "no N values given", stderr);
    }
    let m = match case {
        Case::SameVsDifferent => None,
        Case::SimilarVsDifferent => args.m,
    };
    let mut rows = Vec::new();
    for strategy in args.strategy.strategies() {
        for &n in &args.n.0 {
            match analytic_mean_with(case, strategy, n, m, priors) {
                Ok(mean) => rows.push(AnalyticRow {
                    case,
                    strategy,
                    n,
                    m,
                    mean,
                }),
                Err(e) => return usage_error("analytic", e, stderr),
            }
        }
    }
    let result = (|| -> io::Result<()> {
        let mut file = open_output(&args.out)?;
        let sink: &mut dyn Write = match file.as_mut() {
            Some(f) => f,
            None => stdout,
        };
        write_analytic_csv(&rows, sink)?;
        sink.flush()
    })();
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: writing output: {e}");
            EXIT_FAILURE
        }
    }
}

fn write_failure(
    record: &FailureRecord,
    dump: &Option<PathBuf>,
    stderr: &mut dyn Write,
) -> io::Result<()> {
    let json = serde_json::to_string_pretty(record)?;
    writeln!(
        stderr,
        "failure record (replay with --replay FILE):\n{json}"
    )?;
    if let Some(path) = dump {
        std::fs::write(path, format!("{json}\n"))?;
        writeln!(stderr, "failure record written to {}", path.display())?;
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if let Some(path) = &args.replay {
        let record: FailureRecord = match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
        {
            Ok(r) => r,
            Err(e) => {
                let _ = writeln!(stderr, "error: reading {}: {e}", path.display());
                return EXIT_FAILURE;
            }
        };
        let outcome = verify::replay(&record);
        let label = format!(
            "{} N={} draw={}",
            record.check.name(),
            record.probe.n,
            record.draw
        );
        return match outcome {
            DrawOutcome::Pass => {
                let _ = writeln!(stdout, "{label}: PASS");
                EXIT_OK
            }
            DrawOutcome::Rejected(why) => {
                let _ = writeln!(stdout, "{label}: REJECTED ({why})");
                EXIT_OK
            }
            DrawOutcome::Fail(msg) => {
                let _ = writeln!(stdout, "{label}: FAIL");
                let _ = writeln!(stderr, "{label}: {msg}");
                EXIT_FAILURE
            }
        };
    }

    if args.n_max == 0 || args.draws == 0 {
        return usage_error("verify", "--n-max and --draws must be >= 1", stderr);
    }
    if args.n_max > DENSE_MODE_CAP {
        let _ = writeln!(
            stderr,
            "warning: --n-max {} capped at the dense limit {DENSE_MODE_CAP}",
            args.n_max
        );
    }
    let cfg = VerifyConfig {
        n_max: args.n_max,
        draws: args.draws,
        seed: args.seed,
        fault: args.inject_fault.into(),
    };
    let report = verify::run_verify(&cfg);
    let _ = writeln!(
        stdout,
        "{:<30} {:>3} {:>6} {:>6} {:>8} {:>6}  status",
        "check", "N", "draws", "pass", "rejected", "fail"
    );
    for s in &report.summaries {
        let status = if s.failed > 0 {
            "FAIL"
        } else if s.rejected == s.draws {
            "rejected (expected)"
        } else {
            "PASS"
        };
        let _ = writeln!(
            stdout,
            "{:<30} {:>3} {:>6} {:>6} {:>8} {:>6}  {status}",
            s.check.name(),
            s.n,
            s.draws,
            s.passed,
            s.rejected,
            s.failed
        );
    }
    match report.first_failure() {
        None => {
            let _ = writeln!(stdout, "all checks passed");
            EXIT_OK
        }
        Some(record) => {
            let _ = writeln!(
                stderr,
                "first failing check: {} (N = {}, draw {}): {}",
                record.check.name(),
                record.probe.n,
                record.draw,
                record.message
            );
            if let Err(e) = write_failure(record, &args.dump, stderr) {
                let _ = writeln!(stderr, "error: writing failure record: {e}");
            }
            EXIT_FAILURE
        }
    }
}
