//! CSV and JSON writers for sweep and analytic results.

use std::io::{self, Write};

use serde::Serialize;

use crate::discrimination::AnalyticMean;
use crate::montecarlo::{SamplingPlan, TrialAggregate, RNG_ALGORITHM};
use crate::protocols::{Case, Strategy};

pub const SWEEP_HEADER: &str =
    "case,strategy,N,trials,M,seed,backend,mean_perr,std_error,analytic_perr";

pub const ANALYTIC_HEADER: &str = "case,strategy,N,M,analytic_perr,approx";

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_m(m: Option<u64>) -> String {
    m.map(|m| m.to_string()).unwrap_or_default()
}

pub fn write_sweep_csv<W: Write + ?Sized>(rows: &[TrialAggregate], out: &mut W) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.case,
            r.strategy,
            r.n,
            r.trials,
            fmt_m(r.m),
            r.seed,
            r.backend,
            fmt_f64(r.mean_perr),
            fmt_f64(r.std_error),
            fmt_f64(r.analytic_perr),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepMetadata<'a> {
    rng_algorithm: &'static str,
    case: &'static str,
    strategies: Vec<&'static str>,
    n_values: &'a [usize],
    trials: u64,
    m: Option<u64>,
    seed: u64,
    interaction_time: f64,
    backend: &'static str,
    priors: [f64; 2],
}

#[derive(Serialize)]
struct SweepRow {
    case: &'static str,
    strategy: &'static str,
    #[serde(rename = "N")]
    n: usize,
    trials: u64,
    #[serde(rename = "M")]
    m: Option<u64>,
    seed: u64,
    backend: &'static str,
    mean_perr: f64,
    std_error: f64,
    analytic_perr: f64,
    approx: &'static str,
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    metadata: SweepMetadata<'a>,
    rows: Vec<SweepRow>,
}

pub fn write_sweep_json<W: Write + ?Sized>(
    plan: &SamplingPlan,
    rows: &[TrialAggregate],
    out: &mut W,
) -> io::Result<()> {
    let doc = SweepDocument {
        metadata: SweepMetadata {
            rng_algorithm: RNG_ALGORITHM,
            case: plan.case.label(),
            strategies: plan.strategies.iter().map(|s| s.label()).collect(),
            n_values: &plan.n_values,
            trials: plan.trials,
            m: plan.effective_m(),
            seed: plan.seed,
            interaction_time: plan.interaction_time,
            backend: plan.backend.label(),
            priors: [plan.priors.first, plan.priors.second],
        },
        rows: rows
            .iter()
            .map(|r| SweepRow {
                case: r.case.label(),
                strategy: r.strategy.label(),
                n: r.n,
                trials: r.trials,
                m: r.m,
                seed: r.seed,
                backend: r.backend.label(),
                mean_perr: r.mean_perr,
                std_error: r.std_error,
                analytic_perr: r.analytic_perr,
                approx: r.analytic_approximation.label(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}

pub struct AnalyticRow {
    pub case: Case,
    pub strategy: Strategy,
    pub n: usize,
    pub m: Option<u64>,
    pub mean: AnalyticMean,
}

pub fn write_analytic_csv<W: Write + ?Sized>(rows: &[AnalyticRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "{ANALYTIC_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.case,
            r.strategy,
            r.n,
            fmt_m(r.m),
            fmt_f64(r.mean.value.value()),
            r.mean.approximation.label()
        )?;
    }
    Ok(())
}
