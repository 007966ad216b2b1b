//! Seeded plate-phase sampling and trial aggregation.
//!
//! # Random streams
//!
//! Every trial gets its own generator, so a run is bit-identical no matter
//! how trials are scheduled across threads:
//!
//! * the 64-bit plan seed is expanded into a 256-bit ChaCha key with
//!   SplitMix64 (four consecutive outputs, little endian);
//! * the ChaCha stream id packs `(N, case, strategy, substream)`;
//! * the word position starts at `trial_index << 32`, giving each trial
//!   `2^32` words before it could run into its neighbour.
//!
//! Substream 0 draws the Different-branch phases, substream 1 the phases of
//! the other hypothesis (Similar in case b, the common Same phase in case a).
//! The algorithm is identified in output metadata as [`RNG_ALGORITHM`].

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::distr::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dense::{QubitRegisterState, DENSE_MODE_CAP};
use crate::discrimination::{
    analytic_mean_with, closed_form_perr, simulate_perr, Approximation, ErrorProbability,
};
use crate::error::{Error, Result};
use crate::excitation::ExcitationState;
use crate::phases::PhaseConfig;
use crate::protocols::{Case, Priors, ScenarioSpec, Strategy, WMethod};

pub const RNG_ALGORITHM: &str =
    "chacha8-splitmix64key-stream(n,case,strategy,sub)-wordpos(trial<<32)-v1";

/// `N` independent phases uniform on `[0, 2 pi)`.
pub fn sample_uniform_full<R: Rng + ?Sized>(num_modes: usize, rng: &mut R) -> Result<PhaseConfig> {
    let dist = Uniform::new(0.0, TAU).expect("valid range");
    PhaseConfig::new(dist.sample_iter(rng).take(num_modes).collect())
}

/// `N` independent phases uniform on `[-pi/M, pi/M]`.
pub fn sample_uniform_narrow<R: Rng + ?Sized>(
    num_modes: usize,
    m: u64,
    rng: &mut R,
) -> Result<PhaseConfig> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "narrow-phase ensemble needs M >= 2, got {m}"
        )));
    }
    let half_width = PI / m as f64;
    let dist = Uniform::new_inclusive(-half_width, half_width).expect("valid range");
    PhaseConfig::new(dist.sample_iter(rng).take(num_modes).collect())
}

/// How each trial's error probability is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    /// Overlap formulas, O(N) per trial.
    ClosedForm,
    /// Full circuit on the single-excitation simulator.
    SimCompact,
    /// Full circuit on the dense simulator (N <= 20).
    SimDense,
}

impl Backend {
    pub fn label(self) -> &'static str {
        match self {
            Backend::ClosedForm => "closed-form",
            Backend::SimCompact => "sim-compact",
            Backend::SimDense => "sim-dense",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub case: Case,
    /// Strategies to run, in output order.
    pub strategies: Vec<Strategy>,
    pub n_values: Vec<usize>,
    pub trials: u64,
    /// Narrow-ensemble parameter; required for case b, ignored for case a.
    pub m: Option<u64>,
    pub seed: u64,
    pub interaction_time: f64,
    pub backend: Backend,
    pub priors: Priors,
}

impl SamplingPlan {
    pub fn new(case: Case, strategies: Vec<Strategy>, n_values: Vec<usize>, trials: u64) -> Self {
        Self {
            case,
            strategies,
            n_values,
            trials,
            m: None,
            seed: 0,
            interaction_time: 1.0,
            backend: Backend::ClosedForm,
            priors: Priors::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.trials > 1 << 36 {
            return bad(format!(
                "at most 2^36 trials per point, got {}",
                self.trials
            ));
        }
        if self.n_values.is_empty() {
            return bad("no N values given".into());
        }
        if self.strategies.is_empty() {
            return bad("no strategy selected".into());
        }
        if !self.interaction_time.is_finite() {
            return Err(Error::NonFinite("interaction time"));
        }
        self.priors.validate()?;
        if self.case == Case::SimilarVsDifferent {
            match self.m {
                None => return bad("case b needs M".into()),
                Some(m) if m < 2 => return bad(format!("M must be >= 2, got {m}")),
                _ => {}
            }
        }
        for &n in &self.n_values {
            if n == 0 {
                return Err(Error::NoModes);
            }
            if n >= 1 << 48 {
                return bad(format!("N = {n} too large"));
            }
            if self.strategies.contains(&Strategy::Local) && n % 2 != 0 {
                return Err(Error::OddModeCount(n));
            }
            if self.backend == Backend::SimDense && n > DENSE_MODE_CAP {
                return Err(Error::TooManyModes {
                    num_modes: n,
                    cap: DENSE_MODE_CAP,
                });
            }
        }
        Ok(())
    }

    /// Narrow-ensemble parameter as it applies to this plan's case.
    pub fn effective_m(&self) -> Option<u64> {
        match self.case {
            Case::SameVsDifferent => None,
            Case::SimilarVsDifferent => self.m,
        }
    }
}

/// Aggregated result for one `(N, strategy)` point of a plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialAggregate {
    pub case: Case,
    pub strategy: Strategy,
    pub n: usize,
    pub trials: u64,
    pub m: Option<u64>,
    pub seed: u64,
    pub backend: Backend,
    pub mean_perr: f64,
    /// Unbiased sample standard deviation over `sqrt(trials)`; 0 for one trial.
    pub std_error: f64,
    pub analytic_perr: f64,
    pub analytic_approximation: Approximation,
}

/// Per-trial generator factory for one plan seed.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    key: [u8; 32],
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl TrialStreams {
    pub fn new(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self { key }
    }

    pub fn rng(
        &self,
        case: Case,
        strategy: Strategy,
        n: usize,
        trial: u64,
        substream: u8,
    ) -> ChaCha8Rng {
        let case_bits = match case {
            Case::SameVsDifferent => 0u64,
            Case::SimilarVsDifferent => 1,
        };
        let strategy_bits = match strategy {
            Strategy::Local => 0u64,
            Strategy::Nonlocal => 1,
        };
        let stream = ((n as u64) << 8) | (case_bits << 6) | (strategy_bits << 4) | substream as u64;
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(stream);
        rng.set_word_pos((trial as u128) << 32);
        rng
    }
}

const SUBSTREAM_DIFFERENT: u8 = 0;
const SUBSTREAM_FIRST: u8 = 1;

/// Error probability of trial `trial` for one `(strategy, N)` point.
pub fn run_trial(
    plan: &SamplingPlan,
    streams: &TrialStreams,
    strategy: Strategy,
    n: usize,
    trial: u64,
) -> Result<ErrorProbability> {
    let t = plan.interaction_time;
    let mut rng_d = streams.rng(plan.case, strategy, n, trial, SUBSTREAM_DIFFERENT);
    let phases_d = ScenarioSpec::DifferentUniform.sample(n, t, &mut rng_d)?;

    let first = match plan.case {
        // the Same branch's common phase is irrelevant to the closed form
        Case::SameVsDifferent if plan.backend == Backend::ClosedForm => None,
        Case::SameVsDifferent => {
            let mut rng = streams.rng(plan.case, strategy, n, trial, SUBSTREAM_FIRST);
            let theta = rng.random_range(0.0..TAU);
            Some(ScenarioSpec::Same { theta }.sample(n, t, &mut rng)?)
        }
        Case::SimilarVsDifferent => {
            let m = plan
                .m
                .ok_or_else(|| Error::InvalidArgument("case b needs M".into()))?;
            let mut rng = streams.rng(plan.case, strategy, n, trial, SUBSTREAM_FIRST);
            Some(ScenarioSpec::SimilarNarrow { m }.sample(n, t, &mut rng)?)
        }
    };
    let first_ref = first.as_ref().unwrap_or(&phases_d);
    match plan.backend {
        Backend::ClosedForm => {
            closed_form_perr(plan.case, strategy, first_ref, &phases_d, plan.priors)
        }
        Backend::SimCompact => simulate_perr::<ExcitationState>(
            strategy,
            first_ref,
            &phases_d,
            plan.priors,
            WMethod::preferred(n),
        ),
        Backend::SimDense => simulate_perr::<QubitRegisterState>(
            strategy,
            first_ref,
            &phases_d,
            plan.priors,
            WMethod::preferred(n),
        ),
    }
}

/// Mean and standard error of `values`; the reduction runs in index order.
pub fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let count = values.len() as f64;
    let mean = values.iter().sum::<f64>() / count;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
    (mean, (var / count).sqrt())
}

fn run_point(
    plan: &SamplingPlan,
    streams: &TrialStreams,
    strategy: Strategy,
    n: usize,
) -> Result<TrialAggregate> {
    let values = (0..plan.trials)
        .into_par_iter()
        .map(|trial| run_trial(plan, streams, strategy, n, trial).map(ErrorProbability::value))
        .collect::<Result<Vec<f64>>>()?;
    let (mean_perr, std_error) = mean_and_std_error(&values);
    let analytic = analytic_mean_with(plan.case, strategy, n, plan.effective_m(), plan.priors)?;
    Ok(TrialAggregate {
        case: plan.case,
        strategy,
        n,
        trials: plan.trials,
        m: plan.effective_m(),
        seed: plan.seed,
        backend: plan.backend,
        mean_perr,
        std_error,
        analytic_perr: analytic.value.value(),
        analytic_approximation: analytic.approximation,
    })
}

/// Run every `(strategy, N)` point of `plan` on the current rayon pool.
/// Rows come back strategy-major, in the order given by the plan.
pub fn run_plan(plan: &SamplingPlan) -> Result<Vec<TrialAggregate>> {
    plan.validate()?;
    let streams = TrialStreams::new(plan.seed);
    let mut rows = Vec::with_capacity(plan.strategies.len() * plan.n_values.len());
    for &strategy in &plan.strategies {
        for &n in &plan.n_values {
            rows.push(run_point(plan, &streams, strategy, n)?);
        }
    }
    Ok(rows)
}

/// [`run_plan`] on a dedicated pool of `threads` workers. The thread count
/// changes only speed, never results.
pub fn run_plan_with_threads(plan: &SamplingPlan, threads: usize) -> Result<Vec<TrialAggregate>> {
    plan.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| run_plan(plan))
}
