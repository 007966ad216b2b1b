//! Self-checks: the compact simulator and the closed forms against the dense
//! oracle, plus the algebraic invariants every build must satisfy.
//!
//! Each check draws random [`Probe`]s from a seeded stream and evaluates
//! them. A failing probe is serialized into a [`FailureRecord`], which
//! [`replay`] evaluates again deterministically.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::{QubitRegisterState, DENSE_MODE_CAP};
use crate::discrimination::{closed_form_perr, local_overlap, perr_from_outcomes, w_overlap};
use crate::error::{Error, Result};
use crate::excitation::ExcitationState;
use crate::phases::PhaseConfig;
use crate::protocols::{
    prepare_w_state, run_and_measure, run_local_protocol, run_nonlocal_protocol, Case, Outcome,
    Priors, Strategy, WMethod,
};
use crate::register::PhotonRegister;

/// Agreement tolerance between evaluation routes and for norm preservation.
pub const TOL: f64 = 1e-12;
/// Elementwise tolerance for involutions.
pub const INVOLUTION_TOL: f64 = 1e-15;

/// Deliberate defects, used to confirm that the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    #[default]
    None,
    /// The compact beam splitter uses the output ports in swapped order.
    BeamSplitterConvention,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    DenseUnitarity,
    DenseInvolution,
    DenseLocality,
    CompactPhase,
    CompactBitFlip,
    CompactSwap,
    CompactBeamSplitter,
    CompactInnerProduct,
    LocalCircuitClosedForm,
    NonlocalCircuitClosedForm,
    ThreePathAgreement,
    SameBranchZeroError,
    WCascadeModuli,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::DenseUnitarity,
        Check::DenseInvolution,
        Check::DenseLocality,
        Check::CompactPhase,
        Check::CompactBitFlip,
        Check::CompactSwap,
        Check::CompactBeamSplitter,
        Check::CompactInnerProduct,
        Check::LocalCircuitClosedForm,
        Check::NonlocalCircuitClosedForm,
        Check::ThreePathAgreement,
        Check::SameBranchZeroError,
        Check::WCascadeModuli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::DenseUnitarity => "dense-unitarity",
            Check::DenseInvolution => "dense-involution",
            Check::DenseLocality => "dense-locality",
            Check::CompactPhase => "compact-phase",
            Check::CompactBitFlip => "compact-bit-flip",
            Check::CompactSwap => "compact-swap",
            Check::CompactBeamSplitter => "compact-beam-splitter",
            Check::CompactInnerProduct => "compact-inner-product",
            Check::LocalCircuitClosedForm => "local-circuit-closed-form",
            Check::NonlocalCircuitClosedForm => "nonlocal-circuit-closed-form",
            Check::ThreePathAgreement => "three-path-agreement",
            Check::SameBranchZeroError => "same-branch-zero-error",
            Check::WCascadeModuli => "w-cascade-moduli",
        }
    }

    /// Register sizes this check runs on for a given `--n-max`.
    pub fn sizes(self, n_max: usize) -> Vec<usize> {
        let n_max = n_max.min(DENSE_MODE_CAP);
        match self {
            Check::DenseLocality | Check::CompactSwap | Check::CompactBeamSplitter => {
                (2..=n_max).collect()
            }
            // odd sizes are kept: the protocol must reject them cleanly
            Check::LocalCircuitClosedForm => (2..=n_max).collect(),
            Check::WCascadeModuli => (0..=4)
                .map(|k| 1usize << k)
                .chain((5..).map(|k| 1usize << k).take_while(|n| *n <= n_max))
                .collect(),
            _ => (1..=n_max).collect(),
        }
    }

    fn draws(self, draws: usize) -> usize {
        match self {
            Check::WCascadeModuli => 1,
            _ => draws,
        }
    }
}

/// Random inputs for one evaluation of a check. Unused fields stay empty.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Probe {
    pub n: usize,
    #[serde(default)]
    pub mode_a: usize,
    #[serde(default)]
    pub mode_b: usize,
    #[serde(default)]
    pub theta: f64,
    /// Dense: all `2^n` amplitudes. Compact: vacuum followed by `n` photon amplitudes.
    #[serde(default)]
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default)]
    pub amplitudes_alt: Vec<[f64; 2]>,
    #[serde(default)]
    pub phases: Vec<f64>,
    #[serde(default)]
    pub phases_alt: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DrawOutcome {
    Pass,
    /// Input refused by a precondition, as it should be.
    Rejected(String),
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub check: Check,
    pub message: String,
    pub fault: Fault,
    pub seed: u64,
    pub draw: usize,
    pub probe: Probe,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub check: Check,
    pub n: usize,
    pub draws: usize,
    pub passed: usize,
    pub rejected: usize,
    pub failed: usize,
    pub first_failure: Option<FailureRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub draws: usize,
    pub seed: u64,
    pub fault: Fault,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_max: 8,
            draws: 1000,
            seed: 0,
            fault: Fault::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub summaries: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.failed == 0)
    }

    pub fn first_failure(&self) -> Option<&FailureRecord> {
        self.summaries.iter().find_map(|s| s.first_failure.as_ref())
    }
}

fn probe_rng(seed: u64, check: Check, n: usize, draw: usize) -> ChaCha8Rng {
    let index = Check::ALL.iter().position(|c| *c == check).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((index << 32) | n as u64);
    rng.set_word_pos((draw as u128) << 32);
    rng
}

fn random_amplitudes<R: Rng>(len: usize, rng: &mut R) -> Vec<[f64; 2]> {
    let raw: Vec<[f64; 2]> = (0..len)
        .map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
        .collect();
    let norm = raw
        .iter()
        .map(|[re, im]| re * re + im * im)
        .sum::<f64>()
        .sqrt();
    raw.into_iter()
        .map(|[re, im]| [re / norm, im / norm])
        .collect()
}

fn random_pair<R: Rng>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.random_range(1..=n);
    if n == 1 {
        return (a, a);
    }
    let mut b = rng.random_range(1..n);
    if b >= a {
        b += 1;
    }
    (a, b)
}

fn random_phases<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-TAU..TAU)).collect()
}

/// Draw the inputs for `(check, n, draw)`.
pub fn generate(check: Check, n: usize, seed: u64, draw: usize) -> Probe {
    let mut rng = probe_rng(seed, check, n, draw);
    let (mode_a, mode_b) = random_pair(n, &mut rng);
    let theta = rng.random_range(-TAU..TAU);
    let mut probe = Probe {
        n,
        mode_a,
        mode_b,
        theta,
        ..Probe::default()
    };
    match check {
        Check::DenseUnitarity | Check::DenseInvolution | Check::DenseLocality => {
            probe.amplitudes = random_amplitudes(1 << n, &mut rng);
        }
        Check::CompactBitFlip => {
            // support on {vacuum, mode_a} only
            let pair = random_amplitudes(2, &mut rng);
            let mut amps = vec![[0.0, 0.0]; n + 1];
            amps[0] = pair[0];
            amps[mode_a] = pair[1];
            probe.amplitudes = amps;
        }
        Check::CompactPhase | Check::CompactSwap | Check::CompactBeamSplitter => {
            probe.amplitudes = random_amplitudes(n + 1, &mut rng);
        }
        Check::CompactInnerProduct => {
            probe.amplitudes = random_amplitudes(n + 1, &mut rng);
            probe.amplitudes_alt = random_amplitudes(n + 1, &mut rng);
        }
        Check::LocalCircuitClosedForm
        | Check::NonlocalCircuitClosedForm
        | Check::ThreePathAgreement => {
            probe.phases = random_phases(n, &mut rng);
            probe.phases_alt = random_phases(n, &mut rng);
        }
        Check::SameBranchZeroError | Check::WCascadeModuli => {}
    }
    probe
}

fn to_complex(a: &[[f64; 2]]) -> Vec<Complex64> {
    a.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
}

fn compact_from(amps: &[[f64; 2]]) -> Result<ExcitationState> {
    let c = to_complex(amps);
    let (vacuum, photon) = c
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty amplitude list".into()))?;
    ExcitationState::from_excitations(*vacuum, photon)
}

fn dense_from(n: usize, amps: &[[f64; 2]]) -> Result<QubitRegisterState> {
    QubitRegisterState::from_amplitudes(n, to_complex(amps))
}

fn max_diff(a: &QubitRegisterState, b: &QubitRegisterState) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Compact beam splitter, optionally with the injected convention defect.
fn compact_beamsplitter(
    state: &mut ExcitationState,
    mode_a: usize,
    mode_b: usize,
    fault: Fault,
) -> Result<()> {
    match fault {
        Fault::None => state.apply_beamsplitter(mode_a, mode_b),
        Fault::BeamSplitterConvention => {
            state.apply_beamsplitter(mode_a, mode_b)?;
            state.mode_amplitudes_mut().swap(mode_a - 1, mode_b - 1);
            Ok(())
        }
    }
}

fn compact_cascade(n: usize, fault: Fault) -> Result<ExcitationState> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut state = ExcitationState::vacuum(n)?;
    state.apply_x(1)?;
    let mut span = 1;
    while span < n {
        for j in 1..=span {
            compact_beamsplitter(&mut state, j, j + span, fault)?;
        }
        span *= 2;
    }
    Ok(state)
}

struct Tally(Vec<String>);

impl Tally {
    fn new() -> Self {
        Tally(Vec::new())
    }

    fn within(&mut self, what: &str, err: f64, tol: f64) {
        if err.is_nan() || err > tol {
            self.0
                .push(format!("{what}: deviation {err:e} exceeds {tol:e}"));
        }
    }

    fn finish(self) -> DrawOutcome {
        if self.0.is_empty() {
            DrawOutcome::Pass
        } else {
            DrawOutcome::Fail(self.0.join("; "))
        }
    }
}

fn lifted_equivalence(
    probe: &Probe,
    fault: Fault,
    op_compact: impl Fn(&mut ExcitationState, Fault) -> Result<()>,
    op_dense: impl Fn(&mut QubitRegisterState) -> Result<()>,
) -> Result<DrawOutcome> {
    let mut compact = compact_from(&probe.amplitudes)?;
    let mut dense = compact.lift_to_dense()?;
    op_compact(&mut compact, fault)?;
    op_dense(&mut dense)?;
    let mut t = Tally::new();
    t.within(
        "lift(op(s)) vs op(lift(s))",
        max_diff(&compact.lift_to_dense()?, &dense),
        TOL,
    );
    t.within("compact norm", (compact.norm_sqr() - 1.0).abs(), TOL);
    Ok(t.finish())
}

fn outcomes_agree(t: &mut Tally, label: &str, a: Outcome, b: Outcome) {
    t.within(&format!("{label} p_S"), (a.p_s - b.p_s).abs(), TOL);
    t.within(&format!("{label} p_D"), (a.p_d - b.p_d).abs(), TOL);
}

fn evaluate_inner(check: Check, probe: &Probe, fault: Fault) -> Result<DrawOutcome> {
    let n = probe.n;
    let (a, b, theta) = (probe.mode_a, probe.mode_b, probe.theta);
    match check {
        Check::DenseUnitarity => {
            let base = dense_from(n, &probe.amplitudes)?;
            let mut t = Tally::new();
            let mut s = base.clone();
            s.apply_mode_phase(a, theta)?;
            t.within("phase norm", (s.norm_sqr() - 1.0).abs(), TOL);
            let mut s = base.clone();
            s.apply_x(a)?;
            t.within("bit-flip norm", (s.norm_sqr() - 1.0).abs(), TOL);
            if n >= 2 {
                let mut s = base.clone();
                s.apply_swap(a, b)?;
                t.within("swap norm", (s.norm_sqr() - 1.0).abs(), TOL);
                // restrict to the sector the beam splitter accepts
                let both = (1 << (n - a)) | (1 << (n - b));
                let mut amps = base.amplitudes().to_vec();
                for (i, amp) in amps.iter_mut().enumerate() {
                    if i & both == both {
                        *amp = Complex64::new(0.0, 0.0);
                    }
                }
                let norm = amps.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                amps.iter_mut().for_each(|x| *x /= norm);
                let mut s = QubitRegisterState::from_amplitudes(n, amps)?;
                let before: f64 = s.norm_sqr();
                s.apply_beamsplitter(a, b)?;
                t.within("beam-splitter norm", (s.norm_sqr() - before).abs(), TOL);
            }
            Ok(t.finish())
        }
        Check::DenseInvolution => {
            let base = dense_from(n, &probe.amplitudes)?;
            let mut t = Tally::new();
            let mut s = base.clone();
            s.apply_x(a)?;
            s.apply_x(a)?;
            t.within("X^2", max_diff(&s, &base), INVOLUTION_TOL);
            if n >= 2 {
                let mut s = base.clone();
                s.apply_swap(a, b)?;
                s.apply_swap(a, b)?;
                t.within("SWAP^2", max_diff(&s, &base), INVOLUTION_TOL);
            }
            Ok(t.finish())
        }
        Check::DenseLocality => {
            let base = dense_from(n, &probe.amplitudes)?;
            let mut s1 = base.clone();
            s1.apply_mode_phase(a, theta)?;
            s1.apply_x(b)?;
            let mut s2 = base;
            s2.apply_x(b)?;
            s2.apply_mode_phase(a, theta)?;
            let mut t = Tally::new();
            t.within("phase(a) X(b) vs X(b) phase(a)", max_diff(&s1, &s2), TOL);
            Ok(t.finish())
        }
        Check::CompactPhase => lifted_equivalence(
            probe,
            fault,
            |s, _| s.apply_mode_phase(a, theta),
            |s| s.apply_mode_phase(a, theta),
        ),
        Check::CompactBitFlip => {
            lifted_equivalence(probe, fault, |s, _| s.apply_x(a), |s| s.apply_x(a))
        }
        Check::CompactSwap => lifted_equivalence(
            probe,
            fault,
            |s, _| s.apply_swap(a, b),
            |s| s.apply_swap(a, b),
        ),
        Check::CompactBeamSplitter => lifted_equivalence(
            probe,
            fault,
            |s, f| compact_beamsplitter(s, a, b, f),
            |s| s.apply_beamsplitter(a, b),
        ),
        Check::CompactInnerProduct => {
            let x = compact_from(&probe.amplitudes)?;
            let y = compact_from(&probe.amplitudes_alt)?;
            let compact = x.inner_product(&y)?;
            let dense = x.lift_to_dense()?.inner_product(&y.lift_to_dense()?)?;
            let mut t = Tally::new();
            t.within("<x|y> compact vs dense", (compact - dense).norm(), TOL);
            t.within("|<x|y>| <= 1", (compact.norm() - 1.0).max(0.0), TOL);
            Ok(t.finish())
        }
        Check::LocalCircuitClosedForm => {
            let phases = PhaseConfig::new(probe.phases.clone())?;
            let compact = match run_local_protocol::<ExcitationState>(n, &phases) {
                Err(Error::OddModeCount(_)) => {
                    return Ok(DrawOutcome::Rejected(format!("odd N = {n}")))
                }
                other => other?,
            };
            let dense = run_local_protocol::<QubitRegisterState>(n, &phases)?;
            let odd: f64 = phases.thetas().iter().step_by(2).sum();
            let even: f64 = phases.thetas().iter().skip(1).step_by(2).sum();
            let mut photon = vec![Complex64::new(0.0, 0.0); n];
            photon[n - 1] = Complex64::from_polar(FRAC_1_SQRT_2, -even);
            let vacuum = Complex64::from_polar(FRAC_1_SQRT_2, -odd);
            let mut t = Tally::new();
            let expected = ExcitationState::from_excitations(vacuum, &photon)?;
            let ov = expected.inner_product(&compact.final_state)?.norm();
            t.within("compact |<psi_expected|psi>|", (ov - 1.0).abs(), TOL);
            let expected = QubitRegisterState::from_excitations(vacuum, &photon)?;
            let ov = expected.inner_product(&dense.final_state)?.norm();
            t.within("dense |<psi_expected|psi>|", (ov - 1.0).abs(), TOL);
            Ok(t.finish())
        }
        Check::NonlocalCircuitClosedForm => {
            let phases = PhaseConfig::new(probe.phases.clone())?;
            let method = WMethod::preferred(n);
            let scale = 1.0 / (n as f64).sqrt();
            let photon: Vec<Complex64> = phases
                .thetas()
                .iter()
                .map(|th| Complex64::from_polar(scale, -th))
                .collect();
            let zero = Complex64::new(0.0, 0.0);
            let mut t = Tally::new();
            let compact = run_nonlocal_protocol::<ExcitationState>(n, &phases, method)?;
            let expected = ExcitationState::from_excitations(zero, &photon)?;
            let ov = expected.inner_product(&compact.final_state)?.norm();
            t.within("compact |<w_expected|w_D>|", (ov - 1.0).abs(), TOL);
            let dense = run_nonlocal_protocol::<QubitRegisterState>(n, &phases, method)?;
            let expected = QubitRegisterState::from_excitations(zero, &photon)?;
            let ov = expected.inner_product(&dense.final_state)?.norm();
            t.within("dense |<w_expected|w_D>|", (ov - 1.0).abs(), TOL);
            Ok(t.finish())
        }
        Check::ThreePathAgreement => {
            let d = PhaseConfig::new(probe.phases.clone())?;
            let first = PhaseConfig::new(probe.phases_alt.clone())?;
            let same = PhaseConfig::uniform(n, theta)?;
            let priors = Priors::default();
            let method = WMethod::preferred(n);
            let mut t = Tally::new();
            for strategy in [Strategy::Local, Strategy::Nonlocal] {
                if strategy == Strategy::Local && !n.is_multiple_of(2) {
                    if run_and_measure::<ExcitationState>(strategy, &d, method)
                        != Err(Error::OddModeCount(n))
                    {
                        t.0.push(format!("odd N = {n} not rejected by the local protocol"));
                    }
                    continue;
                }
                let closed = |p: &PhaseConfig| -> Result<Outcome> {
                    let p_s = match strategy {
                        Strategy::Local => local_overlap(p)?,
                        Strategy::Nonlocal => w_overlap(p),
                    };
                    Ok(Outcome {
                        p_s,
                        p_d: 1.0 - p_s,
                    })
                };
                for (label, branch) in [("D", &d), ("Sim", &first), ("Same", &same)] {
                    let c = run_and_measure::<ExcitationState>(strategy, branch, method)?;
                    let dn = run_and_measure::<QubitRegisterState>(strategy, branch, method)?;
                    let cf = closed(branch)?;
                    outcomes_agree(&mut t, &format!("{strategy} {label} compact/dense"), c, dn);
                    outcomes_agree(&mut t, &format!("{strategy} {label} compact/closed"), c, cf);
                    t.within(
                        &format!("{strategy} {label} p_S + p_D"),
                        (c.p_s + c.p_d - 1.0)
                            .abs()
                            .max((dn.p_s + dn.p_d - 1.0).abs()),
                        TOL,
                    );
                }
                for (case, first_phases) in [
                    (Case::SameVsDifferent, &same),
                    (Case::SimilarVsDifferent, &first),
                ] {
                    let cf = closed_form_perr(case, strategy, first_phases, &d, priors)?.value();
                    let c = perr_from_outcomes(
                        priors,
                        run_and_measure::<ExcitationState>(strategy, first_phases, method)?,
                        run_and_measure::<ExcitationState>(strategy, &d, method)?,
                    )
                    .value();
                    let dn = perr_from_outcomes(
                        priors,
                        run_and_measure::<QubitRegisterState>(strategy, first_phases, method)?,
                        run_and_measure::<QubitRegisterState>(strategy, &d, method)?,
                    )
                    .value();
                    let label = format!("{strategy} case {case} P_err");
                    t.within(&format!("{label} compact/closed"), (c - cf).abs(), TOL);
                    t.within(&format!("{label} dense/closed"), (dn - cf).abs(), TOL);
                }
            }
            Ok(t.finish())
        }
        Check::SameBranchZeroError => {
            let same = PhaseConfig::uniform(n, theta)?;
            let method = WMethod::preferred(n);
            let mut t = Tally::new();
            let mut strategies = vec![Strategy::Nonlocal];
            if n.is_multiple_of(2) {
                strategies.push(Strategy::Local);
            }
            for strategy in strategies {
                let c = run_and_measure::<ExcitationState>(strategy, &same, method)?;
                let d = run_and_measure::<QubitRegisterState>(strategy, &same, method)?;
                t.within(&format!("{strategy} compact p_D"), c.p_d.abs(), TOL);
                t.within(&format!("{strategy} dense p_D"), d.p_d.abs(), TOL);
            }
            Ok(t.finish())
        }
        Check::WCascadeModuli => {
            let target = 1.0 / (n as f64).sqrt();
            let mut t = Tally::new();
            let compact = compact_cascade(n, fault)?;
            for (j, amp) in compact.mode_amplitudes().iter().enumerate() {
                t.within(
                    &format!("compact |amp_{}|", j + 1),
                    (amp.norm() - target).abs(),
                    TOL,
                );
            }
            t.within("compact vacuum", compact.vacuum_amplitude().norm(), TOL);
            if n <= DENSE_MODE_CAP {
                let dense: QubitRegisterState = prepare_w_state(n, WMethod::Cascade)?;
                for j in 1..=n {
                    let amp = dense.photon_amplitude(j)?;
                    t.within(
                        &format!("dense |amp_{j}|"),
                        (amp.norm() - target).abs(),
                        TOL,
                    );
                }
                t.within("dense vacuum", dense.vacuum_amplitude().norm(), TOL);
                t.within("dense norm", (dense.norm_sqr() - 1.0).abs(), TOL);
            }
            Ok(t.finish())
        }
    }
}

/// Evaluate one probe. Errors raised by the library on valid inputs count as failures.
pub fn evaluate(check: Check, probe: &Probe, fault: Fault) -> DrawOutcome {
    evaluate_inner(check, probe, fault).unwrap_or_else(|e| DrawOutcome::Fail(format!("error: {e}")))
}

/// Re-run the probe stored in a failure record.
pub fn replay(record: &FailureRecord) -> DrawOutcome {
    evaluate(record.check, &record.probe, record.fault)
}

pub fn run_check(check: Check, n: usize, cfg: &VerifyConfig) -> CheckSummary {
    let draws = check.draws(cfg.draws);
    let mut summary = CheckSummary {
        check,
        n,
        draws,
        passed: 0,
        rejected: 0,
        failed: 0,
        first_failure: None,
    };
    for draw in 0..draws {
        let probe = generate(check, n, cfg.seed, draw);
        match evaluate(check, &probe, cfg.fault) {
            DrawOutcome::Pass => summary.passed += 1,
            DrawOutcome::Rejected(_) => summary.rejected += 1,
            DrawOutcome::Fail(message) => {
                summary.failed += 1;
                if summary.first_failure.is_none() {
                    summary.first_failure = Some(FailureRecord {
                        check,
                        message,
                        fault: cfg.fault,
                        seed: cfg.seed,
                        draw,
                        probe,
                    });
                }
            }
        }
    }
    summary
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let mut summaries = Vec::new();
    for check in Check::ALL {
        for n in check.sizes(cfg.n_max) {
            summaries.push(run_check(check, n, cfg));
        }
    }
    VerifyReport { summaries }
}
