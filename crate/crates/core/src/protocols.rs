//! The two interrogation circuits and their readout projectors.
//!
//! The plate register is never simulated as a quantum system: the
//! Hamiltonian is block diagonal in the plate hypotheses, so each hypothesis
//! is run as its own branch with its own [`PhaseConfig`] and the branches are
//! combined with prior weights in [`crate::discrimination`].

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::montecarlo::{sample_uniform_full, sample_uniform_narrow};
use crate::phases::PhaseConfig;
use crate::register::{Parity, PhotonRegister};

/// Which discrimination problem is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Case {
    /// (a): identical phases on every plate vs. i.i.d. uniform phases on `[0, 2 pi)`.
    #[default]
    SameVsDifferent,
    /// (b): i.i.d. phases on `[-pi/M, pi/M]` vs. i.i.d. uniform phases on `[0, 2 pi)`.
    SimilarVsDifferent,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::SameVsDifferent => "a",
            Case::SimilarVsDifferent => "b",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// One photon visits the plates in sequence (phase, bit flip, SWAP).
    Local,
    /// One photon spread over all plates as a W state.
    Nonlocal,
}

impl Strategy {
    pub fn label(self) -> &'static str {
        match self {
            Strategy::Local => "local",
            Strategy::Nonlocal => "nonlocal",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Plate ensemble prepared under one hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScenarioSpec {
    /// Every plate imparts `theta`.
    Same { theta: f64 },
    /// Independent phases, uniform on `[0, 2 pi)`.
    DifferentUniform,
    /// Independent phases, uniform on `[-pi/M, pi/M]`.
    SimilarNarrow { m: u64 },
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ScenarioSpec::Same { theta } if !theta.is_finite() => {
                Err(Error::NonFinite("scenario phase"))
            }
            ScenarioSpec::SimilarNarrow { m } if m < 2 => Err(Error::InvalidArgument(format!(
                "narrow-phase ensemble needs M >= 2, got {m}"
            ))),
            _ => Ok(()),
        }
    }

    /// Draw one plate configuration. Sampled values are plate frequencies;
    /// the returned phases are those frequencies times `interaction_time`.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        num_modes: usize,
        interaction_time: f64,
        rng: &mut R,
    ) -> Result<PhaseConfig> {
        self.validate()?;
        let base = match *self {
            ScenarioSpec::Same { theta } => PhaseConfig::uniform(num_modes, theta)?,
            ScenarioSpec::DifferentUniform => sample_uniform_full(num_modes, rng)?,
            ScenarioSpec::SimilarNarrow { m } => sample_uniform_narrow(num_modes, m, rng)?,
        };
        if interaction_time == 1.0 {
            Ok(base)
        } else {
            PhaseConfig::from_frequencies(base.thetas(), interaction_time)
        }
    }
}

/// Prior weights of the two hypotheses: `first` is Same (case a) or
/// Similar (case b), `second` is Different.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Priors {
    pub first: f64,
    pub second: f64,
}

impl Priors {
    pub fn new(first: f64, second: f64) -> Result<Self> {
        let p = Self { first, second };
        p.validate()?;
        Ok(p)
    }

    /// Priors `(first, 1 - first)`.
    pub fn with_first(first: f64) -> Result<Self> {
        Self::new(first, 1.0 - first)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.first.is_finite()
            && self.second.is_finite()
            && self.first >= 0.0
            && self.second >= 0.0
            && (self.first + self.second - 1.0).abs() <= 1e-15;
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "priors must be nonnegative and sum to 1, got ({}, {})",
                self.first, self.second
            )));
        }
        Ok(())
    }

    pub fn is_equal(&self) -> bool {
        self.first == 0.5 && self.second == 0.5
    }
}

impl Default for Priors {
    fn default() -> Self {
        Self {
            first: 0.5,
            second: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DiscriminationTask {
    pub case: Case,
    pub priors: Priors,
}

impl DiscriminationTask {
    pub fn new(case: Case) -> Self {
        Self {
            case,
            priors: Priors::default(),
        }
    }

    /// Ensembles for (first, second) hypotheses. Case (b) needs `m`.
    pub fn scenarios(
        &self,
        same_theta: f64,
        m: Option<u64>,
    ) -> Result<(ScenarioSpec, ScenarioSpec)> {
        let first = match self.case {
            Case::SameVsDifferent => ScenarioSpec::Same { theta: same_theta },
            Case::SimilarVsDifferent => ScenarioSpec::SimilarNarrow {
                m: m.ok_or_else(|| Error::InvalidArgument("case b needs M".into()))?,
            },
        };
        first.validate()?;
        Ok((first, ScenarioSpec::DifferentUniform))
    }
}

/// How the W state is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WMethod {
    /// Photon in mode 1 through `log2 N` layers of balanced beam splitters. Needs `N = 2^m`.
    Cascade,
    /// Amplitudes written directly, any `N >= 1`.
    Direct,
}

impl WMethod {
    /// Cascade where it exists, direct otherwise.
    pub fn preferred(num_modes: usize) -> Self {
        if num_modes.is_power_of_two() {
            WMethod::Cascade
        } else {
            WMethod::Direct
        }
    }
}

/// How the final state is read out.
#[derive(Debug, Clone, PartialEq)]
pub enum Readout<S> {
    /// Local protocol: `|+><+|` vs `|-><-|` on one mode.
    ModeParity { mode: usize },
    /// Nonlocal protocol: `|w><w|` vs `1 - |w><w|` for the prepared W state.
    WProjector { w: S },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolResult<S> {
    pub final_state: S,
    pub readout: Readout<S>,
}

/// Probabilities of the two measurement outcomes for one branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    /// Outcome that identifies the first hypothesis (Same / Similar).
    pub p_s: f64,
    /// Outcome that identifies Different.
    pub p_d: f64,
}

impl<S: PhotonRegister> ProtocolResult<S> {
    /// The plate mode the local readout inspects, if any.
    pub fn photon_mode_of_interest(&self) -> Option<usize> {
        match self.readout {
            Readout::ModeParity { mode } => Some(mode),
            Readout::WProjector { .. } => None,
        }
    }

    pub fn measure(&self) -> Result<Outcome> {
        match &self.readout {
            Readout::ModeParity { .. } => project_local(self),
            Readout::WProjector { .. } => project_nonlocal(self),
        }
    }
}

fn check_even(num_modes: usize) -> Result<()> {
    if num_modes < 2 || !num_modes.is_multiple_of(2) {
        return Err(Error::OddModeCount(num_modes));
    }
    Ok(())
}

/// `|+>` on mode 1, vacuum elsewhere.
pub fn prepare_local_initial<S: PhotonRegister>(num_modes: usize) -> Result<S> {
    check_even(num_modes)?;
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut photon = vec![Complex64::new(0.0, 0.0); num_modes];
    photon[0] = h;
    S::from_excitations(h, &photon)
}

pub fn prepare_w_state<S: PhotonRegister>(num_modes: usize, method: WMethod) -> Result<S> {
    if num_modes == 0 {
        return Err(Error::NoModes);
    }
    match method {
        WMethod::Direct => {
            let amp = Complex64::new(1.0 / (num_modes as f64).sqrt(), 0.0);
            S::from_excitations(Complex64::new(0.0, 0.0), &vec![amp; num_modes])
        }
        WMethod::Cascade => {
            if !num_modes.is_power_of_two() {
                return Err(Error::NotPowerOfTwo(num_modes));
            }
            let mut state = S::vacuum(num_modes)?;
            state.apply_x(1)?;
            // each layer doubles the occupied block: mode j feeds mode j + span
            let mut span = 1;
            while span < num_modes {
                for j in 1..=span {
                    state.apply_beamsplitter(j, j + span)?;
                }
                span *= 2;
            }
            Ok(state)
        }
    }
}

/// Phase, bit flip and SWAP for plates `1..N-1`, then a last phase step.
/// The photon ends on mode N in
/// `(e^{-i(th_1+th_3+...)}|0> + e^{-i(th_2+th_4+...)}|1>)/sqrt 2`.
pub fn run_local_protocol<S: PhotonRegister>(
    num_modes: usize,
    phases: &PhaseConfig,
) -> Result<ProtocolResult<S>> {
    check_even(num_modes)?;
    phases.expect_len(num_modes)?;
    let mut state: S = prepare_local_initial(num_modes)?;
    for j in 1..num_modes {
        state.apply_phases(phases)?;
        state.apply_x(j)?;
        state.apply_swap(j, j + 1)?;
    }
    state.apply_phases(phases)?;
    Ok(ProtocolResult {
        final_state: state,
        readout: Readout::ModeParity { mode: num_modes },
    })
}

pub fn run_nonlocal_protocol<S: PhotonRegister>(
    num_modes: usize,
    phases: &PhaseConfig,
    method: WMethod,
) -> Result<ProtocolResult<S>> {
    phases.expect_len(num_modes)?;
    let w: S = prepare_w_state(num_modes, method)?;
    let mut state = w.clone();
    state.apply_phases(phases)?;
    Ok(ProtocolResult {
        final_state: state,
        readout: Readout::WProjector { w },
    })
}

pub fn project_local<S: PhotonRegister>(result: &ProtocolResult<S>) -> Result<Outcome> {
    let Readout::ModeParity { mode } = result.readout else {
        return Err(Error::InvalidArgument(
            "local projector applied to a nonlocal result".into(),
        ));
    };
    Ok(Outcome {
        p_s: result
            .final_state
            .mode_parity_probability(mode, Parity::Plus)?,
        p_d: result
            .final_state
            .mode_parity_probability(mode, Parity::Minus)?,
    })
}

pub fn project_nonlocal<S: PhotonRegister>(result: &ProtocolResult<S>) -> Result<Outcome> {
    let Readout::WProjector { w } = &result.readout else {
        return Err(Error::InvalidArgument(
            "W projector applied to a local result".into(),
        ));
    };
    let p_s = w.inner_product(&result.final_state)?.norm_sqr();
    Ok(Outcome {
        p_s,
        p_d: result.final_state.norm_sqr() - p_s,
    })
}

/// Run one branch of either protocol and measure it.
pub fn run_and_measure<S: PhotonRegister>(
    strategy: Strategy,
    phases: &PhaseConfig,
    method: WMethod,
) -> Result<Outcome> {
    let n = phases.len();
    match strategy {
        Strategy::Local => project_local(&run_local_protocol::<S>(n, phases)?),
        Strategy::Nonlocal => project_nonlocal(&run_nonlocal_protocol::<S>(n, phases, method)?),
    }
}
