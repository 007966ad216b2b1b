//! Operations shared by the dense and single-excitation back ends.
//!
//! The protocols are written once against [`PhotonRegister`] and run
//! unchanged on either simulator, which is what makes the dense register a
//! usable oracle for the compact one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phases::PhaseConfig;

/// Which superposition of `|0>` and `|1>` a single-mode projector selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// `|+> = (|0> + |1>)/sqrt 2`
    Plus,
    /// `|-> = (|0> - |1>)/sqrt 2`
    Minus,
}

impl Parity {
    pub(crate) fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }
}

/// A register of single-rail optical modes, numbered `1..=num_modes`.
pub trait PhotonRegister: Clone + Send + Sync + Sized {
    /// All modes empty.
    fn vacuum(num_modes: usize) -> Result<Self>;

    /// State with the given vacuum amplitude and one-photon amplitudes
    /// (`photon[j - 1]` for mode `j`). Must be normalized.
    fn from_excitations(vacuum: Complex64, photon: &[Complex64]) -> Result<Self>;

    fn num_modes(&self) -> usize;

    /// Sum of squared amplitude moduli.
    fn norm_sqr(&self) -> f64;

    /// Amplitude of the all-empty configuration.
    fn vacuum_amplitude(&self) -> Complex64;

    /// Amplitude of "one photon in `mode`, every other mode empty".
    fn photon_amplitude(&self, mode: usize) -> Result<Complex64>;

    /// `exp(-i theta (1 + sigma_z)/2)` on `mode`: occupied amplitudes pick up `e^{-i theta}`.
    fn apply_mode_phase(&mut self, mode: usize, theta: f64) -> Result<()>;

    /// Bit flip `sigma_x` on `mode`.
    fn apply_x(&mut self, mode: usize) -> Result<()>;

    fn apply_swap(&mut self, mode_a: usize, mode_b: usize) -> Result<()>;

    /// Balanced beam splitter, real orthogonal convention:
    /// `|1_a 0_b> -> (|1_a 0_b> + |0_a 1_b>)/sqrt 2`,
    /// `|0_a 1_b> -> (|1_a 0_b> - |0_a 1_b>)/sqrt 2`.
    fn apply_beamsplitter(&mut self, mode_a: usize, mode_b: usize) -> Result<()>;

    /// `<self|other>`, conjugate-linear in `self`.
    fn inner_product(&self, other: &Self) -> Result<Complex64>;

    /// Probability of finding `mode` in `|+>` (or `|->`), all other modes
    /// traced out. This is `Tr[(1 (x) |+><+|_mode (x) 1) rho]`.
    fn mode_parity_probability(&self, mode: usize, parity: Parity) -> Result<f64>;

    /// One plate interaction: every mode `j` acquires `phases.theta(j)`.
    fn apply_phases(&mut self, phases: &PhaseConfig) -> Result<()> {
        phases.expect_len(self.num_modes())?;
        for (j, theta) in phases.thetas().iter().enumerate() {
            self.apply_mode_phase(j + 1, *theta)?;
        }
        Ok(())
    }
}

pub(crate) fn check_mode(mode: usize, num_modes: usize) -> Result<()> {
    if mode == 0 || mode > num_modes {
        return Err(Error::ModeOutOfRange { mode, num_modes });
    }
    Ok(())
}

pub(crate) fn check_pair(mode_a: usize, mode_b: usize, num_modes: usize) -> Result<()> {
    check_mode(mode_a, num_modes)?;
    check_mode(mode_b, num_modes)?;
    if mode_a == mode_b {
        return Err(Error::SameMode { mode: mode_a });
    }
    Ok(())
}

/// Tolerance used when validating that caller-supplied amplitudes are normalized.
pub(crate) const NORM_INPUT_TOL: f64 = 1e-10;

/// Amplitudes below this modulus count as zero in sector checks.
pub const SECTOR_TOL: f64 = 1e-12;

pub(crate) fn check_normalized(norm_sqr: f64) -> Result<()> {
    if !norm_sqr.is_finite() {
        return Err(Error::NonFinite("amplitude"));
    }
    if (norm_sqr - 1.0).abs() > NORM_INPUT_TOL {
        return Err(Error::InvalidArgument(format!(
            "state not normalized: squared norm {norm_sqr}"
        )));
    }
    Ok(())
}
