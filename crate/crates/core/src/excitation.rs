//! Simulator restricted to `span{vacuum, photon in mode j}`.
//!
//! Memory and per-gate cost are O(N), so registers of thousands of modes are
//! cheap. Every operation matches the dense simulator restricted to this
//! (N + 1)-dimensional subspace; operations that would leave it fail instead.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::dense::{QubitRegisterState, DENSE_MODE_CAP};
use crate::error::{Error, Result};
use crate::register::{
    check_mode, check_normalized, check_pair, Parity, PhotonRegister, SECTOR_TOL,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationState {
    vacuum: Complex64,
    modes: Vec<Complex64>,
}

impl ExcitationState {
    /// Amplitudes of "photon in mode j" for `j = 1..=N`.
    pub fn mode_amplitudes(&self) -> &[Complex64] {
        &self.modes
    }

    /// Embed into the full `2^N` register: vacuum and one-hot entries copied,
    /// everything else zero.
    pub fn lift_to_dense(&self) -> Result<QubitRegisterState> {
        if self.modes.len() > DENSE_MODE_CAP {
            return Err(Error::TooManyModes {
                num_modes: self.modes.len(),
                cap: DENSE_MODE_CAP,
            });
        }
        QubitRegisterState::from_excitations(self.vacuum, &self.modes)
    }

    /// Raw access for callers that apply their own (possibly non-standard)
    /// two-mode transforms, e.g. the fault-injection path of `qsn verify`.
    pub fn mode_amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.modes
    }
}

impl PhotonRegister for ExcitationState {
    fn vacuum(num_modes: usize) -> Result<Self> {
        if num_modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self {
            vacuum: Complex64::new(1.0, 0.0),
            modes: vec![Complex64::new(0.0, 0.0); num_modes],
        })
    }

    fn from_excitations(vacuum: Complex64, photon: &[Complex64]) -> Result<Self> {
        if photon.is_empty() {
            return Err(Error::NoModes);
        }
        let state = Self {
            vacuum,
            modes: photon.to_vec(),
        };
        check_normalized(state.norm_sqr())?;
        Ok(state)
    }

    fn num_modes(&self) -> usize {
        self.modes.len()
    }

    fn norm_sqr(&self) -> f64 {
        self.vacuum.norm_sqr() + self.modes.iter().map(|a| a.norm_sqr()).sum::<f64>()
    }

    fn vacuum_amplitude(&self) -> Complex64 {
        self.vacuum
    }

    fn photon_amplitude(&self, mode: usize) -> Result<Complex64> {
        check_mode(mode, self.modes.len())?;
        Ok(self.modes[mode - 1])
    }

    fn apply_mode_phase(&mut self, mode: usize, theta: f64) -> Result<()> {
        check_mode(mode, self.modes.len())?;
        self.modes[mode - 1] *= Complex64::from_polar(1.0, -theta);
        Ok(())
    }

    /// Exchanges the vacuum amplitude with the photon-in-`mode` amplitude.
    /// Fails if any other mode is occupied, since the flip would then produce
    /// a two-photon configuration.
    fn apply_x(&mut self, mode: usize) -> Result<()> {
        check_mode(mode, self.modes.len())?;
        if let Some((k, amp)) = self
            .modes
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != mode - 1)
            .map(|(k, a)| (k, a.norm()))
            .find(|(_, a)| *a > SECTOR_TOL)
        {
            return Err(Error::BitFlipLeavesSector {
                mode,
                occupied: k + 1,
                amplitude: amp,
            });
        }
        std::mem::swap(&mut self.vacuum, &mut self.modes[mode - 1]);
        Ok(())
    }

    fn apply_swap(&mut self, mode_a: usize, mode_b: usize) -> Result<()> {
        check_pair(mode_a, mode_b, self.modes.len())?;
        self.modes.swap(mode_a - 1, mode_b - 1);
        Ok(())
    }

    fn apply_beamsplitter(&mut self, mode_a: usize, mode_b: usize) -> Result<()> {
        check_pair(mode_a, mode_b, self.modes.len())?;
        let (a, b) = (self.modes[mode_a - 1], self.modes[mode_b - 1]);
        self.modes[mode_a - 1] = (a + b) * FRAC_1_SQRT_2;
        self.modes[mode_b - 1] = (a - b) * FRAC_1_SQRT_2;
        Ok(())
    }

    fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.modes.len() != other.modes.len() {
            return Err(Error::DimensionMismatch {
                left: self.modes.len(),
                right: other.modes.len(),
            });
        }
        Ok(self.vacuum.conj() * other.vacuum
            + self
                .modes
                .iter()
                .zip(&other.modes)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>())
    }

    fn mode_parity_probability(&self, mode: usize, parity: Parity) -> Result<f64> {
        check_mode(mode, self.modes.len())?;
        // pair (vacuum, photon in `mode`) projects coherently; a photon in any
        // other mode leaves `mode` in |0>, which overlaps |+/-> with weight 1/2
        let paired = (self.vacuum + self.modes[mode - 1] * parity.sign()).norm_sqr();
        let elsewhere: f64 = self
            .modes
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != mode - 1)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok(0.5 * (paired + elsewhere))
    }
}
