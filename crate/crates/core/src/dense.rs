//! Dense state-vector simulator over `2^N` single-rail basis states.
//!
//! Basis index convention: mode 1 is the most significant bit, so the ket
//! `|b_1 b_2 ... b_N>` has index `sum_j b_j 2^(N - j)` and `|10>` on two
//! modes means "photon in mode 1". This back end exists to validate the
//! compact simulator; it is capped at [`DENSE_MODE_CAP`] modes.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::register::{
    check_mode, check_normalized, check_pair, Parity, PhotonRegister, SECTOR_TOL,
};

/// Largest register the dense back end will allocate (2^20 amplitudes, 16 MiB).
pub const DENSE_MODE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegisterState {
    num_modes: usize,
    amplitudes: Vec<Complex64>,
}

impl QubitRegisterState {
    /// Wrap a full amplitude vector. Length must be `2^num_modes` and the
    /// vector must be normalized.
    pub fn from_amplitudes(num_modes: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_size(num_modes)?;
        if amplitudes.len() != 1 << num_modes {
            return Err(Error::AmplitudeLength {
                len: amplitudes.len(),
                num_modes,
            });
        }
        check_normalized(amplitudes.iter().map(|a| a.norm_sqr()).sum())?;
        Ok(Self {
            num_modes,
            amplitudes,
        })
    }

    /// Computational basis state with photons in `occupied` (1-based modes).
    pub fn basis(num_modes: usize, occupied: &[usize]) -> Result<Self> {
        let mut state = Self::vacuum(num_modes)?;
        let index = state.index_of(occupied)?;
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        state.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Basis index of the configuration with photons exactly in `occupied`.
    pub fn index_of(&self, occupied: &[usize]) -> Result<usize> {
        let mut index = 0;
        for &mode in occupied {
            check_mode(mode, self.num_modes)?;
            index |= self.bit(mode);
        }
        Ok(index)
    }

    /// Amplitude of the configuration with photons exactly in `occupied`.
    pub fn amplitude(&self, occupied: &[usize]) -> Result<Complex64> {
        Ok(self.amplitudes[self.index_of(occupied)?])
    }

    fn bit(&self, mode: usize) -> usize {
        1 << (self.num_modes - mode)
    }
}

fn check_size(num_modes: usize) -> Result<()> {
    if num_modes == 0 {
        return Err(Error::NoModes);
    }
    if num_modes > DENSE_MODE_CAP {
        return Err(Error::TooManyModes {
            num_modes,
            cap: DENSE_MODE_CAP,
        });
    }
    Ok(())
}

impl PhotonRegister for QubitRegisterState {
    fn vacuum(num_modes: usize) -> Result<Self> {
        check_size(num_modes)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_modes];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_modes,
            amplitudes,
        })
    }

    fn from_excitations(vacuum: Complex64, photon: &[Complex64]) -> Result<Self> {
        let num_modes = photon.len();
        check_size(num_modes)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_modes];
        amplitudes[0] = vacuum;
        for (j, amp) in photon.iter().enumerate() {
            amplitudes[1 << (num_modes - 1 - j)] = *amp;
        }
        Self::from_amplitudes(num_modes, amplitudes)
    }

    fn num_modes(&self) -> usize {
        self.num_modes
    }

    fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn vacuum_amplitude(&self) -> Complex64 {
        self.amplitudes[0]
    }

    fn photon_amplitude(&self, mode: usize) -> Result<Complex64> {
        check_mode(mode, self.num_modes)?;
        Ok(self.amplitudes[self.bit(mode)])
    }

    fn apply_mode_phase(&mut self, mode: usize, theta: f64) -> Result<()> {
        check_mode(mode, self.num_modes)?;
        let bit = self.bit(mode);
        let factor = Complex64::from_polar(1.0, -theta);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & bit != 0 {
                *amp *= factor;
            }
        }
        Ok(())
    }

    fn apply_x(&mut self, mode: usize) -> Result<()> {
        check_mode(mode, self.num_modes)?;
        let bit = self.bit(mode);
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                self.amplitudes.swap(i, i | bit);
            }
        }
        Ok(())
    }

    fn apply_swap(&mut self, mode_a: usize, mode_b: usize) -> Result<()> {
        check_pair(mode_a, mode_b, self.num_modes)?;
        let (bit_a, bit_b) = (self.bit(mode_a), self.bit(mode_b));
        for i in 0..self.amplitudes.len() {
            // visit each |1_a 0_b> / |0_a 1_b> pair once
            if i & bit_a != 0 && i & bit_b == 0 {
                self.amplitudes.swap(i, i ^ bit_a ^ bit_b);
            }
        }
        Ok(())
    }

    fn apply_beamsplitter(&mut self, mode_a: usize, mode_b: usize) -> Result<()> {
        check_pair(mode_a, mode_b, self.num_modes)?;
        let (bit_a, bit_b) = (self.bit(mode_a), self.bit(mode_b));
        let both = bit_a | bit_b;
        if let Some(amp) = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & both == both)
            .map(|(_, a)| a.norm())
            .find(|a| *a > SECTOR_TOL)
        {
            return Err(Error::TwoPhotonBeamSplitter {
                mode_a,
                mode_b,
                amplitude: amp,
            });
        }
        for i in 0..self.amplitudes.len() {
            if i & bit_a != 0 && i & bit_b == 0 {
                let j = i ^ both;
                let (one_zero, zero_one) = (self.amplitudes[i], self.amplitudes[j]);
                self.amplitudes[i] = (one_zero + zero_one) * FRAC_1_SQRT_2;
                self.amplitudes[j] = (one_zero - zero_one) * FRAC_1_SQRT_2;
            }
        }
        Ok(())
    }

    fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.num_modes != other.num_modes {
            return Err(Error::DimensionMismatch {
                left: self.num_modes,
                right: other.num_modes,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn mode_parity_probability(&self, mode: usize, parity: Parity) -> Result<f64> {
        check_mode(mode, self.num_modes)?;
        let bit = self.bit(mode);
        let sign = parity.sign();
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == 0)
            .map(|(i, a0)| (a0 + self.amplitudes[i | bit] * sign).norm_sqr() * 0.5)
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plus_one_mode() -> QubitRegisterState {
        QubitRegisterState::from_amplitudes(1, vec![c(FRAC_1_SQRT_2, 0.0); 2]).unwrap()
    }

    fn assert_close(a: &QubitRegisterState, b: &QubitRegisterState, tol: f64) {
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn bit_ordering_puts_mode_one_first() {
        let s = QubitRegisterState::basis(3, &[1]).unwrap();
        assert_eq!(s.amplitudes()[0b100], c(1.0, 0.0));
        let s = QubitRegisterState::basis(3, &[3]).unwrap();
        assert_eq!(s.amplitudes()[0b001], c(1.0, 0.0));
    }

    #[test]
    fn phase_zero_is_identity() {
        let mut s = plus_one_mode();
        s.apply_mode_phase(1, 0.0).unwrap();
        assert_eq!(s, plus_one_mode());
    }

    #[test]
    fn phase_pi_maps_plus_to_minus() {
        let mut s = plus_one_mode();
        s.apply_mode_phase(1, PI).unwrap();
        let minus = QubitRegisterState::from_amplitudes(
            1,
            vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)],
        )
        .unwrap();
        assert_close(&s, &minus, 1e-15);
    }

    #[test]
    fn phase_half_pi_on_occupied_gives_minus_i() {
        let mut s = QubitRegisterState::basis(1, &[1]).unwrap();
        s.apply_mode_phase(1, FRAC_PI_2).unwrap();
        assert!((s.amplitudes()[1] - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn x_flips_vacuum_and_exchanges_amplitudes() {
        let mut s = QubitRegisterState::vacuum(3).unwrap();
        s.apply_x(1).unwrap();
        assert_eq!(s, QubitRegisterState::basis(3, &[1]).unwrap());

        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let mut s = QubitRegisterState::from_amplitudes(1, vec![alpha, beta]).unwrap();
        s.apply_x(1).unwrap();
        assert_eq!(s.amplitudes(), &[beta, alpha]);
    }

    #[test]
    fn swap_moves_excitation() {
        let mut s = QubitRegisterState::basis(2, &[1]).unwrap();
        s.apply_swap(1, 2).unwrap();
        assert_eq!(s, QubitRegisterState::basis(2, &[2]).unwrap());
        for occ in [&[][..], &[1, 2][..]] {
            let mut s = QubitRegisterState::basis(2, occ).unwrap();
            s.apply_swap(2, 1).unwrap();
            assert_eq!(s, QubitRegisterState::basis(2, occ).unwrap());
        }
    }

    #[test]
    fn beamsplitter_on_single_photon() {
        let mut s = QubitRegisterState::basis(2, &[1]).unwrap();
        s.apply_beamsplitter(1, 2).unwrap();
        let w = QubitRegisterState::from_excitations(
            c(0.0, 0.0),
            &[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        )
        .unwrap();
        assert_close(&s, &w, 1e-15);

        // the real convention is self-inverse on the pair
        s.apply_beamsplitter(1, 2).unwrap();
        assert_close(&s, &QubitRegisterState::basis(2, &[1]).unwrap(), 1e-15);

        let mut vac = QubitRegisterState::vacuum(2).unwrap();
        vac.apply_beamsplitter(1, 2).unwrap();
        assert_eq!(vac, QubitRegisterState::vacuum(2).unwrap());
    }

    #[test]
    fn beamsplitter_rejects_two_photon_sector() {
        let mut s = QubitRegisterState::basis(3, &[1, 3]).unwrap();
        let err = s.apply_beamsplitter(1, 3).unwrap_err();
        assert!(err.is_domain());
        // modes (1, 2) see only one photon
        s.apply_beamsplitter(1, 2).unwrap();
    }

    #[test]
    fn argument_errors() {
        let mut s = QubitRegisterState::vacuum(2).unwrap();
        assert_eq!(
            s.apply_x(3),
            Err(Error::ModeOutOfRange {
                mode: 3,
                num_modes: 2
            })
        );
        assert!(s.apply_mode_phase(0, 1.0).is_err());
        assert_eq!(s.apply_swap(1, 1), Err(Error::SameMode { mode: 1 }));
        assert!(s.apply_beamsplitter(2, 2).is_err());
        let other = QubitRegisterState::vacuum(3).unwrap();
        assert!(matches!(
            s.inner_product(&other),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            QubitRegisterState::vacuum(DENSE_MODE_CAP + 1),
            Err(Error::TooManyModes { .. })
        ));
        assert!(QubitRegisterState::from_amplitudes(2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(QubitRegisterState::from_amplitudes(1, vec![c(1.0, 0.0); 2]).is_err());
    }

    #[test]
    fn inner_products_of_basis_and_superpositions() {
        let a = QubitRegisterState::vacuum(3).unwrap();
        let b = QubitRegisterState::basis(3, &[1]).unwrap();
        assert_eq!(a.inner_product(&b).unwrap(), c(0.0, 0.0));
        let plus = plus_one_mode();
        let mut minus = plus_one_mode();
        minus.apply_mode_phase(1, PI).unwrap();
        assert!(plus.inner_product(&minus).unwrap().norm() < 1e-15);
        assert!((plus.inner_product(&plus).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn parity_probabilities() {
        let plus = plus_one_mode();
        assert!((plus.mode_parity_probability(1, Parity::Plus).unwrap() - 1.0).abs() < 1e-15);
        assert!(
            plus.mode_parity_probability(1, Parity::Minus)
                .unwrap()
                .abs()
                < 1e-15
        );
        // photon elsewhere: mode 2 is |0>, half on each parity
        let s = QubitRegisterState::basis(2, &[1]).unwrap();
        assert!((s.mode_parity_probability(2, Parity::Plus).unwrap() - 0.5).abs() < 1e-15);
    }
}
