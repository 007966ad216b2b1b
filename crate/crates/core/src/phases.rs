use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Phases imparted by the N plates on a photon passing through them.
///
/// `thetas[j - 1]` is the phase of plate `j`, i.e. `omega_j * t` for plate
/// frequency `omega_j` and interaction time `t`. `interaction_time` is
/// carried alongside so that results can report which `t` produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseConfig {
    thetas: Vec<f64>,
    #[serde(default = "default_time")]
    interaction_time: f64,
}

fn default_time() -> f64 {
    1.0
}

impl PhaseConfig {
    /// Phases given directly, with `t = 1`.
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::NoModes);
        }
        if thetas.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("phase"));
        }
        Ok(Self {
            thetas,
            interaction_time: 1.0,
        })
    }

    /// Phases `theta_j = omega_j * t` from plate frequencies and an interaction time.
    pub fn from_frequencies(omegas: &[f64], interaction_time: f64) -> Result<Self> {
        if !interaction_time.is_finite() {
            return Err(Error::NonFinite("interaction time"));
        }
        let mut cfg = Self::new(omegas.iter().map(|w| w * interaction_time).collect())?;
        cfg.interaction_time = interaction_time;
        Ok(cfg)
    }

    /// Every plate imparts the same phase.
    pub fn uniform(num_modes: usize, theta: f64) -> Result<Self> {
        Self::new(vec![theta; num_modes])
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn interaction_time(&self) -> f64 {
        self.interaction_time
    }

    /// Phase of plate `mode` (1-based).
    pub fn theta(&self, mode: usize) -> f64 {
        self.thetas[mode - 1]
    }

    /// `theta_1 - theta_2 + theta_3 - ... - theta_N`.
    pub fn alternating_sum(&self) -> f64 {
        self.thetas
            .iter()
            .enumerate()
            .map(|(i, t)| if i % 2 == 0 { *t } else { -*t })
            .sum()
    }

    pub(crate) fn expect_len(&self, n: usize) -> Result<()> {
        if self.thetas.len() != n {
            return Err(Error::PhaseLengthMismatch {
                expected: n,
                actual: self.thetas.len(),
            });
        }
        Ok(())
    }
}
