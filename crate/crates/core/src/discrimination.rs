//! Error probabilities for the four (case, strategy) combinations.
//!
//! Two independent routes are provided: closed forms in the plate phases
//! (`perr_*`) and [`simulate_perr`], which runs both branches through a
//! simulator and applies the readout projectors. With priors `p_1`, `p_2`
//! for (Same|Similar, Different),
//!
//! `P_err = 1 - p_1 Pr[first outcome | first branch] - p_2 Pr[D outcome | D branch]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phases::PhaseConfig;
use crate::protocols::{run_and_measure, Case, Outcome, Priors, Strategy, WMethod};
use crate::register::PhotonRegister;

/// A probability of misidentifying the plate ensemble.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ErrorProbability(f64);

impl ErrorProbability {
    /// Clamps rounding excursions outside `[0, 1]`.
    pub fn new(value: f64) -> Self {
        debug_assert!(value.is_finite());
        Self(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_even(phases: &PhaseConfig) -> Result<()> {
    let n = phases.len();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OddModeCount(n));
    }
    Ok(())
}

fn check_same_len(a: &PhaseConfig, b: &PhaseConfig) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::PhaseLengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(())
}

/// `|<+|psi>|^2 = cos^2((th_1 - th_2 + th_3 - ... - th_N)/2)` for the local protocol.
pub fn local_overlap(phases: &PhaseConfig) -> Result<f64> {
    check_even(phases)?;
    Ok((phases.alternating_sum() / 2.0).cos().powi(2))
}

/// `|<w|w_theta>|^2 = |(1/N) sum_j e^{i th_j}|^2` for the nonlocal protocol.
pub fn w_overlap(phases: &PhaseConfig) -> f64 {
    let n = phases.len() as f64;
    let sum: Complex64 = phases
        .thetas()
        .iter()
        .map(|t| Complex64::from_polar(1.0, *t))
        .sum();
    (sum / n).norm_sqr()
}

fn combine(priors: Priors, first_correct: f64, second_correct: f64) -> ErrorProbability {
    ErrorProbability::new(1.0 - priors.first * first_correct - priors.second * second_correct)
}

/// Case (a), local: `1/2 cos^2(alt/2)` at equal priors.
pub fn perr_local_a(phases_d: &PhaseConfig) -> Result<ErrorProbability> {
    perr_local_a_with(phases_d, Priors::default())
}

pub fn perr_local_a_with(phases_d: &PhaseConfig, priors: Priors) -> Result<ErrorProbability> {
    let overlap = local_overlap(phases_d)?;
    Ok(combine(priors, 1.0, 1.0 - overlap))
}

/// Case (a), nonlocal: `1/2 |<w|w_D>|^2` at equal priors.
pub fn perr_nonlocal_a(phases_d: &PhaseConfig) -> ErrorProbability {
    perr_nonlocal_a_with(phases_d, Priors::default())
}

pub fn perr_nonlocal_a_with(phases_d: &PhaseConfig, priors: Priors) -> ErrorProbability {
    combine(priors, 1.0, 1.0 - w_overlap(phases_d))
}

/// Case (b), local: `1/2 (1 - |<+|psi'>|^2 + |<+|psi>|^2)` at equal priors.
pub fn perr_local_b(phases_sim: &PhaseConfig, phases_d: &PhaseConfig) -> Result<ErrorProbability> {
    perr_local_b_with(phases_sim, phases_d, Priors::default())
}

pub fn perr_local_b_with(
    phases_sim: &PhaseConfig,
    phases_d: &PhaseConfig,
    priors: Priors,
) -> Result<ErrorProbability> {
    check_same_len(phases_sim, phases_d)?;
    let sim = local_overlap(phases_sim)?;
    let d = local_overlap(phases_d)?;
    Ok(combine(priors, sim, 1.0 - d))
}

/// Case (b), nonlocal: `1/2 (1 - |<w|w_Sim>|^2 + |<w|w_D>|^2)` at equal priors.
pub fn perr_nonlocal_b(
    phases_sim: &PhaseConfig,
    phases_d: &PhaseConfig,
) -> Result<ErrorProbability> {
    perr_nonlocal_b_with(phases_sim, phases_d, Priors::default())
}

pub fn perr_nonlocal_b_with(
    phases_sim: &PhaseConfig,
    phases_d: &PhaseConfig,
    priors: Priors,
) -> Result<ErrorProbability> {
    check_same_len(phases_sim, phases_d)?;
    Ok(combine(
        priors,
        w_overlap(phases_sim),
        1.0 - w_overlap(phases_d),
    ))
}

/// Closed-form error probability for either case and strategy.
/// `phases_first` are the Same (case a) or Similar (case b) phases.
pub fn closed_form_perr(
    case: Case,
    strategy: Strategy,
    phases_first: &PhaseConfig,
    phases_d: &PhaseConfig,
    priors: Priors,
) -> Result<ErrorProbability> {
    match (case, strategy) {
        (Case::SameVsDifferent, Strategy::Local) => perr_local_a_with(phases_d, priors),
        (Case::SameVsDifferent, Strategy::Nonlocal) => Ok(perr_nonlocal_a_with(phases_d, priors)),
        (Case::SimilarVsDifferent, Strategy::Local) => {
            perr_local_b_with(phases_first, phases_d, priors)
        }
        (Case::SimilarVsDifferent, Strategy::Nonlocal) => {
            perr_nonlocal_b_with(phases_first, phases_d, priors)
        }
    }
}

/// Error probability from the projector statistics of two simulated branches.
pub fn perr_from_outcomes(priors: Priors, first: Outcome, different: Outcome) -> ErrorProbability {
    combine(priors, first.p_s, different.p_d)
}

/// Run both branches through simulator `S` and combine with `priors`.
pub fn simulate_perr<S: PhotonRegister>(
    strategy: Strategy,
    phases_first: &PhaseConfig,
    phases_d: &PhaseConfig,
    priors: Priors,
    method: WMethod,
) -> Result<ErrorProbability> {
    check_same_len(phases_first, phases_d)?;
    let first = run_and_measure::<S>(strategy, phases_first, method)?;
    let different = run_and_measure::<S>(strategy, phases_d, method)?;
    Ok(perr_from_outcomes(priors, first, different))
}

/// Whether an analytic ensemble mean is exact or a large-M expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approximation {
    Exact,
    LeadingOrder,
}

impl Approximation {
    pub fn label(self) -> &'static str {
        match self {
            Approximation::Exact => "exact",
            Approximation::LeadingOrder => "leading-order",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticMean {
    pub value: ErrorProbability,
    pub approximation: Approximation,
}

/// Ensemble-averaged error probability at equal priors:
///
/// | case | local | nonlocal |
/// |------|-------|----------|
/// | a | `1/4` | `1/(2N)` |
/// | b | `N pi^2 / (24 M^2) + 1/4` | `(pi^2/(3M^2) (1 - 1/N) + 1/N) / 2` |
///
/// Case (b) entries keep terms up to `1/M^2` and are marked
/// [`Approximation::LeadingOrder`].
pub fn analytic_mean(
    case: Case,
    strategy: Strategy,
    n: usize,
    m: Option<u64>,
) -> Result<AnalyticMean> {
    analytic_mean_with(case, strategy, n, m, Priors::default())
}

/// [`analytic_mean`] for general priors. Built from the per-branch means
/// `<|<+|psi>|^2> = 1/2`, `<|<w|w_D>|^2> = 1/N`,
/// `<|<+|psi'>|^2> ~ 1 - N pi^2/(12 M^2)` and
/// `<|<w|w_Sim>|^2> ~ 1 - pi^2/(3 M^2) + pi^2/(3 N M^2)`.
pub fn analytic_mean_with(
    case: Case,
    strategy: Strategy,
    n: usize,
    m: Option<u64>,
    priors: Priors,
) -> Result<AnalyticMean> {
    if n == 0 {
        return Err(Error::NoModes);
    }
    if strategy == Strategy::Local && !n.is_multiple_of(2) {
        return Err(Error::OddModeCount(n));
    }
    let nf = n as f64;
    let d_flagged = match strategy {
        Strategy::Local => 0.5,
        Strategy::Nonlocal => 1.0 - 1.0 / nf,
    };
    let (first_correct, approximation) = match case {
        Case::SameVsDifferent => (1.0, Approximation::Exact),
        Case::SimilarVsDifferent => {
            let m = m.ok_or_else(|| Error::InvalidArgument("case b needs M".into()))?;
            if m < 2 {
                return Err(Error::InvalidArgument(format!("M must be >= 2, got {m}")));
            }
            let eps = PI * PI / (m as f64).powi(2);
            let overlap = match strategy {
                Strategy::Local => 1.0 - nf * eps / 12.0,
                Strategy::Nonlocal => 1.0 - eps / 3.0 + eps / (3.0 * nf),
            };
            (overlap, Approximation::LeadingOrder)
        }
    };
    Ok(AnalyticMean {
        value: combine(priors, first_correct, d_flagged),
        approximation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(t: &[f64]) -> PhaseConfig {
        PhaseConfig::new(t.to_vec()).unwrap()
    }

    #[test]
    fn local_a_examples() {
        assert_eq!(perr_local_a(&p(&[0.0, 0.0])).unwrap().value(), 0.5);
        assert!(perr_local_a(&p(&[PI, 0.0])).unwrap().value() < 1e-30);
        assert_eq!(
            perr_local_a(&p(&[0.0; 3])).unwrap_err(),
            Error::OddModeCount(3)
        );
    }

    #[test]
    fn nonlocal_a_examples() {
        for n in [1, 2, 5, 10] {
            let v = perr_nonlocal_a(&PhaseConfig::uniform(n, 1.3).unwrap()).value();
            assert!((v - 0.5).abs() < 1e-15);
        }
        assert!(perr_nonlocal_a(&p(&[0.0, PI])).value() < 1e-30);
    }

    #[test]
    fn case_b_examples() {
        let zero = p(&[0.0, 0.0]);
        assert_eq!(perr_local_b(&zero, &zero).unwrap().value(), 0.5);
        assert!(perr_local_b(&zero, &p(&[PI, 0.0])).unwrap().value() < 1e-30);
        assert!(perr_nonlocal_b(&zero, &p(&[0.0, PI])).unwrap().value() < 1e-30);
        assert_eq!(perr_nonlocal_b(&zero, &zero).unwrap().value(), 0.5);

        // theta' = (d, -d), theta = 0: 1/2 (1 - cos^2 d + 1)
        let d = 0.3;
        let v = perr_nonlocal_b(&p(&[d, -d]), &zero).unwrap().value();
        assert!((v - 0.5 * (2.0 - d.cos().powi(2))).abs() < 1e-15);

        assert!(matches!(
            perr_local_b(&zero, &p(&[0.0; 4])),
            Err(Error::PhaseLengthMismatch { .. })
        ));
        assert!(perr_nonlocal_b(&zero, &p(&[0.0; 3])).is_err());
        assert!(perr_local_b(&p(&[0.0; 3]), &p(&[0.0; 3])).is_err());
    }

    #[test]
    fn analytic_values() {
        for n in [2, 4, 10] {
            let a = analytic_mean(Case::SameVsDifferent, Strategy::Local, n, None).unwrap();
            assert_eq!(a.value.value(), 0.25);
            assert_eq!(a.approximation, Approximation::Exact);
        }
        let a = analytic_mean(Case::SameVsDifferent, Strategy::Nonlocal, 10, None).unwrap();
        assert!((a.value.value() - 0.05).abs() < 1e-16);

        let eps = PI * PI * 1e-8;
        let a = analytic_mean(
            Case::SimilarVsDifferent,
            Strategy::Nonlocal,
            1000,
            Some(10_000),
        )
        .unwrap();
        let expected = 0.5 * (eps / 3.0 * (1.0 - 1e-3) + 1e-3);
        assert!((a.value.value() - expected).abs() < 1e-16);
        assert!((a.value.value() - 5.0e-4).abs() < 1e-7);
        assert_eq!(a.approximation, Approximation::LeadingOrder);

        let a = analytic_mean(Case::SimilarVsDifferent, Strategy::Local, 10, Some(10_000)).unwrap();
        assert!((a.value.value() - (10.0 * eps / 24.0 + 0.25)).abs() < 1e-16);

        assert!(analytic_mean(Case::SimilarVsDifferent, Strategy::Local, 10, None).is_err());
        assert!(analytic_mean(Case::SameVsDifferent, Strategy::Local, 3, None).is_err());
    }

    #[test]
    fn general_priors_reduce_to_weighted_one_sided_error() {
        let d = p(&[0.4, 1.9]);
        let priors = Priors::new(0.2, 0.8).unwrap();
        let overlap = local_overlap(&d).unwrap();
        let v = perr_local_a_with(&d, priors).unwrap().value();
        assert!((v - 0.8 * overlap).abs() < 1e-15);

        let a =
            analytic_mean_with(Case::SameVsDifferent, Strategy::Nonlocal, 4, None, priors).unwrap();
        assert!((a.value.value() - 0.8 / 4.0).abs() < 1e-15);
    }
}
