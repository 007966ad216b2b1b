use std::f64::consts::{PI, TAU};

use qsn::montecarlo::{
    mean_and_std_error, run_plan, sample_uniform_full, sample_uniform_narrow, TrialStreams,
};
use qsn::{Backend, Case, SamplingPlan, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 100_000;

/// Composite Simpson rule on `[a, b]` with `intervals` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut acc = f(a) + f(b);
    for k in 1..intervals {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn full_range_sampler_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = sample_uniform_full(DRAWS, &mut rng).unwrap();
    let thetas = p.thetas();
    assert!(thetas.iter().all(|t| (0.0..TAU).contains(t)));
    let mean_cos = thetas.iter().map(|t| t.cos()).sum::<f64>() / DRAWS as f64;
    let mean_sin = thetas.iter().map(|t| t.sin()).sum::<f64>() / DRAWS as f64;
    // five standard errors of a unit-variance/2 variable
    assert!(mean_cos.abs() < 0.016, "{mean_cos}");
    assert!(mean_sin.abs() < 0.016, "{mean_sin}");
    let mean = thetas.iter().sum::<f64>() / DRAWS as f64;
    assert!((mean - PI).abs() < 0.03, "{mean}");
}

#[test]
fn narrow_sampler_variance() {
    let m = 10_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let p = sample_uniform_narrow(DRAWS, m, &mut rng).unwrap();
    let half = PI / m as f64;
    assert!(p.thetas().iter().all(|t| t.abs() <= half));
    let mean = p.thetas().iter().sum::<f64>() / DRAWS as f64;
    let var = p.thetas().iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (DRAWS - 1) as f64;
    let expected = half * half / 3.0;
    assert!((var / expected - 1.0).abs() < 0.05, "{var} vs {expected}");
}

#[test]
fn local_estimator_variance_matches_quadrature() {
    // per-trial local error is cos^2(x/2)/2 with x uniform on the circle
    let f = |x: f64| 0.5 * (x / 2.0).cos().powi(2);
    let mean = simpson(f, 0.0, TAU, 2000) / TAU;
    let second = simpson(|x| f(x).powi(2), 0.0, TAU, 2000) / TAU;
    let oracle_var = second - mean * mean;
    assert!((mean - 0.25).abs() < 1e-12);
    assert!((oracle_var - 1.0 / 32.0).abs() < 1e-12);

    let plan = SamplingPlan {
        seed: 3,
        ..SamplingPlan::new(
            Case::SameVsDifferent,
            vec![Strategy::Local],
            vec![4],
            DRAWS as u64,
        )
    };
    let row = &run_plan(&plan).unwrap()[0];
    let sample_var = row.std_error.powi(2) * DRAWS as f64;
    assert!((sample_var / oracle_var - 1.0).abs() < 0.05, "{sample_var}");
}

#[test]
fn standard_error_covers_analytic_mean() {
    let seeds = 200u64;
    let mut covered = 0;
    for seed in 0..seeds {
        let plan = SamplingPlan {
            seed,
            ..SamplingPlan::new(
                Case::SameVsDifferent,
                vec![Strategy::Local, Strategy::Nonlocal],
                vec![4],
                2_000,
            )
        };
        let rows = run_plan(&plan).unwrap();
        if rows
            .iter()
            .all(|r| (r.mean_perr - r.analytic_perr).abs() < 3.0 * r.std_error)
        {
            covered += 1;
        }
    }
    assert!(covered as f64 >= 0.95 * seeds as f64, "{covered}/{seeds}");
}

#[test]
fn mean_and_std_error_known_values() {
    let (m, se) = mean_and_std_error(&[1.0, 2.0, 3.0, 4.0]);
    assert_eq!(m, 2.5);
    // sample variance 5/3
    assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    assert_eq!(mean_and_std_error(&[0.7]), (0.7, 0.0));
}

#[test]
fn per_trial_streams_are_independent_of_order() {
    let streams = TrialStreams::new(99);
    let mut forward = Vec::new();
    for trial in 0..50 {
        let mut rng = streams.rng(Case::SimilarVsDifferent, Strategy::Nonlocal, 6, trial, 0);
        forward.push(sample_uniform_full(6, &mut rng).unwrap());
    }
    for trial in (0..50).rev() {
        let mut rng = streams.rng(Case::SimilarVsDifferent, Strategy::Nonlocal, 6, trial, 0);
        assert_eq!(
            sample_uniform_full(6, &mut rng).unwrap(),
            forward[trial as usize]
        );
    }
    let mut other = streams.rng(Case::SimilarVsDifferent, Strategy::Nonlocal, 6, 0, 1);
    assert_ne!(sample_uniform_full(6, &mut other).unwrap(), forward[0]);
}

#[test]
fn backends_give_identical_ensembles() {
    let base = SamplingPlan {
        m: Some(50),
        seed: 5,
        ..SamplingPlan::new(
            Case::SimilarVsDifferent,
            vec![Strategy::Local, Strategy::Nonlocal],
            vec![2, 4, 8],
            500,
        )
    };
    let closed = run_plan(&base).unwrap();
    for backend in [Backend::SimCompact, Backend::SimDense] {
        let rows = run_plan(&SamplingPlan {
            backend,
            ..base.clone()
        })
        .unwrap();
        for (a, b) in closed.iter().zip(&rows) {
            assert!((a.mean_perr - b.mean_perr).abs() < 1e-12);
            assert!((a.std_error - b.std_error).abs() < 1e-12);
        }
    }
}
