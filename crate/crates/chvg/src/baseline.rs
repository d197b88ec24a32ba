//! Validation of the visibility-graph builder against the exact law for
//! random series.
//!
//! For an i.i.d. continuous series the degree distribution of the
//! horizontal visibility graph is known in closed form,
//!
//! ```text
//! P(k) = (1/3) (2/3)^(k-2),  k >= 2
//! ```
//!
//! with mean degree approaching 4 as the series grows. Rebuilding that law
//! from seeded noise exercises the whole builder end to end and is the one
//! place in the crate where randomness appears — always behind an explicit
//! seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::hvg::build_hvg_values;

/// Default series length for the baseline run.
pub const DEFAULT_BASELINE_LENGTH: usize = 100_000;

/// Asymptotic mean degree of a random-series visibility graph.
pub const MEAN_DEGREE_TARGET: f64 = 4.0;

/// Tolerance on the empirical mean degree at the default length.
pub const MEAN_DEGREE_TOLERANCE: f64 = 0.05;

/// Absolute tolerance on each empirical degree probability.
pub const DEGREE_PROBABILITY_TOLERANCE: f64 = 0.01;

/// Degrees whose probabilities are compared against the law.
pub const CHECKED_DEGREES: std::ops::RangeInclusive<u32> = 2..=10;

/// Below this length sampling noise swamps the tolerances, so the checks
/// are skipped and the summary is flagged as too short.
pub const MIN_LENGTH_FOR_CHECKS: usize = 1_000;

/// Exact degree probability for an i.i.d. continuous series.
pub fn expected_degree_probability(k: u32) -> f64 {
    if k < 2 {
        return 0.0;
    }
    (2.0f64 / 3.0).powi(k as i32 - 2) / 3.0
}

/// Comparison of one degree's empirical share against the law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeProbe {
    pub degree: u32,
    pub empirical: f64,
    pub expected: f64,
    pub abs_error: f64,
    /// `None` when the series was too short to judge.
    pub pass: Option<bool>,
}

/// Full result of one baseline run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineSummary {
    pub length: usize,
    pub seed: u64,
    pub edge_count: usize,
    pub mean_degree: f64,
    pub mean_degree_target: f64,
    pub mean_degree_tolerance: f64,
    pub degree_probability_tolerance: f64,
    /// True when the series is below [`MIN_LENGTH_FOR_CHECKS`]; all pass
    /// verdicts are then `None`.
    pub too_short: bool,
    pub mean_degree_pass: Option<bool>,
    pub probes: Vec<DegreeProbe>,
    pub all_pass: Option<bool>,
}

/// Generate a seeded uniform series, build its visibility graph, and
/// compare the degree statistics against the exact law.
pub fn random_baseline(length: usize, seed: u64) -> BaselineSummary {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..length).map(|_| rng.gen::<f64>()).collect();
    let graph = build_hvg_values(&values);

    let mean_degree = graph.mean_degree();
    let too_short = length < MIN_LENGTH_FOR_CHECKS;
    let mean_degree_pass = (!too_short)
        .then(|| (mean_degree - MEAN_DEGREE_TARGET).abs() <= MEAN_DEGREE_TOLERANCE);

    let probes: Vec<DegreeProbe> = CHECKED_DEGREES
        .map(|k| {
            let hits = (0..graph.node_count())
                .filter(|&i| graph.degree(i) == k as usize)
                .count();
            let empirical = if length == 0 {
                0.0
            } else {
                hits as f64 / length as f64
            };
            let expected = expected_degree_probability(k);
            let abs_error = (empirical - expected).abs();
            DegreeProbe {
                degree: k,
                empirical,
                expected,
                abs_error,
                pass: (!too_short).then(|| abs_error <= DEGREE_PROBABILITY_TOLERANCE),
            }
        })
        .collect();

    let all_pass = (!too_short).then(|| {
        mean_degree_pass == Some(true) && probes.iter().all(|p| p.pass == Some(true))
    });

    BaselineSummary {
        length,
        seed,
        edge_count: graph.edge_count(),
        mean_degree,
        mean_degree_target: MEAN_DEGREE_TARGET,
        mean_degree_tolerance: MEAN_DEGREE_TOLERANCE,
        degree_probability_tolerance: DEGREE_PROBABILITY_TOLERANCE,
        too_short,
        mean_degree_pass,
        probes,
        all_pass,
    }
}
