//! Paired Monte Carlo trials.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::stats::Summary;
use crate::error::Result;
use crate::rng;
use crate::secretary::{Algorithm, Instance, Mode, RunOptions, TrialRecord};

/// Per-trial outcome kept for aggregation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub algorithm: Algorithm,
    pub mode: Mode,
    pub ratio: f64,
    pub accepted: usize,
    pub covering_number: usize,
    /// Whether the heaviest element was accepted.
    pub took_best: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub algorithm: Algorithm,
    /// Mode of the runs, or `mixed`.
    pub mode: String,
    pub trials: usize,
    pub mean_ratio: f64,
    pub se: f64,
    pub min: f64,
    pub max: f64,
    pub phi_max: usize,
    /// Fraction of trials that accepted the heaviest element.
    pub best_rate: f64,
    /// Elapsed seconds; left out of serialised output so files stay reproducible.
    #[serde(skip)]
    pub wall_clock: f64,
}

#[derive(Debug, Clone)]
pub struct TrialsOutput {
    pub aggregates: Vec<Aggregate>,
    /// Trial-major: all algorithms of trial 0, then trial 1, ...
    pub outcomes: Vec<TrialOutcome>,
}

/// Arrival order for trial `t`.
pub fn trial_order(n: usize, seed: u64, t: u64) -> Vec<usize> {
    rng::permutation(n, &mut rng::stream(seed, t))
}

/// One trial: every algorithm sees the same arrival order, and each algorithm
/// draws its own coins from a stream keyed by (seed, algorithm, trial).
pub fn run_trial(
    instance: &Instance,
    algorithms: &[Algorithm],
    seed: u64,
    t: u64,
    options: &RunOptions,
) -> Result<Vec<TrialRecord>> {
    let order = trial_order(instance.n(), seed, t);
    algorithms
        .iter()
        .map(|&a| {
            let mut coins = rng::stream(rng::derive(seed, a.tag()), t);
            instance.run(a, &order, &mut coins, options)
        })
        .collect()
}

/// Runs `trials` paired trials in parallel on the current rayon pool.
/// Results are gathered in trial order, so the output does not depend on the
/// number of threads.
pub fn run_trials(
    instance: &Instance,
    algorithms: &[Algorithm],
    trials: usize,
    seed: u64,
    options: &RunOptions,
) -> Result<TrialsOutput> {
    if trials == 0 {
        return Err(crate::Error::InvalidParameter("trials must be at least 1".into()));
    }
    let start = Instant::now();
    // Fill the cached optimum before fanning out.
    let best = instance.opt().set.first().copied();
    let per_trial: Vec<Result<Vec<TrialOutcome>>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let records = run_trial(instance, algorithms, seed, t, options)?;
            Ok(records
                .into_iter()
                .map(|r| TrialOutcome {
                    trial: t,
                    algorithm: r.algorithm,
                    mode: r.mode,
                    ratio: r.ratio(),
                    accepted: r.accepted.len(),
                    covering_number: r.covering_number,
                    took_best: best.is_some_and(|b| r.accepted.contains(&b)),
                })
                .collect())
        })
        .collect();
    let mut outcomes = Vec::with_capacity(trials * algorithms.len());
    for o in per_trial {
        outcomes.extend(o?);
    }
    let elapsed = start.elapsed().as_secs_f64();
    let aggregates = algorithms
        .iter()
        .enumerate()
        .map(|(j, &algorithm)| {
            let mine: Vec<&TrialOutcome> = outcomes.iter().skip(j).step_by(algorithms.len()).collect();
            let ratios: Vec<f64> = mine.iter().map(|o| o.ratio).collect();
            let s = Summary::of(&ratios);
            let first = mine[0].mode;
            let mode = if mine.iter().all(|o| o.mode == first) {
                first.name().to_string()
            } else {
                "mixed".to_string()
            };
            Aggregate {
                algorithm,
                mode,
                trials,
                mean_ratio: s.mean,
                se: s.se,
                min: s.min,
                max: s.max,
                phi_max: mine.iter().map(|o| o.covering_number).max().unwrap_or(0),
                best_rate: mine.iter().filter(|o| o.took_best).count() as f64 / trials as f64,
                wall_clock: elapsed,
            }
        })
        .collect();
    Ok(TrialsOutput {
        aggregates,
        outcomes,
    })
}
