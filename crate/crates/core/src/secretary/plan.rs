//! Phase schedule: ε(x), the phase count L, capacities r_ℓ and the bin
//! distribution for phase lengths.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the constant `C` in `ε(x) = C·sqrt(log2(n) / x)` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Constants {
    /// Search `C ∈ [10, 20]` so that `L = log2(1/ε(k)) − 2` is a positive integer.
    Proof,
    /// Use the given `C > 0` and round `L` to the nearest positive integer.
    Experimental(f64),
}

impl Constants {
    pub const PROOF_RANGE: (f64, f64) = (10.0, 20.0);

    /// Parses `proof` or `experimental:<C>`.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "proof" {
            return Ok(Self::Proof);
        }
        let c = s
            .strip_prefix("experimental:")
            .and_then(|c| c.parse::<f64>().ok())
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "constants must be `proof` or `experimental:<C>`, got `{s}`"
                ))
            })?;
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter(format!("C must be positive, got {c}")));
        }
        Ok(Self::Experimental(c))
    }
}

impl std::fmt::Display for Constants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Proof => write!(f, "proof"),
            Self::Experimental(c) => write!(f, "experimental:{c}"),
        }
    }
}

/// Largest phase count accepted; phase sizes are drawn from `L`-bit integers.
pub const MAX_PHASES: usize = 62;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhasePlan {
    pub n: usize,
    pub k: usize,
    pub c: f64,
    /// Size whose logarithm enters ε: `n`, or the number of parallel classes.
    pub log_size: usize,
    /// L.
    pub phases: usize,
    pub eps_k: f64,
    /// r_ℓ for ℓ = 1..=L.
    pub capacities: Vec<usize>,
    /// ε(r_ℓ); infinite when r_ℓ = 0.
    pub eps: Vec<f64>,
    /// ⌊(1 + ε(r_ℓ)) r_ℓ⌋, the number of copies bounding each phase's selection.
    pub acceptance_caps: Vec<usize>,
    /// Probability of keeping an element in A_→ℓ and A_ℓ.
    pub subsample_rates: Vec<f64>,
    /// Σ_ℓ (1 + ε(r_ℓ)) r_ℓ, always below k.
    pub feasibility_sum: f64,
    pub experimental: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PlanOutcome {
    Plan(PhasePlan),
    /// No valid schedule; the caller runs a baseline instead.
    Fallback(String),
}

fn log2_size(size: usize) -> f64 {
    (size.max(2) as f64).log2()
}

pub fn epsilon(c: f64, log_size: usize, x: f64) -> f64 {
    if x <= 0.0 {
        return f64::INFINITY;
    }
    c * (log2_size(log_size) / x).sqrt()
}

/// Builds the schedule for `n` arrivals and fold `k`.
///
/// `log_size` replaces `n` inside the logarithm (pass the parallel class count
/// for the refined bound); it defaults to `n`.
pub fn plan_phases(
    n: usize,
    k: usize,
    constants: Constants,
    log_size: Option<usize>,
) -> Result<PlanOutcome> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds n = {n}; accept every feasible element instead"
        )));
    }
    let size = log_size.unwrap_or(n);
    let root = (k as f64 / log2_size(size)).sqrt();
    match constants {
        Constants::Proof => {
            // ε(k) = 2^-(L+2) forces C = 2^-(L+2)·sqrt(k / log2 n); C halves as L grows.
            let (lo, hi) = Constants::PROOF_RANGE;
            let found = (1..=MAX_PHASES)
                .map(|l| (l, root / 2f64.powi(l as i32 + 2)))
                .take_while(|&(_, c)| c >= lo)
                .find(|&(_, c)| c <= hi);
            match found {
                Some((l, c)) => PhasePlan::build(n, k, c, size, l, false),
                None => Ok(PlanOutcome::Fallback(format!(
                    "no positive integer L has C in [{lo}, {hi}] for k = {k}, log2 size = {:.3}",
                    log2_size(size)
                ))),
            }
        }
        Constants::Experimental(c) => {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidParameter(format!("C must be positive, got {c}")));
            }
            let raw = (1.0 / epsilon(c, size, k as f64)).log2() - 2.0;
            let l = raw.round().max(1.0);
            if l > MAX_PHASES as f64 {
                return Ok(PlanOutcome::Fallback(format!("L = {l} exceeds {MAX_PHASES}")));
            }
            PhasePlan::build(n, k, c, size, l as usize, true)
        }
    }
}

impl PhasePlan {
    /// Schedule for an explicit `C` with `L` computed exactly, without the
    /// `k <= n` guard. Fails unless `log2(1/ε(k)) − 2` is a positive integer.
    pub fn with_constant(n: usize, k: usize, c: f64, log_size: Option<usize>) -> Result<PlanOutcome> {
        let size = log_size.unwrap_or(n);
        let raw = (1.0 / epsilon(c, size, k as f64)).log2() - 2.0;
        let l = raw.round();
        if (raw - l).abs() > 1e-9 || l < 1.0 || l > MAX_PHASES as f64 {
            return Err(Error::InvalidParameter(format!(
                "log2(1/ε(k)) − 2 = {raw} is not a positive integer"
            )));
        }
        Self::build(n, k, c, size, l as usize, false)
    }

    fn build(
        n: usize,
        k: usize,
        c: f64,
        log_size: usize,
        phases: usize,
        experimental: bool,
    ) -> Result<PlanOutcome> {
        let capacities: Vec<usize> = (1..=phases)
            .map(|l| {
                let shift = (phases + 1 - l) as u32;
                k.checked_shr(shift).unwrap_or(0)
            })
            .collect();
        let eps: Vec<f64> = capacities
            .iter()
            .map(|&r| epsilon(c, log_size, r as f64))
            .collect();
        let mut feasibility_sum = 0.0;
        let mut acceptance_caps = Vec::with_capacity(phases);
        for (&r, &e) in capacities.iter().zip(&eps) {
            if r == 0 {
                acceptance_caps.push(0);
                continue;
            }
            let bound = (1.0 + e) * r as f64;
            feasibility_sum += bound;
            acceptance_caps.push(bound.floor() as usize);
        }
        if feasibility_sum >= k as f64 {
            return Ok(PlanOutcome::Fallback(format!(
                "feasibility sum {feasibility_sum:.3} is not below k = {k} (C = {c}, L = {phases})"
            )));
        }
        debug_assert!(acceptance_caps.iter().sum::<usize>() < k);
        let subsample_rates = eps.iter().map(|&e| (1.0 - e).max(0.0)).collect();
        Ok(PlanOutcome::Plan(Self {
            n,
            k,
            c,
            log_size,
            phases,
            eps_k: epsilon(c, log_size, k as f64),
            capacities,
            eps,
            acceptance_caps,
            subsample_rates,
            feasibility_sum,
            experimental,
        }))
    }
}

/// Probability that a ball lands in bin ℓ: `2^(max(1, ℓ) − L − 1)`.
pub fn bin_probabilities(phases: usize) -> Vec<f64> {
    (0..=phases)
        .map(|l| 2f64.powi(l.max(1) as i32 - phases as i32 - 1))
        .collect()
}

/// Draws (Z_0, ..., Z_L) by throwing `n` balls into the bins.
///
/// A uniform `L`-bit integer `u` has bit length `b` with probability
/// `2^(b−1−L)` for `b >= 1` and is zero with probability `2^−L`, which is
/// exactly the bin distribution.
pub fn sample_phase_sizes<R: Rng + ?Sized>(phases: usize, n: usize, rng: &mut R) -> Vec<usize> {
    assert!((1..=MAX_PHASES).contains(&phases));
    let mut z = vec![0; phases + 1];
    for _ in 0..n {
        let u: u64 = rng.gen_range(0..1u64 << phases);
        z[(u64::BITS - u.leading_zeros()) as usize] += 1;
    }
    z
}

/// Prefix sums of the phase sizes: phase ℓ holds arrivals `bounds[ℓ]..bounds[ℓ + 1]`.
pub fn phase_bounds(sizes: &[usize]) -> Vec<usize> {
    let mut bounds = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    bounds.push(0);
    for &z in sizes {
        acc += z;
        bounds.push(acc);
    }
    bounds
}
