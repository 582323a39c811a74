//! The phased threshold algorithm for k-fold unions.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::plan::{phase_bounds, sample_phase_sizes, PhasePlan};
use super::{check_order, improving};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::matroid::Matroid;
use crate::union::{covering_number, UnionOracle};

/// Per-phase sets, recorded when tracing is on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseTrace {
    /// 1-based phase index.
    pub phase: usize,
    pub r: usize,
    pub cap: usize,
    pub rate: f64,
    /// Number of arrivals processed in the phase (Z_ℓ).
    pub arrivals: usize,
    /// A_→ℓ, in arrival order.
    pub sample: Vec<usize>,
    /// A_ℓ, in arrival order.
    pub eligible: Vec<usize>,
    /// Members of A_ℓ that improve A_→ℓ w.r.t. the r-fold union.
    pub improving: Vec<usize>,
    /// ALG_ℓ, in acceptance order.
    pub accepted: Vec<usize>,
    pub covering_number: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhasedRun {
    /// Z_0, ..., Z_L.
    pub sizes: Vec<usize>,
    /// ALG_1, ..., ALG_L.
    pub phases: Vec<Vec<usize>>,
    pub trace: Option<Vec<PhaseTrace>>,
}

impl PhasedRun {
    /// ALG in acceptance order.
    pub fn accepted(&self) -> Vec<usize> {
        self.phases.concat()
    }
}

/// Replays the algorithm on `order`.
///
/// Improvement against A_→ℓ only depends on the sample, which is fixed for the
/// whole phase, so those answers are computed in one heaviest-first sweep; the
/// span test against ALG_ℓ is then applied in arrival order.
pub fn run_phased<R: Rng + ?Sized>(
    ground: &GroundSet,
    matroid: &Arc<Matroid>,
    k: usize,
    order: &[usize],
    rng: &mut R,
    plan: &PhasePlan,
    trace: bool,
) -> Result<PhasedRun> {
    let n = ground.len();
    if matroid.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: matroid.len(),
        });
    }
    if plan.n != n || plan.k != k {
        return Err(Error::InvalidParameter(format!(
            "plan built for n = {}, k = {} but instance has n = {n}, k = {k}",
            plan.n, plan.k
        )));
    }
    check_order(n, order)?;

    let sizes = sample_phase_sizes(plan.phases, n, rng);
    let bounds = phase_bounds(&sizes);
    let mut phases = Vec::with_capacity(plan.phases);
    let mut traces = trace.then(Vec::new);

    for l in 0..plan.phases {
        let (r, cap, rate) = (
            plan.capacities[l],
            plan.acceptance_caps[l],
            plan.subsample_rates[l],
        );
        let observed = &order[..bounds[l + 1]];
        let arrivals = &order[bounds[l + 1]..bounds[l + 2]];
        let sample: Vec<usize> = observed.iter().copied().filter(|_| rng.gen_bool(rate)).collect();
        let eligible: Vec<usize> = arrivals.iter().copied().filter(|_| rng.gen_bool(rate)).collect();

        let threshold = (r > 0).then(|| UnionOracle::copies(matroid.clone(), r)).transpose()?;
        let flags = improving(ground, threshold.as_ref(), &sample, &eligible);

        let mut accepted = Vec::new();
        if cap > 0 {
            let budget = UnionOracle::copies(matroid.clone(), cap)?;
            let mut cert = budget.empty_certificate();
            for (&i, &improves) in eligible.iter().zip(&flags) {
                if improves && cert.insert_unchecked(&budget, i) {
                    accepted.push(i);
                }
            }
        }

        if let Some(traces) = traces.as_mut() {
            let phi = covering_number(matroid, &accepted)?.value;
            if phi > cap {
                return Err(Error::Assertion(format!(
                    "phase {} selected a set with covering number {phi} above its cap {cap}",
                    l + 1
                )));
            }
            traces.push(PhaseTrace {
                phase: l + 1,
                r,
                cap,
                rate,
                arrivals: arrivals.len(),
                improving: eligible
                    .iter()
                    .zip(&flags)
                    .filter(|&(_, &f)| f)
                    .map(|(&i, _)| i)
                    .collect(),
                sample,
                eligible,
                accepted: accepted.clone(),
                covering_number: phi,
            });
        }
        phases.push(accepted);
    }

    Ok(PhasedRun {
        sizes,
        phases,
        trace: traces,
    })
}
