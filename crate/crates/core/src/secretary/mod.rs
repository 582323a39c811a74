//! Online selection: the phased algorithm, baselines and per-trial records.

pub mod algorithm;
pub mod baselines;
pub mod plan;

use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::harness::offline_opt;
use crate::matroid::Matroid;
use crate::union::{covering_number, UnionOracle};

pub use algorithm::{run_phased, PhaseTrace, PhasedRun};
pub use baselines::{
    default_threshold_eps, run_accept_all, run_dynkin, run_greedy, run_naive_threshold,
};
pub use plan::{
    bin_probabilities, epsilon, plan_phases, sample_phase_sizes, Constants, PhasePlan, PlanOutcome,
};

pub(crate) fn check_order(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::NotPermutation(n));
    }
    let mut seen = vec![false; n];
    for &e in order {
        if e >= n || std::mem::replace(&mut seen[e], true) {
            return Err(Error::NotPermutation(n));
        }
    }
    Ok(())
}

/// For each candidate, whether it lies outside the span in `union` of the
/// sample elements heavier than it. `None` stands for the 0-fold
/// union, whose span is everything.
pub(crate) fn improving(
    ground: &GroundSet,
    union: Option<&UnionOracle>,
    sample: &[usize],
    candidates: &[usize],
) -> Vec<bool> {
    let Some(union) = union else {
        return vec![false; candidates.len()];
    };
    const EMPTY: u32 = u32::MAX;
    const SAMPLE: u32 = u32::MAX - 1;
    let mut slot = vec![EMPTY; ground.len()];
    for &e in sample {
        slot[ground.position(e)] = SAMPLE;
    }
    for (c, &e) in candidates.iter().enumerate() {
        slot[ground.position(e)] = c as u32;
    }
    let mut flags = vec![false; candidates.len()];
    let mut cert = union.empty_certificate();
    for (pos, &s) in slot.iter().enumerate() {
        match s {
            EMPTY => {}
            SAMPLE => {
                cert.insert_unchecked(union, ground.order()[pos]);
            }
            c => flags[c as usize] = cert.can_insert(union, ground.order()[pos]),
        }
    }
    flags
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// The phased algorithm; falls back to `Greedy` when no schedule exists
    /// and to `AcceptAll` when `k >= n`.
    Phased,
    Dynkin,
    /// Threshold rule; uniform matroids only.
    Threshold,
    Greedy,
    AcceptAll,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Self::Phased,
        Self::Dynkin,
        Self::Threshold,
        Self::Greedy,
        Self::AcceptAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Phased => "phased",
            Self::Dynkin => "dynkin",
            Self::Threshold => "threshold",
            Self::Greedy => "greedy",
            Self::AcceptAll => "accept-all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm `{s}`")))
    }

    /// Stable tag used to derive the algorithm's random stream.
    pub fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// What actually ran for a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Phased,
    Fallback,
    AcceptAll,
    Baseline,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Self::Phased => "phased",
            Self::Fallback => "fallback",
            Self::AcceptAll => "accept-all",
            Self::Baseline => "baseline",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunOptions {
    pub constants: Constants,
    /// Use the number of parallel classes instead of n inside ε.
    pub nsim: bool,
    pub trace: bool,
    /// Sampling fraction for the threshold rule; see [`default_threshold_eps`].
    pub threshold_eps: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            constants: Constants::Proof,
            nsim: false,
            trace: false,
            threshold_eps: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub algorithm: Algorithm,
    pub mode: Mode,
    pub order: Vec<usize>,
    /// ALG in acceptance order.
    pub accepted: Vec<usize>,
    /// ALG_ℓ per phase; a single part for the baselines.
    pub phases: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<PhaseTrace>>,
    pub weight: f64,
    pub opt_weight: f64,
    pub covering_number: usize,
}

impl TrialRecord {
    pub fn ratio(&self) -> f64 {
        self.weight / self.opt_weight
    }
}

/// Offline optimum of an instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Opt {
    /// Heaviest first.
    pub set: Vec<usize>,
    pub weight: f64,
}

/// A weighted matroid and a fold `k`, with the offline optimum of the k-fold
/// union computed once on first use.
#[derive(Debug)]
pub struct Instance {
    ground: GroundSet,
    matroid: Arc<Matroid>,
    k: usize,
    opt: OnceLock<Opt>,
    classes: OnceLock<usize>,
}

impl Instance {
    pub fn new(ground: GroundSet, matroid: Arc<Matroid>, k: usize) -> Result<Self> {
        if ground.len() != matroid.len() {
            return Err(Error::SizeMismatch {
                expected: matroid.len(),
                found: ground.len(),
            });
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(Self {
            ground,
            matroid,
            k,
            opt: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    /// Same ground set and matroid with a different fold; the cached optimum is not shared.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.ground.clone(), self.matroid.clone(), k)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn matroid(&self) -> &Arc<Matroid> {
        &self.matroid
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn opt(&self) -> &Opt {
        self.opt.get_or_init(|| {
            let (cert, weight) = offline_opt(&self.ground, &self.matroid, self.k)
                .expect("instance invariants make the optimum well defined");
            let mut set = cert.covered();
            self.ground.sort_heaviest_first(&mut set);
            Opt { set, weight }
        })
    }

    pub fn parallel_classes(&self) -> usize {
        *self.classes.get_or_init(|| self.matroid.parallel_class_count())
    }

    /// Schedule for the phased algorithm; `None` when `k >= n`.
    pub fn plan(&self, options: &RunOptions) -> Result<Option<PlanOutcome>> {
        if self.k >= self.n() {
            return Ok(None);
        }
        let size = options.nsim.then(|| self.parallel_classes());
        plan_phases(self.n(), self.k, options.constants, size).map(Some)
    }

    fn fold(&self) -> Result<UnionOracle> {
        UnionOracle::copies(self.matroid.clone(), self.k)
    }

    /// Runs `algorithm` on one arrival order.
    pub fn run<R: Rng + ?Sized>(
        &self,
        algorithm: Algorithm,
        order: &[usize],
        rng: &mut R,
        options: &RunOptions,
    ) -> Result<TrialRecord> {
        check_order(self.n(), order)?;
        let single = |sel: Vec<usize>| vec![sel];
        let (mode, phases, trace) = match algorithm {
            Algorithm::Phased => match self.plan(options)? {
                None => (Mode::AcceptAll, single(run_accept_all(&self.fold()?, order)?), None),
                Some(PlanOutcome::Fallback(_)) => (
                    Mode::Fallback,
                    single(run_greedy(&self.ground, &self.fold()?, order)?),
                    None,
                ),
                Some(PlanOutcome::Plan(plan)) => {
                    let run = run_phased(
                        &self.ground,
                        &self.matroid,
                        self.k,
                        order,
                        rng,
                        &plan,
                        options.trace,
                    )?;
                    (Mode::Phased, run.phases, run.trace)
                }
            },
            Algorithm::Dynkin => (Mode::Baseline, single(run_dynkin(&self.ground, order)?), None),
            Algorithm::Threshold => {
                let cap = self.matroid.uniform_cap().ok_or_else(|| {
                    Error::Precondition("the threshold rule needs a uniform matroid".into())
                })?;
                let capacity = (cap * self.k).min(self.n());
                let eps = options
                    .threshold_eps
                    .unwrap_or_else(|| default_threshold_eps(capacity));
                (
                    Mode::Baseline,
                    single(run_naive_threshold(&self.ground, capacity, eps, order)?),
                    None,
                )
            }
            Algorithm::Greedy => (
                Mode::Baseline,
                single(run_greedy(&self.ground, &self.fold()?, order)?),
                None,
            ),
            Algorithm::AcceptAll => (Mode::Baseline, single(run_accept_all(&self.fold()?, order)?), None),
        };
        self.record(algorithm, mode, order, phases, trace)
    }

    fn record(
        &self,
        algorithm: Algorithm,
        mode: Mode,
        order: &[usize],
        phases: Vec<Vec<usize>>,
        trace: Option<Vec<PhaseTrace>>,
    ) -> Result<TrialRecord> {
        let accepted = phases.concat();
        let covering = covering_number(&self.matroid, &accepted)?.value;
        if covering > self.k {
            return Err(Error::Assertion(format!(
                "{algorithm} selected a set with covering number {covering} > k = {}",
                self.k
            )));
        }
        Ok(TrialRecord {
            algorithm,
            mode,
            order: order.to_vec(),
            weight: self.ground.total(&accepted),
            opt_weight: self.opt().weight,
            accepted,
            phases,
            trace,
            covering_number: covering,
        })
    }
}
