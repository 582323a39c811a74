//! Instances, offline optimum, trial orchestration and estimators.

pub mod hard;
pub mod instance;
pub mod lemmas;
pub mod stats;
pub mod trials;

use std::sync::Arc;

use crate::error::Result;
use crate::ground::GroundSet;
use crate::matroid::Matroid;
use crate::union::{PartitionCertificate, UnionOracle};

pub use hard::{generate_hard_union, HardUnion};
pub use instance::{InstanceSpec, MatroidSpec, WeightGenerator, WeightSpec};
pub use lemmas::{estimate_lemmas, exact_lemma3, ExactLemma, LemmaEstimate, Tail};
pub use stats::{clopper_pearson, Summary};
pub use trials::{run_trial, run_trials, trial_order, Aggregate, TrialOutcome, TrialsOutput};

/// Max-weight independent set of the whole ground set in the k-fold union,
/// with a certificate and its weight (summed heaviest first).
pub fn offline_opt(
    ground: &GroundSet,
    matroid: &Arc<Matroid>,
    k: usize,
) -> Result<(PartitionCertificate, f64)> {
    let union = UnionOracle::copies(matroid.clone(), k)?;
    let all: Vec<usize> = ground.order().to_vec();
    let cert = union.max_weight_basis(ground, &all)?;
    let mut set = cert.covered();
    ground.sort_heaviest_first(&mut set);
    let weight = ground.total(&set);
    Ok((cert, weight))
}
