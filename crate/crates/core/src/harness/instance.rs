//! Instance files and generators.
//!
//! ```json
//! {
//!   "matroid": { "kind": "complete_graph", "vertices": 6 },
//!   "weights": { "generator": "uniform", "seed": 3 },
//!   "k": 3,
//!   "seed": 7
//! }
//! ```
//!
//! Matroid kinds and their fields:
//!
//! | kind             | fields                                          |
//! |------------------|-------------------------------------------------|
//! | `uniform`        | `n`, `cap`                                      |
//! | `partition`      | `sizes` (block sizes), `caps`                   |
//! | `graphic`        | `vertices`, `edges` (list of `[u, v]`)          |
//! | `complete_graph` | `vertices`                                      |
//! | `random_graph`   | `vertices`, `p_edge`                            |
//! | `linear`         | `prime`, `columns` (list of integer vectors)    |
//! | `random_linear`  | `prime`, `rows`, `n`                            |
//! | `explicit`       | `n`, `sets` (every independent set)             |
//! | `random_explicit`| `prime`, `rows`, `n` (table of a random linear matroid, n <= 16) |
//!
//! `weights` is either an explicit list or `{"generator": "uniform" | "exponential", "seed": s}`;
//! the seed defaults to the instance seed, and the instance seed to 0.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::matroid::{bits, Matroid};
use crate::rng::{self, Stream};
use crate::secretary::Instance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform { n: usize, cap: usize },
    Partition { sizes: Vec<usize>, caps: Vec<usize> },
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    CompleteGraph { vertices: usize },
    RandomGraph { vertices: usize, p_edge: f64 },
    Linear { prime: u32, columns: Vec<Vec<i64>> },
    RandomLinear { prime: u32, rows: usize, n: usize },
    Explicit { n: usize, sets: Vec<Vec<usize>> },
    RandomExplicit { prime: u32, rows: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightGenerator {
    /// I.i.d. uniform on (0, 1], redrawing exact duplicates.
    Uniform,
    /// Distinct powers of a common base, randomly assigned: every weight
    /// dominates the sum of all lighter ones (base 2) or nearly so.
    Exponential,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    List(Vec<f64>),
    Generated {
        generator: WeightGenerator,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

impl Default for WeightSpec {
    fn default() -> Self {
        Self::Generated {
            generator: WeightGenerator::Uniform,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub matroid: MatroidSpec,
    #[serde(default)]
    pub weights: WeightSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

const MATROID_TAG: u64 = 0x6d61_7472;
const WEIGHT_TAG: u64 = 0x7765_6967;

impl InstanceSpec {
    /// Ground set and matroid; deterministic in the spec. Matroids with at
    /// most 8 elements must pass the axiom check.
    pub fn build(&self) -> Result<(GroundSet, Arc<Matroid>)> {
        let (ground, matroid) = self.build_unchecked()?;
        if matroid.len() <= bits::AXIOM_LIMIT {
            let report = matroid.check_axioms()?;
            if let Some(v) = report.violation {
                return Err(Error::InvalidMatroid(format!("axiom check failed: {v:?}")));
            }
        }
        Ok((ground, matroid))
    }

    /// [`InstanceSpec::build`] without the axiom check.
    pub fn build_unchecked(&self) -> Result<(GroundSet, Arc<Matroid>)> {
        let mut rng = rng::stream(rng::derive(self.seed, MATROID_TAG), 0);
        let matroid = self.matroid.build(&mut rng)?;
        let ground = match &self.weights {
            WeightSpec::List(w) => {
                if w.len() != matroid.len() {
                    return Err(Error::SizeMismatch {
                        expected: matroid.len(),
                        found: w.len(),
                    });
                }
                GroundSet::new(w.clone())?
            }
            WeightSpec::Generated { generator, seed } => {
                let seed = seed.unwrap_or(self.seed);
                let mut rng = rng::stream(rng::derive(seed, WEIGHT_TAG), 0);
                generate_weights(*generator, matroid.len(), &mut rng)?
            }
        };
        Ok((ground, Arc::new(matroid)))
    }

    /// Instance with fold `k` (or the spec's own `k`).
    pub fn instance(&self, k: Option<usize>) -> Result<Instance> {
        let k = k
            .or(self.k)
            .ok_or_else(|| Error::InvalidParameter("no k given in the spec or on the command line".into()))?;
        let (ground, matroid) = self.build()?;
        Instance::new(ground, matroid, k)
    }
}

impl MatroidSpec {
    pub fn build(&self, rng: &mut Stream) -> Result<Matroid> {
        match self {
            Self::Uniform { n, cap } => Matroid::uniform(*n, *cap),
            Self::Partition { sizes, caps } => Matroid::partition_from_sizes(sizes, caps.clone()),
            Self::Graphic { vertices, edges } => Matroid::graphic(*vertices, edges.clone()),
            Self::CompleteGraph { vertices } => {
                if *vertices < 2 {
                    return Err(Error::InvalidMatroid("a complete graph needs two vertices".into()));
                }
                Ok(Matroid::complete_graph(*vertices))
            }
            Self::RandomGraph { vertices, p_edge } => {
                if !(0.0..=1.0).contains(p_edge) {
                    return Err(Error::InvalidParameter(format!("p_edge must lie in [0, 1], got {p_edge}")));
                }
                let mut edges = Vec::new();
                for u in 0..*vertices {
                    for v in u + 1..*vertices {
                        if rng.gen_bool(*p_edge) {
                            edges.push((u, v));
                        }
                    }
                }
                Matroid::graphic(*vertices, edges)
            }
            Self::Linear { prime, columns } => Matroid::linear(*prime, columns.clone()),
            Self::RandomLinear { prime, rows, n } => random_linear(*prime, *rows, *n, rng),
            Self::Explicit { n, sets } => Matroid::explicit(*n, sets),
            Self::RandomExplicit { prime, rows, n } => random_linear(*prime, *rows, *n, rng)?.to_explicit(),
        }
    }
}

/// Random columns over GF(prime) with zero columns (loops) redrawn.
fn random_linear(prime: u32, rows: usize, n: usize, rng: &mut Stream) -> Result<Matroid> {
    if rows == 0 && n > 0 {
        return Err(Error::InvalidMatroid("zero rows make every element a loop".into()));
    }
    if !(2..=257).contains(&prime) {
        return Err(Error::InvalidMatroid(format!("prime {prime} outside 2..=257")));
    }
    let columns = (0..n)
        .map(|_| loop {
            let c: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..prime as i64)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        })
        .collect();
    Matroid::linear(prime, columns)
}

/// Upper bound on redraws when rejecting tied weights.
pub const MAX_WEIGHT_DRAWS_PER_ELEMENT: usize = 64;

pub fn generate_weights(generator: WeightGenerator, n: usize, rng: &mut Stream) -> Result<GroundSet> {
    let weights = match generator {
        WeightGenerator::Uniform => {
            let limit = MAX_WEIGHT_DRAWS_PER_ELEMENT * n.max(1);
            let mut seen = HashSet::with_capacity(n);
            let mut weights = Vec::with_capacity(n);
            let mut draws = 0;
            while weights.len() < n {
                draws += 1;
                if draws > limit {
                    return Err(Error::TiesExhausted(limit));
                }
                // gen() is uniform on [0, 1); reflect onto (0, 1].
                let w: f64 = 1.0 - rng.gen::<f64>();
                if seen.insert(w.to_bits()) {
                    weights.push(w);
                }
            }
            weights
        }
        WeightGenerator::Exponential => exponential_weights(n, rng),
    };
    GroundSet::new(weights)
}

/// Weights `b^j` for `j = 0..n` in random order, with `b = 2^min(1, 1000/n)`
/// so the largest weight stays far below `f64::MAX`.
pub fn exponential_weights(n: usize, rng: &mut Stream) -> Vec<f64> {
    let step = (1000.0 / n.max(1) as f64).min(1.0);
    let perm = rng::permutation(n, rng);
    perm.iter().map(|&j| (j as f64 * step).exp2()).collect()
}
