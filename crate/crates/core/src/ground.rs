use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Elements `0..n` with strictly positive weights.
///
/// All weight comparisons go through [`GroundSet::heavier`], which breaks exact
/// ties by preferring the lower label. Every algorithm in the crate therefore
/// sees a strict total order even when user-supplied weights collide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct GroundSet {
    weights: Vec<f64>,
    /// Elements from heaviest to lightest.
    order: Vec<usize>,
    /// `position[e]` is the index of `e` in `order`.
    position: Vec<usize>,
}

impl GroundSet {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        for (element, &weight) in weights.iter().enumerate() {
            if !weight.is_finite() || weight <= 0.0 {
                return Err(Error::InvalidWeight { element, weight });
            }
        }
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
        let mut position = vec![0; weights.len()];
        for (pos, &e) in order.iter().enumerate() {
            position[e] = pos;
        }
        Ok(Self {
            weights,
            order,
            position,
        })
    }

    /// Ground set whose weights decrease with the label: `w(0) > w(1) > ...`.
    pub fn descending(n: usize) -> Self {
        Self::new((0..n).map(|i| (n - i) as f64).collect()).expect("positive weights")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Elements sorted from heaviest to lightest.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Rank of `e` in the heaviest-first order (0 is the heaviest).
    pub fn position(&self, e: usize) -> usize {
        self.position[e]
    }

    pub fn heavier(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    pub fn has_ties(&self) -> bool {
        self.order
            .windows(2)
            .any(|w| self.weights[w[0]] == self.weights[w[1]])
    }

    /// Total weight of `set`; does not depend on the order of `set`.
    pub fn total(&self, set: &[usize]) -> f64 {
        let mut sorted = set.to_vec();
        self.sort_heaviest_first(&mut sorted);
        pairwise_sum_by(&sorted, |&e| self.weights[e])
    }

    /// Sorts `set` heaviest first.
    pub fn sort_heaviest_first(&self, set: &mut [usize]) {
        set.sort_unstable_by_key(|&e| self.position[e]);
    }

    /// Checks that `set` only names elements of this ground set, each once.
    pub fn check_set(&self, set: &[usize]) -> Result<()> {
        check_set(self.len(), set)
    }
}

impl TryFrom<Vec<f64>> for GroundSet {
    type Error = Error;

    fn try_from(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights)
    }
}

impl From<GroundSet> for Vec<f64> {
    fn from(ground: GroundSet) -> Self {
        ground.weights
    }
}

pub(crate) fn check_set(n: usize, set: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    for &e in set {
        if e >= n {
            return Err(Error::OutOfRange { element: e, n });
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::DuplicateElement(e));
        }
    }
    Ok(())
}

pub(crate) fn check_element(n: usize, e: usize) -> Result<()> {
    if e >= n {
        Err(Error::OutOfRange { element: e, n })
    } else {
        Ok(())
    }
}

/// Pairwise (cascade) summation; the result depends only on the input order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    pairwise_sum_by(values, |&v| v)
}

pub(crate) fn pairwise_sum_by<T>(items: &[T], f: impl Fn(&T) -> f64 + Copy) -> f64 {
    const BLOCK: usize = 32;
    if items.len() <= BLOCK {
        return items.iter().map(f).fold(0.0, |a, b| a + b);
    }
    let (lo, hi) = items.split_at(items.len() / 2);
    pairwise_sum_by(lo, f) + pairwise_sum_by(hi, f)
}
