//! Baseline online rules.

use super::{check_order, improving};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::union::UnionOracle;

/// Classical single-choice rule: skip the first ⌊n/e⌋ arrivals, then take the
/// first arrival heavier than all of them.
pub fn run_dynkin(ground: &GroundSet, order: &[usize]) -> Result<Vec<usize>> {
    let n = ground.len();
    check_order(n, order)?;
    let window = (n as f64 / std::f64::consts::E).floor() as usize;
    let best = order[..window].iter().copied().min_by_key(|&e| ground.position(e));
    Ok(order[window..]
        .iter()
        .copied()
        .find(|&i| best.map_or(true, |b| ground.heavier(i, b)))
        .into_iter()
        .collect())
}

/// Default sampling fraction for the threshold rule: `k^(-1/3)`, at most 1/2.
pub fn default_threshold_eps(capacity: usize) -> f64 {
    (capacity.max(1) as f64).powf(-1.0 / 3.0).min(0.5)
}

/// Threshold rule for a `capacity`-uniform constraint.
///
/// Observes the first ⌈εn⌉ arrivals, takes the ⌈ε·capacity⌉-th heaviest of
/// them as the threshold and accepts every later arrival above it until the
/// capacity is used. There is no threshold when the window holds fewer
/// elements than that, or when the capacity already covers all `n` elements.
pub fn run_naive_threshold(
    ground: &GroundSet,
    capacity: usize,
    eps: f64,
    order: &[usize],
) -> Result<Vec<usize>> {
    let n = ground.len();
    check_order(n, order)?;
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!("eps must lie in [0, 1), got {eps}")));
    }
    let window = ((eps * n as f64).ceil() as usize).min(n);
    let rank = (eps * capacity as f64).ceil() as usize;
    let threshold = if capacity >= n || rank == 0 || rank > window {
        None
    } else {
        let mut seen: Vec<usize> = order[..window].to_vec();
        seen.select_nth_unstable_by_key(rank - 1, |&e| ground.position(e));
        Some(seen[rank - 1])
    };
    Ok(order[window..]
        .iter()
        .copied()
        .filter(|&i| threshold.map_or(true, |t| ground.heavier(i, t)))
        .take(capacity)
        .collect())
}

/// Accepts an arrival whenever the selection stays independent in `union`.
pub fn run_accept_all(union: &UnionOracle, order: &[usize]) -> Result<Vec<usize>> {
    check_order(union.ground_len(), order)?;
    let mut cert = union.empty_certificate();
    Ok(order
        .iter()
        .copied()
        .filter(|&i| cert.insert_unchecked(union, i))
        .collect())
}

/// Observes the first ⌊n/2⌋ arrivals, then accepts an arrival if it improves
/// the observed set w.r.t. `union` and keeps the selection independent in it.
pub fn run_greedy(ground: &GroundSet, union: &UnionOracle, order: &[usize]) -> Result<Vec<usize>> {
    let n = ground.len();
    check_order(n, order)?;
    let (observed, rest) = order.split_at(n / 2);
    let flags = improving(ground, Some(union), observed, rest);
    let mut cert = union.empty_certificate();
    Ok(rest
        .iter()
        .zip(flags)
        .filter(|&(&i, f)| f && cert.insert_unchecked(union, i))
        .map(|(&i, _)| i)
        .collect())
}
