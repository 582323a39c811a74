//! The block construction `M ∨ U^k`: a partition matroid with one pick per
//! block, plus k free picks from the 1-uniform matroid.

use std::sync::Arc;

use super::instance::exponential_weights;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::matroid::Matroid;
use crate::rng;
use crate::union::UnionOracle;

#[derive(Debug, Clone)]
pub struct HardUnion {
    pub ground: GroundSet,
    pub union: UnionOracle,
    pub blocks: usize,
    pub block_size: usize,
}

/// Builds `M ∨ U^k` with `2k/eps` blocks of `m` elements each.
///
/// The weights are a stand-in (distinct powers of a common base in random
/// order, seeded by `seed`); they are not the hard distribution behind the
/// impossibility result, which is only known to exist.
pub fn generate_hard_union(k: usize, eps: f64, m: usize, seed: u64) -> Result<HardUnion> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidParameter("k and m must be positive".into()));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let raw = 2.0 * k as f64 / eps;
    let blocks = raw.round();
    if (raw - blocks).abs() > 1e-9 * raw.max(1.0) || blocks < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "2k/eps = {raw} is not a positive integer"
        )));
    }
    let blocks = blocks as usize;
    let n = blocks
        .checked_mul(m)
        .ok_or_else(|| Error::InvalidParameter("block arithmetic overflows".into()))?;
    let partition = Arc::new(Matroid::partition_from_sizes(&vec![m; blocks], vec![1; blocks])?);
    let free = Arc::new(Matroid::uniform(n, 1)?);
    let mut members = vec![partition];
    members.extend(std::iter::repeat(free).take(k));
    let union = UnionOracle::new(members)?;
    let ground = GroundSet::new(exponential_weights(n, &mut rng::stream(seed, 0)))?;
    Ok(HardUnion {
        ground,
        union,
        blocks,
        block_size: m,
    })
}
