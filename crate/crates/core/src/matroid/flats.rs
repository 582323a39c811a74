use std::collections::BTreeSet;

use super::bits::{self, ENUMERATION_LIMIT};
use super::Matroid;
use crate::error::{Error, Result};

/// Every flat of a small matroid together with its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatList {
    /// Sorted by rank, then by bitmask.
    masks: Vec<u64>,
    ranks: Vec<usize>,
}

impl FlatList {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        self.masks
            .iter()
            .zip(&self.ranks)
            .map(|(&m, &r)| (bits::members(m), r))
    }

    /// Number of flats of each rank, indexed by rank.
    pub fn counts_by_rank(&self) -> Vec<usize> {
        let top = self.ranks.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }
}

impl Matroid {
    /// All flats, obtained as the spans of every subset of the ground set.
    pub fn enumerate_flats(&self) -> Result<FlatList> {
        let n = self.len();
        if n > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut found = BTreeSet::new();
        for mask in 0..1u64 << n {
            let set = bits::members(mask);
            let closed = bits::mask_of(&self.span_unchecked(&set));
            found.insert((self.rank_unchecked(&set), closed));
        }
        let (ranks, masks) = found.into_iter().unzip();
        Ok(FlatList { masks, ranks })
    }
}
