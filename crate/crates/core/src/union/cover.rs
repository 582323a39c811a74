//! Covering numbers and their exhaustive characterisations.

use std::sync::Arc;

use serde::Serialize;

use super::{PartitionCertificate, UnionOracle};
use crate::error::{Error, Result};
use crate::ground::check_set;
use crate::matroid::bits::{self, ENUMERATION_LIMIT};
use crate::matroid::Matroid;

/// Minimum number of independent sets partitioning a set, with a witness partition.
#[derive(Debug, Clone)]
pub struct Cover {
    pub value: usize,
    pub certificate: PartitionCertificate,
    /// `value` copies of the matroid; the certificate is valid against it.
    pub union: UnionOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetWitness {
    pub value: usize,
    pub subset: Vec<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatWitness {
    pub value: usize,
    pub flat: Vec<usize>,
    pub rank: usize,
}

/// Covering number of `set` in `matroid`.
///
/// Elements are inserted one at a time into a certificate for the current
/// number of copies `r`; a failed insertion proves the covered prefix plus the
/// new element is dependent in the `r`-fold union, so `r` grows by one and the
/// element opens the new part.
pub fn covering_number(matroid: &Arc<Matroid>, set: &[usize]) -> Result<Cover> {
    check_set(matroid.len(), set)?;
    if let Some(&e) = set.iter().find(|&&e| !matroid.independent_unchecked(&[e])) {
        return Err(Error::Loop(e));
    }
    let mut union = UnionOracle::with_members(Vec::new())?;
    union.n = matroid.len();
    let mut cert = PartitionCertificate::new(matroid.len(), 0);
    for &e in set {
        if !cert.insert_unchecked(&union, e) {
            union.push_member(matroid.clone());
            cert.add_part();
            let fresh = cert.insert_unchecked(&union, e);
            debug_assert!(fresh, "a non-loop always fits into an empty part");
        }
    }
    Ok(Cover {
        value: union.k(),
        certificate: cert,
        union,
    })
}

/// Covering number by independent membership tests for `r = 1, 2, ...`
/// without carrying certificates between values of `r`.
pub fn covering_number_by_search(matroid: &Arc<Matroid>, set: &[usize]) -> Result<usize> {
    check_set(matroid.len(), set)?;
    if set.is_empty() {
        return Ok(0);
    }
    if let Some(&e) = set.iter().find(|&&e| !matroid.independent_unchecked(&[e])) {
        return Err(Error::Loop(e));
    }
    for r in 1..=set.len() {
        if UnionOracle::copies(matroid.clone(), r)?
            .is_independent(set)?
            .is_independent()
        {
            return Ok(r);
        }
    }
    unreachable!("singletons always cover a loopless set")
}

fn guard(matroid: &Matroid, set: &[usize]) -> Result<u64> {
    let n = matroid.len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    check_set(n, set)?;
    if set.is_empty() {
        return Err(Error::Precondition("set must be nonempty".into()));
    }
    if let Some(&e) = set.iter().find(|&&e| !matroid.independent_unchecked(&[e])) {
        return Err(Error::Loop(e));
    }
    Ok(bits::mask_of(set))
}

/// `max over nonempty T ⊆ set of ⌈|T| / rank(T)⌉`, by scanning every subset.
pub fn nash_williams_value(matroid: &Matroid, set: &[usize]) -> Result<SubsetWitness> {
    let full = guard(matroid, set)?;
    let mut best: Option<SubsetWitness> = None;
    for t in bits::submasks(full).filter(|&t| t != 0) {
        let subset = bits::members(t);
        let rank = matroid.rank_unchecked(&subset);
        let value = subset.len().div_ceil(rank);
        if best.as_ref().map_or(true, |b| value > b.value) {
            best = Some(SubsetWitness {
                value,
                subset,
                rank,
            });
        }
    }
    Ok(best.expect("nonempty set has a nonempty subset"))
}

/// `max over flats F of rank >= 1 of ⌈|set ∩ F| / rank(F)⌉`.
pub fn flats_cover_bound(matroid: &Matroid, set: &[usize]) -> Result<FlatWitness> {
    let s = guard(matroid, set)?;
    let flats = matroid.enumerate_flats()?;
    let mut best: Option<FlatWitness> = None;
    for (&f, &rank) in flats.masks().iter().zip(flats.ranks()) {
        if rank == 0 {
            continue;
        }
        let value = ((s & f).count_ones() as usize).div_ceil(rank);
        // Flats come in increasing rank, so ties keep the highest-rank witness.
        if best.as_ref().map_or(true, |b| value >= b.value) {
            best = Some(FlatWitness {
                value,
                flat: bits::members(f),
                rank,
            });
        }
    }
    Ok(best.expect("a loopless nonempty ground set has a flat of rank at least one"))
}

/// `min over T ⊆ set of |set \ T| + Σ_i rank_i(T)`, the matroid union rank
/// formula evaluated by brute force.
pub fn union_rank_min_formula(union: &UnionOracle, set: &[usize]) -> Result<usize> {
    let n = union.ground_len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    check_set(n, set)?;
    let full = bits::mask_of(set);
    let value = bits::submasks(full)
        .map(|t| {
            let sub = bits::members(t);
            let outside = (full & !t).count_ones() as usize;
            outside
                + union
                    .members()
                    .iter()
                    .map(|m| m.rank_unchecked(&sub))
                    .sum::<usize>()
        })
        .min()
        .unwrap_or(0);
    Ok(value)
}
