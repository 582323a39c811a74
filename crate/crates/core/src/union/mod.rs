//! Unions of matroids.
//!
//! A set is independent in `M_1 ∨ ... ∨ M_k` when it splits into parts with
//! part `i` independent in `M_i`. [`PartitionCertificate`] holds such a split
//! and grows it one element at a time along shortest augmenting paths in the
//! exchange graph (matroid partitioning).

mod cover;

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::{check_element, check_set, GroundSet};
use crate::matroid::{Matroid, PartIndex};

pub use cover::{
    covering_number, covering_number_by_search, flats_cover_bound, nash_williams_value, union_rank_min_formula, Cover,
    FlatWitness, SubsetWitness,
};

/// Ordered list of member matroids on a common ground set.
#[derive(Debug, Clone)]
pub struct UnionOracle {
    members: Vec<Arc<Matroid>>,
    n: usize,
    /// Sum of capacities when every member is uniform; such a union is itself
    /// uniform and is handled by counting.
    uniform_capacity: Option<usize>,
}

impl UnionOracle {
    pub fn new(members: Vec<Arc<Matroid>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameter(
                "a union needs at least one member".into(),
            ));
        }
        Self::with_members(members)
    }

    /// The k-fold union of `matroid` with itself.
    pub fn copies(matroid: Arc<Matroid>, k: usize) -> Result<Self> {
        Self::new(vec![matroid; k])
    }

    pub(crate) fn with_members(members: Vec<Arc<Matroid>>) -> Result<Self> {
        let n = members.first().map_or(0, |m| m.len());
        if let Some(m) = members.iter().find(|m| m.len() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: m.len(),
            });
        }
        let uniform_capacity = members
            .iter()
            .map(|m| m.uniform_cap())
            .sum::<Option<usize>>();
        Ok(Self {
            members,
            n,
            uniform_capacity,
        })
    }

    pub(crate) fn push_member(&mut self, matroid: Arc<Matroid>) {
        debug_assert!(self.members.is_empty() || matroid.len() == self.n);
        self.n = matroid.len();
        self.uniform_capacity = match (self.uniform_capacity, matroid.uniform_cap()) {
            (Some(total), Some(cap)) => Some(total + cap),
            _ => None,
        };
        self.members.push(matroid);
    }

    /// Number of members.
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn member(&self, i: usize) -> &Matroid {
        &self.members[i]
    }

    pub fn members(&self) -> &[Arc<Matroid>] {
        &self.members
    }

    pub fn empty_certificate(&self) -> PartitionCertificate {
        PartitionCertificate::new(self.n, self.k())
    }

    /// Decides union independence. Returns the certificate on success, or a
    /// certificate for a subset plus the element that could not be added.
    pub fn is_independent(&self, set: &[usize]) -> Result<Membership> {
        check_set(self.n, set)?;
        let mut cert = self.empty_certificate();
        for &e in set {
            if !cert.insert_unchecked(self, e) {
                return Ok(Membership::Dependent {
                    partial: cert,
                    blocked: e,
                });
            }
        }
        Ok(Membership::Independent(cert))
    }

    /// Rank in the union: size of a largest union-independent subset of `set`.
    pub fn rank(&self, set: &[usize]) -> Result<usize> {
        check_set(self.n, set)?;
        Ok(self.basis_certificate(set.iter().copied()).len())
    }

    /// Max-weight union-independent subset of `set` (greedy in decreasing
    /// weight), returned as a certificate.
    pub fn max_weight_basis(
        &self,
        ground: &GroundSet,
        set: &[usize],
    ) -> Result<PartitionCertificate> {
        self.check_ground(ground)?;
        check_set(self.n, set)?;
        let mut sorted = set.to_vec();
        ground.sort_heaviest_first(&mut sorted);
        Ok(self.basis_certificate(sorted))
    }

    /// Greedy certificate over `elements` in the given order.
    pub(crate) fn basis_certificate(
        &self,
        elements: impl IntoIterator<Item = usize>,
    ) -> PartitionCertificate {
        let mut cert = self.empty_certificate();
        for e in elements {
            cert.insert_unchecked(self, e);
        }
        cert
    }

    /// True iff adding `i` to `set` leaves the union rank unchanged.
    pub fn span_contains(&self, set: &[usize], i: usize) -> Result<bool> {
        check_set(self.n, set)?;
        check_element(self.n, i)?;
        if set.contains(&i) {
            return Ok(true);
        }
        let mut cert = self.basis_certificate(set.iter().copied());
        Ok(!cert.can_insert(self, i))
    }

    /// Whether `i` belongs to the max-weight union basis of `set ∪ {i}`,
    /// i.e. `i` is outside the union span of the heavier members of `set`.
    pub fn improves(&self, ground: &GroundSet, set: &[usize], i: usize) -> Result<bool> {
        self.check_ground(ground)?;
        check_set(self.n, set)?;
        check_element(self.n, i)?;
        if set.contains(&i) {
            return Err(Error::AlreadyPresent(i));
        }
        let heavier = set.iter().copied().filter(|&j| ground.heavier(j, i));
        let mut cert = self.basis_certificate(heavier);
        Ok(cert.can_insert(self, i))
    }

    fn check_ground(&self, ground: &GroundSet) -> Result<()> {
        if ground.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: ground.len(),
            });
        }
        Ok(())
    }
}

/// Outcome of [`UnionOracle::is_independent`].
#[derive(Debug, Clone)]
pub enum Membership {
    Independent(PartitionCertificate),
    /// `partial` covers a union-independent subset; adding `blocked` to it is
    /// impossible, so the queried set is dependent.
    Dependent {
        partial: PartitionCertificate,
        blocked: usize,
    },
}

impl Membership {
    pub fn is_independent(&self) -> bool {
        matches!(self, Self::Independent(_))
    }
}

const FREE: u32 = u32::MAX;

/// Disjoint parts, part `i` independent in member `i` of a union.
///
/// The certificate owns per-part query indices that are rebuilt lazily after a
/// part changes; it is exclusive mutable state and is not meant to be shared.
#[derive(Debug, Clone)]
pub struct PartitionCertificate {
    parts: Vec<Vec<usize>>,
    owner: Vec<u32>,
    slot: Vec<u32>,
    covered: usize,
    cache: Vec<Option<PartIndex>>,
    cursor: usize,
}

/// Serialised form: just the parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateParts {
    pub parts: Vec<Vec<usize>>,
}

impl PartitionCertificate {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            parts: vec![Vec::new(); k],
            owner: vec![FREE; n],
            slot: vec![FREE; n],
            covered: 0,
            cache: vec![None; k],
            cursor: 0,
        }
    }

    /// Rebuilds a certificate from explicit parts (validate it before trusting it).
    pub fn from_parts(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut cert = Self::new(n, parts.len());
        for (p, part) in parts.into_iter().enumerate() {
            for e in part {
                check_element(n, e)?;
                if cert.contains(e) {
                    return Err(Error::DuplicateElement(e));
                }
                cert.push(p, e);
            }
        }
        Ok(cert)
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn to_parts(&self) -> CertificateParts {
        CertificateParts {
            parts: self.parts.clone(),
        }
    }

    /// Number of covered elements.
    pub fn len(&self) -> usize {
        self.covered
    }

    pub fn is_empty(&self) -> bool {
        self.covered == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.owner[e] != FREE
    }

    /// Covered elements in ascending order.
    pub fn covered(&self) -> Vec<usize> {
        (0..self.owner.len()).filter(|&e| self.contains(e)).collect()
    }

    /// Part holding `e`, if covered.
    pub fn part_of(&self, e: usize) -> Option<usize> {
        (self.owner[e] != FREE).then(|| self.owner[e] as usize)
    }

    pub(crate) fn add_part(&mut self) {
        self.parts.push(Vec::new());
        self.cache.push(None);
    }

    /// Adds `x`, rearranging parts along an augmenting path if necessary.
    /// Returns `Ok(false)` and leaves the certificate untouched when the
    /// covered set plus `x` is dependent in the union.
    pub fn insert(&mut self, union: &UnionOracle, x: usize) -> Result<bool> {
        self.check_against(union)?;
        check_element(union.n, x)?;
        if self.contains(x) {
            return Err(Error::AlreadyPresent(x));
        }
        Ok(self.insert_unchecked(union, x))
    }

    /// Whether `x` could be inserted, without changing the covered set.
    pub fn probe(&mut self, union: &UnionOracle, x: usize) -> Result<bool> {
        self.check_against(union)?;
        check_element(union.n, x)?;
        if self.contains(x) {
            return Err(Error::AlreadyPresent(x));
        }
        Ok(self.can_insert(union, x))
    }

    pub(crate) fn insert_unchecked(&mut self, union: &UnionOracle, x: usize) -> bool {
        match self.augmenting_path(union, x) {
            Some(path) => {
                self.apply(path);
                true
            }
            None => false,
        }
    }

    pub(crate) fn can_insert(&mut self, union: &UnionOracle, x: usize) -> bool {
        self.augmenting_path(union, x).is_some()
    }

    /// Checks disjointness and per-part independence against the members.
    pub fn validate(&self, union: &UnionOracle) -> Result<()> {
        self.check_against(union)?;
        let mut seen = vec![false; union.n];
        for (p, part) in self.parts.iter().enumerate() {
            for &e in part {
                check_element(union.n, e)?;
                if std::mem::replace(&mut seen[e], true) {
                    return Err(Error::Assertion(format!(
                        "element {e} appears in more than one part"
                    )));
                }
                if self.owner[e] as usize != p {
                    return Err(Error::Assertion(format!("owner of {e} out of sync")));
                }
            }
            if !union.member(p).independent_unchecked(part) {
                return Err(Error::Assertion(format!(
                    "part {p} is dependent in its member matroid"
                )));
            }
        }
        let count = seen.iter().filter(|&&b| b).count();
        if count != self.covered {
            return Err(Error::Assertion("covered count out of sync".into()));
        }
        Ok(())
    }

    fn check_against(&self, union: &UnionOracle) -> Result<()> {
        if self.parts.len() != union.k() {
            return Err(Error::SizeMismatch {
                expected: union.k(),
                found: self.parts.len(),
            });
        }
        if self.owner.len() != union.n {
            return Err(Error::SizeMismatch {
                expected: union.n,
                found: self.owner.len(),
            });
        }
        Ok(())
    }

    fn push(&mut self, p: usize, e: usize) {
        self.owner[e] = p as u32;
        self.slot[e] = self.parts[p].len() as u32;
        self.parts[p].push(e);
        self.covered += 1;
        self.cache[p] = None;
    }

    fn remove(&mut self, e: usize) {
        let p = self.owner[e] as usize;
        let s = self.slot[e] as usize;
        self.parts[p].swap_remove(s);
        if let Some(&moved) = self.parts[p].get(s) {
            self.slot[moved] = s as u32;
        }
        self.owner[e] = FREE;
        self.slot[e] = FREE;
        self.covered -= 1;
        self.cache[p] = None;
    }

    fn index(&mut self, union: &UnionOracle, p: usize) -> &PartIndex {
        if self.cache[p].is_none() {
            self.cache[p] = Some(union.member(p).part_index(&self.parts[p]));
        }
        self.cache[p].as_ref().unwrap()
    }

    fn accepts(&mut self, union: &UnionOracle, p: usize, x: usize) -> bool {
        let m = union.member(p);
        let idx = self.index(union, p);
        m.index_accepts(idx, x)
    }

    /// Moves along a path: each `(element, part)` sends `element` into `part`.
    fn apply(&mut self, path: Vec<(usize, usize)>) {
        for &(e, _) in &path {
            if self.contains(e) {
                self.remove(e);
            }
        }
        for (e, p) in path {
            self.push(p, e);
        }
    }

    /// Shortest augmenting path for `x`, as a list of moves.
    fn augmenting_path(&mut self, union: &UnionOracle, x: usize) -> Option<Vec<(usize, usize)>> {
        let k = self.parts.len();
        if k == 0 {
            return None;
        }
        if let Some(total) = union.uniform_capacity {
            // A union of uniform matroids is uniform: room exists iff some part has slack.
            if self.covered >= total.min(union.n) {
                return None;
            }
            while self.cursor < k {
                let cap = union.member(self.cursor).uniform_cap().unwrap();
                if self.parts[self.cursor].len() < cap {
                    return Some(vec![(x, self.cursor)]);
                }
                self.cursor += 1;
            }
            // Parts only grow under the fast path, so the cursor never has to move back.
            unreachable!("uniform capacity accounting out of sync");
        }

        // Direct insertion, scanning from the last part that took an element.
        for offset in 0..k {
            let p = (self.cursor + offset) % k;
            if self.accepts(union, p, x) {
                self.cursor = p;
                return Some(vec![(x, p)]);
            }
        }

        // Breadth-first search over the exchange graph. `via[z] = (y, p)` means
        // y enters part p and pushes z out of it.
        let mut via: Vec<(usize, usize)> = vec![(FREE as usize, FREE as usize); self.owner.len()];
        let mut visited = vec![false; self.owner.len()];
        visited[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            let home = self.part_of(y);
            for p in (0..k).filter(|&p| Some(p) != home) {
                if self.accepts(union, p, y) {
                    let mut path = vec![(y, p)];
                    let mut z = y;
                    while z != x {
                        let (prev, part) = via[z];
                        path.push((prev, part));
                        z = prev;
                    }
                    return Some(path);
                }
            }
            for p in (0..k).filter(|&p| Some(p) != home) {
                self.index(union, p);
                let idx = self.cache[p].as_ref().unwrap();
                for z in union.member(p).index_circuit(idx, &self.parts[p], y) {
                    if !visited[z] {
                        visited[z] = true;
                        via[z] = (y, p);
                        queue.push_back(z);
                    }
                }
            }
        }
        None
    }
}
