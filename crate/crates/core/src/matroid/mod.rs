//! Matroid oracles over the ground set `0..n`.
//!
//! A [`Matroid`] only describes independence; weights live in a separate
//! [`GroundSet`]. Queries never mutate the oracle: the scratch state they need
//! (union–find, echelon rows, counters) is built per call in [`Independent`].

pub mod axioms;
pub mod bits;
pub mod field;
pub mod flats;
pub mod graph;

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::ground::{check_element, check_set, GroundSet};

use field::{Echelon, PrimeField};
use graph::{ForestIndex, RollbackDsu};

pub use axioms::{AxiomReport, AxiomViolation};
pub use flats::FlatList;

#[derive(Debug, Clone, PartialEq)]
pub enum Matroid {
    Uniform(Uniform),
    Partition(Partition),
    Graphic(Graphic),
    Linear(Linear),
    Explicit(Explicit),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uniform {
    n: usize,
    cap: usize,
}

impl Uniform {
    pub fn cap(&self) -> usize {
        self.cap
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    caps: Vec<usize>,
}

impl Partition {
    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graphic {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graphic {
    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Column matroid of a matrix over GF(p); element `e` is column `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linear {
    field: PrimeField,
    columns: Vec<Vec<u32>>,
}

impl Linear {
    pub fn prime(&self) -> u32 {
        self.field.modulus()
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }
}

/// Table of independent sets, encoded as bitmasks (so `n <= 64`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explicit {
    n: usize,
    independent: HashSet<u64>,
}

impl Explicit {
    pub const MAX_N: usize = 64;

    pub fn contains(&self, mask: u64) -> bool {
        self.independent.contains(&mask)
    }

    pub fn sets(&self) -> impl Iterator<Item = u64> + '_ {
        self.independent.iter().copied()
    }
}

impl Matroid {
    pub fn uniform(n: usize, cap: usize) -> Result<Self> {
        if n > 0 && cap == 0 {
            return Err(Error::Loop(0));
        }
        Ok(Self::Uniform(Uniform { n, cap }))
    }

    /// `block_of[e]` names the block of element `e`; block `b` admits `caps[b]` elements.
    pub fn partition(block_of: Vec<usize>, caps: Vec<usize>) -> Result<Self> {
        for (e, &b) in block_of.iter().enumerate() {
            match caps.get(b) {
                None => {
                    return Err(Error::InvalidMatroid(format!(
                        "element {e} assigned to block {b}, but only {} blocks have caps",
                        caps.len()
                    )))
                }
                Some(0) => return Err(Error::Loop(e)),
                Some(_) => {}
            }
        }
        Ok(Self::Partition(Partition { block_of, caps }))
    }

    /// Consecutive blocks of the given sizes.
    pub fn partition_from_sizes(sizes: &[usize], caps: Vec<usize>) -> Result<Self> {
        if sizes.len() != caps.len() {
            return Err(Error::SizeMismatch {
                expected: sizes.len(),
                found: caps.len(),
            });
        }
        let block_of = sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat(b).take(s))
            .collect();
        Self::partition(block_of, caps)
    }

    /// Cycle matroid of a multigraph. Self-loops are rejected.
    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidMatroid(format!(
                    "edge {e} = ({u}, {v}) references a vertex outside 0..{vertices}"
                )));
            }
            if u == v {
                return Err(Error::Loop(e));
            }
        }
        Ok(Self::Graphic(Graphic { vertices, edges }))
    }

    /// Cycle matroid of the complete graph, edges in lexicographic order.
    pub fn complete_graph(vertices: usize) -> Self {
        let edges = (0..vertices)
            .flat_map(|u| (u + 1..vertices).map(move |v| (u, v)))
            .collect();
        Self::Graphic(Graphic { vertices, edges })
    }

    /// Column matroid; entries are reduced mod `prime`. Zero columns are loops.
    pub fn linear(prime: u32, columns: Vec<Vec<i64>>) -> Result<Self> {
        let field = PrimeField::new(prime).ok_or_else(|| {
            Error::InvalidMatroid(format!(
                "{prime} is not a prime in 2..={}",
                PrimeField::MAX_PRIME
            ))
        })?;
        let rows = columns.first().map_or(0, Vec::len);
        let mut reduced = Vec::with_capacity(columns.len());
        for (e, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::SizeMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            let col: Vec<u32> = col.into_iter().map(|x| field.reduce(x)).collect();
            if col.iter().all(|&x| x == 0) {
                return Err(Error::Loop(e));
            }
            reduced.push(col);
        }
        Ok(Self::Linear(Linear {
            field,
            columns: reduced,
        }))
    }

    /// Matroid given by its list of independent sets. Rejects loops but does
    /// not check the axioms; run [`Matroid::check_axioms`] for that.
    pub fn explicit(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let m = Self::explicit_unchecked(n, sets)?;
        if let Self::Explicit(x) = &m {
            if let Some(e) = (0..n).find(|&e| !x.contains(1 << e)) {
                return Err(Error::Loop(e));
            }
        }
        Ok(m)
    }

    /// Like [`Matroid::explicit`] without the loop check. Meant for building
    /// deliberately broken set systems for the axiom checker.
    pub fn explicit_unchecked(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        if n > Explicit::MAX_N {
            return Err(Error::TooLarge {
                n,
                limit: Explicit::MAX_N,
            });
        }
        let mut independent = HashSet::with_capacity(sets.len());
        for set in sets {
            check_set(n, set)?;
            independent.insert(bits::mask_of(set));
        }
        Ok(Self::Explicit(Explicit { n, independent }))
    }

    /// Tabulates every independent set of `self` (small ground sets only).
    pub fn to_explicit(&self) -> Result<Self> {
        let n = self.len();
        if n > bits::ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: bits::ENUMERATION_LIMIT,
            });
        }
        let independent = (0..1u64 << n)
            .filter(|&mask| self.independent_unchecked(&bits::members(mask)))
            .collect();
        Ok(Self::Explicit(Explicit { n, independent }))
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Uniform(u) => u.n,
            Self::Partition(p) => p.block_of.len(),
            Self::Graphic(g) => g.edges.len(),
            Self::Linear(l) => l.columns.len(),
            Self::Explicit(x) => x.n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Uniform(_) => "uniform",
            Self::Partition(_) => "partition",
            Self::Graphic(_) => "graphic",
            Self::Linear(_) => "linear",
            Self::Explicit(_) => "explicit",
        }
    }

    /// Capacity if this is a uniform matroid.
    pub fn uniform_cap(&self) -> Option<usize> {
        match self {
            Self::Uniform(u) => Some(u.cap),
            _ => None,
        }
    }

    /// Fresh scratch state for growing an independent set.
    pub fn independent_builder(&self) -> Independent<'_> {
        let state = match self {
            Self::Uniform(_) => State::Count(0),
            Self::Partition(p) => State::Blocks(vec![0; p.caps.len()]),
            Self::Graphic(g) => State::Forest(RollbackDsu::new(g.vertices)),
            Self::Linear(l) => State::Span(Echelon::new(l.field, false)),
            Self::Explicit(_) => State::Mask(0),
        };
        Independent {
            matroid: self,
            members: Vec::new(),
            state,
        }
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        check_set(self.len(), set)?;
        Ok(self.independent_unchecked(set))
    }

    pub(crate) fn independent_unchecked(&self, set: &[usize]) -> bool {
        // Table lookup for explicit systems, which need not be downward closed.
        if let Self::Explicit(t) = self {
            return t.contains(bits::mask_of(set));
        }
        let mut b = self.independent_builder();
        set.iter().all(|&e| b.insert(e))
    }

    /// Size of a largest independent subset of `set`, found greedily.
    pub fn rank(&self, set: &[usize]) -> Result<usize> {
        check_set(self.len(), set)?;
        Ok(self.rank_unchecked(set))
    }

    pub(crate) fn rank_unchecked(&self, set: &[usize]) -> usize {
        let mut b = self.independent_builder();
        set.iter().filter(|&&e| b.insert(e)).count()
    }

    /// All elements whose addition leaves the rank of `set` unchanged, ascending.
    pub fn span(&self, set: &[usize]) -> Result<Vec<usize>> {
        check_set(self.len(), set)?;
        Ok(self.span_unchecked(set))
    }

    pub(crate) fn span_unchecked(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.len()];
        let mut b = self.independent_builder();
        for &e in set {
            inside[e] = true;
            b.insert(e);
        }
        (0..self.len())
            .filter(|&e| inside[e] || !b.accepts(e))
            .collect()
    }

    /// The max-weight independent subset of `set`, heaviest element first.
    pub fn max_weight_basis(&self, ground: &GroundSet, set: &[usize]) -> Result<Vec<usize>> {
        self.check_ground(ground)?;
        check_set(self.len(), set)?;
        let mut sorted = set.to_vec();
        ground.sort_heaviest_first(&mut sorted);
        let mut b = self.independent_builder();
        Ok(sorted.into_iter().filter(|&e| b.insert(e)).collect())
    }

    /// Whether `i` belongs to the max-weight basis of `set ∪ {i}`, decided by
    /// checking that `i` lies outside the span of the heavier members of `set`.
    pub fn improves(&self, ground: &GroundSet, set: &[usize], i: usize) -> Result<bool> {
        self.check_ground(ground)?;
        check_set(self.len(), set)?;
        check_element(self.len(), i)?;
        if set.contains(&i) {
            return Err(Error::AlreadyPresent(i));
        }
        let mut b = self.independent_builder();
        for &j in set.iter().filter(|&&j| ground.heavier(j, i)) {
            b.insert(j);
        }
        Ok(b.accepts(i))
    }

    /// Number of classes of the parallel relation (elements `i`, `j` with
    /// `rank({i, j}) = 1`). Assumes no loops.
    pub fn parallel_class_count(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        match self {
            Self::Uniform(u) => {
                if u.cap == 1 {
                    1
                } else {
                    n
                }
            }
            Self::Partition(p) => {
                let mut classes = 0;
                let mut seen_block = HashSet::new();
                for &b in &p.block_of {
                    if p.caps[b] >= 2 {
                        classes += 1;
                    } else if seen_block.insert(b) {
                        classes += 1;
                    }
                }
                classes
            }
            Self::Graphic(g) => g
                .edges
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect::<HashSet<_>>()
                .len(),
            Self::Linear(l) => {
                // Normalise each column so its leading entry is 1.
                let f = l.field;
                l.columns
                    .iter()
                    .map(|col| {
                        let lead = col.iter().copied().find(|&x| x != 0).unwrap();
                        let inv = f.inv(lead);
                        col.iter().map(|&x| f.mul(x, inv)).collect::<Vec<_>>()
                    })
                    .collect::<HashSet<_>>()
                    .len()
            }
            Self::Explicit(_) => self.parallel_class_count_pairwise(),
        }
    }

    /// Parallel classes by direct pairwise rank queries.
    pub fn parallel_class_count_pairwise(&self) -> usize {
        let n = self.len();
        let mut dsu = RollbackDsu::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if !dsu.connected(i, j) && self.rank_unchecked(&[i, j]) == 1 {
                    dsu.union(i, j);
                }
            }
        }
        (0..n).filter(|&i| dsu.find(i) == i).count()
    }

    pub(crate) fn check_ground(&self, ground: &GroundSet) -> Result<()> {
        if ground.len() != self.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: ground.len(),
            });
        }
        Ok(())
    }

    /// Index over an independent `part` answering "is `part + x` independent?"
    /// and, when it is not, "which elements form the circuit of `part + x`?".
    pub(crate) fn part_index(&self, part: &[usize]) -> PartIndex {
        match self {
            Self::Uniform(_) => PartIndex::Count(part.len()),
            Self::Partition(p) => {
                let mut by_block: HashMap<usize, Vec<usize>> = HashMap::new();
                for &e in part {
                    by_block.entry(p.block_of[e]).or_default().push(e);
                }
                PartIndex::Blocks(by_block)
            }
            Self::Graphic(g) => PartIndex::Forest(ForestIndex::new(
                g.vertices,
                part.iter().map(|&e| (e, g.edges[e])),
            )),
            Self::Linear(l) => {
                let mut ech = Echelon::new(l.field, true);
                for &e in part {
                    ech.insert(&l.columns[e]);
                }
                PartIndex::Span(ech, part.to_vec())
            }
            Self::Explicit(_) => PartIndex::Mask(bits::mask_of(part), part.to_vec()),
        }
    }

    pub(crate) fn index_accepts(&self, index: &PartIndex, x: usize) -> bool {
        match (self, index) {
            (Self::Uniform(u), PartIndex::Count(len)) => *len < u.cap,
            (Self::Partition(p), PartIndex::Blocks(by_block)) => {
                let b = p.block_of[x];
                by_block.get(&b).map_or(0, Vec::len) < p.caps[b]
            }
            (Self::Graphic(g), PartIndex::Forest(f)) => {
                let (u, v) = g.edges[x];
                !f.connected(u, v)
            }
            (Self::Linear(l), PartIndex::Span(ech, _)) => ech.accepts(&l.columns[x]),
            (Self::Explicit(t), PartIndex::Mask(mask, _)) => t.contains(mask | 1 << x),
            _ => unreachable!("part index built for a different matroid kind"),
        }
    }

    /// Elements `y` of the indexed part such that `part - y + x` is independent.
    /// Requires `part + x` to be dependent.
    pub(crate) fn index_circuit(&self, index: &PartIndex, part: &[usize], x: usize) -> Vec<usize> {
        match (self, index) {
            (Self::Uniform(_), PartIndex::Count(_)) => part.to_vec(),
            (Self::Partition(p), PartIndex::Blocks(by_block)) => {
                by_block.get(&p.block_of[x]).cloned().unwrap_or_default()
            }
            (Self::Graphic(g), PartIndex::Forest(f)) => {
                let (u, v) = g.edges[x];
                f.path(u, v)
            }
            (Self::Linear(l), PartIndex::Span(ech, members)) => ech
                .dependency(&l.columns[x])
                .expect("circuit requested for an independent extension")
                .into_iter()
                .map(|i| members[i])
                .collect(),
            (Self::Explicit(t), PartIndex::Mask(mask, members)) => members
                .iter()
                .copied()
                .filter(|&y| t.contains((mask & !(1 << y)) | 1 << x))
                .collect(),
            _ => unreachable!("part index built for a different matroid kind"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum PartIndex {
    Count(usize),
    Blocks(HashMap<usize, Vec<usize>>),
    Forest(ForestIndex),
    Span(Echelon, Vec<usize>),
    Mask(u64, Vec<usize>),
}

#[derive(Debug, Clone)]
enum State {
    Count(usize),
    Blocks(Vec<usize>),
    Forest(RollbackDsu),
    Span(Echelon),
    Mask(u64),
}

/// An independent set grown one element at a time.
///
/// Elements passed to [`Independent::accepts`] and [`Independent::insert`]
/// must not already be members.
#[derive(Debug, Clone)]
pub struct Independent<'m> {
    matroid: &'m Matroid,
    members: Vec<usize>,
    state: State,
}

impl Independent<'_> {
    /// True if adding `e` keeps the set independent.
    pub fn accepts(&self, e: usize) -> bool {
        match (self.matroid, &self.state) {
            (Matroid::Uniform(u), State::Count(c)) => *c < u.cap,
            (Matroid::Partition(p), State::Blocks(counts)) => {
                let b = p.block_of[e];
                counts[b] < p.caps[b]
            }
            (Matroid::Graphic(g), State::Forest(dsu)) => {
                let (u, v) = g.edges[e];
                !dsu.connected(u, v)
            }
            (Matroid::Linear(l), State::Span(ech)) => ech.accepts(&l.columns[e]),
            (Matroid::Explicit(t), State::Mask(mask)) => t.contains(mask | 1 << e),
            _ => unreachable!(),
        }
    }

    /// Adds `e` if the result stays independent; reports whether it was added.
    pub fn insert(&mut self, e: usize) -> bool {
        let added = match (self.matroid, &mut self.state) {
            (Matroid::Uniform(u), State::Count(c)) => {
                let ok = *c < u.cap;
                *c += ok as usize;
                ok
            }
            (Matroid::Partition(p), State::Blocks(counts)) => {
                let b = p.block_of[e];
                let ok = counts[b] < p.caps[b];
                counts[b] += ok as usize;
                ok
            }
            (Matroid::Graphic(g), State::Forest(dsu)) => {
                let (u, v) = g.edges[e];
                if dsu.connected(u, v) {
                    false
                } else {
                    dsu.union(u, v)
                }
            }
            (Matroid::Linear(l), State::Span(ech)) => ech.insert(&l.columns[e]),
            (Matroid::Explicit(t), State::Mask(mask)) => {
                let next = *mask | 1 << e;
                let ok = t.contains(next);
                if ok {
                    *mask = next;
                }
                ok
            }
            _ => unreachable!(),
        };
        if added {
            self.members.push(e);
        }
        added
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
}
