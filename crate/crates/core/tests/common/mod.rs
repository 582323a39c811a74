//! Brute-force reference routines shared by the integration tests. Nothing in
//! here calls the greedy, union–find, row-reduction or augmenting-path code of
//! the crate; everything works from an explicit table of independent sets.

#![allow(dead_code)]

use matroid_secretary::matroid::bits;
use matroid_secretary::{GroundSet, Matroid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independence table of a small matroid, indexed by bitmask. Built from
/// single `is_independent` calls on every subset, or from an explicit list.
pub struct Table {
    pub n: usize,
    pub indep: Vec<bool>,
}

impl Table {
    pub fn of(m: &Matroid) -> Self {
        let n = m.len();
        assert!(n <= 16);
        let indep = (0..1u64 << n)
            .map(|mask| m.is_independent(&bits::members(mask)).unwrap())
            .collect();
        Self { n, indep }
    }

    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Self {
        let mut indep = vec![false; 1 << n];
        for s in sets {
            indep[bits::mask_of(s) as usize] = true;
        }
        Self { n, indep }
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn rank(&self, s: u64) -> usize {
        bits::submasks(s)
            .filter(|&t| self.indep[t as usize])
            .map(|t| t.count_ones() as usize)
            .max()
            .unwrap()
    }

    pub fn span(&self, s: u64) -> u64 {
        let r = self.rank(s);
        (0..self.n)
            .filter(|&i| self.rank(s | 1 << i) == r)
            .fold(0, |m, i| m | 1 << i)
    }

    /// Max-weight independent subset of `s` by exhaustive search.
    pub fn opt(&self, ground: &GroundSet, s: u64) -> u64 {
        bits::submasks(s)
            .filter(|&t| self.indep[t as usize])
            .max_by(|&a, &b| {
                weight(ground, a)
                    .partial_cmp(&weight(ground, b))
                    .unwrap()
                    .then_with(|| tie_key(ground, b).cmp(&tie_key(ground, a)))
            })
            .unwrap()
    }
}

/// Lexicographic key on heaviest-first positions, used only to make exhaustive
/// argmax deterministic when float sums tie.
fn tie_key(ground: &GroundSet, mask: u64) -> Vec<usize> {
    let mut pos: Vec<usize> = bits::members(mask).iter().map(|&e| ground.position(e)).collect();
    pos.sort();
    pos
}

pub fn weight(ground: &GroundSet, mask: u64) -> f64 {
    bits::members(mask).iter().map(|&e| ground.weight(e)).sum()
}

/// Union independence table for members given as tables (same `n`), via the
/// subset convolution `I_1 ∨ I_2 = {A ∪ B : A ∈ I_1, B ∈ I_2, A ∩ B = ∅}`.
pub fn union_table(members: &[&Table]) -> Vec<bool> {
    let n = members[0].n;
    let mut acc = members[0].indep.clone();
    for t in &members[1..] {
        let mut next = vec![false; 1 << n];
        for x in 0..1u64 << n {
            next[x as usize] = bits::submasks(x)
                .any(|a| acc[a as usize] && t.indep[(x & !a) as usize]);
        }
        acc = next;
    }
    acc
}

/// Covering number by exhaustive partition search: the least `r` with the set
/// independent in the `r`-fold union table.
pub fn brute_covering(table: &Table, s: u64) -> usize {
    if s == 0 {
        return 0;
    }
    let mut acc = table.indep.clone();
    for r in 1.. {
        if acc[s as usize] {
            return r;
        }
        let mut next = vec![false; acc.len()];
        for x in bits::submasks(s) {
            next[x as usize] =
                bits::submasks(x).any(|a| acc[a as usize] && table.indep[(x & !a) as usize]);
        }
        acc = next;
    }
    unreachable!()
}

/// Acyclicity of an edge set by depth-first search.
pub fn is_forest(vertices: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); vertices];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut seen = vec![false; vertices];
    for start in 0..vertices {
        if seen[start] {
            continue;
        }
        let mut stack = vec![(start, usize::MAX)];
        seen[start] = true;
        while let Some((u, via)) = stack.pop() {
            for &(v, e) in &adj[u] {
                if e == via {
                    continue;
                }
                if seen[v] {
                    return false;
                }
                seen[v] = true;
                stack.push((v, e));
            }
        }
    }
    true
}

/// A pool of small matroids of every kind (n <= 8), deterministic in `seed`.
pub fn small_matroids(seed: u64) -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        Matroid::uniform(5, 2).unwrap(),
        Matroid::uniform(6, 1).unwrap(),
        Matroid::uniform(7, 3).unwrap(),
        Matroid::partition_from_sizes(&[3, 2, 3], vec![1, 2, 2]).unwrap(),
        Matroid::partition_from_sizes(&[4, 4], vec![2, 1]).unwrap(),
        Matroid::complete_graph(4),
        Matroid::graphic(4, vec![(0, 1), (1, 2), (2, 0), (0, 1), (2, 3), (3, 0), (1, 3)]).unwrap(),
        Matroid::linear(
            2,
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![1, 1, 1],
            ],
        )
        .unwrap(),
    ];
    for _ in 0..6 {
        out.push(random_graphic(&mut rng, 5, 8));
        let prime = [2, 3, 5][rng.gen_range(0..3)];
        out.push(random_linear(&mut rng, 3, 8, prime));
    }
    // Explicit copies of a few of the above, so the table-driven kind is covered.
    let explicit: Vec<Matroid> = out[..8].iter().map(|m| m.to_explicit().unwrap()).collect();
    out.extend(explicit);
    out
}

pub fn random_graphic(rng: &mut ChaCha8Rng, vertices: usize, edges: usize) -> Matroid {
    let list = (0..edges)
        .map(|_| {
            let u = rng.gen_range(0..vertices);
            let mut v = rng.gen_range(0..vertices - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    Matroid::graphic(vertices, list).unwrap()
}

pub fn random_linear(rng: &mut ChaCha8Rng, rows: usize, n: usize, prime: u32) -> Matroid {
    let columns = (0..n)
        .map(|_| loop {
            let c: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..prime as i64)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        })
        .collect();
    Matroid::linear(prime, columns).unwrap()
}

pub fn random_ground(rng: &mut ChaCha8Rng, n: usize) -> GroundSet {
    // Distinct integer weights in random order.
    let mut w: Vec<f64> = (1..=n).map(|x| x as f64).collect();
    for i in (1..n).rev() {
        w.swap(i, rng.gen_range(0..=i));
    }
    GroundSet::new(w).unwrap()
}
