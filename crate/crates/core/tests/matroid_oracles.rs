mod common;

use common::{is_forest, random_ground, small_matroids, weight, Table};
use matroid_secretary::matroid::bits;
use matroid_secretary::{GroundSet, Matroid};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn independence_matches_dfs_cycle_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let m = common::random_graphic(&mut rng, 5, 9);
        let Matroid::Graphic(g) = &m else { unreachable!() };
        for mask in 0..1u64 << m.len() {
            let set = bits::members(mask);
            let edges: Vec<_> = set.iter().map(|&e| g.edges()[e]).collect();
            assert_eq!(m.is_independent(&set).unwrap(), is_forest(5, &edges), "{set:?}");
        }
    }
}

#[test]
fn spec_examples_for_basic_operations() {
    let k4 = Matroid::complete_graph(4);
    // Edges of K4 in lexicographic order: 01 02 03 12 13 23.
    assert!(!k4.is_independent(&[0, 1, 3]).unwrap());
    assert_eq!(k4.rank(&[0, 1, 2, 3, 4, 5]).unwrap(), 3);
    // Path 0-1-2 closes with edge 0-2.
    assert_eq!(k4.span(&[0, 3]).unwrap(), vec![0, 1, 3]);
    assert_eq!(Matroid::uniform(4, 2).unwrap().rank(&[0, 1, 2]).unwrap(), 2);
    assert_eq!(Matroid::uniform(3, 1).unwrap().span(&[0]).unwrap(), vec![0, 1, 2]);
    assert_eq!(Matroid::uniform(4, 2).unwrap().span(&[0]).unwrap(), vec![0]);
    assert_eq!(Matroid::uniform(5, 1).unwrap().parallel_class_count(), 1);
    assert_eq!(Matroid::uniform(5, 3).unwrap().parallel_class_count(), 5);
    let doubled = Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2), (1, 0)]).unwrap();
    assert_eq!(doubled.parallel_class_count(), 3);
    let m = Matroid::uniform(3, 2).unwrap();
    let g = GroundSet::new(vec![5.0, 3.0, 1.0]).unwrap();
    assert_eq!(m.max_weight_basis(&g, &[0, 1, 2]).unwrap(), vec![0, 1]);
    assert!(m.max_weight_basis(&g, &[]).unwrap().is_empty());
}

#[test]
fn rank_span_and_opt_match_table_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in small_matroids(1) {
        let t = Table::of(&m);
        let ground = random_ground(&mut rng, m.len());
        for s in 0..1u64 << m.len() {
            let set = bits::members(s);
            let rank = m.rank(&set).unwrap();
            assert_eq!(rank, t.rank(s), "{} rank {set:?}", m.kind_name());
            assert_eq!(bits::mask_of(&m.span(&set).unwrap()), t.span(s));
            let basis = m.max_weight_basis(&ground, &set).unwrap();
            assert_eq!(bits::mask_of(&basis), t.opt(&ground, s));
            // Greedy output weight dominates every independent subset.
            let w = weight(&ground, bits::mask_of(&basis));
            for sub in bits::submasks(s).filter(|&x| t.indep[x as usize]) {
                assert!(weight(&ground, sub) <= w);
            }
        }
    }
}

#[test]
fn rank_axioms_and_closure_exhaustive() {
    for m in small_matroids(2) {
        let t = Table::of(&m);
        let n = m.len();
        let ranks: Vec<usize> = (0..1u64 << n).map(|s| m.rank(&bits::members(s)).unwrap()).collect();
        for s in 0..1u64 << n {
            assert!(ranks[s as usize] <= s.count_ones() as usize);
            let span = bits::mask_of(&m.span(&bits::members(s)).unwrap());
            assert_eq!(span & s, s);
            assert_eq!(ranks[span as usize], ranks[s as usize]);
            assert_eq!(bits::mask_of(&m.span(&bits::members(span)).unwrap()), span);
            for u in 0..1u64 << n {
                if u & s == s {
                    assert!(ranks[s as usize] <= ranks[u as usize]);
                }
                assert!(
                    ranks[(s | u) as usize] + ranks[(s & u) as usize]
                        <= ranks[s as usize] + ranks[u as usize]
                );
            }
        }
        assert!(t.indep[0]);
    }
}

#[test]
fn improves_matches_opt_membership_exhaustively() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in small_matroids(3) {
        let t = Table::of(&m);
        let ground = random_ground(&mut rng, m.len());
        for s in 0..1u64 << m.len() {
            let set = bits::members(s);
            for i in (0..m.len()).filter(|&i| s >> i & 1 == 0) {
                let direct = t.opt(&ground, s | 1 << i) >> i & 1 == 1;
                assert_eq!(m.improves(&ground, &set, i).unwrap(), direct);
            }
            for &b in &m.max_weight_basis(&ground, &set).unwrap() {
                let rest: Vec<usize> = set.iter().copied().filter(|&x| x != b).collect();
                assert!(m.improves(&ground, &rest, b).unwrap());
            }
        }
    }
}

#[test]
fn built_in_kinds_pass_axiom_checker() {
    for m in small_matroids(4) {
        let report = m.check_axioms().unwrap();
        assert!(report.passed(), "{}: {:?}", m.kind_name(), report.violation);
    }
}

#[test]
fn max_spanning_tree_of_k4_by_enumeration() {
    let k4 = Matroid::complete_graph(4);
    let Matroid::Graphic(g) = &k4 else { unreachable!() };
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let ground = random_ground(&mut rng, 6);
        let best = (0..1u64 << 6)
            .filter(|m| m.count_ones() == 3)
            .filter(|&m| {
                let e: Vec<_> = bits::members(m).iter().map(|&i| g.edges()[i]).collect();
                is_forest(4, &e)
            })
            .max_by(|&a, &b| weight(&ground, a).partial_cmp(&weight(&ground, b)).unwrap())
            .unwrap();
        let basis = k4.max_weight_basis(&ground, &(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(bits::mask_of(&basis), best);
    }
}

#[test]
fn explicit_flats_match_table_closure() {
    for m in small_matroids(6).into_iter().filter(|m| m.kind_name() == "explicit") {
        let t = Table::of(&m);
        let mut expected: Vec<(usize, u64)> = (0..1u64 << m.len())
            .filter(|&s| t.span(s) == s)
            .map(|s| (t.rank(s), s))
            .collect();
        expected.sort();
        let flats = m.enumerate_flats().unwrap();
        let got: Vec<(usize, u64)> = flats.ranks().iter().copied().zip(flats.masks().iter().copied()).collect();
        assert_eq!(got, expected);
        // Rank-j flat counts obey |F_j| <= n^j.
        for (j, &c) in flats.counts_by_rank().iter().enumerate() {
            assert!(c <= m.len().pow(j as u32));
        }
    }
}

#[test]
fn parallel_counts_agree_with_pairwise_definition() {
    for m in small_matroids(7) {
        assert_eq!(m.parallel_class_count(), m.parallel_class_count_pairwise());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_span_closure_on_larger_linear(seed in any::<u64>(), mask in any::<u16>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_linear(&mut rng, 4, 14, 3);
        let set = bits::members(mask as u64 & ((1 << 14) - 1));
        let span = m.span(&set).unwrap();
        prop_assert!(set.iter().all(|e| span.contains(e)));
        prop_assert_eq!(m.rank(&span).unwrap(), m.rank(&set).unwrap());
        prop_assert_eq!(m.span(&span).unwrap(), span);
    }

    #[test]
    fn sampled_greedy_basis_is_independent_and_spanning(seed in any::<u64>(), mask in any::<u16>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_graphic(&mut rng, 7, 16);
        let ground = random_ground(&mut rng, 16);
        let set = bits::members(mask as u64);
        let basis = m.max_weight_basis(&ground, &set).unwrap();
        prop_assert!(m.is_independent(&basis).unwrap());
        prop_assert_eq!(basis.len(), m.rank(&set).unwrap());
    }
}
