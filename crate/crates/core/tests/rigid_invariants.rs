use homlab::iso::find_embedding;
use homlab::rigid::{
    c_aut_order, c_relation_of_tree, pattern_contains, ramsey_failure_colouring, superpose, tree_of_c_relation,
    MultiOrder, RootedBinaryTree, Tournament,
};
use proptest::prelude::*;

fn tree(max_leaves: usize) -> impl Strategy<Value = RootedBinaryTree> {
    (1..=max_leaves, any::<prop::sample::Index>()).prop_map(|(l, idx)| {
        let all = RootedBinaryTree::all(l).unwrap();
        all[idx.index(all.len())].clone()
    })
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exactly_one_leaf_is_distinguished(t in tree(8)) {
        let c = c_relation_of_tree(&t);
        prop_assert!(c.violations().is_empty());
        let l = t.leaf_count();
        for a in 0..l {
            for b in a + 1..l {
                for d in b + 1..l {
                    let hits = [c.holds(a, b, d), c.holds(a, d, b), c.holds(b, d, a)];
                    prop_assert_eq!(hits.iter().filter(|&&h| h).count(), 1);
                }
            }
        }
    }

    #[test]
    fn trees_round_trip_through_c_relations(t in tree(8)) {
        let c = c_relation_of_tree(&t);
        let back = tree_of_c_relation(&c).unwrap();
        prop_assert_eq!(c_relation_of_tree(&back), c.clone());
        prop_assert_eq!(c_aut_order(&c).unwrap(), t.symmetry_order());
    }

    #[test]
    fn pattern_containment_is_induced_embedding(p in permutation(4), q in permutation(7)) {
        let m = pattern_contains(&p, &q).unwrap();
        let a = MultiOrder::from_permutation(&p).unwrap().to_structure().unwrap();
        let b = MultiOrder::from_permutation(&q).unwrap().to_structure().unwrap();
        prop_assert_eq!(m.contained, find_embedding(&a, &b).unwrap().is_some());
        if let Some(pos) = m.positions {
            let zero: Vec<usize> = pos.iter().map(|i| i - 1).collect();
            let mo = MultiOrder::from_permutation(&q).unwrap();
            prop_assert_eq!(mo.pattern_of(&zero), p);
        }
    }

    #[test]
    fn colouring_splits_every_arc(mask in 0u64..1 << 15, t in tree(6)) {
        let l = t.leaf_count();
        let pairs = l * (l - 1) / 2;
        let tour = Tournament::from_mask(l, mask & ((1u64 << pairs) - 1)).unwrap();
        let s = superpose(&tour, &c_relation_of_tree(&t)).unwrap();
        let order: Vec<usize> = (0..l).collect();
        let col = ramsey_failure_colouring(&s, &order).unwrap();
        prop_assert_eq!(col.red.len() + col.blue.len(), pairs);
        prop_assert!(col.red.iter().all(|&(u, v)| u < v && tour.beats(u, v)));
        prop_assert!(col.blue.iter().all(|&(u, v)| u > v && tour.beats(u, v)));
        prop_assert!(col.no_monochromatic_cyclic_triple);
    }
}

#[test]
fn prime_arcs_are_antisymmetric_below_ten_thousand() {
    use homlab::rigid::tournament::{is_prime, prime_arc};
    let primes: Vec<u64> = (3..10_000).filter(|&p| p % 4 == 3 && is_prime(p)).collect();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[..i] {
            assert_ne!(prime_arc(p, q), prime_arc(q, p), "{p} {q}");
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    homlab::enumerate::for_each_permutation(&(1..=n).collect::<Vec<_>>(), |p| out.push(p.to_vec()));
    out
}

#[test]
fn pattern_containment_agrees_with_embeddings_exhaustively() {
    let patterns: Vec<Vec<usize>> = (1..=4).flat_map(all_permutations).collect();
    let pattern_structures: Vec<_> = patterns
        .iter()
        .map(|p| MultiOrder::from_permutation(p).unwrap().to_structure().unwrap())
        .collect();
    for q in (1..=6).flat_map(all_permutations) {
        let b = MultiOrder::from_permutation(&q).unwrap().to_structure().unwrap();
        for (p, a) in patterns.iter().zip(&pattern_structures) {
            assert_eq!(
                pattern_contains(p, &q).unwrap().contained,
                find_embedding(a, &b).unwrap().is_some(),
                "{p:?} in {q:?}"
            );
        }
    }
}
