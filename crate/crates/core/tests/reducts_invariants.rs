use homlab::graph::FiniteGraph;
use homlab::reducts::{switch, switching_automorphism_witness, switching_witness};
use homlab::automorphisms;
use homlab::perm::compose;
use proptest::prelude::*;

fn graph_with_subset(max_n: usize) -> impl Strategy<Value = (FiniteGraph, Vec<bool>, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
            prop::collection::vec(any::<bool>(), n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, subset, perm)| {
                let mut g = FiniteGraph::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v);
                        }
                        k += 1;
                    }
                }
                (g, subset, perm)
            })
    })
}

fn members(flags: &[bool]) -> Vec<usize> {
    (0..flags.len()).filter(|&i| flags[i]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn switching_preserves_both_sides((g, y, _p) in graph_with_subset(10)) {
        let inside = members(&y);
        let outside: Vec<usize> = (0..g.order()).filter(|&v| !y[v]).collect();
        let h = switch(&g, &inside).unwrap();
        prop_assert_eq!(h.induced(&inside).unwrap(), g.induced(&inside).unwrap());
        prop_assert_eq!(h.induced(&outside).unwrap(), g.induced(&outside).unwrap());
    }

    #[test]
    fn automorphism_composed_with_switch_is_recovered(
        (g, y, _p) in graph_with_subset(10),
        word in prop::collection::vec(any::<prop::sample::Index>(), 0..6),
    ) {
        let n = g.order();
        let group = automorphisms(&g.to_structure()).unwrap();
        let mut pi: Vec<usize> = (0..n).collect();
        if !group.generators.is_empty() {
            for idx in &word {
                pi = compose(&pi, &group.generators[idx.index(group.generators.len())]);
            }
        }
        prop_assert_eq!(g.relabel(&pi), g.clone());
        // pi fixes g, so the relabelled switch of g is a switch of it by Y xor pi(Y).
        let h = switch(&g, &members(&y)).unwrap();
        let mut moved = vec![false; n];
        for v in 0..n {
            moved[pi[v]] = y[v];
        }
        let diff: Vec<bool> = (0..n).map(|v| y[v] != moved[v]).collect();
        let expected: Vec<usize> = (0..n).filter(|&v| diff[v] != diff[0]).collect();
        let found = switching_automorphism_witness(&h, &pi).unwrap();
        prop_assert_eq!(found.as_ref(), Some(&expected));
        prop_assert_eq!(switch(&h, &expected).unwrap(), h.relabel(&pi));
    }

    #[test]
    fn switching_commutes_with_induced_subgraphs((g, y, w) in graph_with_subset(10), keep in 1usize..=10) {
        let w: Vec<usize> = w.into_iter().take(keep).collect();
        let lhs = switch(&g, &members(&y)).unwrap().induced(&w).unwrap();
        let y_in_w: Vec<usize> = (0..w.len()).filter(|&i| y[w[i]]).collect();
        let rhs = switch(&g.induced(&w).unwrap(), &y_in_w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn switching_is_an_involution((g, y, _p) in graph_with_subset(10)) {
        let y = members(&y);
        prop_assert_eq!(switch(&switch(&g, &y).unwrap(), &y).unwrap(), g);
    }

    #[test]
    fn switching_witness_recovers_the_set((g, y, _p) in graph_with_subset(10)) {
        let n = g.order();
        let h = switch(&g, &members(&y)).unwrap();
        let found = switching_witness(&g, &h).unwrap().expect("h is a switch of g");
        prop_assert!(!found.contains(&0));
        let expected: Vec<usize> = (0..n).filter(|&v| y[v] != y[0]).collect();
        prop_assert_eq!(&found, &expected);
        prop_assert_eq!(switch(&g, &found).unwrap(), h);
    }

    #[test]
    fn switched_relabelling_round_trips((g, y, p) in graph_with_subset(10)) {
        // Build a graph whose relabelling by p is a switch of it, then recover the set.
        let h = switch(&g, &members(&y)).unwrap();
        match switching_automorphism_witness(&h, &p).unwrap() {
            Some(set) => prop_assert_eq!(switch(&h, &set).unwrap(), h.relabel(&p)),
            None => prop_assert!(switching_witness(&h, &h.relabel(&p)).unwrap().is_none()),
        }
        let identity: Vec<usize> = (0..g.order()).collect();
        prop_assert_eq!(switching_automorphism_witness(&g, &identity).unwrap(), Some(vec![]));
    }
}
