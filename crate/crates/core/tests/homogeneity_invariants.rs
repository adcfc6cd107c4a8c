use homlab::enumerate::graphs_up_to_iso;
use homlab::graph::FiniteGraph;
use homlab::homogeneity::homog::verify_non_extendable;
use homlab::homogeneity::{is_homogeneous, is_t_homogeneous, is_t_tuple_regular};
use homlab::Execution;
use proptest::prelude::*;

fn random_graph(max_n: usize) -> impl Strategy<Value = FiniteGraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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
            g
        })
    })
}

#[test]
fn homogeneity_is_complement_invariant() {
    for n in 1..=8 {
        for g in graphs_up_to_iso(n, Execution::Parallel).unwrap() {
            let a = is_homogeneous(&g).unwrap();
            let b = is_homogeneous(&g.complement()).unwrap();
            assert_eq!(a.holds, b.holds, "{g:?}");
            if let Some(w) = &a.witness {
                assert!(verify_non_extendable(&g, w).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn t_homogeneity_implies_tuple_regularity(g in random_graph(10), t in 1usize..=4) {
        if is_t_homogeneous(&g, t).unwrap().holds {
            prop_assert!(is_t_tuple_regular(&g, t).unwrap().holds);
        }
    }

    #[test]
    fn regularity_witnesses_verify(g in random_graph(10), t in 1usize..=3) {
        let r = is_t_tuple_regular(&g, t).unwrap();
        prop_assert_eq!(r.holds, r.witness.is_none());
        if let Some(w) = r.witness {
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn homogeneous_graphs_are_t_homogeneous(g in random_graph(9)) {
        if is_homogeneous(&g).unwrap().holds {
            for t in 1..=4 {
                prop_assert!(is_t_homogeneous(&g, t).unwrap().holds);
            }
        }
    }
}
