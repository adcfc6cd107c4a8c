use homlab::fraisse::{
    check_ap, check_jep, free_amalgam, limit_approximation, small_embedding, ClassKind, ClassSpec,
};
use homlab::graph::FiniteGraph;
use homlab::iso::all_embeddings;
use homlab::Execution;
use proptest::prelude::*;

fn has_triangle(g: &FiniteGraph) -> bool {
    let n = g.order();
    (0..n).any(|a| (a + 1..n).any(|b| g.has_edge(a, b) && (b + 1..n).any(|c| g.has_edge(a, c) && g.has_edge(b, c))))
}

fn triangle_free_graph(n: usize) -> impl Strategy<Value = FiniteGraph> {
    prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let mut g = FiniteGraph::new(n);
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[k] {
                    g.add_edge(u, v);
                    if has_triangle(&g) {
                        g.remove_edge(u, v);
                    }
                }
                k += 1;
            }
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_amalgam_preserves_triangle_freeness(
        b1 in triangle_free_graph(5),
        b2 in triangle_free_graph(5),
        a_size in 0usize..=3,
        pick1 in any::<u64>(),
        pick2 in any::<u64>(),
    ) {
        // A is the induced subgraph of B1 on its first a_size points, embedded into B2 if possible.
        let verts: Vec<usize> = (0..a_size).collect();
        let a = b1.induced(&verts).unwrap().to_structure();
        let (s1, s2) = (b1.to_structure(), b2.to_structure());
        let f1s = all_embeddings(&a, &s1).unwrap();
        let f2s = all_embeddings(&a, &s2).unwrap();
        prop_assume!(!f2s.is_empty());
        let f1 = &f1s[pick1 as usize % f1s.len()];
        let f2 = &f2s[pick2 as usize % f2s.len()];
        let c = free_amalgam(&a, &s1, f1, &s2, f2).unwrap();
        let g = FiniteGraph::from_structure(&c).unwrap();
        prop_assert!(!has_triangle(&g));
        prop_assert_eq!(g.order(), 10 - a_size);
    }

    #[test]
    fn approximation_stages_are_nested(seed in any::<u64>(), stages in 1usize..=24, kind in 0usize..3) {
        let spec = match kind {
            0 => ClassSpec::new(ClassKind::AllGraphs).unwrap(),
            1 => ClassSpec::new(ClassKind::KFree { k: 3 }).unwrap(),
            _ => ClassSpec::new(ClassKind::Tournaments).unwrap(),
        };
        let small = limit_approximation(&spec, stages, seed).unwrap().structure;
        let large = limit_approximation(&spec, stages + 1, seed).unwrap().structure;
        let prefix: Vec<usize> = (0..small.domain_size()).collect();
        prop_assert_eq!(large.induced_substructure(&prefix).unwrap(), small.clone());
        prop_assert!(spec.contains(&large));
        prop_assert!(small_embedding(&small, &large).is_some());
    }
}

#[test]
fn joint_embedding_agrees_with_amalgamation() {
    for kind in [
        ClassKind::AllGraphs,
        ClassKind::KFree { k: 3 },
        ClassKind::Tournaments,
        ClassKind::LinearOrders,
        ClassKind::Matchings,
        ClassKind::Bipartite,
    ] {
        let spec = ClassSpec::new(kind.clone()).unwrap();
        let ap = check_ap(&spec, 3, false, Execution::Parallel).unwrap();
        let jep = check_jep(&spec, 3, Execution::Parallel).unwrap();
        if ap.holds {
            assert!(jep.holds, "{kind}");
        }
        assert!(jep.holds, "{kind}");
    }
}

#[test]
fn ap_holds_for_graphs_and_clique_free_graphs() {
    for kind in [ClassKind::AllGraphs, ClassKind::KFree { k: 3 }, ClassKind::KFree { k: 4 }] {
        let spec = ClassSpec::new(kind.clone()).unwrap();
        for n in 1..=4 {
            let r = check_ap(&spec, n, true, Execution::Parallel).unwrap();
            assert!(r.holds, "{kind} at {n}");
        }
    }
}
