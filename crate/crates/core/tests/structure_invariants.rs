use homlab::enumerate::{for_each_permutation, graphs_up_to_iso, labelled_graphs};
use homlab::graph::FiniteGraph;
use homlab::perm;
use homlab::{are_isomorphic, automorphisms, canonical_code, orbits_on_ktuples, Execution};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> FiniteGraph {
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
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (FiniteGraph, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, p)| (graph_from_bits(n, &bits), p))
    })
}

fn brute_force_aut_count(g: &FiniteGraph) -> u128 {
    let n = g.order();
    let mut count = 0;
    for_each_permutation(&(0..n).collect::<Vec<_>>(), |p| {
        if g.relabel(p) == *g {
            count += 1;
        }
    });
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn isomorphism_of_relabelled_graph((g, p) in graph_and_perm(9)) {
        let s = g.to_structure();
        let t = g.relabel(&p).to_structure();
        let map = are_isomorphic(&s, &t).unwrap().expect("relabelled copy is isomorphic");
        prop_assert_eq!(s.relabel(&map), t);
        // map composed with p^-1 fixes s
        let back = perm::compose(&map, &perm::inverse(&p));
        prop_assert_eq!(s.relabel(&back), s);
    }

    #[test]
    fn automorphism_order_matches_brute_force((g, _p) in graph_and_perm(7)) {
        let group = automorphisms(&g.to_structure()).unwrap();
        let n = g.order() as u128;
        let factorial: u128 = (1..=n).product();
        prop_assert_eq!(factorial % group.order, 0);
        prop_assert_eq!(group.order, brute_force_aut_count(&g));
        prop_assert!(group.verify_order());
    }

    #[test]
    fn canonical_code_is_invariant((g, p) in graph_and_perm(10)) {
        let a = canonical_code(&g.to_structure()).unwrap();
        let b = canonical_code(&g.relabel(&p).to_structure()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn tuple_orbits_refine_isomorphism_type((g, _p) in graph_and_perm(7), k in 1usize..=3) {
        let s = g.to_structure();
        let orbits = orbits_on_ktuples(&s, k).unwrap();
        let n = g.order();
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..k {
            tuples = tuples.into_iter().flat_map(|t| (0..n).map(move |x| { let mut t = t.clone(); t.push(x); t })).collect();
        }
        tuples.retain(|t| (0..k).all(|i| !t[..i].contains(&t[i])));
        for x in &tuples {
            prop_assert!(orbits.orbit_of(x).is_some());
            for y in &tuples {
                if orbits.orbit_of(x) == orbits.orbit_of(y) {
                    for i in 0..k {
                        for j in i + 1..k {
                            prop_assert_eq!(g.has_edge(x[i], x[j]), g.has_edge(y[i], y[j]));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn canonical_codes_separate_five_vertex_graphs_exactly() {
    let graphs: Vec<FiniteGraph> = labelled_graphs(5).unwrap().collect();
    let mut reps: Vec<(Vec<u8>, FiniteGraph)> = Vec::new();
    for g in &graphs {
        let code = canonical_code(&g.to_structure()).unwrap();
        if let Some((_, h)) = reps.iter().find(|(c, _)| *c == code) {
            assert!(are_isomorphic(&g.to_structure(), &h.to_structure()).unwrap().is_some());
        } else {
            for (_, h) in &reps {
                assert!(are_isomorphic(&g.to_structure(), &h.to_structure()).unwrap().is_none());
            }
            reps.push((code, g.clone()));
        }
    }
    assert_eq!(reps.len(), 34);
}

#[test]
fn graph_counts_up_to_isomorphism() {
    let counts: Vec<usize> = (1..=7)
        .map(|n| graphs_up_to_iso(n, Execution::Parallel).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);
}
