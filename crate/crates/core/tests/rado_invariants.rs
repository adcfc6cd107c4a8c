use homlab::graph::FiniteGraph;
use homlab::rado::{
    back_and_forth, back_and_forth_run, extension_witness, is_extension_witness, prime_graph_adjacent, BitOracle,
    ExtensionQuery, FiniteOracle, GraphOracle, PrimeOracle,
};
use proptest::prelude::*;

fn disjoint_sets(universe: u64, max: usize) -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    prop::collection::vec((0..universe, any::<bool>()), 0..=max).prop_map(|items| {
        let mut u = Vec::new();
        let mut v = Vec::new();
        for (x, side) in items {
            if u.contains(&x) || v.contains(&x) {
                continue;
            }
            if side {
                u.push(x);
            } else {
                v.push(x);
            }
        }
        (u, v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bit_witnesses_are_least_and_valid((u, v) in disjoint_sets(12, 8)) {
        let q = ExtensionQuery::new(u.clone(), v.clone(), 1 << 13).unwrap();
        let z = extension_witness(&BitOracle, &q).unwrap().expect("closed-form witness is within bound");
        prop_assert!(is_extension_witness(&BitOracle, &q.u, &q.v, z).unwrap());
        for y in 0..z {
            prop_assert!(!is_extension_witness(&BitOracle, &q.u, &q.v, y).unwrap());
        }
        let closed: u64 = u.iter().map(|&x| 1u64 << x).sum::<u64>() + (1 << 12);
        prop_assert!(z <= closed);
        prop_assert_eq!(Some(z), extension_witness(&BitOracle, &q).unwrap());
    }

    #[test]
    fn back_and_forth_into_finite_graphs_is_a_partial_isomorphism(
        n in 2usize..=10,
        bits in prop::collection::vec(any::<bool>(), 45),
        steps in 1usize..=12,
    ) {
        let mut g = FiniteGraph::new(n);
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if bits[k] {
                    g.add_edge(a, b);
                }
                k += 1;
            }
        }
        let oracle = FiniteOracle::new(g);
        let run = back_and_forth_run(&BitOracle, &oracle, steps.min(n), 1 << 16).unwrap();
        run.map.verify(&BitOracle, &oracle).unwrap();
        prop_assert_eq!(run.succeeded(), run.completed_steps == steps.min(n));
    }
}

#[test]
fn quadratic_reciprocity_below_ten_thousand() {
    let primes = PrimeOracle.first_vertices(10_000);
    let primes: Vec<u64> = primes.into_iter().take_while(|&p| p < 10_000).collect();
    assert_eq!(primes.len(), 609);
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[..i] {
            assert_eq!(prime_graph_adjacent(p, q).unwrap(), prime_graph_adjacent(q, p).unwrap());
        }
    }
}

#[test]
fn bit_and_prime_oracles_map_into_each_other_for_a_few_steps() {
    let map = back_and_forth(&BitOracle, &PrimeOracle, 6, 1 << 20).unwrap();
    map.verify(&BitOracle, &PrimeOracle).unwrap();
    assert_eq!(map.len(), 6);
}
